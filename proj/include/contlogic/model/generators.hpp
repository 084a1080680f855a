#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "contlogic/lang/condition.hpp"
#include "contlogic/model/structure.hpp"

namespace contlogic {

/// One sort "A" with 0-ary zero, one, unary compl, binary meet and join, and a
/// unary predicate mu; all moduli are the identity.
Signature prob_algebra_signature();

/// The algebra of all subsets of the atoms {0, ..., n-1}, elements named "{}",
/// "{0}", "{0,2}", ... in bitmask order; mu sums the atom weights and d is the
/// measure of the symmetric difference. Weights must be positive, sum to 1, and
/// number at most 12 (DomainError otherwise).
FiniteStructure gen_prob_algebra(const std::vector<Rational>& atom_weights);

/// The five axiom conditions of probability algebras, over prob_algebra_signature():
/// the Boolean-algebra identities combined into one sentence, mu(one()) = 1,
/// mu(zero()) = 0, additivity, and d(x,y) = mu(symmetric difference).
std::vector<Condition> prob_algebra_axioms(const Signature& sig);
/// sup x. inf y. |mu(meet(y,x)) - half mu(x)|, zero exactly on atomless algebras.
Formula atomless_sentence(const Signature& sig);

/// A classical one-sorted structure: relations as sets of tuples, functions as tables.
struct ClassicalDescription {
  std::vector<std::string> elements;
  struct Relation {
    std::string name;
    int arity = 0;
    std::vector<std::vector<int>> tuples;
  };
  struct Function {
    std::string name;
    int arity = 0;
    /// Row-major over elements^arity.
    std::vector<int> table;
  };
  std::vector<Relation> relations;
  std::vector<Function> functions;
};

/// Discrete metric, relations valued 0 on their tuples (true) and 1 elsewhere,
/// identity moduli. Sort "M".
FiniteStructure from_classical(const ClassicalDescription& desc);

/// One sort "M" with elements a0..a{n-1}, b0..b{n-1}, discrete metric, and binary
/// phi with phi(a_i, b_j) = 1 when i <= j and 0 on every other pair. 1 <= n <= 16.
FiniteStructure gen_halfgraph(int n);

struct RandomStructureOptions {
  /// Distances are multiples of 1/denominator, as are predicate values.
  int denominator = 4;
  /// Points on a line (d = |p - q|) instead of shortest-path closures of random weights.
  bool line_metric = true;
  /// Allow distinct elements at distance 0 (a pre-structure); tables are then
  /// constant on zero-distance classes.
  bool allow_zero_distance = false;
};

/// Random structure for the given signature and carrier sizes. Every symbol's
/// moduli are replaced by the least PL inverse modulus through the observed
/// (distance, change) pairs, so the result always validates.
FiniteStructure random_structure(const Signature& sig, const std::vector<int>& sizes, std::uint64_t seed,
                                 const RandomStructureOptions& options = {});

/// Least PL inverse modulus u through the points (t, max change at distance <= t).
/// Throws DomainError when some pair at distance 0 changes.
PLMonotone fitted_modulus(std::vector<std::pair<UnitValue, UnitValue>> samples);

}  // namespace contlogic
