#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contlogic/unitval/connective.hpp"

namespace contlogic {

class Signature;

/// A variable is identified by its name together with its sort.
struct Variable {
  std::string name;
  int sort = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  Variable var;           // Var
  int function = -1;      // App
  std::vector<Term> args;  // App
  int sort = 0;
};

Term make_var(const std::string& name, int sort);
/// Checks arity and argument sorts against the signature (StructuralError otherwise).
Term make_app(const Signature& sig, int function, std::vector<Term> args);

enum class Quantifier { Sup, Inf };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind {
    Atomic,      // predicate applied to terms
    Metric,      // the metric symbol of `symbol` (a sort) applied to two terms
    Connective,  // one of the unitval connectives (Const carries `payload`)
    Med,         // med_n over 2n-1 subformulas
    Quantifier,  // sup / inf over `var`
    ValueVar,    // a truth-value variable
  };
  Kind kind = Kind::Connective;
  int symbol = -1;
  std::vector<Term> terms;
  ConnectiveId connective = ConnectiveId::Const;
  UnitValue payload;
  int med_n = 0;
  Quantifier quantifier = Quantifier::Sup;
  Variable var;
  std::vector<Formula> children;
};

Formula make_atomic(const Signature& sig, int predicate, std::vector<Term> args);
Formula make_metric(const Signature& sig, Term lhs, Term rhs);
Formula make_connective(ConnectiveId id, std::vector<Formula> children);
Formula make_const(const UnitValue& value);
Formula make_med(int n, std::vector<Formula> children);
Formula make_quantifier(Quantifier q, Variable var, Formula body);
Formula make_value_var(const std::string& name);

inline Formula f_neg(Formula a) { return make_connective(ConnectiveId::Neg, {std::move(a)}); }
inline Formula f_half(Formula a) { return make_connective(ConnectiveId::Half, {std::move(a)}); }
inline Formula f_monus(Formula a, Formula b) { return make_connective(ConnectiveId::Monus, {std::move(a), std::move(b)}); }
inline Formula f_min(Formula a, Formula b) { return make_connective(ConnectiveId::Min, {std::move(a), std::move(b)}); }
inline Formula f_max(Formula a, Formula b) { return make_connective(ConnectiveId::Max, {std::move(a), std::move(b)}); }
inline Formula f_plus(Formula a, Formula b) { return make_connective(ConnectiveId::PlusTrunc, {std::move(a), std::move(b)}); }
inline Formula f_absdiff(Formula a, Formula b) { return make_connective(ConnectiveId::AbsDiff, {std::move(a), std::move(b)}); }
inline Formula f_sup(Variable v, Formula body) { return make_quantifier(Quantifier::Sup, std::move(v), std::move(body)); }
inline Formula f_inf(Variable v, Formula body) { return make_quantifier(Quantifier::Inf, std::move(v), std::move(body)); }

bool term_equal(const Term& a, const Term& b);
/// Structural equality of syntax trees.
bool formula_equal(const Formula& a, const Formula& b);

/// Free variables, truth-value variables included (with sort kValueSort).
std::set<Variable> free_vars(const Formula& f);
std::set<Variable> term_vars(const Term& t);
/// Every variable name occurring in f, bound or free.
std::set<std::string> all_var_names(const Formula& f);

/// Number of nodes, counting shared subtrees once per occurrence.
std::uint64_t tree_size(const Formula& f);
/// Number of distinct nodes.
std::size_t dag_size(const Formula& f);
int depth(const Formula& f);

}  // namespace contlogic
