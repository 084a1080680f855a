#pragma once

#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/model/structure.hpp"
#include "json.hpp"

namespace contlogic {

struct ImaginaryNames {
  std::string sort = "S_phi";
  std::string metric = "d_phi";
  std::string predicate = "P_phi";
};

/// The structure M expanded by a sort of canonical parameters for phi(xs; ys):
/// parameter tuples at distance d_phi(b, b') = max over xs-tuples a of
/// |phi(a, b) - phi(a, b')|, identified when that distance is 0, with
/// P_phi(a, [b]) = phi(a, b).
struct ImaginaryExpansion {
  FiniteStructure base;
  Formula phi;
  std::vector<Variable> xs;
  std::vector<Variable> ys;
  /// Lexicographically least parameter tuple of each class; classes are ordered by it.
  std::vector<std::vector<int>> representatives;
  /// Class of every parameter tuple, indexed row-major over the ys carriers.
  std::vector<int> projection;
  FiniteStructure expanded;
  int sort = -1;
  int predicate = -1;
};

/// Throws DomainError with the first violation when M does not validate, and
/// StructuralError when the free variables of phi are not exactly xs and ys.
/// P_phi has the identity modulus in its last argument and the inferred moduli
/// of phi in the others.
ImaginaryExpansion build_imaginary(const FiniteStructure& M, const Formula& phi, const std::vector<Variable>& xs,
                                   const std::vector<Variable>& ys, const ImaginaryNames& names = {});

struct TphiReport {
  /// sup z inf ys sup xs |P_phi(xs, z) - phi(xs, ys)|: every class is named by a tuple.
  UnitValue classes_represented;
  /// sup ys inf z sup xs |P_phi(xs, z) - phi(xs, ys)|: every tuple has a class.
  UnitValue tuples_covered;
  /// sup z sup z' |d_phi(z, z') - sup xs |P_phi(xs, z) - P_phi(xs, z')||.
  UnitValue metric_is_row_distance;
  bool all_zero() const;
};

/// The three sentences above, built over E.expanded's signature.
std::vector<Formula> tphi_sentences(const ImaginaryExpansion& E);
/// Evaluates the three sentences on E.expanded.
TphiReport verify_Tphi(const ImaginaryExpansion& E);

/// {"sort", "formula", "x", "y", "classes": [{"name", "representative", "members"}]}
nlohmann::json imaginary_sidecar(const ImaginaryExpansion& E);

}  // namespace contlogic
