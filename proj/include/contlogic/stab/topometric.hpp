#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contlogic/unitval/unit_value.hpp"
#include "json.hpp"

namespace contlogic {

using PointSet = std::uint32_t;

/// A finite point set with an explicit lattice of closed sets and a metric.
struct FiniteTopometricSpace {
  static constexpr int kMaxPoints = 16;

  std::vector<std::string> points;
  /// Closed sets as bit masks over `points`, sorted and without repeats.
  std::vector<PointSet> closed_sets;
  std::vector<std::vector<UnitValue>> metric;
  /// The closed eps-neighbourhood of every closed set must be closed for each of these.
  std::vector<UnitValue> test_epsilons;

  int size() const { return static_cast<int>(points.size()); }
  PointSet full() const { return size() == 32 ? ~PointSet{0} : (PointSet{1} << size()) - 1; }
  bool is_closed(PointSet s) const;
  std::vector<std::string> names(PointSet s) const;
};

/// Throws StructuralError on: more than kMaxPoints points, repeated names, a metric that
/// is not a metric, a closed family missing the empty or full set or not closed under
/// union and intersection, or a closed set whose eps-neighbourhood is not closed.
void validate(const FiniteTopometricSpace& X);

/// Every subset closed; reuses the given metric.
FiniteTopometricSpace discrete_space(std::vector<std::string> points, std::vector<std::vector<UnitValue>> metric);

UnitValue diameter(const FiniteTopometricSpace& X, PointSet s);
/// {x : d(x, F) <= eps}; empty for empty F.
PointSet neighbourhood(const FiniteTopometricSpace& X, PointSet F, const UnitValue& eps);

/// Intersection of C & subset over closed C with diam(subset \ C) <= eps.
PointSet cb_derivative(const FiniteTopometricSpace& X, PointSet subset, const UnitValue& eps);

/// Fewest sets of diameter <= eps covering s.
int epsilon_degree(const FiniteTopometricSpace& X, PointSet s, const UnitValue& eps);

struct CBResult {
  UnitValue epsilon;
  /// X_0 = X, X_1, ... up to the first empty or repeated stage (included once).
  std::vector<PointSet> stages;
  std::vector<int> degrees;
  /// Rank per point; kInfinite for points of a nonempty stationary stage.
  std::vector<int> ranks;
  bool stationary = false;

  static constexpr int kInfinite = -1;
};

CBResult cb_rank(const FiniteTopometricSpace& X, const UnitValue& eps);

/// {"points": [...], "closed_sets": [[names]], "metric": [["p/q", ...]], "test_epsilons": [...]}.
/// The closed sets are normalized (sorted, repeats removed) and the result validated.
FiniteTopometricSpace topometric_from_json(const nlohmann::json& j);
nlohmann::json topometric_to_json(const FiniteTopometricSpace& X);
nlohmann::json cb_result_to_json(const FiniteTopometricSpace& X, const CBResult& r);

}  // namespace contlogic
