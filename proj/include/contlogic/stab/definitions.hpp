#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contlogic/stab/ladder.hpp"
#include "contlogic/unitval/flim.hpp"

namespace contlogic {

/// med_N(phi(c_0, y), ..., phi(c_{2N-2}, y)) approximating a target type.
struct MedianDefinition {
  UnitValue epsilon;
  int N = 0;
  /// N of the triple condition for phi and for its transpose; N is their maximum.
  int N_phi = 0;
  int N_transpose = 0;
  /// Either N search hit its cap, so N is only a lower bound.
  bool N_at_bound = false;
  /// Row indices c_0, ..., c_{2N-2}.
  std::vector<int> parameters;
  /// The definition's value at each column.
  std::vector<UnitValue> values;
  /// max_b |values[b] - target(b)|
  UnitValue observed_error;
};

struct MedianFailure {
  /// "set-too-large": some w in K(step) has N elements; "no-candidate": no row is
  /// admissible as c_step; "bound-violated": the finished definition misses by more than eps.
  std::string reason;
  int step = 0;
  /// The offending index set (for set-too-large).
  std::vector<int> w;
};

struct MedianResult {
  std::optional<MedianDefinition> definition;
  std::optional<MedianFailure> failure;
  bool ok() const { return definition.has_value(); }
};

/// Runs the inductive choice of c_0, ..., c_{2N-2}: at step n, K(n) collects the index
/// sets w for which some column a has |target(a) - phi(c_i, a)| > eps for all i in w,
/// a_w is the first such column, and c_n is the first row with
/// |phi(c_i, a_w) - phi(c_n, a_w)| > eps for every w in K(n) and i in w.
/// Throws DomainError unless eps > 0 and the target has one value per column.
MedianResult median_definition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target,
                               int max_len = 32);

/// Same, with N values already computed.
MedianResult median_definition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target,
                               const NValue& n_phi, const NValue& n_transpose);

struct MonotoneRecord {
  int a = 0;
  int b = 0;
  UnitValue r;
  UnitValue s;
};

struct MonotoneParameters {
  bool ok = false;
  UnitValue epsilon;
  /// Row indices c_0, ..., c_{n-1}.
  std::vector<int> parameters;
  /// The violating pair and thresholds that produced each parameter.
  std::vector<MonotoneRecord> records;
  /// Set when no admissible row exists at step records.size() - 1.
  std::optional<std::string> failure;
};

/// Repeatedly takes the first columns (a, b) with phi(c_i, a) <= phi(c_i, b) + eps for
/// every chosen c_i while target(a) > target(b) + 3 eps, splits the gap
/// target(b) < r < r + 3 eps < s < target(a) into thirds, and chooses c_n as the
/// first row with phi(c_n, a_k) > s_k and phi(c_n, b_k) < r_k for every record k.
MonotoneParameters monotone_parameters(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target);

/// g(v) = sup_u h_u(v) f(u) with f(u) = max{target(a) : phi(c_i, a) <= u_i for all i}
/// and h_u(v) = (1/eps) min_i (eps -. (u_i -. v_i)); the sup runs over the observed
/// tuples (phi(c_i, a))_i and their coordinatewise eps-shifts.
class MonotoneDefinition {
 public:
  MonotoneDefinition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target,
                     std::vector<int> parameters);

  const UnitValue& epsilon() const { return eps_; }
  const std::vector<int>& parameters() const { return params_; }
  std::size_t arity() const { return params_.size(); }

  UnitValue f(const std::vector<UnitValue>& u) const;
  UnitValue h(const std::vector<UnitValue>& u, const std::vector<UnitValue>& v) const;
  UnitValue operator()(const std::vector<UnitValue>& v) const;
  /// The same sup taken over every u on the grid of the given pitch instead.
  UnitValue grid_value(const std::vector<UnitValue>& v, const UnitValue& pitch) const;

  /// (phi(c_i, a))_i for column a.
  std::vector<UnitValue> observed(int a) const;
  /// max_a |g(observed(a)) - target(a)|
  UnitValue observed_error() const;
  /// Pairwise check of g over the observed tuples: v <= v' coordinatewise implies g(v) <= g(v').
  bool monotone_on_observed() const;

 private:
  const PhiMatrix* m_;
  UnitValue eps_;
  PhiTypeVector target_;
  std::vector<int> params_;
  std::vector<std::pair<std::vector<UnitValue>, UnitValue>> candidates_;
};

/// Stage definitions at eps = 2^-n for n < K, combined per column through flim_prefix.
struct GlobalDefinition {
  int K = 0;
  std::vector<MedianDefinition> stages;
  /// Final modified value per column.
  std::vector<UnitValue> values;
  std::vector<ForcedLimitTrace> traces;
  /// 2^-(K-1)
  UnitValue error_bound;
  UnitValue observed_error;
};

struct GlobalResult {
  std::optional<GlobalDefinition> definition;
  /// Stage index and failure of the first stage that did not succeed.
  std::optional<std::pair<int, MedianFailure>> failure;
  bool ok() const { return definition.has_value(); }
};

/// Throws DomainError unless 1 <= K <= 16.
GlobalResult global_definition(const PhiMatrix& m, const PhiTypeVector& target, int K, int max_len = 32);

}  // namespace contlogic
