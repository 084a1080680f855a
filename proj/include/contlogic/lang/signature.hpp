#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "contlogic/unitval/pl_monotone.hpp"

namespace contlogic {

/// Sort id used for truth-value variables, which range over [0,1] rather than a carrier.
inline constexpr int kValueSort = -1;

struct FunctionSymbol {
  std::string name;
  std::vector<int> arg_sorts;
  int target_sort = 0;
  /// One inverse modulus per argument.
  std::vector<PLMonotone> moduli;
};

struct PredicateSymbol {
  std::string name;
  std::vector<int> arg_sorts;
  std::vector<PLMonotone> moduli;
};

/// A many-sorted metric signature. Every sort carries its own metric symbol; the
/// name "d" additionally refers to the metric of whichever sort its first argument has.
class Signature {
 public:
  /// Adds a sort. The metric symbol is named `metric_name`, or "d" for the first
  /// sort and "d_<name>" for later ones when empty.
  int add_sort(const std::string& name, const std::string& metric_name = "");
  /// Moduli default to the identity when `moduli` is empty.
  int add_function(const std::string& name, std::vector<int> arg_sorts, int target_sort,
                   std::vector<PLMonotone> moduli = {});
  int add_predicate(const std::string& name, std::vector<int> arg_sorts, std::vector<PLMonotone> moduli = {});

  int sort_count() const { return static_cast<int>(sorts_.size()); }
  const std::string& sort_name(int sort) const { return sorts_.at(sort); }
  const std::string& metric_name(int sort) const { return metric_names_.at(sort); }
  std::optional<int> find_sort(const std::string& name) const;
  /// Sort whose metric symbol is called `name` (not counting the generic "d").
  std::optional<int> find_metric(const std::string& name) const;

  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const FunctionSymbol& function(int id) const { return functions_.at(id); }
  const PredicateSymbol& predicate(int id) const { return predicates_.at(id); }
  std::optional<int> find_function(const std::string& name) const;
  std::optional<int> find_predicate(const std::string& name) const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  void claim_name(const std::string& name);

  std::vector<std::string> sorts_;
  std::vector<std::string> metric_names_;
  std::vector<FunctionSymbol> functions_;
  std::vector<PredicateSymbol> predicates_;
  std::unordered_map<std::string, int> sort_index_;
  std::unordered_map<std::string, int> metric_index_;
  std::unordered_map<std::string, int> function_index_;
  std::unordered_map<std::string, int> predicate_index_;
};

}  // namespace contlogic
