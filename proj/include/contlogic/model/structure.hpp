#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "contlogic/lang/signature.hpp"

namespace contlogic {

/// A finite pre-structure: named carriers per sort, a [0,1]-valued distance table
/// per sort, and total tables for every function and predicate symbol. Tables are
/// stored row-major with the first argument most significant.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  /// Distances start discrete (0 on the diagonal, 1 elsewhere), predicates at 0,
  /// and function entries unset until assigned.
  FiniteStructure(Signature sig, std::vector<std::vector<std::string>> carriers);

  const Signature& signature() const { return sig_; }

  int carrier_size(int sort) const { return static_cast<int>(carriers_.at(sort).size()); }
  const std::vector<std::string>& carrier(int sort) const { return carriers_.at(sort); }
  const std::string& element_name(int sort, int element) const { return carriers_.at(sort).at(element); }
  std::optional<int> find_element(int sort, const std::string& name) const;

  const UnitValue& dist(int sort, int a, int b) const { return metric_[sort][a * carrier_size(sort) + b]; }
  /// Sets both d(a,b) and d(b,a).
  void set_dist(int sort, int a, int b, const UnitValue& value);

  /// Row-major index of an argument tuple for the given argument sorts.
  std::size_t tuple_index(const std::vector<int>& arg_sorts, std::span<const int> args) const;
  /// Number of argument tuples for the given sorts.
  std::size_t tuple_count(const std::vector<int>& arg_sorts) const;
  /// Inverse of tuple_index.
  std::vector<int> tuple_at(const std::vector<int>& arg_sorts, std::size_t index) const;

  int apply(int function, std::span<const int> args) const {
    return functions_[function][tuple_index(sig_.function(function).arg_sorts, args)];
  }
  int apply_at(int function, std::size_t index) const { return functions_[function][index]; }
  void set_function(int function, std::span<const int> args, int value);
  const UnitValue& pred(int predicate, std::span<const int> args) const {
    return predicates_[predicate][tuple_index(sig_.predicate(predicate).arg_sorts, args)];
  }
  const UnitValue& pred_at(int predicate, std::size_t index) const { return predicates_[predicate][index]; }
  void set_pred(int predicate, std::span<const int> args, const UnitValue& value);

  /// Raw tables, for bulk construction and comparison.
  const std::vector<int>& function_table(int function) const { return functions_.at(function); }
  const std::vector<UnitValue>& predicate_table(int predicate) const { return predicates_.at(predicate); }
  const std::vector<UnitValue>& metric_table(int sort) const { return metric_.at(sort); }

  /// Every function entry assigned.
  bool is_total() const;
  /// d(a,b) = 0 only for a = b in every sort.
  bool is_metric() const;

 private:
  Signature sig_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::unordered_map<std::string, int>> index_;
  std::vector<std::vector<UnitValue>> metric_;
  std::vector<std::vector<int>> functions_;
  std::vector<std::vector<UnitValue>> predicates_;
};

}  // namespace contlogic
