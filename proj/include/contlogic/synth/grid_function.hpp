#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "contlogic/unitval/unit_value.hpp"
#include "json.hpp"

namespace contlogic {

/// A function [0,1]^n -> [0,1] sampled on the grid of multiples of `pitch`.
/// Values are stored row-major: the first coordinate varies slowest.
struct GridFunction {
  static constexpr int kMaxArity = 4;

  int arity = 1;
  UnitValue pitch;
  std::vector<UnitValue> values;

  /// Grid points per axis, 1/pitch + 1.
  int side() const;
  std::size_t point_count() const;
  std::vector<UnitValue> point(std::size_t index) const;
  std::vector<int> coords(std::size_t index) const;
  std::size_t index_of(const std::vector<int>& coords) const;

  /// Throws DomainError unless 1 <= arity <= kMaxArity, pitch = 2^-k with
  /// 0 <= k <= 6, and there is exactly one value per grid point.
  void validate() const;

  static GridFunction tabulate(int arity, const UnitValue& pitch,
                               const std::function<UnitValue(const std::vector<UnitValue>&)>& f);
};

/// Name of the i-th argument in synthesized expressions: "t0", "t1", ...
std::string grid_variable(int i);

/// {"arity": n, "pitch": "1/8", "values": ["0", "1/8", ...]}
GridFunction grid_function_from_json(const nlohmann::json& j);
nlohmann::json grid_function_to_json(const GridFunction& g);

}  // namespace contlogic
