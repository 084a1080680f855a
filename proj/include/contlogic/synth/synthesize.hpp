#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/synth/grid_function.hpp"
#include "contlogic/unitval/pl_monotone.hpp"

namespace contlogic {

struct SynthesisOptions {
  /// Uniform continuity modulus of the target. When given, synthesis requires
  /// eps >= 2 * modulus(pitch) and checks neighbouring grid values against it.
  std::optional<PLMonotone> modulus;
};

struct SynthesisResult {
  /// Over value variables t0, ..., t{n-1}, built from not, -. and dyadic constants only.
  Formula expr;
  /// Exact max over the grid of |expr - target|.
  UnitValue max_error;
  /// Grid of the dyadic constants used for target values: the largest 2^-k <= eps.
  UnitValue constant_step;
  /// Largest iterated -. count used for a slope.
  int max_slope = 0;
  std::uint64_t tree_size = 0;
  std::size_t dag_size = 0;
};

/// Max-of-mins construction over grid points: for points x != y a two-point interpolant
/// (a -. m (s -. p)) v b, with s a coordinate or its negation and m-fold -. for the
/// slope, agrees with the rounded target at x and y; g_x = max_y h_{x,y} and
/// g = min_x g_x. The result equals the rounded target on every grid point.
/// Throws DomainError when eps is not a positive dyadic, when a slope would exceed 64,
/// or when a supplied modulus is violated or too coarse for eps.
SynthesisResult synthesize(const GridFunction& target, const UnitValue& epsilon, const SynthesisOptions& opt = {});

/// Exact max over grid points of |expr - target|. Throws StructuralError when expr has
/// free variables other than t0, ..., t{n-1} or mentions structure symbols.
UnitValue verify_synthesis(const Formula& expr, const GridFunction& target);

/// expr values at every grid point, row-major.
std::vector<UnitValue> evaluate_on_grid(const Formula& expr, const GridFunction& shape);

/// True when expr uses only not, -., dyadic constants and value variables.
bool uses_only_neg_monus(const Formula& expr);

/// Every function on the grid obtained from the coordinates and the given constants
/// by at most `depth` nested applications of not, min and max.
struct LatticeEnumeration {
  int depth = 0;
  /// Distinct grid functions reachable with depth <= d, for d = 0..depth.
  std::vector<std::size_t> counts;
  /// Each function changes by at most one pitch between neighbouring grid points.
  bool all_one_lipschitz = true;
  /// min over the enumerated functions of max |f - target|.
  UnitValue best_error;
  std::vector<UnitValue> best_values;
};

LatticeEnumeration enumerate_lattice(const GridFunction& target, int depth, const std::vector<UnitValue>& constants);

}  // namespace contlogic
