#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/model/structure.hpp"

namespace contlogic {

/// Values of phi(xs; ys) on a structure: one row per xs-tuple, one column per
/// ys-tuple, tuples in row-major carrier order.
struct PhiMatrix {
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  /// values[a][b] = phi(a, b)
  std::vector<std::vector<UnitValue>> values;

  int rows() const { return static_cast<int>(row_names.size()); }
  int cols() const { return static_cast<int>(col_names.size()); }
  const UnitValue& at(int a, int b) const { return values[a][b]; }
  /// The matrix of phi~(y, x) = phi(x, y).
  PhiMatrix transpose() const;
};

/// A tuple is named by its element name when it has one entry, "(a,b,...)" otherwise.
/// Throws StructuralError unless xs and ys are disjoint and cover the free variables of phi.
PhiMatrix phi_matrix(const FiniteStructure& M, const Formula& phi, const std::vector<Variable>& xs,
                     const std::vector<Variable>& ys);

/// The function b -> phi(a, b) over the parameter tuples.
struct PhiTypeVector {
  std::vector<UnitValue> values;
  /// Row index of a realizing tuple, when known.
  std::optional<int> realizer;
};

PhiTypeVector phi_type(const PhiMatrix& m, int a);

/// Distinct rows of the matrix with the sup-difference metric.
struct PhiTypeSpace {
  std::vector<PhiTypeVector> points;
  /// Every row realizing each point, in row order; points are ordered by first realizer.
  std::vector<std::vector<int>> realizers;
  std::vector<std::vector<UnitValue>> metric;
};

PhiTypeSpace phi_type_space(const PhiMatrix& m);

/// max_b |p(b) - q(b)|
UnitValue type_distance(const PhiTypeVector& p, const PhiTypeVector& q);

}  // namespace contlogic
