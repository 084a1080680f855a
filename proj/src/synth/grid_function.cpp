#include "contlogic/synth/grid_function.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

int GridFunction::side() const {
  Rational steps = Rational(1) / pitch.value();
  return static_cast<int>(steps.num()) + 1;
}

std::size_t GridFunction::point_count() const {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(side());
  return n;
}

std::vector<int> GridFunction::coords(std::size_t index) const {
  std::vector<int> c(arity);
  const std::size_t s = static_cast<std::size_t>(side());
  for (int i = arity - 1; i >= 0; --i) {
    c[i] = static_cast<int>(index % s);
    index /= s;
  }
  return c;
}

std::vector<UnitValue> GridFunction::point(std::size_t index) const {
  std::vector<UnitValue> p;
  for (int c : coords(index)) p.emplace_back(pitch.value() * Rational(c));
  return p;
}

std::size_t GridFunction::index_of(const std::vector<int>& c) const {
  std::size_t idx = 0;
  for (int x : c) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(x);
  return idx;
}

namespace {

void check_shape(int arity, const UnitValue& pitch) {
  if (arity < 1 || arity > GridFunction::kMaxArity) {
    throw DomainError("grid arity must be between 1 and " + std::to_string(GridFunction::kMaxArity));
  }
  const Rational& p = pitch.value();
  if (p.is_zero() || p.num() != 1 || !p.is_dyadic() || p.den() > 64) {
    throw DomainError("grid pitch must be 2^-k with 0 <= k <= 6, got " + p.to_string());
  }
}

}  // namespace

void GridFunction::validate() const {
  check_shape(arity, pitch);
  if (values.size() != point_count()) {
    throw DomainError("grid needs " + std::to_string(point_count()) + " values, got " + std::to_string(values.size()));
  }
}

GridFunction GridFunction::tabulate(int arity, const UnitValue& pitch,
                                    const std::function<UnitValue(const std::vector<UnitValue>&)>& f) {
  GridFunction g;
  g.arity = arity;
  g.pitch = pitch;
  check_shape(arity, pitch);
  for (std::size_t i = 0; i < g.point_count(); ++i) g.values.push_back(f(g.point(i)));
  g.validate();
  return g;
}

std::string grid_variable(int i) { return "t" + std::to_string(i); }

GridFunction grid_function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("pitch") || !j.contains("values")) {
    throw StructuralError("grid function needs \"arity\", \"pitch\" and \"values\"");
  }
  if (!j["arity"].is_number_integer()) throw StructuralError("\"arity\" must be an integer");
  if (!j["pitch"].is_string()) throw StructuralError("\"pitch\" must be a rational string");
  if (!j["values"].is_array()) throw StructuralError("\"values\" must be an array");
  GridFunction g;
  g.arity = j["arity"].get<int>();
  g.pitch = UnitValue::parse(j["pitch"].get<std::string>());
  for (const auto& v : j["values"]) {
    if (!v.is_string()) throw StructuralError("grid values must be rational strings");
    g.values.push_back(UnitValue::parse(v.get<std::string>()));
  }
  g.validate();
  return g;
}

nlohmann::json grid_function_to_json(const GridFunction& g) {
  nlohmann::json values = nlohmann::json::array();
  for (const UnitValue& v : g.values) values.push_back(v.to_string());
  return {{"arity", g.arity}, {"pitch", g.pitch.to_string()}, {"values", values}};
}

}  // namespace contlogic
