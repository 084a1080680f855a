#include "contlogic/lang/signature_io.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(where + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw StructuralError(where + " must be a string");
  return j.get<std::string>();
}

int sort_id(const Signature& sig, const json& j, const std::string& where) {
  std::string name = as_string(j, where);
  auto id = sig.find_sort(name);
  if (!id) throw StructuralError(where + " names unknown sort '" + name + "'");
  return *id;
}

std::vector<int> sort_list(const Signature& sig, const json& j, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + " must be a list of sort names");
  std::vector<int> out;
  for (const json& s : j) out.push_back(sort_id(sig, s, where));
  return out;
}

std::vector<PLMonotone> moduli_list(const json& sym, const std::string& where) {
  std::vector<PLMonotone> out;
  if (!sym.contains("moduli")) return out;
  const json& m = sym.at("moduli");
  if (!m.is_array()) throw StructuralError(where + ".moduli must be a list");
  for (const json& u : m) out.push_back(pl_from_json(u));
  return out;
}

}  // namespace

json pl_to_json(const PLMonotone& f) {
  json out = json::array();
  for (const auto& [x, y] : f.breakpoints()) out.push_back({x.to_string(), y.to_string()});
  return out;
}

PLMonotone pl_from_json(const json& j) {
  if (!j.is_array()) throw StructuralError("a modulus must be a list of [input, output] pairs");
  std::vector<PLMonotone::Breakpoint> bps;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw StructuralError("modulus breakpoints must be pairs of rational strings");
    }
    bps.emplace_back(UnitValue::parse(p[0].get<std::string>()), UnitValue::parse(p[1].get<std::string>()));
  }
  return PLMonotone(std::move(bps));
}

Signature signature_from_json(const json& j) {
  Signature sig;
  const json& sorts = require(j, "sorts", "signature");
  if (!sorts.is_array()) throw StructuralError("signature.sorts must be a list");
  for (const json& s : sorts) {
    if (s.is_string()) {
      sig.add_sort(s.get<std::string>());
    } else {
      std::string metric = s.contains("metric") ? as_string(s.at("metric"), "sort metric") : "";
      sig.add_sort(as_string(require(s, "name", "sort"), "sort name"), metric);
    }
  }
  if (j.contains("functions")) {
    for (const json& f : j.at("functions")) {
      std::string name = as_string(require(f, "name", "function"), "function name");
      std::string where = "function " + name;
      sig.add_function(name, sort_list(sig, require(f, "arg_sorts", where), where + ".arg_sorts"),
                       sort_id(sig, require(f, "target_sort", where), where + ".target_sort"), moduli_list(f, where));
    }
  }
  if (j.contains("predicates")) {
    for (const json& p : j.at("predicates")) {
      std::string name = as_string(require(p, "name", "predicate"), "predicate name");
      std::string where = "predicate " + name;
      sig.add_predicate(name, sort_list(sig, require(p, "arg_sorts", where), where + ".arg_sorts"), moduli_list(p, where));
    }
  }
  return sig;
}

json signature_to_json(const Signature& sig) {
  json sorts = json::array();
  for (int s = 0; s < sig.sort_count(); ++s) sorts.push_back({{"name", sig.sort_name(s)}, {"metric", sig.metric_name(s)}});
  auto names = [&](const std::vector<int>& ids) {
    json out = json::array();
    for (int s : ids) out.push_back(sig.sort_name(s));
    return out;
  };
  auto moduli = [](const std::vector<PLMonotone>& us) {
    json out = json::array();
    for (const PLMonotone& u : us) out.push_back(pl_to_json(u));
    return out;
  };
  json functions = json::array();
  for (const FunctionSymbol& f : sig.functions()) {
    functions.push_back({{"name", f.name}, {"arg_sorts", names(f.arg_sorts)}, {"target_sort", sig.sort_name(f.target_sort)},
                         {"moduli", moduli(f.moduli)}});
  }
  json predicates = json::array();
  for (const PredicateSymbol& p : sig.predicates()) {
    predicates.push_back({{"name", p.name}, {"arg_sorts", names(p.arg_sorts)}, {"moduli", moduli(p.moduli)}});
  }
  return {{"sorts", sorts}, {"functions", functions}, {"predicates", predicates}};
}

}  // namespace contlogic
