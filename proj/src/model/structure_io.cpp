#include "contlogic/model/structure_io.hpp"

#include <fstream>
#include <functional>

#include "contlogic/errors.hpp"
#include "contlogic/lang/signature_io.hpp"

namespace contlogic {

using nlohmann::json;

namespace {

Signature load_signature(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_object()) return signature_from_json(j);
  if (!j.is_string()) throw StructuralError("\"signature\" must be an object or a file path");
  std::filesystem::path p = j.get<std::string>();
  if (p.is_relative()) p = base_dir / p;
  std::ifstream in(p);
  if (!in) throw StructuralError("cannot read signature file " + p.string());
  json sj;
  try {
    sj = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError("malformed signature file " + p.string() + ": " + e.what());
  }
  return signature_from_json(sj);
}

UnitValue parse_value(const json& v, const std::string& where) {
  if (!v.is_string()) throw StructuralError(where + ": values must be rational strings");
  Rational r = Rational::parse(v.get<std::string>());
  if (r < Rational(0) || r > Rational(1)) throw DomainError(where + ": value " + r.to_string() + " outside [0,1]");
  return UnitValue(r);
}

// Walks a nested table in row-major order, calling leaf(args, value).
template <typename Leaf>
void walk_table(const json& table, const FiniteStructure& M, const std::vector<int>& sorts, std::vector<int>& args,
                const std::string& where, Leaf&& leaf) {
  std::size_t depth = args.size();
  if (depth == sorts.size()) {
    leaf(args, table);
    return;
  }
  int n = M.carrier_size(sorts[depth]);
  if (!table.is_array() || static_cast<int>(table.size()) != n) {
    throw StructuralError(where + ": table level " + std::to_string(depth) + " must list " + std::to_string(n) + " entries");
  }
  for (int i = 0; i < n; ++i) {
    args.push_back(i);
    walk_table(table[i], M, sorts, args, where, leaf);
    args.pop_back();
  }
}

json build_table(const FiniteStructure& M, const std::vector<int>& sorts, std::vector<int>& args,
                 const std::function<json(const std::vector<int>&)>& leaf) {
  if (args.size() == sorts.size()) return leaf(args);
  json arr = json::array();
  for (int i = 0; i < M.carrier_size(sorts[args.size()]); ++i) {
    args.push_back(i);
    arr.push_back(build_table(M, sorts, args, leaf));
    args.pop_back();
  }
  return arr;
}

}  // namespace

FiniteStructure structure_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw StructuralError("structure file must be a JSON object");
  if (!j.contains("signature")) throw StructuralError("structure file lacks \"signature\"");
  Signature sig = load_signature(j["signature"], base_dir);
  const json carriers_j = j.value("carriers", json::object());
  std::vector<std::vector<std::string>> carriers(sig.sort_count());
  for (int s = 0; s < sig.sort_count(); ++s) {
    const std::string& name = sig.sort_name(s);
    if (!carriers_j.contains(name)) throw StructuralError("no carrier for sort " + name);
    for (const json& e : carriers_j[name]) {
      if (!e.is_string()) throw StructuralError("element names of sort " + name + " must be strings");
      carriers[s].push_back(e.get<std::string>());
    }
  }
  for (auto it = carriers_j.begin(); it != carriers_j.end(); ++it) {
    if (!sig.find_sort(it.key())) throw StructuralError("carrier for unknown sort " + it.key());
  }
  FiniteStructure M(sig, carriers);

  const json metric_j = j.value("metric", json::object());
  for (auto it = metric_j.begin(); it != metric_j.end(); ++it) {
    auto s = sig.find_sort(it.key());
    if (!s) throw StructuralError("metric for unknown sort " + it.key());
    int n = M.carrier_size(*s);
    const json& rows = it.value();
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw StructuralError("metric of " + it.key() + " must be n x n");
    for (int a = 0; a < n; ++a) {
      if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != n) {
        throw StructuralError("metric of " + it.key() + " must be n x n");
      }
      for (int b = 0; b < n; ++b) {
        UnitValue v = parse_value(rows[a][b], "metric " + it.key());
        UnitValue w = parse_value(rows[b][a], "metric " + it.key());
        if (v != w) throw StructuralError("metric of " + it.key() + " is not symmetric at (" + carriers[*s][a] + ", " + carriers[*s][b] + ")");
        if (a == b && v != UnitValue::zero()) throw StructuralError("metric of " + it.key() + " is nonzero on the diagonal");
        if (a < b) M.set_dist(*s, a, b, v);
      }
    }
  }

  const json funcs_j = j.value("functions", json::object());
  for (auto it = funcs_j.begin(); it != funcs_j.end(); ++it) {
    auto f = sig.find_function(it.key());
    if (!f) throw StructuralError("table for unknown function " + it.key());
    const FunctionSymbol& sym = sig.function(*f);
    std::vector<int> args;
    walk_table(it.value(), M, sym.arg_sorts, args, "function " + sym.name, [&](const std::vector<int>& a, const json& v) {
      if (!v.is_string()) throw StructuralError("function " + sym.name + ": entries must be element names");
      auto e = M.find_element(sym.target_sort, v.get<std::string>());
      if (!e) throw StructuralError("function " + sym.name + ": unknown element " + v.get<std::string>());
      M.set_function(*f, a, *e);
    });
  }
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    if (!funcs_j.contains(sig.function(f).name)) throw StructuralError("no table for function " + sig.function(f).name);
  }

  const json preds_j = j.value("predicates", json::object());
  for (auto it = preds_j.begin(); it != preds_j.end(); ++it) {
    auto p = sig.find_predicate(it.key());
    if (!p) throw StructuralError("table for unknown predicate " + it.key());
    const PredicateSymbol& sym = sig.predicate(*p);
    std::vector<int> args;
    walk_table(it.value(), M, sym.arg_sorts, args, "predicate " + sym.name,
               [&](const std::vector<int>& a, const json& v) { M.set_pred(*p, a, parse_value(v, "predicate " + sym.name)); });
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    if (!preds_j.contains(sig.predicate(p).name)) throw StructuralError("no table for predicate " + sig.predicate(p).name);
  }
  return M;
}

json structure_to_json(const FiniteStructure& M) {
  const Signature& sig = M.signature();
  json j;
  j["signature"] = signature_to_json(sig);
  json carriers = json::object(), metric = json::object();
  for (int s = 0; s < sig.sort_count(); ++s) {
    carriers[sig.sort_name(s)] = M.carrier(s);
    json rows = json::array();
    for (int a = 0; a < M.carrier_size(s); ++a) {
      json row = json::array();
      for (int b = 0; b < M.carrier_size(s); ++b) row.push_back(M.dist(s, a, b).value().to_string());
      rows.push_back(std::move(row));
    }
    metric[sig.sort_name(s)] = std::move(rows);
  }
  j["carriers"] = std::move(carriers);
  j["metric"] = std::move(metric);
  json funcs = json::object(), preds = json::object();
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const FunctionSymbol& sym = sig.function(f);
    std::vector<int> args;
    funcs[sym.name] = build_table(M, sym.arg_sorts, args, [&](const std::vector<int>& a) {
      return json(M.element_name(sym.target_sort, M.apply(f, a)));
    });
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const PredicateSymbol& sym = sig.predicate(p);
    std::vector<int> args;
    preds[sym.name] = build_table(M, sym.arg_sorts, args, [&](const std::vector<int>& a) {
      return json(M.pred(p, a).value().to_string());
    });
  }
  j["functions"] = std::move(funcs);
  j["predicates"] = std::move(preds);
  return j;
}

}  // namespace contlogic
