#include "contlogic/cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "contlogic/errors.hpp"
#include "contlogic/imag/imaginary.hpp"
#include "contlogic/lang/condition.hpp"
#include "contlogic/lang/parser.hpp"
#include "contlogic/lang/signature_io.hpp"
#include "contlogic/model/complete.hpp"
#include "contlogic/model/elementary.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/model/structure_io.hpp"
#include "contlogic/model/validate.hpp"
#include "contlogic/stab/definitions.hpp"
#include "contlogic/stab/glue.hpp"
#include "contlogic/stab/ladder.hpp"
#include "contlogic/stab/phi_matrix.hpp"
#include "contlogic/stab/topometric.hpp"
#include "contlogic/synth/synthesize.hpp"
#include "contlogic/unitval/modulus.hpp"
#include "contlogic/util/tuples.hpp"

#ifndef CONTLOGIC_VERSION
#define CONTLOGIC_VERSION "0.0.0"
#endif

namespace contlogic::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view version() { return CONTLOGIC_VERSION; }

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The command ran and produced a negative outcome; the partial result is still reported.
struct CommandFailure : std::runtime_error {
  CommandFailure(const std::string& what, json partial) : std::runtime_error(what), result(std::move(partial)) {}
  json result;
};

struct Options {
  std::string input;
  std::vector<std::string> formulas;
  std::string split;
  std::string epsilon;
  std::string target;
  std::string kind;
  std::string direction;
  std::string pl;
  std::string subset;
  std::string pair;
  std::string pair_sort;
  std::vector<std::string> assignments;
  int depth = 0;
  int max_len = 0;
  std::string out;
};

class Context {
 public:
  Options opt;
  std::vector<std::string> command_line;
  std::uint64_t hash = fnv1a64("");

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string data = ss.str();
    std::string len = std::to_string(data.size()) + ":";
    hash = fnv1a64(data, fnv1a64(len, hash));
    return data;
  }

  json read_json(const std::string& path) {
    std::string text = read(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
  }

  FiniteStructure structure() {
    json j = read_json(opt.input);
    return structure_from_json(j, fs::path(opt.input).parent_path());
  }
};

UnitValue parse_flag_value(const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError(flag + " is required");
  try {
    return UnitValue::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const OverflowError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

UnitValue epsilon_flag(const Options& o) {
  UnitValue e = parse_flag_value(o.epsilon, "--epsilon");
  return e;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

std::vector<std::string> split_list(const std::string& text, char sep);

// A bare predicate name stands for the predicate applied to the --split variables,
// or to x, y (x for unary, x1..xn beyond two) without a split.
Formula formula_flag(const Options& o, const Signature& sig, std::size_t index = 0) {
  if (o.formulas.size() <= index) throw UsageError("--formula is required");
  const std::string& text = o.formulas[index];
  auto pred = sig.find_predicate(text);
  if (!pred) return parse_formula(text, sig);
  const PredicateSymbol& p = sig.predicate(*pred);
  std::vector<std::string> names;
  if (!o.split.empty()) {
    for (const auto& half : split_list(o.split, ';')) {
      for (const auto& n : split_list(half, ',')) names.push_back(n);
    }
  } else if (p.arg_sorts.size() == 1) {
    names = {"x"};
  } else if (p.arg_sorts.size() == 2) {
    names = {"x", "y"};
  } else {
    for (std::size_t i = 0; i < p.arg_sorts.size(); ++i) names.push_back("x" + std::to_string(i + 1));
  }
  if (names.size() != p.arg_sorts.size()) {
    throw UsageError("predicate " + text + " takes " + std::to_string(p.arg_sorts.size()) + " arguments");
  }
  std::vector<Term> args;
  for (std::size_t i = 0; i < names.size(); ++i) args.push_back(make_var(names[i], p.arg_sorts[i]));
  return make_atomic(sig, *pred, std::move(args));
}

Variable find_free(const Formula& f, const std::string& name) {
  for (const Variable& v : free_vars(f)) {
    if (v.name == name && v.sort != kValueSort) return v;
  }
  throw UsageError("variable '" + name + "' is not free in the formula");
}

// "x1,x2;y1,y2". Without ';' the y list is the remaining free variables; without
// --split x is the first free variable in (name, sort) order.
std::pair<std::vector<Variable>, std::vector<Variable>> split_flag(const Options& o, const Formula& phi) {
  std::vector<Variable> object_vars;
  for (const Variable& v : free_vars(phi)) {
    if (v.sort != kValueSort) object_vars.push_back(v);
  }
  if (o.split.empty()) {
    if (object_vars.empty()) throw UsageError("the formula has no free variables to split");
    return {{object_vars.front()}, {object_vars.begin() + 1, object_vars.end()}};
  }
  auto halves = split_list(o.split, ';');
  if (halves.size() > 2 || halves.empty()) throw UsageError("--split takes \"x-list;y-list\"");
  std::vector<Variable> xs, ys;
  for (const auto& n : split_list(halves[0], ',')) xs.push_back(find_free(phi, n));
  if (halves.size() == 2) {
    for (const auto& n : split_list(halves[1], ',')) ys.push_back(find_free(phi, n));
  } else {
    for (const Variable& v : object_vars) {
      if (std::find(xs.begin(), xs.end(), v) == xs.end()) ys.push_back(v);
    }
  }
  return {xs, ys};
}

json values_json(const std::vector<UnitValue>& vs) {
  json a = json::array();
  for (const UnitValue& v : vs) a.push_back(v.to_string());
  return a;
}

json names_json(const std::vector<int>& idx, const std::vector<std::string>& names) {
  json a = json::array();
  for (int i : idx) a.push_back(names[i]);
  return a;
}

std::string vars_text(const std::vector<Variable>& vs) {
  std::string s;
  for (const Variable& v : vs) s += (s.empty() ? "" : ",") + v.name;
  return s;
}

json matrix_header(const PhiMatrix& m, const Formula& phi, const Signature& sig, const std::vector<Variable>& xs,
                   const std::vector<Variable>& ys) {
  return {{"formula", print_formula(phi, sig)}, {"x", vars_text(xs)}, {"y", vars_text(ys)}, {"rows", m.rows()},
          {"columns", m.cols()}};
}

// --target: a tuple of element names ("a0" or "a0,b1") or a JSON file holding
// {"values": [...]} in column order or {"values": {"column": value}}.
PhiTypeVector target_flag(Context& ctx, const PhiMatrix& m) {
  const std::string& t = ctx.opt.target;
  if (t.empty()) throw UsageError("--target is required");
  if (t.size() > 5 && t.substr(t.size() - 5) == ".json") {
    json j = ctx.read_json(t);
    if (!j.is_object() || !j.contains("values")) throw InputError("target file needs \"values\"");
    PhiTypeVector p;
    const json& v = j["values"];
    if (v.is_array()) {
      for (const json& x : v) {
        if (!x.is_string()) throw InputError("target values must be rational strings");
        p.values.push_back(UnitValue::parse(x.get<std::string>()));
      }
    } else if (v.is_object()) {
      for (const std::string& c : m.col_names) {
        if (!v.contains(c) || !v[c].is_string()) throw InputError("target file has no value for column " + c);
        p.values.push_back(UnitValue::parse(v[c].get<std::string>()));
      }
    } else {
      throw InputError("\"values\" must be a list or an object");
    }
    if (static_cast<int>(p.values.size()) != m.cols()) {
      throw InputError("target gives " + std::to_string(p.values.size()) + " values for " + std::to_string(m.cols()) +
                       " columns");
    }
    return p;
  }
  auto parts = split_list(t, ',');
  std::string name = parts.size() == 1 ? parts[0] : "(" + [&] {
    std::string s;
    for (const auto& x : parts) s += (s.empty() ? "" : ",") + x;
    return s;
  }() + ")";
  for (int a = 0; a < m.rows(); ++a) {
    if (m.row_names[a] == name) return phi_type(m, a);
  }
  throw UsageError("--target " + t + " names no x-tuple of the structure");
}

json ladder_json(const PhiMatrix& m, const LadderWitness& w) {
  json pairs = json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back({m.row_names[a], m.col_names[b]});
  json j = {{"kind", std::string(ladder_kind_name(w.kind))},
            {"epsilon", w.epsilon.to_string()},
            {"length", w.length()},
            {"max_len", w.max_len},
            {"instability_at_scale", w.at_bound()},
            {"pairs", pairs},
            {"rechecked", recheck_ladder(m, w)}};
  if (w.r) j["r"] = w.r->to_string();
  if (w.s) j["s"] = w.s->to_string();
  return j;
}

json nvalue_json(const PhiMatrix& m, const NValue& n) {
  return {{"N", n.N}, {"at_bound", n.at_bound}, {"witness", ladder_json(m, n.witness)}};
}

json median_json(const PhiMatrix& m, const MedianDefinition& d) {
  json values = json::object();
  for (int b = 0; b < m.cols(); ++b) values[m.col_names[b]] = d.values[b].to_string();
  return {{"epsilon", d.epsilon.to_string()},
          {"N", d.N},
          {"N_phi", d.N_phi},
          {"N_transpose", d.N_transpose},
          {"N_at_bound", d.N_at_bound},
          {"parameters", names_json(d.parameters, m.row_names)},
          {"values", values},
          {"observed_error", d.observed_error.to_string()}};
}

json median_failure_json(const MedianFailure& f) {
  return {{"reason", f.reason}, {"step", f.step}, {"w", f.w}};
}

int max_len_flag(const Options& o, int fallback) {
  int v = o.max_len == 0 ? fallback : o.max_len;
  if (v < 1 || v > 64) throw UsageError("--max-len must be between 1 and 64");
  return v;
}

// ---- commands ----

json cmd_check(Context& ctx) {
  FiniteStructure M = ctx.structure();
  ValidationReport r = validate(M);
  json violations = json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"kind", v.kind},
                          {"symbol", v.symbol},
                          {"position", v.position},
                          {"witnesses", v.witnesses},
                          {"context", v.context},
                          {"observed", v.observed.to_string()},
                          {"allowed", v.allowed.to_string()}});
  }
  json out = {{"valid", r.valid}, {"is_metric", r.is_metric}, {"violation_count", r.violation_count},
              {"violations", violations}};
  bool ok = r.valid;
  if (!ctx.opt.formulas.empty()) {
    std::vector<Condition> conds;
    for (const auto& text : ctx.opt.formulas) conds.push_back(Condition::equals_zero(parse_formula(text, M.signature())));
    TheoryReport t = check_theory(M, conds);
    json entries = json::array();
    for (std::size_t i = 0; i < conds.size(); ++i) {
      entries.push_back({{"formula", ctx.opt.formulas[i]},
                         {"value", t.entries[i].value.to_string()},
                         {"satisfied", t.entries[i].satisfied}});
    }
    out["conditions"] = entries;
    out["all_satisfied"] = t.all_satisfied;
    ok = ok && t.all_satisfied;
  }
  if (!ok) throw CommandFailure("structure failed its checks", out);
  return out;
}

json cmd_eval(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula f = formula_flag(ctx.opt, M.signature());
  EvalEnv env;
  std::set<Variable> free = free_vars(f);
  for (const std::string& a : ctx.opt.assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw UsageError("--assign takes name=value");
    std::string name = a.substr(0, eq), value = a.substr(eq + 1);
    bool bound = false;
    for (const Variable& v : free) {
      if (v.name != name) continue;
      bound = true;
      if (v.sort == kValueSort) {
        env.bind_value(name, parse_flag_value(value, "--assign " + name));
      } else {
        auto e = M.find_element(v.sort, value);
        if (!e) throw UsageError("no element '" + value + "' in sort " + M.signature().sort_name(v.sort));
        env.bind(v, *e);
      }
    }
    if (!bound) throw UsageError("--assign " + name + ": not a free variable of the formula");
  }
  UnitValue value = eval_formula(M, env, f);
  return {{"formula", print_formula(f, M.signature())}, {"value", value.to_string()}};
}

json cmd_complete(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Completion c = complete(M);
  json classes = json::object();
  for (int s = 0; s < M.signature().sort_count(); ++s) {
    json sort = json::object();
    for (int e = 0; e < M.carrier_size(s); ++e) {
      sort[M.element_name(s, e)] = c.structure.element_name(s, c.class_of[s][e]);
    }
    classes[M.signature().sort_name(s)] = sort;
  }
  return {{"structure", structure_to_json(c.structure)}, {"class_of", classes}};
}

json cmd_tv(Context& ctx) {
  FiniteStructure M = ctx.structure();
  if (ctx.opt.split.empty()) throw UsageError("--split names the distinguished variable y");
  std::vector<std::vector<int>> A(M.signature().sort_count());
  for (const std::string& name : split_list(ctx.opt.subset, ',')) {
    bool found = false;
    for (int s = 0; s < M.signature().sort_count() && !found; ++s) {
      if (auto e = M.find_element(s, name)) {
        A[s].push_back(*e);
        found = true;
      }
    }
    if (!found) throw UsageError("--subset mentions unknown element '" + name + "'");
  }
  for (auto& a : A) std::sort(a.begin(), a.end());
  std::vector<TVFormula> fs;
  for (std::size_t i = 0; i < ctx.opt.formulas.size(); ++i) {
    Formula f = parse_formula(ctx.opt.formulas[i], M.signature());
    fs.push_back({f, find_free(f, ctx.opt.split)});
  }
  if (fs.empty()) throw UsageError("--formula is required");
  TVResult r = is_elementary_substructure(M, A, fs);
  json out = {{"holds", r.holds}, {"formulas", ctx.opt.formulas}};
  if (r.witness) {
    json params = json::array();
    for (const Variable& v : r.witness->params) params.push_back(v.name);
    out["witness"] = {{"formula", ctx.opt.formulas[r.witness->formula_index]},
                      {"params", params},
                      {"tuple", r.witness->tuple},
                      {"inf_over_M", r.witness->inf_over_M.to_string()},
                      {"inf_over_A", r.witness->inf_over_A.to_string()}};
  }
  return out;
}

json cmd_imaginary(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  ImaginaryExpansion E = build_imaginary(M, phi, xs, ys);
  TphiReport t = verify_Tphi(E);
  json out = {{"sidecar", imaginary_sidecar(E)},
              {"class_count", E.representatives.size()},
              {"T_phi",
               {{"classes_represented", t.classes_represented.to_string()},
                {"tuples_covered", t.tuples_covered.to_string()},
                {"metric_is_row_distance", t.metric_is_row_distance.to_string()},
                {"all_zero", t.all_zero()}}},
              {"expanded", structure_to_json(E.expanded)}};
  if (!t.all_zero()) throw CommandFailure("T_phi sentences do not vanish", out);
  return out;
}

json cmd_typespace(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  PhiTypeSpace S = phi_type_space(m);
  json points = json::array();
  for (std::size_t p = 0; p < S.points.size(); ++p) {
    json values = json::object();
    for (int b = 0; b < m.cols(); ++b) values[m.col_names[b]] = S.points[p].values[b].to_string();
    points.push_back({{"realizers", names_json(S.realizers[p], m.row_names)}, {"values", values}});
  }
  json metric = json::array();
  for (const auto& row : S.metric) metric.push_back(values_json(row));
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["points"] = points;
  out["metric"] = metric;
  return out;
}

json cmd_stability(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  UnitValue eps = epsilon_flag(ctx.opt);
  int max_len = max_len_flag(ctx.opt, 8);
  std::vector<LadderKind> kinds;
  if (ctx.opt.kind.empty()) {
    kinds = {LadderKind::Antisymmetric, LadderKind::Order, LadderKind::Triple};
  } else {
    auto k = ladder_kind_from_name(ctx.opt.kind);
    if (!k) throw UsageError("--kind must be antisym, order or triple");
    kinds = {*k};
  }
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["ladders"] = json::array();
  for (LadderKind k : kinds) out["ladders"].push_back(ladder_json(m, find_ladder(m, eps, k, max_len)));
  return out;
}

json cmd_nvalue(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  UnitValue eps = epsilon_flag(ctx.opt);
  int max_len = max_len_flag(ctx.opt, 32);
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["epsilon"] = eps.to_string();
  out["phi"] = nvalue_json(m, compute_N(m, eps, max_len));
  PhiMatrix t = m.transpose();
  out["transpose"] = nvalue_json(t, compute_N(t, eps, max_len));
  return out;
}

json cmd_define_median(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  UnitValue eps = epsilon_flag(ctx.opt);
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  PhiTypeVector target = target_flag(ctx, m);
  MedianResult r = median_definition(m, eps, target, max_len_flag(ctx.opt, 32));
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["target"] = values_json(target.values);
  if (!r.ok()) {
    out["failure"] = median_failure_json(*r.failure);
    throw CommandFailure("median definition aborted: " + r.failure->reason, out);
  }
  out["definition"] = median_json(m, *r.definition);
  return out;
}

json cmd_define_monotone(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  UnitValue eps = epsilon_flag(ctx.opt);
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  PhiTypeVector target = target_flag(ctx, m);
  MonotoneParameters p = monotone_parameters(m, eps, target);
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["epsilon"] = eps.to_string();
  out["target"] = values_json(target.values);
  json records = json::array();
  for (const MonotoneRecord& r : p.records) {
    records.push_back(
        {{"a", m.col_names[r.a]}, {"b", m.col_names[r.b]}, {"r", r.r.to_string()}, {"s", r.s.to_string()}});
  }
  out["records"] = records;
  out["parameters"] = names_json(p.parameters, m.row_names);
  if (!p.ok) {
    out["failure"] = *p.failure;
    throw CommandFailure(*p.failure, out);
  }
  MonotoneDefinition g(m, eps, target, p.parameters);
  json values = json::object();
  for (int a = 0; a < m.cols(); ++a) values[m.col_names[a]] = g(g.observed(a)).to_string();
  out["values"] = values;
  out["observed_error"] = g.observed_error().to_string();
  out["error_bound"] = UnitValue::clamp(Rational(3) * eps.value()).to_string();
  out["monotone_on_observed"] = g.monotone_on_observed();
  return out;
}

json cmd_define_global(Context& ctx) {
  FiniteStructure M = ctx.structure();
  Formula phi = formula_flag(ctx.opt, M.signature());
  auto [xs, ys] = split_flag(ctx.opt, phi);
  if (ctx.opt.depth < 1 || ctx.opt.depth > 16) throw UsageError("--depth must be between 1 and 16");
  PhiMatrix m = phi_matrix(M, phi, xs, ys);
  PhiTypeVector target = target_flag(ctx, m);
  GlobalResult r = global_definition(m, target, ctx.opt.depth, max_len_flag(ctx.opt, 32));
  json out = matrix_header(m, phi, M.signature(), xs, ys);
  out["target"] = values_json(target.values);
  out["depth"] = ctx.opt.depth;
  if (!r.ok()) {
    out["failure"] = median_failure_json(r.failure->second);
    out["failure"]["stage"] = r.failure->first;
    throw CommandFailure("stage " + std::to_string(r.failure->first) + " aborted", out);
  }
  const GlobalDefinition& d = *r.definition;
  json stages = json::array();
  for (const MedianDefinition& s : d.stages) stages.push_back(median_json(m, s));
  json values = json::object();
  for (int b = 0; b < m.cols(); ++b) values[m.col_names[b]] = d.values[b].to_string();
  out["stages"] = stages;
  out["values"] = values;
  out["error_bound"] = d.error_bound.to_string();
  out["observed_error"] = d.observed_error.to_string();
  return out;
}

json cmd_glue(Context& ctx) {
  json j = ctx.read_json(ctx.opt.input);
  std::optional<FiniteStructure> M;
  Signature sig;
  if (j.is_object() && j.contains("signature")) {
    M = structure_from_json(j, fs::path(ctx.opt.input).parent_path());
    sig = M->signature();
  } else {
    sig = signature_from_json(j);
  }
  if (ctx.opt.formulas.size() != 2) throw UsageError("glue takes --formula twice: phi, then psi");
  Formula phi = parse_formula(ctx.opt.formulas[0], sig), psi = parse_formula(ctx.opt.formulas[1], sig);
  std::vector<Variable> shared;
  for (const std::string& n : split_list(ctx.opt.split, ',')) shared.push_back(find_free(phi, n));
  auto pair = split_list(ctx.opt.pair.empty() ? "t,w" : ctx.opt.pair, ',');
  if (pair.size() != 2) throw UsageError("--pair takes two variable names");
  int sort = 0;
  if (!ctx.opt.pair_sort.empty()) {
    auto s = sig.find_sort(ctx.opt.pair_sort);
    if (!s) throw UsageError("unknown sort '" + ctx.opt.pair_sort + "'");
    sort = *s;
  }
  Variable t{pair[0], sort}, w{pair[1], sort};
  Formula chi = glue_formula(sig, phi, psi, shared, t, w);
  json out = {{"formula", print_formula(chi, sig)}, {"phi", ctx.opt.formulas[0]}, {"psi", ctx.opt.formulas[1]}};
  if (M) {
    // Exhaustive check of both recovery identities.
    std::set<Variable> fv = free_vars(chi);
    std::vector<Variable> vars(fv.begin(), fv.end());
    std::vector<int> sizes;
    for (const Variable& v : vars) sizes.push_back(M->carrier_size(v.sort));
    std::size_t checked = 0, failures = 0;
    for_each_tuple(sizes, [&](const std::vector<int>& tuple) {
      EvalEnv env;
      int te = -1, we = -1;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        env.bind(vars[i], tuple[i]);
        if (vars[i] == t) te = tuple[i];
        if (vars[i] == w) we = tuple[i];
      }
      UnitValue d = M->dist(sort, te, we);
      if (d != UnitValue::one() && te != we) return true;
      UnitValue got = eval_formula(*M, env, chi);
      UnitValue want = te == we ? eval_formula(*M, env, psi) : eval_formula(*M, env, phi);
      ++checked;
      if (got != want) ++failures;
      return true;
    });
    out["recovery"] = {{"checked", checked}, {"failures", failures}};
    if (failures) throw CommandFailure("recovery identities fail", out);
  }
  return out;
}

json cmd_cbrank(Context& ctx) {
  FiniteTopometricSpace X = topometric_from_json(ctx.read_json(ctx.opt.input));
  UnitValue eps = epsilon_flag(ctx.opt);
  CBResult r = cb_rank(X, eps);
  return cb_result_to_json(X, r);
}

json cmd_synth(Context& ctx) {
  if (ctx.opt.target.empty()) throw UsageError("--target grid file is required");
  GridFunction g = grid_function_from_json(ctx.read_json(ctx.opt.target));
  UnitValue eps = epsilon_flag(ctx.opt);
  SynthesisOptions so;
  if (!ctx.opt.pl.empty()) so.modulus = PLMonotone::parse(ctx.opt.pl);
  SynthesisResult r = synthesize(g, eps, so);
  Signature none;
  return {{"expression", print_formula(r.expr, none)},
          {"max_error", r.max_error.to_string()},
          {"epsilon", eps.to_string()},
          {"constant_step", r.constant_step.to_string()},
          {"max_slope", r.max_slope},
          {"tree_size", r.tree_size},
          {"dag_size", r.dag_size},
          {"connectives_only_not_monus", uses_only_neg_monus(r.expr)}};
}

json cmd_modulus_convert(Context& ctx) {
  if (ctx.opt.pl.empty()) throw UsageError("--pl is required");
  PLMonotone f = PLMonotone::parse(ctx.opt.pl);
  json out = {{"direction", ctx.opt.direction}, {"input", f.to_string()}};
  if (ctx.opt.direction == "inverse-to-delta") {
    DeltaFromInverse delta(f);
    UnitValue eps = epsilon_flag(ctx.opt);
    out["epsilon"] = eps.to_string();
    out["value"] = delta(eps).to_string();
  } else if (ctx.opt.direction == "delta-to-inverse") {
    PLMonotone u = inverse_from_delta(f);
    out["result"] = u.to_string();
    if (!ctx.opt.epsilon.empty()) {
      UnitValue r = epsilon_flag(ctx.opt);
      out["epsilon"] = r.to_string();
      out["value"] = u(r).to_string();
    }
  } else {
    throw UsageError("--direction must be inverse-to-delta or delta-to-inverse");
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx;
  Options& o = ctx.opt;
  for (int i = 0; i < argc; ++i) ctx.command_line.emplace_back(argv[i]);

  CLI::App app{"Exact continuous first-order logic workbench", "contlogic"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub, const std::string& what) { sub->add_option("input", o.input, what)->required(); };
  auto formula = [&](CLI::App* sub) { sub->add_option("--formula,-e", o.formulas, "Formula text"); };
  auto split = [&](CLI::App* sub) { sub->add_option("--split", o.split, "Variable split \"x1,x2;y1,y2\""); };
  auto eps = [&](CLI::App* sub) { sub->add_option("--epsilon", o.epsilon, "Exact rational, e.g. 1/4"); };
  auto target = [&](CLI::App* sub) {
    sub->add_option("--target", o.target, "Element tuple (\"a0\" or \"a0,b1\") or JSON vector file");
  };
  auto max_len = [&](CLI::App* sub) { sub->add_option("--max-len", o.max_len, "Ladder search cap"); };

  std::map<std::string, std::function<json(Context&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<json(Context&)> fn) {
    handlers[name] = std::move(fn);
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", o.out, "Write the report to this file");
    return sub;
  };

  {
    auto* s = add("check", "Validate a structure; optional --formula sentences are checked as conditions = 0", cmd_check);
    input(s, "Structure JSON");
    formula(s);
  }
  {
    auto* s = add("eval", "Evaluate a formula", cmd_eval);
    input(s, "Structure JSON");
    formula(s);
    s->add_option("--assign", o.assignments, "Free variable binding name=element or name=value");
  }
  input(add("complete", "Quotient a pre-structure by zero distance", cmd_complete), "Structure JSON");
  {
    auto* s = add("tv", "Tarski-Vaught test for a subset against listed formulas", cmd_tv);
    input(s, "Structure JSON");
    formula(s);
    s->add_option("--subset", o.subset, "Comma list of element names");
    s->add_option("--split", o.split, "The distinguished variable y");
  }
  for (auto [name, help, fn] : {std::tuple{"imaginary", "Canonical parameter sort for phi(x;y)", cmd_imaginary},
                                std::tuple{"typespace", "phi-types and their metric", cmd_typespace}}) {
    auto* s = add(name, help, fn);
    input(s, "Structure JSON");
    formula(s);
    split(s);
  }
  {
    auto* s = add("stability", "Longest ladders of each kind", cmd_stability);
    input(s, "Structure JSON");
    formula(s);
    split(s);
    eps(s);
    max_len(s);
    s->add_option("--kind", o.kind, "antisym, order or triple (default: all)");
  }
  {
    auto* s = add("nvalue", "N(phi, eps) from triple ladders, also for the transpose", cmd_nvalue);
    input(s, "Structure JSON");
    formula(s);
    split(s);
    eps(s);
    max_len(s);
  }
  for (auto [name, help, fn] :
       {std::tuple{"define-median", "Median definition of a phi-type", cmd_define_median},
        std::tuple{"define-monotone", "Monotone definition of a phi-type", cmd_define_monotone}}) {
    auto* s = add(name, help, fn);
    input(s, "Structure JSON");
    formula(s);
    split(s);
    eps(s);
    target(s);
    max_len(s);
  }
  {
    auto* s = add("define-global", "Staged median definitions combined by forced limits", cmd_define_global);
    input(s, "Structure JSON");
    formula(s);
    split(s);
    target(s);
    max_len(s);
    s->add_option("--depth", o.depth, "Number of stages K");
  }
  {
    auto* s = add("glue", "Glue phi(x,y) and psi(x,z) through a pair t,w", cmd_glue);
    input(s, "Signature or structure JSON");
    formula(s);
    s->add_option("--split", o.split, "Shared variables x");
    s->add_option("--pair", o.pair, "Glue variables (default t,w)");
    s->add_option("--pair-sort", o.pair_sort, "Sort of the glue variables (default: first sort)");
  }
  {
    auto* s = add("cbrank", "Cantor-Bendixson ranks of a finite topometric space", cmd_cbrank);
    input(s, "Topometric space JSON");
    eps(s);
  }
  {
    auto* s = add("synth", "Synthesize a {not, -.} expression for a grid function", cmd_synth);
    target(s);
    eps(s);
    s->add_option("--pl", o.pl, "Optional continuity modulus of the target, \"x:y,...\"");
  }
  {
    auto* s = add("modulus-convert", "Convert between inverse and standard continuity moduli", cmd_modulus_convert);
    s->add_option("--direction", o.direction, "inverse-to-delta or delta-to-inverse")->required();
    s->add_option("--pl", o.pl, "PL modulus \"x:y,...\"");
    eps(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string name = app.get_subcommands().front()->get_name();
  json report = {{"tool", "contlogic"}, {"version", std::string(version())}, {"command", name},
                 {"command_line", ctx.command_line}};
  int code = kOk;
  try {
    report["result"] = handlers.at(name)(ctx);
    report["ok"] = true;
  } catch (const CommandFailure& e) {
    report["result"] = e.result;
    report["ok"] = false;
    report["error"] = {{"kind", "failure"}, {"message", e.what()}};
    err << "contlogic: " << name << ": " << e.what() << "\n";
    code = kFailure;
  } catch (const DomainError& e) {
    report["ok"] = false;
    report["error"] = {{"kind", "domain"}, {"message", e.what()}};
    err << "contlogic: domain error: " << e.what() << "\n";
    code = kFailure;
  } catch (const OverflowError& e) {
    report["ok"] = false;
    report["error"] = {{"kind", "overflow"}, {"message", e.what()}};
    err << "contlogic: arithmetic overflow: " << e.what() << "\n";
    code = kFailure;
  } catch (const UsageError& e) {
    err << "contlogic: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "contlogic: input: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "contlogic: formula " << ParseError::kind_name(e.kind()) << " error at offset " << e.position() << ": "
        << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    err << "contlogic: structural error: " << e.what() << "\n";
    return kUsage;
  }
  report["input_hash"] = "fnv1a64:" + hex64(ctx.hash);

  std::string text = report.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "contlogic: input: cannot write '" << o.out << "'\n";
      return kUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace contlogic::cli
