#include "contlogic/model/validate.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

class Collector {
 public:
  Collector(ValidationReport& r, std::size_t cap) : r_(r), cap_(cap) {}
  void add(Violation v) {
    r_.valid = false;
    ++r_.violation_count;
    if (r_.violations.size() < cap_) r_.violations.push_back(std::move(v));
  }

 private:
  ValidationReport& r_;
  std::size_t cap_;
};

std::string context_string(const FiniteStructure& M, const std::vector<int>& sorts, const std::vector<int>& args, int pos) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += static_cast<int>(i) == pos ? "_" : M.element_name(sorts[i], args[i]);
  }
  return s + ")";
}

void check_metric(const FiniteStructure& M, int sort, Collector& out, ValidationReport& report) {
  const std::string& sname = M.signature().sort_name(sort);
  int n = M.carrier_size(sort);
  auto name = [&](int e) { return M.element_name(sort, e); };
  for (int a = 0; a < n; ++a) {
    if (M.dist(sort, a, a) != UnitValue::zero()) {
      out.add({"reflexivity", sname, -1, {name(a)}, "", M.dist(sort, a, a), UnitValue::zero()});
    }
    for (int b = 0; b < n; ++b) {
      if (a != b && M.dist(sort, a, b) == UnitValue::zero()) report.is_metric = false;
      if (a < b && M.dist(sort, a, b) != M.dist(sort, b, a)) {
        out.add({"symmetry", sname, -1, {name(a), name(b)}, "", M.dist(sort, a, b), M.dist(sort, b, a)});
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        Rational bound = M.dist(sort, x, z).value() + M.dist(sort, z, y).value();
        if (M.dist(sort, x, y).value() > bound) {
          out.add({"triangle", sname, -1, {name(x), name(y), name(z)}, "", M.dist(sort, x, y), UnitValue::clamp(bound)});
        }
      }
    }
  }
}

// For each argument position, compares table entries that differ only there.
template <class Diff>
void check_symbol(const FiniteStructure& M, const std::string& kind, const std::string& name,
                  const std::vector<int>& sorts, const std::vector<PLMonotone>& moduli, std::size_t table_size,
                  Diff&& diff, Collector& out) {
  for (std::size_t pos = 0; pos < sorts.size(); ++pos) {
    int s = sorts[pos];
    int n = M.carrier_size(s);
    std::vector<UnitValue> allowed(static_cast<std::size_t>(n) * n);
    for (int z = 0; z < n; ++z) {
      for (int w = 0; w < n; ++w) allowed[z * n + w] = moduli[pos](M.dist(s, z, w));
    }
    std::size_t stride = 1;
    for (std::size_t j = pos + 1; j < sorts.size(); ++j) stride *= M.carrier_size(sorts[j]);
    for (std::size_t base = 0; base < table_size; ++base) {
      // only tuples whose entry at pos is 0 serve as bases
      if ((base / stride) % n != 0) continue;
      for (int z = 0; z < n; ++z) {
        for (int w = z + 1; w < n; ++w) {
          UnitValue d = diff(base + z * stride, base + w * stride);
          if (d > allowed[z * n + w]) {
            std::vector<int> args = M.tuple_at(sorts, base);
            out.add({kind, name, static_cast<int>(pos), {M.element_name(s, z), M.element_name(s, w)},
                     context_string(M, sorts, args, static_cast<int>(pos)), d, allowed[z * n + w]});
          }
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate(const FiniteStructure& M, std::size_t max_reported) {
  ValidationReport report;
  Collector out(report, max_reported);
  const Signature& sig = M.signature();
  for (int s = 0; s < sig.sort_count(); ++s) check_metric(M, s, out, report);
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const FunctionSymbol& sym = sig.function(f);
    const auto& table = M.function_table(f);
    bool total = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] < 0) {
        total = false;
        out.add({"not-total", sym.name, -1, {}, context_string(M, sym.arg_sorts, M.tuple_at(sym.arg_sorts, i), -1),
                 UnitValue::zero(), UnitValue::zero()});
      }
    }
    if (!total) continue;
    int target = sym.target_sort;
    check_symbol(M, "function-modulus", sym.name, sym.arg_sorts, sym.moduli, table.size(),
                 [&](std::size_t i, std::size_t j) { return M.dist(target, table[i], table[j]); }, out);
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const PredicateSymbol& sym = sig.predicate(p);
    const auto& table = M.predicate_table(p);
    check_symbol(M, "predicate-modulus", sym.name, sym.arg_sorts, sym.moduli, table.size(),
                 [&](std::size_t i, std::size_t j) { return absdiff(table[i], table[j]); }, out);
  }
  return report;
}

bool check_condition(const FiniteStructure& M, const EvalEnv& env, const Condition& c) {
  return eval_formula(M, env, expand_condition(c)) == UnitValue::zero();
}

TheoryReport check_theory(const FiniteStructure& M, const std::vector<Condition>& conditions) {
  TheoryReport report;
  for (const Condition& c : conditions) {
    UnitValue v = eval_formula(M, {}, c.formula);
    UnitValue residual = eval_formula(M, {}, expand_condition(c));
    bool ok = residual == UnitValue::zero();
    report.entries.push_back({v, residual, ok});
    report.all_satisfied = report.all_satisfied && ok;
  }
  return report;
}

}  // namespace contlogic
