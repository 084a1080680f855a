#include "contlogic/model/generators.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "contlogic/errors.hpp"
#include "contlogic/lang/parser.hpp"

namespace contlogic {

Signature prob_algebra_signature() {
  Signature sig;
  int a = sig.add_sort("A");
  sig.add_function("zero", {}, a);
  sig.add_function("one", {}, a);
  sig.add_function("compl", {a}, a);
  sig.add_function("meet", {a, a}, a);
  sig.add_function("join", {a, a}, a);
  sig.add_predicate("mu", {a});
  return sig;
}

namespace {

std::string subset_name(unsigned mask, int atoms) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < atoms; ++i) {
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  }
  return s + "}";
}

}  // namespace

FiniteStructure gen_prob_algebra(const std::vector<Rational>& atom_weights) {
  int n = static_cast<int>(atom_weights.size());
  if (n < 1 || n > 12) throw DomainError("probability algebra needs between 1 and 12 atoms");
  Rational total(0);
  for (const Rational& w : atom_weights) {
    if (w <= Rational(0)) throw DomainError("atom weight " + w.to_string() + " is not positive");
    total += w;
  }
  if (total != Rational(1)) throw DomainError("atom weights sum to " + total.to_string() + ", not 1");

  Signature sig = prob_algebra_signature();
  unsigned size = 1u << n, full = size - 1;
  std::vector<std::string> names;
  for (unsigned m = 0; m < size; ++m) names.push_back(subset_name(m, n));
  FiniteStructure M(sig, {names});
  std::vector<UnitValue> measure(size);
  for (unsigned m = 0; m < size; ++m) {
    Rational mu(0);
    for (int i = 0; i < n; ++i) {
      if (m & (1u << i)) mu += atom_weights[i];
    }
    measure[m] = UnitValue(mu);
  }
  const int zero = *sig.find_function("zero"), one = *sig.find_function("one"), compl_ = *sig.find_function("compl");
  const int meet = *sig.find_function("meet"), join = *sig.find_function("join"), mu = *sig.find_predicate("mu");
  M.set_function(zero, {}, 0);
  M.set_function(one, {}, static_cast<int>(full));
  for (unsigned x = 0; x < size; ++x) {
    int xi = static_cast<int>(x);
    M.set_function(compl_, std::vector<int>{xi}, static_cast<int>(full & ~x));
    M.set_pred(mu, std::vector<int>{xi}, measure[x]);
    for (unsigned y = 0; y < size; ++y) {
      std::vector<int> args = {xi, static_cast<int>(y)};
      M.set_function(meet, args, static_cast<int>(x & y));
      M.set_function(join, args, static_cast<int>(x | y));
      if (x < y) M.set_dist(0, xi, static_cast<int>(y), measure[x ^ y]);
    }
  }
  return M;
}

std::vector<Condition> prob_algebra_axioms(const Signature& sig) {
  const char* boolean =
      "sup x. sup y. sup z. "
      "max(max(max(d(meet(x, y), meet(y, x)), d(join(x, y), join(y, x))),"
      "        max(d(meet(meet(x, y), z), meet(x, meet(y, z))), d(join(join(x, y), z), join(x, join(y, z))))),"
      "    max(max(max(d(meet(x, join(x, y)), x), d(join(x, meet(x, y)), x)),"
      "            max(d(meet(x, join(y, z)), join(meet(x, y), meet(x, z))),"
      "                d(join(x, meet(y, z)), meet(join(x, y), join(x, z))))),"
      "        max(d(meet(x, compl(x)), zero()), d(join(x, compl(x)), one()))))";
  return {
      Condition::equals_zero(parse_formula(boolean, sig)),
      Condition::equals_zero(parse_formula("not mu(one())", sig)),
      Condition::equals_zero(parse_formula("mu(zero())", sig)),
      Condition::equals_zero(
          parse_formula("sup x. sup y. |(half mu(x) +. half mu(y)) - (half mu(join(x, y)) +. half mu(meet(x, y)))|", sig)),
      Condition::equals_zero(
          parse_formula("sup x. sup y. |d(x, y) - mu(join(meet(x, compl(y)), meet(y, compl(x))))|", sig)),
  };
}

Formula atomless_sentence(const Signature& sig) {
  return parse_formula("sup x. inf y. |mu(meet(y, x)) - half mu(x)|", sig);
}

FiniteStructure from_classical(const ClassicalDescription& desc) {
  Signature sig;
  int m = sig.add_sort("M");
  for (const auto& f : desc.functions) sig.add_function(f.name, std::vector<int>(f.arity, m), m);
  for (const auto& r : desc.relations) sig.add_predicate(r.name, std::vector<int>(r.arity, m));
  FiniteStructure M(sig, {desc.elements});
  for (std::size_t f = 0; f < desc.functions.size(); ++f) {
    const auto& fn = desc.functions[f];
    std::vector<int> sorts(fn.arity, m);
    if (fn.table.size() != M.tuple_count(sorts)) throw StructuralError("function " + fn.name + " table is not total");
    for (std::size_t i = 0; i < fn.table.size(); ++i) M.set_function(static_cast<int>(f), M.tuple_at(sorts, i), fn.table[i]);
  }
  for (std::size_t r = 0; r < desc.relations.size(); ++r) {
    const auto& rel = desc.relations[r];
    std::vector<int> sorts(rel.arity, m);
    for (std::size_t i = 0; i < M.tuple_count(sorts); ++i) M.set_pred(static_cast<int>(r), M.tuple_at(sorts, i), UnitValue::one());
    for (const auto& t : rel.tuples) {
      if (static_cast<int>(t.size()) != rel.arity) throw StructuralError("relation " + rel.name + " tuple of wrong arity");
      M.set_pred(static_cast<int>(r), t, UnitValue::zero());
    }
  }
  return M;
}

FiniteStructure gen_halfgraph(int n) {
  if (n < 1 || n > 16) throw DomainError("half-graph size must be between 1 and 16");
  Signature sig;
  int m = sig.add_sort("M");
  int phi = sig.add_predicate("phi", {m, m});
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  for (int j = 0; j < n; ++j) names.push_back("b" + std::to_string(j));
  FiniteStructure M(sig, {names});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M.set_pred(phi, std::vector<int>{i, n + j}, i <= j ? UnitValue::one() : UnitValue::zero());
  }
  return M;
}

PLMonotone fitted_modulus(std::vector<std::pair<UnitValue, UnitValue>> samples) {
  std::map<UnitValue, UnitValue> worst;
  for (const auto& [t, change] : samples) {
    auto [it, fresh] = worst.emplace(t, change);
    if (!fresh) it->second = std::max(it->second, change);
  }
  std::vector<PLMonotone::Breakpoint> bps = {{UnitValue::zero(), UnitValue::zero()}};
  UnitValue running = UnitValue::zero();
  for (const auto& [t, change] : worst) {
    running = std::max(running, change);
    if (t == UnitValue::zero()) {
      if (running != UnitValue::zero()) throw DomainError("value changes between points at distance 0");
      continue;
    }
    bps.emplace_back(t, running);
  }
  if (bps.back().first != UnitValue::one()) bps.emplace_back(UnitValue::one(), running);
  return PLMonotone(std::move(bps));
}

FiniteStructure random_structure(const Signature& sig, const std::vector<int>& sizes, std::uint64_t seed,
                                 const RandomStructureOptions& options) {
  if (static_cast<int>(sizes.size()) != sig.sort_count()) throw StructuralError("one carrier size per sort required");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int den = options.denominator;

  std::vector<std::vector<std::string>> carriers(sig.sort_count());
  std::vector<std::vector<int>> cls(sig.sort_count());  // zero-distance class of each element
  std::vector<std::vector<std::vector<UnitValue>>> dist(sig.sort_count());
  for (int s = 0; s < sig.sort_count(); ++s) {
    int n = sizes[s];
    if (n < 1) throw DomainError("carriers must be nonempty");
    std::string prefix = s == 0 ? "e" : sig.sort_name(s);
    for (int i = 0; i < n; ++i) carriers[s].push_back(prefix + std::to_string(i));
    for (int i = 0; i < n; ++i) {
      cls[s].push_back(options.allow_zero_distance && i > 0 && uniform(0, 3) == 0 ? cls[s][uniform(0, i - 1)] : i);
    }
    dist[s].assign(n, std::vector<UnitValue>(n, UnitValue::zero()));
    if (options.line_metric) {
      std::vector<int> pos(n);
      for (int i = 0; i < n; ++i) pos[i] = cls[s][i] == i ? uniform(0, den) : pos[cls[s][i]];
      // distinct classes need distinct positions
      for (int i = 0; i < n; ++i) {
        if (cls[s][i] != i) continue;
        for (int j = 0; j < i; ++j) {
          if (cls[s][j] == j && pos[j] == pos[i]) {
            pos[i] = -1;
            break;
          }
        }
        if (pos[i] < 0) {
          for (int p = 0; p <= den && pos[i] < 0; ++p) {
            bool used = false;
            for (int j = 0; j < i; ++j) used = used || (cls[s][j] == j && pos[j] == p);
            if (!used) pos[i] = p;
          }
          if (pos[i] < 0) throw DomainError("carrier larger than the line grid; raise the denominator");
        }
      }
      for (int i = 0; i < n; ++i) pos[i] = pos[cls[s][i]];
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dist[s][i][j] = UnitValue(Rational(std::abs(pos[i] - pos[j]), den));
      }
    } else {
      std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = cls[s][i] == cls[s][j] ? Rational(0) : Rational(uniform(1, den), den);
      }
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dist[s][i][j] = UnitValue(d[i][j]);
      }
    }
  }

  // Draw tables on class representatives, then fit the moduli.
  auto rep_tuple = [&](const std::vector<int>& sorts, std::vector<int> args) {
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = cls[sorts[i]][args[i]];
    return args;
  };
  FiniteStructure probe(sig, carriers);
  std::vector<std::vector<int>> ftables;
  for (const FunctionSymbol& f : sig.functions()) {
    std::size_t count = probe.tuple_count(f.arg_sorts);
    std::vector<int> table(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<int> args = probe.tuple_at(f.arg_sorts, i);
      std::vector<int> rep = rep_tuple(f.arg_sorts, args);
      if (rep == args) {
        table[i] = uniform(0, sizes[f.target_sort] - 1);
      } else {
        table[i] = table[probe.tuple_index(f.arg_sorts, rep)];
      }
    }
    ftables.push_back(std::move(table));
  }
  std::vector<std::vector<UnitValue>> ptables;
  for (const PredicateSymbol& p : sig.predicates()) {
    std::size_t count = probe.tuple_count(p.arg_sorts);
    std::vector<UnitValue> table(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<int> args = probe.tuple_at(p.arg_sorts, i);
      std::vector<int> rep = rep_tuple(p.arg_sorts, args);
      table[i] = rep == args ? UnitValue(Rational(uniform(0, den), den)) : table[probe.tuple_index(p.arg_sorts, rep)];
    }
    ptables.push_back(std::move(table));
  }

  auto fit = [&](const std::vector<int>& sorts, std::size_t count, auto&& change) {
    std::vector<PLMonotone> moduli;
    for (std::size_t pos = 0; pos < sorts.size(); ++pos) {
      std::vector<std::pair<UnitValue, UnitValue>> samples;
      int s = sorts[pos];
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<int> args = probe.tuple_at(sorts, i);
        int z = args[pos];
        for (int w = z + 1; w < sizes[s]; ++w) {
          args[pos] = w;
          samples.emplace_back(dist[s][z][w], change(i, probe.tuple_index(sorts, args)));
        }
      }
      moduli.push_back(fitted_modulus(std::move(samples)));
    }
    return moduli;
  };

  Signature fitted;
  for (int s = 0; s < sig.sort_count(); ++s) fitted.add_sort(sig.sort_name(s), sig.metric_name(s));
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const FunctionSymbol& sym = sig.functions()[f];
    const auto& table = ftables[f];
    auto moduli = fit(sym.arg_sorts, table.size(),
                      [&](std::size_t i, std::size_t j) { return dist[sym.target_sort][table[i]][table[j]]; });
    fitted.add_function(sym.name, sym.arg_sorts, sym.target_sort, std::move(moduli));
  }
  for (std::size_t p = 0; p < sig.predicates().size(); ++p) {
    const PredicateSymbol& sym = sig.predicates()[p];
    const auto& table = ptables[p];
    auto moduli = fit(sym.arg_sorts, table.size(), [&](std::size_t i, std::size_t j) { return absdiff(table[i], table[j]); });
    fitted.add_predicate(sym.name, sym.arg_sorts, std::move(moduli));
  }

  FiniteStructure M(fitted, carriers);
  for (int s = 0; s < sig.sort_count(); ++s) {
    for (int i = 0; i < sizes[s]; ++i) {
      for (int j = i + 1; j < sizes[s]; ++j) M.set_dist(s, i, j, dist[s][i][j]);
    }
  }
  for (std::size_t f = 0; f < ftables.size(); ++f) {
    const auto& sorts = fitted.function(static_cast<int>(f)).arg_sorts;
    for (std::size_t i = 0; i < ftables[f].size(); ++i) M.set_function(static_cast<int>(f), M.tuple_at(sorts, i), ftables[f][i]);
  }
  for (std::size_t p = 0; p < ptables.size(); ++p) {
    const auto& sorts = fitted.predicate(static_cast<int>(p)).arg_sorts;
    for (std::size_t i = 0; i < ptables[p].size(); ++i) M.set_pred(static_cast<int>(p), M.tuple_at(sorts, i), ptables[p][i]);
  }
  return M;
}

}  // namespace contlogic
