#include "contlogic/synth/synthesize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "contlogic/errors.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/unitval/connective.hpp"

namespace contlogic {

namespace {

bool is_const(const Formula& f) { return f->kind == FormulaNode::Kind::Connective && f->connective == ConnectiveId::Const; }

Formula s_neg(const Formula& a) {
  if (is_const(a)) return make_const(neg(a->payload));
  if (a->kind == FormulaNode::Kind::Connective && a->connective == ConnectiveId::Neg) return a->children[0];
  return f_neg(a);
}

Formula s_monus(const Formula& a, const Formula& b) {
  if (is_const(b) && b->payload == UnitValue::zero()) return a;
  if (is_const(a) && a->payload == UnitValue::zero()) return a;
  if (is_const(a) && is_const(b)) return make_const(monus(a->payload, b->payload));
  return f_monus(a, b);
}

// min(a, b) = a -. (a -. b); the larger operand goes in the single slot.
Formula s_min(Formula a, Formula b) {
  if (a == b) return a;
  if (is_const(a) && is_const(b)) return make_const(vmin(a->payload, b->payload));
  if (tree_size(a) > tree_size(b)) std::swap(a, b);
  return s_monus(a, s_monus(a, b));
}

Formula s_max(const Formula& a, const Formula& b) {
  if (a == b) return a;
  if (is_const(a) && is_const(b)) return make_const(vmax(a->payload, b->payload));
  return s_neg(s_min(s_neg(a), s_neg(b)));
}

template <typename Op>
Formula balanced(std::vector<Formula> items, Op op) {
  while (items.size() > 1) {
    std::vector<Formula> next;
    for (std::size_t i = 0; i + 1 < items.size(); i += 2) next.push_back(op(items[i], items[i + 1]));
    if (items.size() % 2) next.push_back(items.back());
    items = std::move(next);
  }
  return items.front();
}

UnitValue round_to(const UnitValue& v, const Rational& step) {
  Rational scaled = v.value() / step;
  std::int64_t lo = scaled.num() / scaled.den();
  Rational frac = scaled - Rational(lo);
  std::int64_t k = frac > Rational(1, 2) ? lo + 1 : lo;
  return UnitValue(step * Rational(k));
}

const FiniteStructure& empty_structure() {
  static const FiniteStructure M(Signature{}, {});
  return M;
}

std::vector<std::string> variable_names(int arity) {
  std::vector<std::string> names;
  for (int i = 0; i < arity; ++i) names.push_back(grid_variable(i));
  return names;
}

void check_expression(const Formula& expr, int arity) {
  auto names = variable_names(arity);
  for (const Variable& v : free_vars(expr)) {
    if (v.sort != kValueSort || std::find(names.begin(), names.end(), v.name) == names.end()) {
      throw StructuralError("expression has free variable " + v.name + " outside t0..t" + std::to_string(arity - 1));
    }
  }
}

}  // namespace

std::vector<UnitValue> evaluate_on_grid(const Formula& expr, const GridFunction& shape) {
  check_expression(expr, shape.arity);
  Evaluator ev(empty_structure(), expr, {}, variable_names(shape.arity));
  std::vector<UnitValue> out;
  out.reserve(shape.point_count());
  for (std::size_t i = 0; i < shape.point_count(); ++i) {
    std::vector<UnitValue> p = shape.point(i);
    out.push_back(ev({}, p));
  }
  return out;
}

UnitValue verify_synthesis(const Formula& expr, const GridFunction& target) {
  target.validate();
  std::vector<UnitValue> got = evaluate_on_grid(expr, target);
  UnitValue worst = UnitValue::zero();
  for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, absdiff(got[i], target.values[i]));
  return worst;
}

bool uses_only_neg_monus(const Formula& expr) {
  std::set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack = {expr.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    switch (n->kind) {
      case FormulaNode::Kind::ValueVar:
        break;
      case FormulaNode::Kind::Connective:
        if (n->connective == ConnectiveId::Const) {
          if (!n->payload.is_dyadic()) return false;
        } else if (n->connective != ConnectiveId::Neg && n->connective != ConnectiveId::Monus) {
          return false;
        }
        break;
      default:
        return false;
    }
    for (const Formula& c : n->children) stack.push_back(c.get());
  }
  return true;
}

SynthesisResult synthesize(const GridFunction& target, const UnitValue& epsilon, const SynthesisOptions& opt) {
  target.validate();
  if (epsilon == UnitValue::zero() || !epsilon.is_dyadic()) {
    throw DomainError("synthesis needs a positive dyadic epsilon, got " + epsilon.to_string());
  }
  if (opt.modulus) {
    UnitValue step_change = (*opt.modulus)(target.pitch);
    if (Rational(2) * step_change.value() > epsilon.value()) {
      throw DomainError("epsilon " + epsilon.to_string() + " is below twice the modulus at one pitch step (" +
                        step_change.to_string() + ")");
    }
    for (std::size_t i = 0; i < target.point_count(); ++i) {
      std::vector<int> c = target.coords(i);
      for (int k = 0; k < target.arity; ++k) {
        if (c[k] + 1 >= target.side()) continue;
        std::vector<int> nb = c;
        ++nb[k];
        std::size_t j = target.index_of(nb);
        if (absdiff(target.values[i], target.values[j]) > step_change) {
          auto text = [&](std::size_t idx) {
            std::string s = "(";
            for (const UnitValue& x : target.point(idx)) s += (s.size() > 1 ? "," : "") + x.to_string();
            return s + ")";
          };
          throw DomainError("target changes by more than the modulus between " + text(i) + " and " + text(j));
        }
      }
    }
  }

  SynthesisResult result;
  Rational step(1);
  while (step > epsilon.value()) step = step / Rational(2);
  result.constant_step = UnitValue(step);

  const std::size_t K = target.point_count();
  std::vector<UnitValue> rounded;
  for (const UnitValue& v : target.values) rounded.push_back(round_to(v, step));
  std::vector<std::vector<int>> coords;
  for (std::size_t i = 0; i < K; ++i) coords.push_back(target.coords(i));

  std::vector<Formula> vars;
  for (int k = 0; k < target.arity; ++k) vars.push_back(make_value_var(grid_variable(k)));
  std::map<std::tuple<int, bool, int, int, UnitValue, UnitValue>, Formula> cache;
  const int side_steps = target.side() - 1;

  auto interpolant = [&](std::size_t x, std::size_t y) -> Formula {
    const UnitValue &a = rounded[x], &b = rounded[y];
    if (a == b) return make_const(a);
    int k = 0;
    while (coords[x][k] == coords[y][k]) ++k;
    bool flip = coords[x][k] > coords[y][k];
    int p = flip ? side_steps - coords[x][k] : coords[x][k];
    int q = flip ? side_steps - coords[y][k] : coords[y][k];
    auto key = std::make_tuple(k, flip, p, q, a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Formula s = flip ? s_neg(vars[k]) : vars[k];
    Formula shifted = s_monus(s, make_const(UnitValue(target.pitch.value() * Rational(p))));
    bool up = a >= b;
    UnitValue top = up ? a : neg(a), floor = up ? b : neg(b);
    Rational gap = target.pitch.value() * Rational(q - p);
    Rational slope = top.value() / gap;
    std::int64_t m = (slope.num() + slope.den() - 1) / slope.den();
    if (m > 64) {
      throw DomainError("slope " + std::to_string(m) + " exceeds the cap of 64; use a coarser pitch");
    }
    result.max_slope = std::max(result.max_slope, static_cast<int>(m));
    Formula body = make_const(top);
    for (std::int64_t i = 0; i < m; ++i) body = s_monus(body, shifted);
    body = s_max(body, make_const(floor));
    if (!up) body = s_neg(body);
    cache.emplace(key, body);
    return body;
  };

  std::vector<Formula> per_point;
  for (std::size_t x = 0; x < K; ++x) {
    std::vector<Formula> parts;
    std::set<const FormulaNode*> seen;
    for (std::size_t y = 0; y < K; ++y) {
      if (y == x) continue;
      Formula h = interpolant(x, y);
      if (seen.insert(h.get()).second) parts.push_back(h);
    }
    per_point.push_back(parts.empty() ? make_const(rounded[x]) : balanced(parts, s_max));
  }
  std::vector<Formula> distinct;
  std::set<const FormulaNode*> seen;
  for (const Formula& g : per_point) {
    if (seen.insert(g.get()).second) distinct.push_back(g);
  }
  result.expr = balanced(distinct, s_min);
  result.tree_size = tree_size(result.expr);
  result.dag_size = dag_size(result.expr);
  result.max_error = verify_synthesis(result.expr, target);
  return result;
}

LatticeEnumeration enumerate_lattice(const GridFunction& target, int depth, const std::vector<UnitValue>& constants) {
  target.validate();
  if (depth < 0) throw DomainError("enumeration depth must be non-negative");
  using Vec = std::vector<Rational>;
  const std::size_t K = target.point_count();
  std::set<Vec> all;
  for (int k = 0; k < target.arity; ++k) {
    Vec v;
    for (std::size_t i = 0; i < K; ++i) v.push_back(target.point(i)[k].value());
    all.insert(v);
  }
  for (const UnitValue& c : constants) all.insert(Vec(K, c.value()));

  LatticeEnumeration out;
  out.depth = depth;
  out.counts.push_back(all.size());
  for (int d = 1; d <= depth; ++d) {
    std::vector<Vec> level(all.begin(), all.end());
    std::set<Vec> next = all;
    Vec tmp(K);
    for (const Vec& f : level) {
      for (std::size_t i = 0; i < K; ++i) tmp[i] = Rational(1) - f[i];
      next.insert(tmp);
    }
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        for (std::size_t i = 0; i < K; ++i) tmp[i] = std::min(level[a][i], level[b][i]);
        next.insert(tmp);
        for (std::size_t i = 0; i < K; ++i) tmp[i] = std::max(level[a][i], level[b][i]);
        next.insert(tmp);
      }
    }
    all = std::move(next);
    out.counts.push_back(all.size());
    if (out.counts[d] == out.counts[d - 1]) {
      // Closed: deeper levels add nothing.
      for (int e = d + 1; e <= depth; ++e) out.counts.push_back(all.size());
      break;
    }
  }

  out.best_error = UnitValue::one();
  const Rational pitch = target.pitch.value();
  for (const Vec& f : all) {
    Rational worst(0);
    for (std::size_t i = 0; i < K; ++i) worst = std::max(worst, abs(f[i] - target.values[i].value()));
    if (worst < out.best_error.value() || out.best_values.empty()) {
      out.best_error = UnitValue(worst);
      out.best_values.clear();
      for (const Rational& x : f) out.best_values.emplace_back(x);
    }
    for (std::size_t i = 0; i < K; ++i) {
      std::vector<int> c = target.coords(i);
      for (int k = 0; k < target.arity; ++k) {
        if (c[k] + 1 >= target.side()) continue;
        std::vector<int> nb = c;
        ++nb[k];
        if (abs(f[i] - f[target.index_of(nb)]) > pitch) out.all_one_lipschitz = false;
      }
    }
  }
  return out;
}

}  // namespace contlogic
