#include "contlogic/model/eval.hpp"

#include <unordered_map>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

struct CTerm {
  int slot = -1;      // variable slot, or -1 for an application
  int function = -1;
  std::vector<CTerm> args;
};

struct CNode {
  FormulaNode::Kind kind;
  int symbol = -1;
  ConnectiveId connective = ConnectiveId::Const;
  UnitValue payload;
  int med_n = 0;
  Quantifier quantifier = Quantifier::Sup;
  int slot = -1;  // bound-variable slot, or value slot for ValueVar
  int sort = 0;
  std::vector<int> kids;
  std::vector<CTerm> terms;
};

}  // namespace

struct Evaluator::Impl {
  const FiniteStructure* M = nullptr;
  std::vector<CNode> nodes;
  int root = -1;
  int slot_count = 0;
  std::size_t param_count = 0;
  std::size_t value_count = 0;
  bool quantifier_free = true;

  std::vector<std::pair<Variable, int>> scope;  // innermost last
  std::map<std::string, int> value_slots;
  std::unordered_map<const FormulaNode*, int> shared;

  int lookup(const Variable& v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw StructuralError("unbound variable " + v.name);
  }

  CTerm compile_term(const Term& t) const {
    CTerm c;
    if (t->kind == TermNode::Kind::Var) {
      c.slot = lookup(t->var);
      return c;
    }
    c.function = t->function;
    for (const Term& a : t->args) c.args.push_back(compile_term(a));
    return c;
  }

  int compile(const Formula& f) {
    if (quantifier_free) {
      auto it = shared.find(f.get());
      if (it != shared.end()) return it->second;
    }
    CNode n;
    n.kind = f->kind;
    n.symbol = f->symbol;
    n.connective = f->connective;
    n.payload = f->payload;
    n.med_n = f->med_n;
    n.quantifier = f->quantifier;
    for (const Term& t : f->terms) n.terms.push_back(compile_term(t));
    if (f->kind == FormulaNode::Kind::ValueVar) {
      auto vs = value_slots.find(f->var.name);
      if (vs == value_slots.end()) throw StructuralError("unbound truth-value variable " + f->var.name);
      n.slot = vs->second;
    }
    if (f->kind == FormulaNode::Kind::Quantifier) {
      n.slot = slot_count++;
      n.sort = f->var.sort;
      scope.emplace_back(f->var, n.slot);
      n.kids.push_back(compile(f->children[0]));
      scope.pop_back();
    } else {
      for (const Formula& c : f->children) n.kids.push_back(compile(c));
    }
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size()) - 1;
    if (quantifier_free) shared[f.get()] = id;
    return id;
  }

  int eval_term(const CTerm& t, const std::vector<int>& env) const {
    if (t.slot >= 0) return env[t.slot];
    const auto& sorts = M->signature().function(t.function).arg_sorts;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t.args.size(); ++i) idx = idx * M->carrier_size(sorts[i]) + eval_term(t.args[i], env);
    return M->apply_at(t.function, idx);
  }

  UnitValue eval_local(const CNode& n, const UnitValue* kid_values, const std::vector<int>& env,
                       std::span<const UnitValue> values) const {
    using K = FormulaNode::Kind;
    switch (n.kind) {
      case K::Atomic: {
        const auto& sorts = M->signature().predicate(n.symbol).arg_sorts;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n.terms.size(); ++i) idx = idx * M->carrier_size(sorts[i]) + eval_term(n.terms[i], env);
        return M->pred_at(n.symbol, idx);
      }
      case K::Metric:
        return M->dist(n.symbol, eval_term(n.terms[0], env), eval_term(n.terms[1], env));
      case K::ValueVar:
        return values[n.slot];
      case K::Med:
        return med(std::span<const UnitValue>(kid_values, n.kids.size()), n.med_n);
      case K::Connective:
        return apply_connective(n.connective, std::span<const UnitValue>(kid_values, n.kids.size()), n.payload);
      case K::Quantifier:
        break;
    }
    throw std::logic_error("quantifier in local evaluation");
  }

  UnitValue eval_rec(int id, std::vector<int>& env, std::span<const UnitValue> values) const {
    const CNode& n = nodes[id];
    if (n.kind == FormulaNode::Kind::Quantifier) {
      const bool sup = n.quantifier == Quantifier::Sup;
      UnitValue best = sup ? UnitValue::zero() : UnitValue::one();
      const UnitValue stop = sup ? UnitValue::one() : UnitValue::zero();
      int size = M->carrier_size(n.sort);
      for (int e = 0; e < size && best != stop; ++e) {
        env[n.slot] = e;
        UnitValue v = eval_rec(n.kids[0], env, values);
        if (sup ? best < v : v < best) best = v;
      }
      return best;
    }
    UnitValue kid_values[8];
    std::vector<UnitValue> many;
    UnitValue* buf = kid_values;
    if (n.kids.size() > 8) {
      many.resize(n.kids.size());
      buf = many.data();
    }
    for (std::size_t i = 0; i < n.kids.size(); ++i) buf[i] = eval_rec(n.kids[i], env, values);
    return eval_local(n, buf, env, values);
  }

  UnitValue eval_flat(std::vector<int>& env, std::span<const UnitValue> values) const {
    std::vector<UnitValue> val(nodes.size());
    std::vector<UnitValue> buf;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const CNode& n = nodes[id];
      buf.clear();
      for (int k : n.kids) buf.push_back(val[k]);
      val[id] = eval_local(n, buf.data(), env, values);
    }
    return val[root];
  }
};

namespace {

bool has_quantifier(const Formula& f, std::unordered_map<const FormulaNode*, bool>& memo) {
  auto it = memo.find(f.get());
  if (it != memo.end()) return it->second;
  bool q = f->kind == FormulaNode::Kind::Quantifier;
  for (const Formula& c : f->children) q = q || has_quantifier(c, memo);
  memo[f.get()] = q;
  return q;
}

}  // namespace

Evaluator::Evaluator(const FiniteStructure& M, const Formula& f, std::vector<Variable> params,
                     std::vector<std::string> value_params)
    : impl_(std::make_unique<Impl>()) {
  impl_->M = &M;
  std::unordered_map<const FormulaNode*, bool> memo;
  impl_->quantifier_free = !has_quantifier(f, memo);
  for (const Variable& v : params) impl_->scope.emplace_back(v, impl_->slot_count++);
  impl_->param_count = params.size();
  for (std::size_t i = 0; i < value_params.size(); ++i) impl_->value_slots[value_params[i]] = static_cast<int>(i);
  impl_->value_count = value_params.size();
  impl_->root = impl_->compile(f);
  impl_->scope.clear();
  impl_->shared.clear();
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

UnitValue Evaluator::operator()(std::span<const int> elements, std::span<const UnitValue> values) const {
  if (elements.size() != impl_->param_count || values.size() != impl_->value_count) {
    throw StructuralError("evaluator called with the wrong number of arguments");
  }
  std::vector<int> env(impl_->slot_count, 0);
  std::copy(elements.begin(), elements.end(), env.begin());
  if (impl_->quantifier_free) return impl_->eval_flat(env, values);
  return impl_->eval_rec(impl_->root, env, values);
}

int eval_term(const FiniteStructure& M, const EvalEnv& env, const Term& t) {
  if (t->kind == TermNode::Kind::Var) {
    auto it = env.elements.find(t->var);
    if (it == env.elements.end()) throw StructuralError("unbound variable " + t->var.name);
    return it->second;
  }
  std::vector<int> args;
  for (const Term& a : t->args) args.push_back(eval_term(M, env, a));
  return M.apply(t->function, args);
}

UnitValue eval_formula(const FiniteStructure& M, const EvalEnv& env, const Formula& f) {
  std::vector<Variable> params;
  std::vector<int> elements;
  for (const auto& [v, e] : env.elements) {
    params.push_back(v);
    elements.push_back(e);
  }
  std::vector<std::string> value_names;
  std::vector<UnitValue> values;
  for (const auto& [name, value] : env.values) {
    value_names.push_back(name);
    values.push_back(value);
  }
  return Evaluator(M, f, std::move(params), std::move(value_names))(elements, values);
}

}  // namespace contlogic
