#include "contlogic/lang/transform.hpp"

#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  auto node = std::make_shared<FormulaNode>(*f);
  node->children = std::move(children);
  return node;
}

// Sign of a connective in argument i: +1 increasing, -1 decreasing.
int monotonicity(const FormulaNode& f, std::size_t i) {
  if (f.kind == FormulaNode::Kind::Med) return 1;
  switch (f.connective) {
    case ConnectiveId::Neg: return -1;
    case ConnectiveId::Monus: return i == 0 ? 1 : -1;
    case ConnectiveId::Half:
    case ConnectiveId::Min:
    case ConnectiveId::Max:
    case ConnectiveId::PlusTrunc: return 1;
    default: throw StructuralError("connective " + std::string(connective_name(f.connective)) + " has no declared monotonicity");
  }
}

class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}
  std::string take(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int k = 1;; ++k) {
      std::string candidate = base + "_" + std::to_string(k);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
};

Term rename_term(const Term& t, const std::map<Variable, std::string>& renames) {
  if (t->kind == TermNode::Kind::Var) {
    auto it = renames.find(t->var);
    if (it == renames.end()) return t;
    return make_var(it->second, t->var.sort);
  }
  auto node = std::make_shared<TermNode>(*t);
  for (Term& a : node->args) a = rename_term(a, renames);
  return node;
}

// Gives every binder a distinct name that also differs from every free variable.
Formula rename_apart(const Formula& f, std::map<Variable, std::string>& renames, FreshNames& fresh) {
  using K = FormulaNode::Kind;
  if (f->kind == K::Atomic || f->kind == K::Metric) {
    auto node = std::make_shared<FormulaNode>(*f);
    for (Term& t : node->terms) t = rename_term(t, renames);
    return node;
  }
  if (f->kind == K::Quantifier) {
    std::string name = fresh.take(f->var.name);
    auto saved = renames.find(f->var) == renames.end() ? std::optional<std::string>() : renames[f->var];
    renames[f->var] = name;
    Formula body = rename_apart(f->children[0], renames, fresh);
    if (saved) {
      renames[f->var] = *saved;
    } else {
      renames.erase(f->var);
    }
    return make_quantifier(f->quantifier, {name, f->var.sort}, body);
  }
  if (f->children.empty()) return f;
  std::vector<Formula> kids;
  for (const Formula& c : f->children) kids.push_back(rename_apart(c, renames, fresh));
  return rebuild(f, std::move(kids));
}

struct Prefixed {
  std::vector<std::pair<Quantifier, Variable>> prefix;
  Formula matrix;
};

Quantifier flip(Quantifier q) { return q == Quantifier::Sup ? Quantifier::Inf : Quantifier::Sup; }

Prefixed pull(const Formula& f) {
  using K = FormulaNode::Kind;
  if (f->kind == K::Quantifier) {
    Prefixed inner = pull(f->children[0]);
    inner.prefix.insert(inner.prefix.begin(), {f->quantifier, f->var});
    return inner;
  }
  if (f->children.empty()) return {{}, f};
  Prefixed out;
  std::vector<Formula> kids;
  for (std::size_t i = 0; i < f->children.size(); ++i) {
    Prefixed sub = pull(f->children[i]);
    int sign = sub.prefix.empty() ? 1 : monotonicity(*f, i);
    for (auto& [q, v] : sub.prefix) out.prefix.emplace_back(sign > 0 ? q : flip(q), v);
    kids.push_back(sub.matrix);
  }
  out.matrix = rebuild(f, std::move(kids));
  return out;
}

Formula desugar_rec(const Formula& f, std::unordered_map<const FormulaNode*, Formula>& memo) {
  auto it = memo.find(f.get());
  if (it != memo.end()) return it->second;
  std::vector<Formula> kids;
  for (const Formula& c : f->children) kids.push_back(desugar_rec(c, memo));
  Formula out;
  if (f->kind != FormulaNode::Kind::Connective) {
    out = f->children.empty() ? f : rebuild(f, std::move(kids));
  } else {
    switch (f->connective) {
      case ConnectiveId::Min:
        out = f_monus(kids[0], f_monus(kids[0], kids[1]));
        break;
      case ConnectiveId::Max: {
        Formula na = f_neg(kids[0]);
        out = f_neg(f_monus(na, f_monus(na, f_neg(kids[1]))));
        break;
      }
      case ConnectiveId::PlusTrunc:
        out = f_neg(f_monus(f_neg(kids[0]), kids[1]));
        break;
      case ConnectiveId::AbsDiff:
        out = f_neg(f_monus(f_neg(f_monus(kids[0], kids[1])), f_monus(kids[1], kids[0])));
        break;
      default:
        out = kids.empty() ? f : rebuild(f, std::move(kids));
    }
  }
  memo[f.get()] = out;
  return out;
}

Term subst_term(const Term& t, const Variable& v, const Term& s) {
  if (t->kind == TermNode::Kind::Var) return t->var == v ? s : t;
  auto node = std::make_shared<TermNode>(*t);
  for (Term& a : node->args) a = subst_term(a, v, s);
  return node;
}

Formula subst_rec(const Formula& f, const Variable& v, const Term& s, const std::set<Variable>& s_vars, FreshNames& fresh) {
  using K = FormulaNode::Kind;
  if (f->kind == K::Atomic || f->kind == K::Metric) {
    auto node = std::make_shared<FormulaNode>(*f);
    for (Term& t : node->terms) t = subst_term(t, v, s);
    return node;
  }
  if (f->kind == K::Quantifier) {
    if (f->var == v) return f;
    if (!free_vars(f).count(v)) return f;
    Formula body = f->children[0];
    Variable bound = f->var;
    if (s_vars.count(bound)) {
      Variable renamed{fresh.take(bound.name), bound.sort};
      body = substitute(body, bound, make_var(renamed.name, renamed.sort));
      bound = renamed;
    }
    return make_quantifier(f->quantifier, bound, subst_rec(body, v, s, s_vars, fresh));
  }
  if (f->children.empty()) return f;
  std::vector<Formula> kids;
  for (const Formula& c : f->children) kids.push_back(subst_rec(c, v, s, s_vars, fresh));
  return rebuild(f, std::move(kids));
}

}  // namespace

Formula expand_absdiff(const Formula& f) {
  if (f->children.empty()) return f;
  std::vector<Formula> kids;
  for (const Formula& c : f->children) kids.push_back(expand_absdiff(c));
  if (f->kind == FormulaNode::Kind::Connective && f->connective == ConnectiveId::AbsDiff) {
    return f_plus(f_monus(kids[0], kids[1]), f_monus(kids[1], kids[0]));
  }
  return rebuild(f, std::move(kids));
}

Formula prenex(const Formula& f) {
  std::set<std::string> used;
  for (const Variable& v : free_vars(f)) used.insert(v.name);
  FreshNames fresh(used);
  std::map<Variable, std::string> renames;
  Formula renamed = rename_apart(expand_absdiff(f), renames, fresh);
  Prefixed p = pull(renamed);
  Formula out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) out = make_quantifier(it->first, it->second, out);
  return out;
}

bool is_prenex(const Formula& f) {
  const FormulaNode* n = f.get();
  while (n->kind == FormulaNode::Kind::Quantifier) n = n->children[0].get();
  std::vector<const FormulaNode*> stack = {n};
  while (!stack.empty()) {
    const FormulaNode* m = stack.back();
    stack.pop_back();
    if (m->kind == FormulaNode::Kind::Quantifier) return false;
    for (const Formula& c : m->children) stack.push_back(c.get());
  }
  return true;
}

Formula desugar(const Formula& f) {
  std::unordered_map<const FormulaNode*, Formula> memo;
  return desugar_rec(f, memo);
}

Formula substitute(const Formula& f, const Variable& v, const Term& t) {
  std::set<Variable> t_vars = term_vars(t);
  std::set<std::string> used = all_var_names(f);
  for (const Variable& x : t_vars) used.insert(x.name);
  FreshNames fresh(used);
  return subst_rec(f, v, t, t_vars, fresh);
}

}  // namespace contlogic
