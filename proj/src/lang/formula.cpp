#include "contlogic/lang/formula.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "contlogic/errors.hpp"
#include "contlogic/lang/signature.hpp"

namespace contlogic {

Term make_var(const std::string& name, int sort) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermNode::Kind::Var;
  node->var = {name, sort};
  node->sort = sort;
  return node;
}

Term make_app(const Signature& sig, int function, std::vector<Term> args) {
  const FunctionSymbol& f = sig.function(function);
  if (args.size() != f.arg_sorts.size()) {
    throw StructuralError("function " + f.name + " takes " + std::to_string(f.arg_sorts.size()) + " argument(s)");
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i]->sort != f.arg_sorts[i]) {
      throw StructuralError("argument " + std::to_string(i + 1) + " of " + f.name + " must have sort " +
                            sig.sort_name(f.arg_sorts[i]));
    }
  }
  auto node = std::make_shared<TermNode>();
  node->kind = TermNode::Kind::App;
  node->function = function;
  node->args = std::move(args);
  node->sort = f.target_sort;
  return node;
}

Formula make_atomic(const Signature& sig, int predicate, std::vector<Term> args) {
  const PredicateSymbol& p = sig.predicate(predicate);
  if (args.size() != p.arg_sorts.size()) {
    throw StructuralError("predicate " + p.name + " takes " + std::to_string(p.arg_sorts.size()) + " argument(s)");
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i]->sort != p.arg_sorts[i]) {
      throw StructuralError("argument " + std::to_string(i + 1) + " of " + p.name + " must have sort " +
                            sig.sort_name(p.arg_sorts[i]));
    }
  }
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Atomic;
  node->symbol = predicate;
  node->terms = std::move(args);
  return node;
}

Formula make_metric(const Signature& sig, Term lhs, Term rhs) {
  if (lhs->sort != rhs->sort) {
    throw StructuralError("metric arguments have different sorts " + sig.sort_name(lhs->sort) + " and " +
                          sig.sort_name(rhs->sort));
  }
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Metric;
  node->symbol = lhs->sort;
  node->terms = {std::move(lhs), std::move(rhs)};
  return node;
}

Formula make_connective(ConnectiveId id, std::vector<Formula> children) {
  if (static_cast<int>(children.size()) != connective_arity(id)) {
    throw StructuralError(std::string(connective_name(id)) + " expects " + std::to_string(connective_arity(id)) +
                          " subformula(s)");
  }
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Connective;
  node->connective = id;
  node->children = std::move(children);
  return node;
}

Formula make_const(const UnitValue& value) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Connective;
  node->connective = ConnectiveId::Const;
  node->payload = value;
  return node;
}

Formula make_med(int n, std::vector<Formula> children) {
  if (n < 1 || static_cast<long>(children.size()) != 2L * n - 1) {
    throw StructuralError("med " + std::to_string(n) + " expects " + std::to_string(2L * n - 1) + " subformulas");
  }
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Med;
  node->med_n = n;
  node->children = std::move(children);
  return node;
}

Formula make_quantifier(Quantifier q, Variable var, Formula body) {
  if (var.sort < 0) throw StructuralError("cannot quantify over truth-value variable " + var.name);
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Quantifier;
  node->quantifier = q;
  node->var = std::move(var);
  node->children = {std::move(body)};
  return node;
}

Formula make_value_var(const std::string& name) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::ValueVar;
  node->var = {name, kValueSort};
  return node;
}

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->sort != b->sort) return false;
  if (a->kind == TermNode::Kind::Var) return a->var == b->var;
  if (a->function != b->function || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!term_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  using K = FormulaNode::Kind;
  switch (a->kind) {
    case K::Atomic:
    case K::Metric:
      if (a->symbol != b->symbol || a->terms.size() != b->terms.size()) return false;
      for (std::size_t i = 0; i < a->terms.size(); ++i) {
        if (!term_equal(a->terms[i], b->terms[i])) return false;
      }
      return true;
    case K::Connective:
      if (a->connective != b->connective) return false;
      if (a->connective == ConnectiveId::Const) return a->payload == b->payload;
      break;
    case K::Med:
      if (a->med_n != b->med_n) return false;
      break;
    case K::Quantifier:
      if (a->quantifier != b->quantifier || !(a->var == b->var)) return false;
      break;
    case K::ValueVar:
      return a->var == b->var;
  }
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!formula_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

namespace {

void collect_term_vars(const Term& t, std::set<Variable>& out) {
  if (t->kind == TermNode::Kind::Var) {
    out.insert(t->var);
    return;
  }
  for (const Term& a : t->args) collect_term_vars(a, out);
}

const std::set<Variable>& free_memo(const Formula& f, std::unordered_map<const FormulaNode*, std::set<Variable>>& memo) {
  auto it = memo.find(f.get());
  if (it != memo.end()) return it->second;
  std::set<Variable> out;
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::Atomic:
    case K::Metric:
      for (const Term& t : f->terms) collect_term_vars(t, out);
      break;
    case K::ValueVar:
      out.insert(f->var);
      break;
    case K::Quantifier:
      out = free_memo(f->children[0], memo);
      out.erase(f->var);
      break;
    default:
      for (const Formula& c : f->children) {
        const auto& sub = free_memo(c, memo);
        out.insert(sub.begin(), sub.end());
      }
  }
  return memo[f.get()] = std::move(out);
}

void collect_names(const Formula& f, std::set<std::string>& out, std::unordered_set<const FormulaNode*>& seen) {
  if (!seen.insert(f.get()).second) return;
  if (f->kind == FormulaNode::Kind::Quantifier || f->kind == FormulaNode::Kind::ValueVar) out.insert(f->var.name);
  std::set<Variable> vs;
  for (const Term& t : f->terms) collect_term_vars(t, vs);
  for (const Variable& v : vs) out.insert(v.name);
  for (const Formula& c : f->children) collect_names(c, out, seen);
}

}  // namespace

std::set<Variable> free_vars(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::set<Variable>> memo;
  return free_memo(f, memo);
}

std::set<Variable> term_vars(const Term& t) {
  std::set<Variable> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> all_var_names(const Formula& f) {
  std::set<std::string> out;
  std::unordered_set<const FormulaNode*> seen;
  collect_names(f, out, seen);
  return out;
}

std::uint64_t tree_size(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::uint64_t> memo;
  auto rec = [&](auto&& self, const Formula& g) -> std::uint64_t {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    std::uint64_t n = 1;
    for (const Formula& c : g->children) n += self(self, c);
    memo[g.get()] = n;
    return n;
  };
  return rec(rec, f);
}

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack = {f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const Formula& c : n->children) stack.push_back(c.get());
  }
  return seen.size();
}

int depth(const Formula& f) {
  std::unordered_map<const FormulaNode*, int> memo;
  auto rec = [&](auto&& self, const Formula& g) -> int {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    int d = 0;
    for (const Formula& c : g->children) d = std::max(d, self(self, c));
    memo[g.get()] = d + 1;
    return d + 1;
  };
  return rec(rec, f);
}

}  // namespace contlogic
