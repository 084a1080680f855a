#pragma once

// Naive tree-walking evaluator used as an independent reference in tests. It shares
// nothing with the library evaluator beyond the AST and structure types: connectives
// are computed here directly on rationals.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/model/structure.hpp"

namespace testsupport {

using contlogic::Formula;
using contlogic::FormulaNode;
using contlogic::Rational;
using contlogic::Term;
using contlogic::TermNode;
using contlogic::Variable;

using OracleEnv = std::map<Variable, int>;
using OracleValues = std::map<std::string, Rational>;

inline int oracle_term(const contlogic::FiniteStructure& M, const OracleEnv& env, const Term& t) {
  if (t->kind == TermNode::Kind::Var) return env.at(t->var);
  std::vector<int> args;
  for (const Term& a : t->args) args.push_back(oracle_term(M, env, a));
  const auto& sorts = M.signature().function(t->function).arg_sorts;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < args.size(); ++i) idx = idx * M.carrier_size(sorts[i]) + args[i];
  return M.function_table(t->function)[idx];
}

inline Rational oracle_eval(const contlogic::FiniteStructure& M, const Formula& f, OracleEnv env,
                            const OracleValues& values = {}) {
  using K = FormulaNode::Kind;
  using C = contlogic::ConnectiveId;
  const Rational zero(0), one(1);
  auto sub = [&](std::size_t i) { return oracle_eval(M, f->children[i], env, values); };
  switch (f->kind) {
    case K::Atomic: {
      const auto& sorts = M.signature().predicate(f->symbol).arg_sorts;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < f->terms.size(); ++i) idx = idx * M.carrier_size(sorts[i]) + oracle_term(M, env, f->terms[i]);
      return M.predicate_table(f->symbol)[idx];
    }
    case K::Metric: {
      int a = oracle_term(M, env, f->terms[0]), b = oracle_term(M, env, f->terms[1]);
      return M.metric_table(f->symbol)[a * M.carrier_size(f->symbol) + b];
    }
    case K::ValueVar:
      return values.at(f->var.name);
    case K::Med: {
      std::vector<Rational> vs;
      for (std::size_t i = 0; i < f->children.size(); ++i) vs.push_back(sub(i));
      std::sort(vs.begin(), vs.end());
      return vs[f->med_n - 1];
    }
    case K::Quantifier: {
      bool sup = f->quantifier == contlogic::Quantifier::Sup;
      Rational best = sup ? zero : one;
      for (int e = 0; e < M.carrier_size(f->var.sort); ++e) {
        env[f->var] = e;
        Rational v = oracle_eval(M, f->children[0], env, values);
        best = sup ? std::max(best, v) : std::min(best, v);
      }
      return best;
    }
    case K::Connective:
      switch (f->connective) {
        case C::Const: return f->payload;
        case C::Neg: return one - sub(0);
        case C::Half: return sub(0) / Rational(2);
        case C::Monus: return std::max(sub(0) - sub(1), zero);
        case C::Min: return std::min(sub(0), sub(1));
        case C::Max: return std::max(sub(0), sub(1));
        case C::PlusTrunc: return std::min(sub(0) + sub(1), one);
        case C::AbsDiff: {
          Rational d = sub(0) - sub(1);
          return d < zero ? -d : d;
        }
      }
  }
  return zero;
}

}  // namespace testsupport
