#pragma once

#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/lang/signature.hpp"
#include "random_gen.hpp"

namespace testsupport {

/// One sort S with zero-ary c, unary f, binary g, unary P, binary R, and a second
/// sort T with metric d_T, unary h : T -> S and Q(S, T). Identity moduli.
inline contlogic::Signature test_signature() {
  contlogic::Signature sig;
  int s = sig.add_sort("S");
  int t = sig.add_sort("T");
  sig.add_function("c", {}, s);
  sig.add_function("f", {s}, s);
  sig.add_function("g", {s, s}, s);
  sig.add_function("h", {t}, s);
  sig.add_predicate("P", {s});
  sig.add_predicate("R", {s, s});
  sig.add_predicate("Q", {s, t});
  return sig;
}

/// Random formulas over a signature. Element variables come from a small name
/// pool per sort, so shadowing and reuse of bound names are common.
class FormulaGen {
 public:
  FormulaGen(Rng& rng, const contlogic::Signature& sig) : rng_(rng), sig_(sig) {
    pools_.assign(sig.sort_count(), {});
    const char* base[] = {"x", "y", "z", "w"};
    for (int s = 0; s < sig.sort_count(); ++s) {
      for (const char* b : base) pools_[s].push_back(s == 0 ? std::string(b) : std::string(b) + std::to_string(s));
    }
  }

  /// Truth-value variables to mix in as leaves.
  void set_value_vars(std::vector<std::string> names) { value_vars_ = std::move(names); }
  /// Use only the connectives prenex accepts without rewriting (no absdiff).
  void set_allow_absdiff(bool allow) { allow_absdiff_ = allow; }
  void set_allow_med(bool allow) { allow_med_ = allow; }

  contlogic::Term term(int sort, int depth) {
    using namespace contlogic;
    std::vector<int> producers;
    for (int f = 0; f < static_cast<int>(sig_.functions().size()); ++f) {
      if (sig_.function(f).target_sort == sort) producers.push_back(f);
    }
    if (depth <= 0 || producers.empty() || rng_.uniform(0, 2) == 0) {
      return make_var(pools_[sort][rng_.uniform(0, static_cast<int>(pools_[sort].size()) - 1)], sort);
    }
    int f = producers[rng_.uniform(0, static_cast<int>(producers.size()) - 1)];
    std::vector<Term> args;
    for (int s : sig_.function(f).arg_sorts) args.push_back(term(s, depth - 1));
    return make_app(sig_, f, std::move(args));
  }

  contlogic::Formula leaf() {
    using namespace contlogic;
    int choice = rng_.uniform(0, 9);
    if (choice == 0) return make_const(rng_.grid_value(8));
    if (choice == 1 && !value_vars_.empty()) {
      return make_value_var(value_vars_[rng_.uniform(0, static_cast<int>(value_vars_.size()) - 1)]);
    }
    if (choice <= 3) {
      int s = rng_.uniform(0, sig_.sort_count() - 1);
      return make_metric(sig_, term(s, 1), term(s, 1));
    }
    int p = rng_.uniform(0, static_cast<int>(sig_.predicates().size()) - 1);
    std::vector<Term> args;
    for (int s : sig_.predicate(p).arg_sorts) args.push_back(term(s, 1));
    return make_atomic(sig_, p, std::move(args));
  }

  contlogic::Formula formula(int depth) {
    using namespace contlogic;
    if (depth <= 0) return leaf();
    int choice = rng_.uniform(0, 12);
    switch (choice) {
      case 0: return leaf();
      case 1: return f_neg(formula(depth - 1));
      case 2: return f_half(formula(depth - 1));
      case 3: return f_monus(formula(depth - 1), formula(depth - 1));
      case 4: return f_min(formula(depth - 1), formula(depth - 1));
      case 5: return f_max(formula(depth - 1), formula(depth - 1));
      case 6: return f_plus(formula(depth - 1), formula(depth - 1));
      case 7:
        if (allow_absdiff_) return f_absdiff(formula(depth - 1), formula(depth - 1));
        return f_monus(formula(depth - 1), formula(depth - 1));
      case 8:
        if (allow_med_) return make_med(2, {formula(depth - 1), formula(depth - 1), formula(depth - 1)});
        return f_max(formula(depth - 1), formula(depth - 1));
      default: {
        int s = rng_.uniform(0, 3) == 0 ? rng_.uniform(0, sig_.sort_count() - 1) : 0;
        Variable v{pools_[s][rng_.uniform(0, static_cast<int>(pools_[s].size()) - 1)], s};
        return rng_.coin() ? f_sup(v, formula(depth - 1)) : f_inf(v, formula(depth - 1));
      }
    }
  }

 private:
  Rng& rng_;
  const contlogic::Signature& sig_;
  std::vector<std::vector<std::string>> pools_;
  std::vector<std::string> value_vars_;
  bool allow_absdiff_ = true;
  bool allow_med_ = true;
};

}  // namespace testsupport
