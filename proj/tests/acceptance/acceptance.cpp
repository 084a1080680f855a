// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "contlogic/imag/imaginary.hpp"
#include "contlogic/lang/parser.hpp"
#include "contlogic/lang/transform.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/model/generators.hpp"
#include "contlogic/model/validate.hpp"
#include "contlogic/stab/definitions.hpp"
#include "contlogic/stab/glue.hpp"
#include "contlogic/stab/ladder.hpp"
#include "contlogic/stab/phi_matrix.hpp"
#include "contlogic/stab/topometric.hpp"
#include "contlogic/synth/synthesize.hpp"
#include "contlogic/unitval/connective.hpp"
#include "contlogic/unitval/flim.hpp"
#include "contlogic/unitval/modulus.hpp"
#include "contlogic/util/tuples.hpp"
#include "corpus.hpp"
#include "formula_gen.hpp"
#include "oracle_eval.hpp"
#include "random_gen.hpp"
#include "synth_targets.hpp"

using namespace contlogic;
using testsupport::Rng;

namespace {

UnitValue uv(std::int64_t p, std::int64_t q = 1) { return UnitValue(Rational(p, q)); }

// Counts failed expectations and keeps the first few messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what);
  }
  void note(const std::string& line) { notes_.push_back(line); }

  bool ok() const { return failures_ == 0; }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string str(const UnitValue& v) { return v.value().to_string(); }

PhiMatrix matrix_of(const testsupport::CorpusEntry& e) { return phi_matrix(e.M, e.phi(), e.x_vars(), e.y_vars()); }

PhiMatrix matrix_of(const FiniteStructure& M, const std::string& text) {
  return phi_matrix(M, parse_formula(text, M.signature()), {{"x", 0}}, {{"y", 0}});
}

const std::vector<UnitValue> kDyadicEps = {uv(1, 8), uv(1, 4), uv(1, 2), uv(1)};

void connective_identities(Checker& c) {
  for (int i = 0; i <= 32; ++i) {
    for (int j = 0; j <= 32; ++j) {
      UnitValue x = uv(i, 32), y = uv(j, 32);
      std::string at = " at (" + str(x) + ", " + str(y) + ")";
      c.expect(vmin(x, y) == monus(x, monus(x, y)), "min" + at);
      c.expect(vmax(x, y) == neg(vmin(neg(x), neg(y))), "max" + at);
      c.expect(plus_trunc(x, y) == neg(monus(neg(x), y)), "plus" + at);
      c.expect(absdiff(x, y) == plus_trunc(monus(x, y), monus(y, x)), "absdiff" + at);
    }
  }
}

std::vector<UnitValue> uvs(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<UnitValue> out;
  for (auto [p, q] : xs) out.push_back(uv(p, q));
  return out;
}

void forced_limits(Checker& c) {
  for (const UnitValue& v : {uv(0), uv(1, 3), uv(5, 8), uv(1)}) {
    auto t = flim_prefix(std::vector<UnitValue>(4, v));
    c.expect(t.modified_prefix.back() == v && t.error_bound == uv(1, 8), "constant sequence " + str(v));
  }
  c.expect(flim_prefix(uvs({{0, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}})).modified_prefix ==
               uvs({{0, 1}, {1, 2}, {3, 4}, {7, 8}, {15, 16}}),
           "[0,1,1,1,1]");
  c.expect(flim_prefix(uvs({{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}})).modified_prefix ==
               uvs({{0, 1}, {1, 2}, {1, 4}, {3, 8}, {5, 16}}),
           "[0,1,0,1,0]");

  // Steps bounded by 2^-n: the prefix should come back unchanged.
  Rng rng(1001);
  int changed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<UnitValue> seq = {rng.grid_value(64)};
    for (int n = 0; n + 1 < 12; ++n) {
      Rational step = Rational::pow2_neg(n) * Rational(rng.uniform(-8, 8), 8);
      seq.push_back(UnitValue::clamp(seq.back().value() + step));
    }
    bool same = flim_prefix(seq).modified_prefix == seq;
    changed += same ? 0 : 1;
    c.expect(same, "fast-Cauchy sequence modified (trial " + std::to_string(trial) + ")");
  }
  c.note("fast-Cauchy with steps <= 2^-n: " + std::to_string(changed) + "/1000 sequences modified");

  // The same property with steps bounded by 2^-(n+1), reported but not scored.
  Rng rng_half(1002);
  int changed_half = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<UnitValue> seq = {rng_half.grid_value(64)};
    for (int n = 0; n + 1 < 12; ++n) {
      Rational step = Rational::pow2_neg(n + 1) * Rational(rng_half.uniform(-8, 8), 8);
      seq.push_back(UnitValue::clamp(seq.back().value() + step));
    }
    if (flim_prefix(seq).modified_prefix != seq) ++changed_half;
  }
  c.note("info: with steps <= 2^-(n+1): " + std::to_string(changed_half) + "/1000 sequences modified");

  Rng rng_target(1003);
  for (int trial = 0; trial < 1000; ++trial) {
    UnitValue b = rng_target.grid_value(256);
    std::vector<UnitValue> seq;
    for (int n = 0; n < 12; ++n) {
      Rational off = Rational::pow2_neg(n) * Rational(rng_target.uniform(-16, 16), 16);
      seq.push_back(UnitValue::clamp(b.value() + off));
    }
    auto t = flim_prefix(seq);
    bool close = true;
    for (int n = 0; n < 12; ++n) close = close && abs(t.modified_prefix[n].value() - b.value()) <= Rational::pow2_neg(n);
    c.expect(close, "target agreement (trial " + std::to_string(trial) + ")");
  }
}

void probability_algebras(Checker& c) {
  std::vector<std::vector<Rational>> weights = {{Rational(1)},
                                                {Rational(1, 2), Rational(1, 2)},
                                                std::vector<Rational>(4, Rational(1, 4)),
                                                {Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
  for (const auto& w : weights) {
    FiniteStructure A = gen_prob_algebra(w);
    TheoryReport r = check_theory(A, prob_algebra_axioms(A.signature()));
    c.expect(r.entries.size() == 5, "five axioms");
    for (const TheoryEntry& e : r.entries) {
      c.expect(e.value == UnitValue::zero(), "axiom value " + str(e.value) + " on " + std::to_string(w.size()) + " atoms");
    }
  }
  for (int k = 1; k <= 3; ++k) {
    FiniteStructure A = gen_prob_algebra(std::vector<Rational>(1u << k, Rational(1, 1 << k)));
    Formula apa = atomless_sentence(A.signature());
    UnitValue v = eval_formula(A, {}, apa);
    Rational oracle = testsupport::oracle_eval(A, apa, {});
    c.expect(v == UnitValue(Rational::pow2_neg(k + 1)), "APA at k=" + std::to_string(k) + " gave " + str(v));
    c.expect(v.value() == oracle, "APA disagrees with the reference evaluator at k=" + std::to_string(k));
  }
}

void imaginary_theories(Checker& c) {
  auto corpus = testsupport::stability_corpus();
  c.expect(corpus.size() == 10, "corpus has 10 entries");
  for (const auto& e : corpus) {
    ImaginaryExpansion E = build_imaginary(e.M, e.phi(), e.x_vars(), e.y_vars());
    TphiReport r = verify_Tphi(E);
    c.expect(r.all_zero(), e.name + ": T_phi values " + str(r.classes_represented) + ", " + str(r.tuples_covered) +
                               ", " + str(r.metric_is_row_distance));
  }
}

void stability_quantities(Checker& c) {
  PhiMatrix hg = matrix_of(gen_halfgraph(8), "phi(x, y)");
  LadderWitness w = find_ladder(hg, uv(1), LadderKind::Antisymmetric, 8);
  c.expect(w.length() == 8, "half graph antisymmetric ladder length " + std::to_string(w.length()));
  c.expect(recheck_ladder(hg, w), "half graph witness rechecks");
  LadderWitness diagonal{LadderKind::Antisymmetric, uv(1), {}, std::nullopt, std::nullopt, 8};
  for (int i = 0; i < 8; ++i) diagonal.pairs.emplace_back(i, 8 + i);
  c.expect(recheck_ladder(hg, diagonal), "diagonal ladder (a_i, b_i)");

  auto corpus = testsupport::stability_corpus();
  for (const char* constant : {"0", "1/2", "1"}) {
    for (const auto& e : {corpus[0], corpus[2], corpus[6]}) {
      PhiMatrix m = matrix_of(e.M, constant);
      for (const UnitValue& eps : kDyadicEps) {
        NValue n = compute_N(m, eps);
        c.expect(n.N == 2, e.name + " constant " + constant + " eps " + str(eps) + " gave N " + std::to_string(n.N));
      }
    }
  }
  for (const auto& e : corpus) {
    PhiMatrix m = matrix_of(e);
    int previous = 1 << 20;
    for (const UnitValue& eps : kDyadicEps) {
      NValue n = compute_N(m, eps);
      c.expect(!n.at_bound, e.name + " N hit the search cap");
      c.expect(n.N <= previous, e.name + " N increased at eps " + str(eps));
      previous = n.N;
    }
  }
}

void median_definitions(Checker& c) {
  for (const auto& e : testsupport::stability_corpus()) {
    PhiMatrix m = matrix_of(e);
    if (m.rows() > 16) continue;
    PhiTypeSpace space = phi_type_space(m);
    for (const UnitValue& eps : {uv(1, 2), uv(1, 4), uv(1, 8)}) {
      NValue n1 = compute_N(m, eps), n2 = compute_N(m.transpose(), eps);
      for (const PhiTypeVector& p : space.points) {
        MedianResult r = median_definition(m, eps, p, n1, n2);
        std::string where = e.name + " eps " + str(eps);
        c.expect(r.ok(), where + ": " + (r.ok() ? "" : r.failure->reason));
        if (!r.ok()) continue;
        const MedianDefinition& d = *r.definition;
        UnitValue worst = uv(0);
        for (int b = 0; b < m.cols(); ++b) {
          std::vector<Rational> col;
          for (int row : d.parameters) col.push_back(m.at(row, b).value());
          std::sort(col.begin(), col.end());
          worst = std::max(worst, UnitValue(abs(col[d.N - 1] - p.values[b].value())));
        }
        c.expect(worst <= eps, where + ": error " + str(worst));
      }
    }
  }
}

void monotone_definitions(Checker& c) {
  for (const auto& e : testsupport::stability_corpus()) {
    PhiMatrix m = matrix_of(e);
    if (m.rows() > 16) continue;
    PhiTypeSpace space = phi_type_space(m);
    for (const UnitValue& eps : {uv(1, 2), uv(1, 4), uv(1, 8)}) {
      std::string where = e.name + " eps " + str(eps);
      for (const PhiTypeVector& p : space.points) {
        MonotoneParameters mp = monotone_parameters(m, eps, p);
        c.expect(mp.ok, where + ": parameter search aborted");
        if (!mp.ok) continue;
        MonotoneDefinition g(m, eps, p, mp.parameters);
        Rational bound = Rational(3) * eps.value();
        UnitValue worst = uv(0);
        for (int b = 0; b < m.cols(); ++b) worst = std::max(worst, absdiff(g(g.observed(b)), p.values[b]));
        c.expect(worst.value() <= bound, where + ": error " + str(worst));
        c.expect(g.monotone_on_observed(), where + ": g not monotone on observed tuples");

        // Evaluated tuples: the observed ones plus an eps-grid when the arity allows.
        std::vector<std::vector<UnitValue>> points;
        for (int b = 0; b < m.cols(); ++b) points.push_back(g.observed(b));
        std::int64_t den = eps.value().den() / eps.value().num();
        if (g.arity() <= 3) {
          std::vector<int> sizes(g.arity(), static_cast<int>(den) + 1);
          for_each_tuple(sizes, [&](const std::vector<int>& k) {
            std::vector<UnitValue> v;
            for (int x : k) v.push_back(uv(x, den));
            points.push_back(v);
            return true;
          });
        }
        std::vector<UnitValue> values;
        for (const auto& v : points) values.push_back(g(v));
        for (std::size_t i = 0; i < points.size(); ++i) {
          for (std::size_t j = 0; j < points.size(); ++j) {
            bool le = true;
            for (std::size_t k = 0; k < points[i].size(); ++k) le = le && points[i][k] <= points[j][k];
            if (le) c.expect(values[i] <= values[j], where + ": g decreases");
          }
        }
        if (g.arity() <= 3) {
          UnitValue pitch(eps.value() / Rational(4));
          for (std::size_t i = 0; i < points.size(); ++i) {
            c.expect(values[i] == g.grid_value(points[i], pitch), where + ": candidate sup differs from grid sup");
          }
        }
      }
    }
  }
}

// phi on a copy of gen_halfgraph(n) with an extra two-point sort E.
void check_glue(Checker& c, int n) {
  FiniteStructure H = gen_halfgraph(n);
  Signature sig;
  int ms = sig.add_sort("M");
  int es = sig.add_sort("E");
  int pred = sig.add_predicate("phi", {ms, ms});
  FiniteStructure X(sig, {H.carrier(0), {"e0", "e1"}});
  int size = H.carrier_size(0);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) X.set_pred(pred, std::vector<int>{a, b}, H.pred(0, std::vector<int>{a, b}));
  }
  Variable x{"x", ms}, y{"y", ms}, z{"z", ms}, t{"t", es}, w{"w", es};
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"phi(x, y)", "not phi(z, x)"}, {"phi(x, y) -. 1/2", "sup z. phi(z, x)"}, {"max(phi(x, y), phi(y, x))", "half phi(x, z)"}};
  for (const auto& [ptext, qtext] : pairs) {
    Formula phi = parse_formula(ptext, sig), psi = parse_formula(qtext, sig);
    Formula chi = glue_formula(sig, phi, psi, {x}, t, w);
    for_each_tuple({size, size, size, 2, 2}, [&](const std::vector<int>& k) {
      EvalEnv env;
      env.bind(x, k[0]).bind(y, k[1]).bind(z, k[2]).bind(t, k[3]).bind(w, k[4]);
      UnitValue want = k[3] == k[4] ? eval_formula(X, env, psi) : eval_formula(X, env, phi);
      c.expect(eval_formula(X, env, chi) == want, "gluing " + ptext + " / " + qtext + " on halfgraph(" +
                                                      std::to_string(n) + ")");
      return true;
    });
  }
}

void gluing(Checker& c) {
  for (int n : {2, 3, 4}) check_glue(c, n);
}

void cantor_bendixson(Checker& c) {
  FiniteTopometricSpace X;
  X.points = {"p", "q", "r"};
  X.metric = {{uv(0), uv(1), uv(1)}, {uv(1), uv(0), uv(1)}, {uv(1), uv(1), uv(0)}};
  X.closed_sets = {0b000, 0b001, 0b011, 0b111};
  X.test_epsilons = {uv(1, 2)};
  validate(X);
  CBResult r = cb_rank(X, uv(1, 2));
  c.expect(r.ranks == std::vector<int>{2, 1, 0}, "worked example ranks (p, q, r) = (2, 1, 0)");

  Rng rng(909);
  for (int n : {1, 3, 5, 8}) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("d" + std::to_string(i));
    FiniteTopometricSpace D = discrete_space(names, testsupport::random_metric(rng, n, 4));
    validate(D);
    for (const UnitValue& eps : {uv(0), uv(1, 4), uv(1, 2), uv(1)}) {
      CBResult dr = cb_rank(D, eps);
      c.expect(dr.ranks == std::vector<int>(n, 0), "discrete space of size " + std::to_string(n));
    }
  }

  Rng srng(2025);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteTopometricSpace S;
    for (int i = 0; i < 8; ++i) S.points.push_back("p" + std::to_string(i));
    S.metric = testsupport::random_metric(srng, 8, 4);
    std::set<PointSet> family = {0, S.full()};
    int seeds = srng.uniform(1, 5);
    for (int k = 0; k < seeds; ++k) family.insert(static_cast<PointSet>(srng.uniform(0, 255)));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<PointSet> cur(family.begin(), family.end());
      for (PointSet a : cur) {
        for (PointSet b : cur) grew |= family.insert(a | b).second | family.insert(a & b).second;
      }
    }
    S.closed_sets.assign(family.begin(), family.end());
    S.test_epsilons = {uv(1, 8)};
    validate(S);
    for (const UnitValue& eps : {uv(1, 4), uv(1, 2), uv(3, 4)}) {
      CBResult sr = cb_rank(S, eps);
      for (std::size_t a = 1; a < sr.stages.size(); ++a) {
        bool subset = (sr.stages[a] & ~sr.stages[a - 1]) == 0;
        bool strict = sr.stages[a] != sr.stages[a - 1] || (sr.stationary && a + 1 == sr.stages.size());
        c.expect(subset && strict, "random space " + std::to_string(trial) + " stage " + std::to_string(a));
      }
    }
  }
}

// respect[i][j][fi][fj]: the pair (i, j) mapped to (fi, fj) satisfies the modulus.
using RespectTable = std::vector<std::vector<std::vector<std::vector<bool>>>>;

RespectTable respect_table(const std::vector<std::vector<UnitValue>>& dx, const std::vector<std::vector<UnitValue>>& dy,
                           const std::function<bool(const UnitValue&, const UnitValue&)>& respects) {
  int n = static_cast<int>(dx.size());
  RespectTable t(n, std::vector<std::vector<std::vector<bool>>>(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n))));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) t[i][j][a][b] = respects(dx[i][j], dy[a][b]);
      }
    }
  }
  return t;
}

bool function_respects(const RespectTable& t, const std::vector<int>& f) {
  int n = static_cast<int>(f.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!t[i][j][f[i]][f[j]]) return false;
    }
  }
  return true;
}

void modulus_conversion(Checker& c) {
  PLMonotone id;
  c.expect(inverse_from_delta(id) == id, "inverse_from_delta(identity) = identity");
  auto delta_id = delta_from_inverse(id);
  for (int i = 1; i <= 64; ++i) c.expect(delta_id(uv(i, 64)) == uv(i, 64), "delta_from_inverse(identity) at " + str(uv(i, 64)));
  for (int i = 1; i <= 64; ++i) {
    c.expect(delta_from_inverse(inverse_from_delta(id))(uv(i, 64)) == uv(i, 64), "identity round trip at " + str(uv(i, 64)));
  }

  Rng rng(1010);
  const int n = 6;
  long functions = 0, pair_mismatches = 0, at_diameter = 0;
  for (int trial = 0; trial < 20; ++trial) {
    PLMonotone u = testsupport::random_pl(rng, rng.uniform(0, 3), 8, true, true);
    auto delta = delta_from_inverse(u);
    PLMonotone dl = testsupport::random_pl(rng, rng.uniform(0, 3), 8, false, true);
    PLMonotone u2 = inverse_from_delta(dl);
    auto dx = testsupport::random_metric(rng, n, 8);
    auto dy = testsupport::random_metric(rng, n, 8);
    for (const auto& row_x : dx) {
      for (const UnitValue& din : row_x) {
        for (const auto& row_y : dy) {
          for (const UnitValue& dout : row_y) {
            if (respects_inverse(u, din, dout) == respects_delta(delta, din, dout)) continue;
            ++pair_mismatches;
            if (din == UnitValue::one() && dout > u(UnitValue::one())) ++at_diameter;
          }
        }
      }
    }
    RespectTable by_u = respect_table(dx, dy, [&](auto& a, auto& b) { return respects_inverse(u, a, b); });
    RespectTable by_delta = respect_table(dx, dy, [&](auto& a, auto& b) { return respects_delta(delta, a, b); });
    RespectTable by_dl = respect_table(dx, dy, [&](auto& a, auto& b) { return respects_delta(dl, a, b); });
    RespectTable by_u2 = respect_table(dx, dy, [&](auto& a, auto& b) { return respects_inverse(u2, a, b); });
    for_each_tuple(std::vector<int>(n, n), [&](const std::vector<int>& f) {
      ++functions;
      c.expect(function_respects(by_u, f) == function_respects(by_delta, f),
               "u = " + u.to_string() + ": respecting u and its delta differ");
      if (function_respects(by_dl, f)) {
        c.expect(function_respects(by_u2, f), "delta = " + dl.to_string() + ": converted inverse modulus not respected");
      }
      return true;
    });
  }
  c.note(std::to_string(functions) + " table functions checked");
  c.note("distance pairs where u and its delta disagree: " + std::to_string(pair_mismatches) + ", of which " +
         std::to_string(at_diameter) + " have input distance 1 and output above u(1)");
}

void synthesis(Checker& c) {
  for (const auto& t : testsupport::synth_targets()) {
    SynthesisResult r = synthesize(t.grid, t.eps);
    UnitValue err = verify_synthesis(r.expr, t.grid);
    c.expect(err <= t.eps, std::string(t.name) + ": error " + str(err) + " above " + str(t.eps));
    c.expect(uses_only_neg_monus(r.expr), std::string(t.name) + ": uses connectives beyond not and -.");
  }
  GridFunction dbl = GridFunction::tabulate(1, uv(1, 8), testsupport::kDouble);
  std::vector<UnitValue> consts;
  for (int k = 0; k <= 8; ++k) consts.push_back(uv(k, 8));
  LatticeEnumeration e = enumerate_lattice(dbl, 6, consts);
  c.expect(e.all_one_lipschitz, "lattice expressions are 1-Lipschitz");
  c.expect(e.best_error >= uv(1, 4), "lattice approximation of min(2t, 1) within " + str(e.best_error));
  c.note("depth-6 lattice closure: " + std::to_string(e.counts.back()) + " functions, best error " + str(e.best_error));
}

void prenex_equivalence(Checker& c) {
  Signature base = testsupport::test_signature();
  Rng rng(1212);
  std::vector<FiniteStructure> structures;
  for (int s = 0; s < 20; ++s) structures.push_back(random_structure(base, {rng.uniform(1, 3), rng.uniform(1, 2)}, 1300 + s));
  testsupport::FormulaGen gen(rng, base);
  // med is not among the connectives prenex is defined on.
  gen.set_allow_med(false);
  long compared = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula(rng.uniform(1, 3));
    Formula p = prenex(f);
    c.expect(is_prenex(p), "not prenex: " + print_formula(p, base));
    std::vector<Variable> vars;
    for (const Variable& v : free_vars(f)) {
      if (v.sort != kValueSort) vars.push_back(v);
    }
    for (const FiniteStructure& M : structures) {
      std::vector<int> sizes;
      for (const Variable& v : vars) sizes.push_back(M.carrier_size(v.sort));
      Evaluator ef(M, f, vars), ep(M, p, vars);
      for_each_tuple(sizes, [&](const std::vector<int>& k) {
        ++compared;
        c.expect(ef(k) == ep(k), "prenex changed the value of " + print_formula(f, base));
        return true;
      });
    }
  }
  c.note(std::to_string(compared) + " evaluations compared");
}

struct Criterion {
  int id;
  const char* name;
  double limit_ms;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  std::vector<Criterion> criteria = {
      {1, "connective identities on the 1/32 grid", 1000, connective_identities},
      {2, "forced limits", 5000, forced_limits},
      {3, "probability algebra axioms and atomless defect", 60000, probability_algebras},
      {4, "canonical parameter theory vanishes on the corpus", 30000, imaginary_theories},
      {5, "ladders and N", 60000, stability_quantities},
      {6, "median definitions within eps", 300000, median_definitions},
      {7, "monotone definitions within 3 eps", 300000, monotone_definitions},
      {8, "gluing recovers both formulas", 10000, gluing},
      {9, "Cantor-Bendixson ranks", 10000, cantor_bendixson},
      {10, "modulus conversion", 30000, modulus_conversion},
      {11, "synthesis and the lattice negative witness", 300000, synthesis},
      {12, "prenex equivalence", 120000, prenex_equivalence},
  };
  int failed = 0, ran = 0;
  for (const Criterion& cr : criteria) {
    if (!only.empty() && !only.count(cr.id)) continue;
    ++ran;
    Checker c;
    std::string error;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool in_time = ms <= cr.limit_ms;
    bool pass = c.ok() && error.empty() && in_time;
    if (!pass) ++failed;
    std::printf("%s [%d] %s (%.0f ms, limit %.0f ms, %ld checks)\n", pass ? "PASS" : "FAIL", cr.id, cr.name, ms,
                cr.limit_ms, c.checks());
    for (const auto& n : c.notes()) std::printf("     %s\n", n.c_str());
    if (!error.empty()) std::printf("     exception: %s\n", error.c_str());
    if (!in_time) std::printf("     over the time limit\n");
    if (!c.ok()) {
      std::printf("     %ld failed checks, first:\n", c.failures());
      for (const auto& m : c.messages()) std::printf("       %s\n", m.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
