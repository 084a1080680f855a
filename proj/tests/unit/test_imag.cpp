#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "contlogic/errors.hpp"
#include "contlogic/imag/imaginary.hpp"
#include "contlogic/lang/parser.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/model/generators.hpp"
#include "contlogic/model/validate.hpp"
#include "contlogic/util/tuples.hpp"
#include "corpus.hpp"
#include "random_gen.hpp"

using namespace contlogic;

namespace {

UnitValue uv(std::int64_t p, std::int64_t q = 1) { return UnitValue(Rational(p, q)); }

FiniteStructure discrete(int n) {
  Signature sig;
  sig.add_sort("S");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return FiniteStructure(sig, {names});
}

bool is_automorphism(const FiniteStructure& M, const std::vector<int>& s) {
  const Signature& sig = M.signature();
  int n = M.carrier_size(0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (M.dist(0, a, b) != M.dist(0, s[a], s[b])) return false;
    }
  }
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const auto& sorts = sig.function(f).arg_sorts;
    for (std::size_t i = 0; i < M.tuple_count(sorts); ++i) {
      std::vector<int> args = M.tuple_at(sorts, i), image;
      for (int a : args) image.push_back(s[a]);
      if (M.apply(f, image) != s[M.apply_at(f, i)]) return false;
    }
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const auto& sorts = sig.predicate(p).arg_sorts;
    for (std::size_t i = 0; i < M.tuple_count(sorts); ++i) {
      std::vector<int> args = M.tuple_at(sorts, i), image;
      for (int a : args) image.push_back(s[a]);
      if (M.pred(p, image) != M.pred_at(p, i)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("imag") {
  TEST_CASE("metric formula on a discrete pair") {
    FiniteStructure M = discrete(2);
    ImaginaryExpansion E = build_imaginary(M, parse_formula("d(x, y)", M.signature()), {{"x", 0}}, {{"y", 0}});
    REQUIRE(E.expanded.carrier_size(E.sort) == 2);
    CHECK(E.expanded.dist(E.sort, 0, 1) == uv(1));
    CHECK(E.representatives == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(verify_Tphi(E).all_zero());
    CHECK(validate(E.expanded).valid);
    nlohmann::json side = imaginary_sidecar(E);
    CHECK(side["classes"].size() == 2);
    CHECK(side["classes"][0]["name"] == "[a]");
  }

  TEST_CASE("constant formula gives one class") {
    FiniteStructure M = discrete(3);
    ImaginaryExpansion E = build_imaginary(M, parse_formula("min(1/2, d(x, x) +. d(y, y) +. 1/2)", M.signature()),
                                     {{"x", 0}}, {{"y", 0}});
    CHECK(E.expanded.carrier_size(E.sort) == 1);
    CHECK(verify_Tphi(E).all_zero());
  }

  TEST_CASE("measure of meets on the two-atom algebra") {
    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    Formula phi = parse_formula("mu(meet(x, y))", A.signature());
    ImaginaryExpansion E = build_imaginary(A, phi, {{"x", 0}}, {{"y", 0}});
    CHECK(E.expanded.carrier_size(E.sort) == 4);
    CHECK(verify_Tphi(E).all_zero());
    CHECK(validate(E.expanded).valid);
    // P_phi recovers phi on every representative
    Evaluator ev(A, phi, {{"x", 0}, {"y", 0}});
    for (int c = 0; c < 4; ++c) {
      for (int a = 0; a < 4; ++a) {
        std::vector<int> args = {a, E.representatives[c][0]};
        CHECK(E.expanded.pred(E.predicate, std::vector<int>{a, c}) == ev(args));
      }
    }
  }

  TEST_CASE("perturbed rows break the theory") {
    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    ImaginaryExpansion E = build_imaginary(A, parse_formula("mu(meet(x, y))", A.signature()), {{"x", 0}}, {{"y", 0}});
    for (int a = 0; a < 4; ++a) {
      std::vector<int> args = {a, 0};
      UnitValue v = E.expanded.pred(E.predicate, args);
      E.expanded.set_pred(E.predicate, args, plus_trunc(v, uv(1, 4)));
    }
    TphiReport r = verify_Tphi(E);
    CHECK(r.classes_represented != UnitValue::zero());
    CHECK_FALSE(r.all_zero());
  }

  TEST_CASE("bad inputs") {
    FiniteStructure M = discrete(2);
    Formula phi = parse_formula("d(x, y)", M.signature());
    CHECK_THROWS_AS(build_imaginary(M, phi, {{"x", 0}}, {}), StructuralError);
    CHECK_THROWS_AS(build_imaginary(M, phi, {{"x", 0}, {"y", 0}}, {{"y", 0}}), StructuralError);
    Signature sig;
    sig.add_sort("S");
    sig.add_predicate("P", {0});
    FiniteStructure bad(sig, {{"a", "b"}});
    bad.set_dist(0, 0, 1, uv(1, 4));
    bad.set_pred(0, std::vector<int>{1}, uv(1));
    CHECK_THROWS_AS(build_imaginary(bad, parse_formula("P(x) -. P(y)", sig), {{"x", 0}}, {{"y", 0}}), DomainError);
  }

  TEST_CASE("corpus expansions satisfy the theory and d_phi is a metric") {
    for (const auto& entry : testsupport::stability_corpus()) {
      INFO(entry.name);
      ImaginaryExpansion E = build_imaginary(entry.M, entry.phi(), entry.x_vars(), entry.y_vars());
      CHECK(verify_Tphi(E).all_zero());
      CHECK(validate(E.expanded).valid);
      int n = E.expanded.carrier_size(E.sort);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          CHECK(E.expanded.dist(E.sort, a, b) == E.expanded.dist(E.sort, b, a));
          CHECK((a == b) == (E.expanded.dist(E.sort, a, b) == UnitValue::zero()));
          for (int c = 0; c < n; ++c) {
            CHECK(E.expanded.dist(E.sort, a, c).value() <=
                  E.expanded.dist(E.sort, a, b).value() + E.expanded.dist(E.sort, b, c).value());
          }
        }
      }
    }
  }

  TEST_CASE("automorphisms fix a class exactly when they fix its row") {
    std::vector<testsupport::CorpusEntry> small;
    for (auto& e : testsupport::stability_corpus()) {
      if (e.M.carrier_size(0) <= 6) small.push_back(e);
    }
    small.push_back({"discrete4", discrete(4), "d(x, y)", {"x"}, {"y"}});
    int automorphisms = 0;
    for (const auto& entry : small) {
      INFO(entry.name);
      const FiniteStructure& M = entry.M;
      Formula phi = entry.phi();
      ImaginaryExpansion E = build_imaginary(M, phi, entry.x_vars(), entry.y_vars());
      Evaluator ev(M, phi, {{"x", 0}, {"y", 0}});
      int n = M.carrier_size(0);
      std::vector<int> s(n);
      std::iota(s.begin(), s.end(), 0);
      do {
        if (!is_automorphism(M, s)) continue;
        ++automorphisms;
        for (int b = 0; b < n; ++b) {
          bool class_fixed = E.projection[s[b]] == E.projection[b];
          bool row_fixed = true;
          for (int a = 0; a < n; ++a) {
            std::vector<int> lhs = {s[a], b}, rhs = {a, b};
            row_fixed = row_fixed && ev(lhs) == ev(rhs);
          }
          CHECK(class_fixed == row_fixed);
        }
      } while (std::next_permutation(s.begin(), s.end()));
    }
    CHECK(automorphisms > static_cast<int>(small.size()));
  }

  TEST_CASE("pairs of points under the max metric") {
    testsupport::Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      int n = 3 + trial % 2;
      auto d = testsupport::random_metric(rng, n, 8);
      FiniteStructure M = discrete(n);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) M.set_dist(0, a, b, d[a][b]);
      }
      Formula xi = parse_formula("max(d(x1, y1), d(x2, y2))", M.signature());
      ImaginaryExpansion E = build_imaginary(M, xi, {{"x1", 0}, {"x2", 0}}, {{"y1", 0}, {"y2", 0}});
      REQUIRE(E.expanded.carrier_size(E.sort) == n * n);
      for (int p = 0; p < n * n; ++p) {
        CHECK(E.projection[p] == p);
        for (int q = 0; q < n * n; ++q) {
          UnitValue expected = vmax(d[p / n][q / n], d[p % n][q % n]);
          CHECK(E.expanded.dist(E.sort, p, q) == expected);
        }
      }
      CHECK(verify_Tphi(E).all_zero());
    }
  }
}
