#include <doctest.h>

#include <set>

#include "contlogic/errors.hpp"
#include "contlogic/lang/parser.hpp"
#include "contlogic/model/complete.hpp"
#include "contlogic/model/elementary.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/model/generators.hpp"
#include "contlogic/model/structure_io.hpp"
#include "contlogic/model/validate.hpp"
#include "contlogic/util/tuples.hpp"
#include "formula_gen.hpp"
#include "oracle_eval.hpp"

using namespace contlogic;
using testsupport::FormulaGen;
using testsupport::Rng;

namespace {

UnitValue uv(std::int64_t p, std::int64_t q = 1) { return UnitValue(Rational(p, q)); }

Signature unary_sig() {
  Signature sig;
  int s = sig.add_sort("S");
  sig.add_predicate("P", {s});
  return sig;
}

std::vector<Rational> uniform_weights(int atoms) { return std::vector<Rational>(atoms, Rational(1, atoms)); }

const char* kApa = "sup x. inf y. |mu(meet(y, x)) - half mu(x)|";

// Classical reading with 0 as true: min is "or", max is "and", sup is "for all",
// inf is "exists".
bool classical_truth(const ClassicalDescription& desc, const Formula& f, std::map<std::string, int>& env) {
  using K = FormulaNode::Kind;
  auto term = [&](const Term& t) { return env.at(t->var.name); };
  switch (f->kind) {
    case K::Atomic: {
      std::vector<int> tuple;
      for (const Term& t : f->terms) tuple.push_back(term(t));
      const auto& tuples = desc.relations[f->symbol].tuples;
      return std::find(tuples.begin(), tuples.end(), tuple) != tuples.end();
    }
    case K::Metric: return term(f->terms[0]) == term(f->terms[1]);
    case K::Quantifier: {
      bool forall = f->quantifier == Quantifier::Sup;
      int saved = env.count(f->var.name) ? env[f->var.name] : -1;
      bool result = forall;
      for (int e = 0; e < static_cast<int>(desc.elements.size()); ++e) {
        env[f->var.name] = e;
        bool v = classical_truth(desc, f->children[0], env);
        if (forall && !v) result = false;
        if (!forall && v) result = true;
      }
      if (saved >= 0) env[f->var.name] = saved; else env.erase(f->var.name);
      return result;
    }
    case K::Connective:
      switch (f->connective) {
        case ConnectiveId::Neg: return !classical_truth(desc, f->children[0], env);
        case ConnectiveId::Min: return classical_truth(desc, f->children[0], env) || classical_truth(desc, f->children[1], env);
        case ConnectiveId::Max: return classical_truth(desc, f->children[0], env) && classical_truth(desc, f->children[1], env);
        default: break;
      }
      break;
    default: break;
  }
  FAIL("unexpected node in classical formula");
  return false;
}

Formula random_classical(Rng& rng, const Signature& sig, int depth) {
  const char* names[] = {"x", "y", "z"};
  auto var = [&] { return make_var(names[rng.uniform(0, 2)], 0); };
  if (depth == 0 || rng.uniform(0, 5) == 0) {
    if (rng.uniform(0, 3) == 0) return make_metric(sig, var(), var());
    int p = rng.uniform(0, static_cast<int>(sig.predicates().size()) - 1);
    std::vector<Term> args;
    for (std::size_t i = 0; i < sig.predicate(p).arg_sorts.size(); ++i) args.push_back(var());
    return make_atomic(sig, p, std::move(args));
  }
  switch (rng.uniform(0, 4)) {
    case 0: return f_neg(random_classical(rng, sig, depth - 1));
    case 1: return f_min(random_classical(rng, sig, depth - 1), random_classical(rng, sig, depth - 1));
    case 2: return f_max(random_classical(rng, sig, depth - 1), random_classical(rng, sig, depth - 1));
    case 3: return f_sup({names[rng.uniform(0, 2)], 0}, random_classical(rng, sig, depth - 1));
    default: return f_inf({names[rng.uniform(0, 2)], 0}, random_classical(rng, sig, depth - 1));
  }
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validate examples") {
    Signature sig = unary_sig();
    FiniteStructure one(sig, {{"a"}});
    one.set_pred(0, std::vector<int>{0}, uv(3, 7));
    CHECK(validate(one).valid);

    FiniteStructure two(sig, {{"a", "b"}});
    two.set_dist(0, 0, 1, uv(1, 2));
    two.set_pred(0, std::vector<int>{1}, uv(1));
    ValidationReport r = validate(two);
    CHECK_FALSE(r.valid);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == "predicate-modulus");
    CHECK(r.violations[0].symbol == "P");
    CHECK(r.violations[0].witnesses == std::vector<std::string>{"a", "b"});
    CHECK(r.violations[0].observed == uv(1));
    CHECK(r.violations[0].allowed == uv(1, 2));

    CHECK(validate(gen_prob_algebra({Rational(1, 2), Rational(1, 2)})).valid);
    CHECK(validate(gen_prob_algebra(uniform_weights(4))).valid);
  }

  TEST_CASE("validate finds metric violations") {
    Signature sig = unary_sig();
    FiniteStructure M(sig, {{"a", "b", "c"}});
    M.set_dist(0, 0, 1, uv(1, 8));
    M.set_dist(0, 1, 2, uv(1, 8));
    ValidationReport r = validate(M);
    CHECK_FALSE(r.valid);
    bool triangle = false;
    for (const Violation& v : r.violations) triangle = triangle || v.kind == "triangle";
    CHECK(triangle);
  }

  TEST_CASE("evaluation examples") {
    Signature sig = unary_sig();
    FiniteStructure M(sig, {{"a", "b"}});
    M.set_pred(0, std::vector<int>{0}, uv(1, 4));
    M.set_pred(0, std::vector<int>{1}, uv(3, 4));
    CHECK(eval_formula(M, {}, parse_formula("sup x. P(x)", sig)) == uv(3, 4));
    CHECK(eval_formula(M, {}, parse_formula("inf x. P(x)", sig)) == uv(1, 4));
    EvalEnv env;
    env.bind({"x", 0}, 1).bind_value("t", uv(1, 2));
    CHECK(eval_formula(M, env, parse_formula("P(x) -. t", sig)) == uv(1, 4));
    CHECK_THROWS_AS(eval_formula(M, {}, parse_formula("P(x)", sig)), StructuralError);
  }

  TEST_CASE("atomless defect on uniform algebras") {
    for (int k = 1; k <= 2; ++k) {
      FiniteStructure M = gen_prob_algebra(uniform_weights(1 << k));
      Formula apa = atomless_sentence(M.signature());
      CHECK(formula_equal(apa, parse_formula(kApa, M.signature())));
      UnitValue v = eval_formula(M, {}, apa);
      CHECK(v == UnitValue(Rational::pow2_neg(k + 1)));
      CHECK(v.value() == testsupport::oracle_eval(M, apa, {}));
    }
  }

  TEST_CASE("library evaluator agrees with the reference evaluator") {
    Signature base = testsupport::test_signature();
    Rng rng(11);
    int compared = 0;
    for (int s = 0; s < 10; ++s) {
      FiniteStructure M = random_structure(base, {rng.uniform(1, 3), rng.uniform(1, 3)}, 40 + s);
      FormulaGen gen(rng, M.signature());
      gen.set_value_vars({"t"});
      for (int i = 0; i < 40; ++i) {
        Formula f = gen.formula(rng.uniform(0, 4));
        std::vector<Variable> vars;
        for (const Variable& v : free_vars(f)) {
          if (v.sort != kValueSort) vars.push_back(v);
        }
        std::vector<int> sizes;
        for (const Variable& v : vars) sizes.push_back(M.carrier_size(v.sort));
        Evaluator ev(M, f, vars, {"t"});
        for (const UnitValue& t : {uv(0), uv(3, 8), uv(1)}) {
          for_each_tuple(sizes, [&](const std::vector<int>& tuple) {
            testsupport::OracleEnv oenv;
            EvalEnv env;
            for (std::size_t j = 0; j < vars.size(); ++j) {
              oenv[vars[j]] = tuple[j];
              env.bind(vars[j], tuple[j]);
            }
            env.bind_value("t", t);
            Rational expected = testsupport::oracle_eval(M, f, oenv, {{"t", t.value()}});
            std::vector<UnitValue> values = {t};
            CHECK(ev(tuple, values).value() == expected);
            CHECK(eval_formula(M, env, f).value() == expected);
            ++compared;
            return true;
          });
        }
      }
    }
    CHECK(compared > 1000);
  }

  TEST_CASE("conditions and theories") {
    FiniteStructure M = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    const Signature& sig = M.signature();
    EvalEnv env;
    env.bind({"x", 0}, 2);
    CHECK(check_condition(M, env, Condition::equals_zero(parse_formula("d(x, x)", sig))));
    CHECK(check_condition(M, env, Condition::at_most(parse_formula("mu(x)", sig), uv(1, 2))));
    CHECK_FALSE(check_condition(M, env, Condition::at_least(parse_formula("mu(x)", sig), uv(3, 4))));

    TheoryReport apa = check_theory(M, {Condition::equals_zero(atomless_sentence(sig))});
    CHECK_FALSE(apa.all_satisfied);
    CHECK(apa.entries[0].value == uv(1, 4));

    std::vector<std::vector<Rational>> weights = {
        {Rational(1)}, {Rational(1, 2), Rational(1, 2)}, uniform_weights(4), {Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
    for (const auto& w : weights) {
      FiniteStructure A = gen_prob_algebra(w);
      TheoryReport r = check_theory(A, prob_algebra_axioms(A.signature()));
      CHECK(r.all_satisfied);
      CHECK(r.entries.size() == 5);
      for (const TheoryEntry& e : r.entries) CHECK(e.value == UnitValue::zero());
    }
  }

  TEST_CASE("axioms detect a broken measure") {
    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    A.set_pred(0, std::vector<int>{1}, uv(1, 4));
    TheoryReport r = check_theory(A, prob_algebra_axioms(A.signature()));
    CHECK_FALSE(r.all_satisfied);
    CHECK(r.entries[0].satisfied);
    CHECK_FALSE(r.entries[3].satisfied);
  }

  TEST_CASE("probability algebra generator") {
    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    CHECK(A.carrier_size(0) == 4);
    int a0 = *A.find_element(0, "{0}"), a1 = *A.find_element(0, "{1}");
    CHECK(A.dist(0, a0, a1) == uv(1));

    FiniteStructure B = gen_prob_algebra({Rational(1)});
    CHECK(B.carrier_size(0) == 2);
    CHECK(B.pred(0, std::vector<int>{*B.find_element(0, "{0}")}) == uv(1));

    FiniteStructure C = gen_prob_algebra(uniform_weights(4));
    CHECK(C.carrier_size(0) == 16);
    int meet = *C.signature().find_function("meet");
    for (int x = 0; x < 16; ++x) {
      for (int y = 0; y < 16; ++y) {
        int m = C.apply(meet, std::vector<int>{x, y});
        CHECK(C.pred(0, std::vector<int>{m}) <= C.pred(0, std::vector<int>{x}));
      }
    }

    CHECK_THROWS_AS(gen_prob_algebra({Rational(1, 2)}), DomainError);
    CHECK_THROWS_AS(gen_prob_algebra({Rational(3, 2), Rational(-1, 2)}), DomainError);
    CHECK_THROWS_AS(gen_prob_algebra({}), DomainError);
    CHECK_THROWS_AS(gen_prob_algebra(uniform_weights(13)), DomainError);
  }

  TEST_CASE("half-graph generator") {
    FiniteStructure H = gen_halfgraph(2);
    auto el = [&](const char* n) { return *H.find_element(0, n); };
    CHECK(H.pred(0, std::vector<int>{el("a0"), el("b1")}) == uv(1));
    CHECK(H.pred(0, std::vector<int>{el("a1"), el("b0")}) == uv(0));
    CHECK(H.pred(0, std::vector<int>{el("b1"), el("a0")}) == uv(0));
    CHECK(validate(gen_halfgraph(8)).valid);
    CHECK_THROWS_AS(gen_halfgraph(0), DomainError);
    CHECK_THROWS_AS(gen_halfgraph(17), DomainError);
  }

  TEST_CASE("classical structures evaluate classically") {
    ClassicalDescription desc;
    desc.elements = {"u", "v"};
    desc.relations.push_back({"E", 2, {{0, 1}, {1, 0}}});
    FiniteStructure G = from_classical(desc);
    CHECK(validate(G).valid);
    CHECK(eval_formula(G, {}, parse_formula("sup x. inf y. E(x, y)", G.signature())) == uv(0));
    CHECK(eval_formula(G, {}, parse_formula("inf x. E(x, x)", G.signature())) == uv(1));

    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      ClassicalDescription D;
      int n = rng.uniform(1, 4);
      for (int i = 0; i < n; ++i) D.elements.push_back("e" + std::to_string(i));
      ClassicalDescription::Relation U{"U", 1, {}}, E{"E", 2, {}};
      for (int i = 0; i < n; ++i) {
        if (rng.coin()) U.tuples.push_back({i});
        for (int j = 0; j < n; ++j) {
          if (rng.coin()) E.tuples.push_back({i, j});
        }
      }
      D.relations = {U, E};
      FiniteStructure M = from_classical(D);
      for (int i = 0; i < 30; ++i) {
        Formula f = random_classical(rng, M.signature(), 4);
        std::set<Variable> fv = free_vars(f);
        std::vector<Variable> vars(fv.begin(), fv.end());
        std::vector<int> sizes(vars.size(), n);
        for_each_tuple(sizes, [&](const std::vector<int>& t) {
          EvalEnv env;
          std::map<std::string, int> cenv;
          for (std::size_t j = 0; j < vars.size(); ++j) {
            env.bind(vars[j], t[j]);
            cenv[vars[j].name] = t[j];
          }
          UnitValue v = eval_formula(M, env, f);
          CHECK((v == uv(0) || v == uv(1)));
          CHECK((v == uv(0)) == classical_truth(D, f, cenv));
          return true;
        });
      }
    }
  }

  TEST_CASE("completion examples") {
    Signature sig = unary_sig();
    FiniteStructure M(sig, {{"a", "b"}});
    M.set_dist(0, 0, 1, uv(0));
    M.set_pred(0, std::vector<int>{0}, uv(1, 2));
    M.set_pred(0, std::vector<int>{1}, uv(1, 2));
    Completion c = complete(M);
    CHECK(c.structure.carrier_size(0) == 1);
    CHECK(c.class_of[0] == std::vector<int>{0, 0});

    FiniteStructure N(sig, {{"a", "b", "c"}});
    N.set_dist(0, 0, 1, uv(0));
    N.set_dist(0, 0, 2, uv(1, 2));
    N.set_dist(0, 1, 2, uv(1, 2));
    Completion q = complete(N);
    REQUIRE(q.structure.carrier_size(0) == 2);
    CHECK(q.structure.carrier(0) == std::vector<std::string>{"a", "c"});
    CHECK(q.structure.dist(0, 0, 1) == uv(1, 2));

    FiniteStructure H = gen_halfgraph(3);
    CHECK(isomorphic(complete(H).structure, H));

    N.set_pred(0, std::vector<int>{1}, uv(1, 4));
    CHECK_THROWS_AS(complete(N), StructuralError);
  }

  TEST_CASE("completion is idempotent on generated pre-structures") {
    Signature base = testsupport::test_signature();
    RandomStructureOptions opt;
    opt.allow_zero_distance = true;
    int collapsed = 0;
    for (int s = 0; s < 30; ++s) {
      opt.line_metric = s % 2 == 0;
      FiniteStructure M = random_structure(base, {5, 3}, 3000 + s, opt);
      REQUIRE(validate(M).valid);
      Completion c1 = complete(M);
      CHECK(c1.structure.is_metric());
      CHECK(validate(c1.structure).valid);
      Completion c2 = complete(c1.structure);
      CHECK(isomorphic(c1.structure, c2.structure));
      if (c1.structure.carrier_size(0) < 5) ++collapsed;
    }
    CHECK(collapsed > 0);
  }

  TEST_CASE("isomorphism distinguishes structures") {
    FiniteStructure H = gen_halfgraph(2);
    FiniteStructure K = gen_halfgraph(2);
    CHECK(isomorphic(H, K));
    K.set_pred(0, std::vector<int>{0, 1}, uv(1, 2));
    CHECK_FALSE(isomorphic(H, K));
  }

  TEST_CASE("Tarski-Vaught examples") {
    Signature sig = unary_sig();
    FiniteStructure M(sig, {{"a", "b"}});
    M.set_pred(0, std::vector<int>{0}, uv(1));
    Formula P = parse_formula("P(y)", sig);
    TVResult full = is_elementary_substructure(M, {{0, 1}}, {{P, {"y", 0}}});
    CHECK(full.holds);
    TVResult part = is_elementary_substructure(M, {{0}}, {{P, {"y", 0}}});
    CHECK_FALSE(part.holds);
    REQUIRE(part.witness);
    CHECK(part.witness->inf_over_M == uv(0));
    CHECK(part.witness->inf_over_A == uv(1));
    CHECK(is_elementary_substructure(M, {{0}}, {}).holds);

    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 2)});
    std::vector<std::vector<int>> not_closed = {{0, 1}};
    CHECK_THROWS_AS(is_elementary_substructure(A, not_closed, {}), StructuralError);
    std::vector<std::vector<int>> sub = {{*A.find_element(0, "{}"), *A.find_element(0, "{0,1}")}};
    TVResult r = is_elementary_substructure(A, sub, {{parse_formula("|mu(y) - 1/2|", A.signature()), {"y", 0}}});
    CHECK_FALSE(r.holds);
  }

  TEST_CASE("structure files round trip") {
    FiniteStructure A = gen_prob_algebra({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
    nlohmann::json j = structure_to_json(A);
    FiniteStructure B = structure_from_json(j);
    CHECK(B.signature() == A.signature());
    CHECK(B.carrier(0) == A.carrier(0));
    CHECK(B.metric_table(0) == A.metric_table(0));
    for (int f = 0; f < 5; ++f) CHECK(B.function_table(f) == A.function_table(f));
    CHECK(B.predicate_table(0) == A.predicate_table(0));
    CHECK(structure_to_json(B) == j);

    FiniteStructure R = random_structure(testsupport::test_signature(), {3, 2}, 5);
    FiniteStructure R2 = structure_from_json(structure_to_json(R));
    CHECK(R2.signature() == R.signature());
    CHECK(structure_to_json(R2) == structure_to_json(R));
  }

  TEST_CASE("structure files are checked") {
    nlohmann::json j = structure_to_json(gen_halfgraph(1));
    auto bad = j;
    bad["metric"]["M"][0][1] = "3/2";
    bad["metric"]["M"][1][0] = "3/2";
    CHECK_THROWS_AS(structure_from_json(bad), DomainError);
    bad = j;
    bad["metric"]["M"][0][1] = "1/2";
    CHECK_THROWS_AS(structure_from_json(bad), StructuralError);
    bad = j;
    bad["predicates"]["phi"][0] = nlohmann::json::array({"0"});
    CHECK_THROWS_AS(structure_from_json(bad), StructuralError);
    bad = j;
    bad["predicates"]["phi"][0][0] = "0.5";
    CHECK_THROWS_AS(structure_from_json(bad), DomainError);
    bad = j;
    bad.erase("metric");
    CHECK(structure_from_json(bad).dist(0, 0, 1) == uv(1));
  }

  TEST_CASE("random structures validate") {
    Signature base = testsupport::test_signature();
    for (int s = 0; s < 40; ++s) {
      RandomStructureOptions opt;
      opt.line_metric = s % 3 != 0;
      opt.denominator = 4 + s % 5;
      FiniteStructure M = random_structure(base, {1 + s % 4, 1 + s % 3}, 7000 + s, opt);
      CHECK(validate(M).valid);
      CHECK(M.is_total());
    }
  }
}
