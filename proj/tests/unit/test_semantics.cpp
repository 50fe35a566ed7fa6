#include <random>

#include "doctest.h"
#include "hytab/kripke.hpp"
#include "hytab/oracle.hpp"
#include "hytab/parser.hpp"
#include "support.hpp"

using namespace hytab;

namespace {

// Worlds {i, j}, i -> j, j -> j, p at j, nominal i at i.
KripkeModel reflexive_endpoint() {
  KripkeModel m;
  const WorldId i = m.add_world("i"), j = m.add_world("j");
  m.add_edge(i, j);
  m.add_edge(j, j);
  m.set_prop("p", j);
  m.set_nominal("i", i);
  return m;
}

KripkeModel random_model(std::mt19937_64& rng, std::size_t n) {
  KripkeModel m;
  for (std::size_t w = 0; w < n; ++w) m.add_world("w" + std::to_string(w));
  std::bernoulli_distribution coin(0.4);
  for (WorldId a = 0; a < n; ++a)
    for (WorldId b = 0; b < n; ++b)
      if (coin(rng)) m.add_edge(a, b);
  for (const char* p : {"p", "q"}) {
    m.declare_prop(p);
    for (WorldId w = 0; w < n; ++w)
      if (coin(rng)) m.set_prop(p, w);
  }
  std::uniform_int_distribution<WorldId> pick(0, n - 1);
  m.set_nominal("a", pick(rng));
  m.set_nominal("b", pick(rng));
  return m;
}

}  // namespace

TEST_CASE("eval on the reflexive-endpoint model") {
  const KripkeModel m = reflexive_endpoint();
  CHECK(eval(m, m.at("i"), parse("<>p & []<>p")));
  CHECK(eval(m, m.at("i"), parse("@i i")));
  CHECK_FALSE(eval(m, m.at("j"), parse("i", {{"i"}, {}, false})));
}

TEST_CASE("eval on a single reflexive world") {
  KripkeModel m;
  const WorldId w = m.add_world("w");
  m.add_edge(w, w);
  m.declare_prop("p");
  CHECK_FALSE(eval(m, w, parse("[]p")));
  CHECK(eval(m, w, parse("<>~p")));
}

TEST_CASE("eval errors") {
  const KripkeModel m = reflexive_endpoint();
  CHECK_THROWS_AS(eval(m, 7, parse("p")), ModelError);
  CHECK_THROWS_AS(eval(m, 0, parse("@k p")), ModelError);
}

TEST_CASE("eval agrees with the naive evaluator") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const KripkeModel m = random_model(rng, 1 + k % 4);
    const Formula f = testing::random_nnf(rng);
    const testing::TinyModel t = testing::tiny(m);
    const WorldId w = k % m.size();
    CHECK(eval(m, w, f) == testing::naive_eval(t, w, f));
    if (f.kind() == Kind::At) {
      for (WorldId v = 0; v < m.size(); ++v) CHECK(eval(m, v, f) == eval(m, w, f));
    }
  }
}

TEST_CASE("frame class checks") {
  const KripkeModel model = reflexive_endpoint();
  const ClassReport spo = relation_class_check(model, FrameClass::SPO);
  CHECK_FALSE(spo.passed());
  REQUIRE(spo.failure() != nullptr);
  CHECK(spo.failure()->property == "irreflexive");
  CHECK(spo.failure()->witness == std::vector<std::string>{"j", "j"});

  // i, (j,0), (j,1), (j,2) as a transitive chain.
  KripkeModel chain;
  for (const char* w : {"i", "j0", "j1", "j2"}) chain.add_world(w);
  for (WorldId a = 0; a < 4; ++a)
    for (WorldId b = a + 1; b < 4; ++b) chain.add_edge(a, b);
  CHECK(relation_class_check(chain, FrameClass::SPO).passed());
  CHECK_FALSE(relation_class_check(chain, FrameClass::USPO).passed());

  KripkeModel single;
  single.add_world("w");
  CHECK(relation_class_check(single, FrameClass::SPO).passed());
  CHECK(relation_class_check(single, FrameClass::USPO).failure()->property == "serial");
  CHECK(relation_class_check(single, FrameClass::PO).failure()->property == "reflexive");
  CHECK(relation_class_check(single, FrameClass::All).passed());
}

TEST_CASE("model JSON round-trip is exact") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const KripkeModel m = random_model(rng, 1 + k % 4);
    const std::string text = model_to_json(m);
    const KripkeModel back = model_from_json(text);
    CHECK(back == m);
    CHECK(model_to_json(back) == text);
  }
  CHECK(model_to_json(reflexive_endpoint()) ==
        R"({"worlds":["i","j"],"rel":[["i","j"],["j","j"]],"props":{"p":["j"]},"noms":{"i":"i"}})");
}

TEST_CASE("model JSON validation") {
  CHECK_THROWS_AS(model_from_json("{"), ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"worlds":[]})"), ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"worlds":["a","a"]})"), ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"worlds":["a"],"rel":[["a","b"]]})"), ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"worlds":["a"],"noms":{"i":"z"}})"), ModelError);
}

TEST_CASE("dot export names every world and edge") {
  const std::string dot = model_to_dot(reflexive_endpoint());
  CHECK(dot.find("\"i\" -> \"j\"") != std::string::npos);
  CHECK(dot.find("\"j\" -> \"j\"") != std::string::npos);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("oracle examples") {
  const auto d = oracle_countermodel(parse("[]p -> <>p"), FrameClass::SPO, 1);
  REQUIRE(d.has_value());
  CHECK(d->model.size() == 1);
  CHECK_FALSE(eval(d->model, d->world, parse("[]p -> <>p")));

  CHECK_FALSE(oracle_countermodel(parse("[]p -> p"), FrameClass::PO, 2).has_value());
  CHECK_FALSE(oracle_countermodel(parse("<>j & @j p -> <>p"), FrameClass::All, 3).has_value());
  CHECK_FALSE(oracle_model(parse("p"), FrameClass::USPO, {3, 1000000}).has_value());
}

TEST_CASE("oracle agrees with unreduced enumeration") {
  // The oracle enumerates frames up to isomorphism; the test enumerates every relation.
  std::mt19937_64 rng(99);
  testing::RandomFormulaOptions opts;
  opts.max_connectives = 6;
  for (int k = 0; k < 40; ++k) {
    const Formula f = testing::random_nnf(rng, opts);
    for (FrameClass c : {FrameClass::All, FrameClass::SPO, FrameClass::PO}) {
      for (std::size_t n : {1U, 2U}) {
        const auto mine = oracle_countermodel(f, c, n);
        bool ref = false;
        for (std::size_t m = 1; m <= n; ++m) ref = ref || testing::brute_countermodel(f, c, m).has_value();
        CHECK(mine.has_value() == ref);
        if (mine) {
          CHECK_FALSE(testing::naive_eval(testing::tiny(mine->model), mine->world, f));
          CHECK(testing::relation_in_class(testing::tiny(mine->model).rel, c));
          CHECK(oracle_countermodel(f, c, n + 1).has_value());
        }
      }
    }
  }
}
