#include <random>

#include "doctest.h"
#include "hytab/formula.hpp"
#include "hytab/parser.hpp"
#include "support.hpp"

using namespace hytab;

namespace {

Formula p() { return Formula::prop("p"); }
Formula nom(const char* n) { return Formula::nom(n); }

}  // namespace

TEST_CASE("parse builds the expected tree") {
  const Formula f = parse("@i(<>j & @j p & []~p)");
  const Formula expect =
      Formula::at("i", Formula::conj(Formula::dia(nom("j")), Formula::conj(Formula::at("j", p()), Formula::box(Formula::neg(p())))));
  CHECK(f == expect);
  CHECK(parse("p") == p());
  CHECK(parse("@i([]p -> <>p)") == Formula::at("i", Formula::disj(Formula::neg(Formula::box(p())), Formula::dia(p()))));
}

TEST_CASE("parse: precedence and associativity") {
  const Formula q = Formula::prop("q"), r = Formula::prop("r");
  CHECK(parse("p & q | r") == Formula::disj(Formula::conj(p(), q), r));
  CHECK(parse("p | q & r") == Formula::disj(p(), Formula::conj(q, r)));
  CHECK(parse("p -> q -> r") == Formula::implies(p(), Formula::implies(q, r)));
  CHECK(parse("~<>p") == Formula::neg(Formula::dia(p())));
  CHECK(parse("@i p & q") == Formula::conj(Formula::at("i", p()), q));
  CHECK(parse("p <-> q") == Formula::conj(Formula::implies(p(), q), Formula::implies(q, p())));
}

TEST_CASE("parse: unicode aliases") {
  CHECK(parse("◇j ∧ @j p → ◇p") == parse("<>j & @j p -> <>p"));
  CHECK(parse("¬□p ∨ q") == parse("~[]p | q"));
}

TEST_CASE("parse: nominals come from @ or the options") {
  CHECK(parse("<>j & @j p").lhs().child().kind() == Kind::Nom);
  CHECK(parse("<>j").child().kind() == Kind::Prop);
  ParseOptions o;
  o.nominals = {"j"};
  CHECK(parse("<>j", o).child().kind() == Kind::Nom);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse("p & (q | ");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("@ p"), ParseError);
  CHECK_THROWS_AS(parse("p $ q"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("parse rejects namespace clashes and reserved names") {
  ParseOptions o;
  o.props = {"j"};
  CHECK_THROWS_AS(parse("@j p", o), ParseError);
  CHECK_THROWS_AS(parse("@n3 p"), ParseError);
  CHECK_THROWS_AS(parse("n0 & p"), ParseError);
  o = {};
  o.allow_reserved = true;
  CHECK(parse("@n3 p", o) == Formula::at("n3", p()));
}

TEST_CASE("print and parse round-trip") {
  std::mt19937_64 rng(7);
  ParseOptions o;
  o.nominals = {"a", "b"};
  for (int k = 0; k < 500; ++k) {
    const Formula f = testing::random_nnf(rng);
    const std::string s = to_string(f);
    const Formula g = parse(s, o);
    CHECK(g == f);
    CHECK(to_string(g) == s);
    CHECK(parse(to_string(f, Notation::Unicode), o) == f);
  }
}

TEST_CASE("to_nnf") {
  CHECK(to_nnf(parse("~([]p -> <>p)")) == parse("[]p & []~p"));
  CHECK(to_nnf(Formula::neg(Formula::neg(p()))) == p());
  CHECK(to_nnf(parse("~@j <>i", {{"i"}, {}, false})) == parse("@j []~i", {{"i"}, {}, false}));
  CHECK(to_nnf(parse("~(p & ~q)")) == parse("~p | q"));
  CHECK(is_nnf(to_nnf(parse("~(<>p -> @i ~[]q)"))));
  CHECK_FALSE(is_nnf(parse("~~p")));
  CHECK(is_nnf(parse("~p & ~i", {{"i"}, {}, false})));
}

TEST_CASE("to_nnf preserves truth on all small models") {
  // Every relation and valuation over two worlds for one prop and two nominals.
  std::mt19937_64 rng(11);
  testing::RandomFormulaOptions opts;
  opts.props = {"p"};
  opts.max_connectives = 8;
  for (int k = 0; k < 60; ++k) {
    Formula f = testing::random_nnf(rng, opts);
    if (k % 2) f = Formula::neg(Formula::conj(f, Formula::neg(Formula::box(f))));
    const Formula g = to_nnf(f);
    CHECK(is_nnf(g));
    CHECK(to_nnf(g) == g);
    // f <-> g is valid iff neither direction has a countermodel.
    const Formula eq = Formula::conj(Formula::implies(f, g), Formula::implies(g, f));
    CHECK_FALSE(testing::brute_countermodel(eq, FrameClass::All, 2).has_value());
  }
}

TEST_CASE("complement") {
  CHECK(complement(p()) == Formula::neg(p()));
  CHECK(complement(Formula::neg(p())) == p());
  CHECK(complement(parse("<>p & @i q")) == parse("[]~p | @i ~q"));
}

TEST_CASE("subformulas") {
  const Formula f = parse("@i(<>j & @j p & []~p)");
  const SubformulaClosure c(f);
  CHECK(c.contains(f));
  CHECK(c.contains(p()));
  CHECK(c.contains(nom("j")));
  CHECK_FALSE(c.contains(nom("i")));
  CHECK(c.size() <= f.size());
  CHECK(is_subformula(Formula::at("j", p()), f));
  CHECK(is_subformula(f, f));
  CHECK_FALSE(is_subformula(parse("[]~i", {{"i"}, {}, false}), Formula::neg(nom("i"))));
  CHECK(nominals_of(f) == std::set<Nominal>{"i", "j"});
  CHECK(props_of(f) == std::set<std::string>{"p"});
  CHECK(f.modal_depth() == 1);
  CHECK(parse("<>[]@i <>p").modal_depth() == 3);
}

TEST_CASE("fresh nominals") {
  CHECK(fresh_nominal({}) == "n0");
  CHECK(fresh_nominal({"n0", "i"}) == "n1");
  std::set<Nominal> used{"i", "j"};
  for (int k = 0; k <= 41; ++k) used.insert("n" + std::to_string(k));
  CHECK(fresh_nominal(used) == "n42");
  CHECK(is_reserved_nominal("n12"));
  CHECK_FALSE(is_reserved_nominal("n"));
  CHECK(is_reserved_nominal("n01"));
  CHECK_FALSE(is_reserved_nominal("nx"));
}
