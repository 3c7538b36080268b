#include <doctest.h>

#include "llmk/denote.hpp"
#include "llmk/oracle.hpp"
#include "llmk/parser.hpp"
#include "support.hpp"

using namespace llmk;

namespace {

const Program& prelude() {
  static const Program p = parse_program(
      "base Bool = {tt, ff};\n"
      "base Three = {a, b, c};\n"
      "prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} };\n"
      "prim die : 1 -> Three = { () -> {a: 1/3, b: 1/3, c: 1/3} };\n"
      "prim negb : Bool -> Bool = { tt -> {ff: 1}, ff -> {tt: 1} };\n"
      "def mk k(x : Bool) : Bool = negb(x);\n"
      "def f : M Bool -o M Bool = \\m:M Bool. m;\n");
  return p;
}

TraceDist run(const std::string& text) {
  return enumerate_term(prelude(), parse_ll_term(text, prelude().signature()));
}

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("enumeration") {
  TraceDist copy = run("sample coin(()) as x in (x, x)");
  CHECK(format_trace(copy) == "(tt,tt) : 1/2\n(ff,ff) : 1/2\n");

  TraceDist pair = run("sample coin(()), coin(()) as x, y in (x, y)");
  REQUIRE(pair.outcomes.size() == 4);
  for (const auto& [_, w] : pair.outcomes) CHECK(w == q(1, 4));

  TraceDist mk = enumerate_term(prelude(), parse_mk_term("let x = coin(()) in ()", prelude().signature()));
  CHECK(format_trace(mk) == "() : 1\n");

  TraceDist ho = run("(\\g:M Bool -o M Bool. g (sample coin(()) as x in negb(x))) (\\m:M Bool. m)");
  CHECK(format_trace(ho) == "tt : 1/2\nff : 1/2\n");

  TraceDist dice = run("sample die(()), die(()) as x, y in (x, y)");
  CHECK(dice.outcomes.size() == 9);
  CHECK(dice.weight("(a,c)") == q(1, 9));
  CHECK(dice.weight("nothing") == 0);

  TraceDist lt = run("let p (*) q = coin(()) (*) die(()) in sample q, p as y, x in (x, y)");
  CHECK(lt.weight("(tt,b)") == q(1, 6));
}

TEST_CASE("enumeration of definitions") {
  Program p = test::load_program("coin_pair.llmk");
  CHECK(format_trace(enumerate(p, "main")) == "(tt,ff) : 1/2\n(ff,tt) : 1/2\n");
  CHECK_THROWS_AS(enumerate(prelude(), "f"), OracleError);
  CHECK_THROWS_AS(enumerate(prelude(), "k"), OracleError);
  CHECK_THROWS(enumerate(prelude(), "missing"));
}

TEST_CASE("branch cap") {
  auto t = parse_ll_term("sample die(()), die(()), die(()) as x, y, z in (x, (y, z))", prelude().signature());
  CHECK(enumerate_term(prelude(), t).outcomes.size() == 27);
  CHECK_THROWS_AS(enumerate_term(prelude(), t, 10), OracleError);
}

TEST_CASE("shipped ground definitions agree with their denotations") {
  for (const char* name : {"coin_pair.llmk", "sampling.llmk", "higher_order.llmk", "laws.llmk"}) {
    Program p = test::load_program(name);
    for (const auto& d : p.defs) {
      if (d.lang != Lang::LL || d.ll_type->kind != LlType::Kind::Meas) continue;
      CAPTURE(d.name);
      CHECK(format_trace(enumerate(p, d.name)) == format_distribution(denote_def(p, d)));
    }
  }
}

TEST_CASE("Monte Carlo") {
  auto coin = parse_ll_term("coin(())", prelude().signature());
  Tally t = mc_sample_term(prelude(), coin, 42, 10000);
  CHECK(t.draws == 10000);
  REQUIRE(t.counts.size() == 2);
  CHECK(t.counts[0].first == "tt");
  double freq = static_cast<double>(t.counts[0].second) / 10000.0;
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);
  // mt19937_64 is fully specified, so this count is the same everywhere.
  CHECK(t.counts[0].second == 5079);

  Tally again = mc_sample_term(prelude(), coin, 42, 10000);
  CHECK(format_tally(again) == format_tally(t));
  Tally other = mc_sample_term(prelude(), coin, 43, 10000);
  CHECK(format_tally(other) != format_tally(t));

  Tally det = mc_sample_term(prelude(), parse_ll_term("sample coin(()) as x in ()", prelude().signature()), 7, 100);
  CHECK(format_tally(det) == "() : 1\n");

  Tally none = mc_sample_term(prelude(), coin, 1, 0);
  CHECK(none.draws == 0);
  CHECK(none.counts.empty());
  CHECK(format_tally(none).empty());
}

TEST_CASE("total variation") {
  TraceDist exact = run("coin(())");
  Tally t{4, {{"tt", 3}, {"ff", 1}}};
  CHECK(total_variation(exact, t) == q(1, 4));
  Tally all{2, {{"tt", 1}, {"ff", 1}}};
  CHECK(total_variation(exact, all) == 0);

  Program p = test::load_program("sampling.llmk");
  for (const char* def : {"channel", "independent", "lossy", "applied"}) {
    CAPTURE(def);
    CHECK(total_variation(enumerate(p, def), mc_sample(p, def, 2024, 10000)) <= q(1, 20));
  }
}
