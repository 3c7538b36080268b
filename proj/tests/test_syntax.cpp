#include <doctest.h>

#include <random>

#include "llmk/generate.hpp"
#include "llmk/parser.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"
#include "support.hpp"

using namespace llmk;

namespace {

const auto kBool = MkType::base("Bool");
const auto kMBool = LlType::meas(kBool);

}  // namespace

TEST_CASE("free variables") {
  CHECK(free_vars(LlTerm::lam("x", kMBool, LlTerm::var("x"))).empty());
  auto s = LlTerm::sample({LlTerm::var("t")}, {"x"},
                          MkTerm::pair(MkTerm::var("x"), MkTerm::var("x")));
  CHECK(free_vars(s) == VarSet{"t"});
  CHECK(free_vars(MkTerm::let("x", MkTerm::var("y"), MkTerm::var("x"))) == VarSet{"y"});
  auto leak = LlTerm::sample({}, {}, MkTerm::var("m"));
  CHECK(free_vars(leak) == VarSet{"m"});
}

TEST_CASE("fresh names") {
  CHECK(fresh_var("x", {}) == "x");
  CHECK(fresh_var("x", {"x"}) == "x_1");
  CHECK(fresh_var("x", {"x", "x_1", "x_2"}) == "x_3");
}

TEST_CASE("LL substitution") {
  auto u = LlTerm::var("u");
  CHECK(alpha_eq(subst_ll(LlTerm::var("x"), {{"x", u}}), u));

  auto lam = LlTerm::lam("y", kMBool, LlTerm::var("x"));
  auto r = subst_ll(lam, {{"x", LlTerm::var("y")}});
  REQUIRE(r->kind == LlTerm::Kind::Lam);
  CHECK(r->name != "y");
  CHECK(r->first->kind == LlTerm::Kind::Var);
  CHECK(r->first->name == "y");
  CHECK(free_vars(r) == VarSet{"y"});

  auto body = MkTerm::prim("negb", MkTerm::var("z"));
  auto t = LlTerm::var("t");
  auto s = subst_ll(LlTerm::sample({LlTerm::var("x")}, {"z"}, body), {{"x", t}});
  CHECK(alpha_eq(s, LlTerm::sample({t}, {"z"}, body)));

  SUBCASE("simultaneous") {
    auto swap = subst_ll(LlTerm::tensor(LlTerm::var("a"), LlTerm::var("b")),
                         {{"a", LlTerm::var("b")}, {"b", LlTerm::var("a")}});
    CHECK(alpha_eq(swap, LlTerm::tensor(LlTerm::var("b"), LlTerm::var("a"))));
  }
  SUBCASE("let-tensor binders avoid capture") {
    auto lt = LlTerm::let_tensor("p", "q", LlTerm::var("w"),
                                 LlTerm::tensor(LlTerm::var("p"), LlTerm::var("x")));
    auto r2 = subst_ll(lt, {{"x", LlTerm::var("q")}});
    CHECK(free_vars(r2) == VarSet{"q", "w"});
  }
}

TEST_CASE("MK substitution") {
  auto m = MkTerm::prim("coin", MkTerm::unit());
  CHECK(alpha_eq(subst_mk(MkTerm::var("x"), {{"x", m}}), m));
  auto n = MkTerm::var("n");
  CHECK(alpha_eq(subst_mk(MkTerm::let("y", MkTerm::var("x"), MkTerm::var("y")), {{"x", n}}),
                 MkTerm::let("y", n, MkTerm::var("y"))));
  CHECK(alpha_eq(subst_mk(MkTerm::unit(), {{"x", m}}), MkTerm::unit()));
  auto captured = subst_mk(MkTerm::let("y", MkTerm::unit(), MkTerm::pair(MkTerm::var("x"), MkTerm::var("y"))),
                           {{"x", MkTerm::var("y")}});
  CHECK(free_vars(captured) == VarSet{"y"});
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(LlTerm::lam("x", kMBool, LlTerm::var("x")),
                 LlTerm::lam("y", kMBool, LlTerm::var("y"))));
  CHECK_FALSE(alpha_eq(LlTerm::var("x"), LlTerm::var("y")));
  auto t = LlTerm::var("t");
  CHECK(alpha_eq(LlTerm::sample({t}, {"x"}, MkTerm::var("x")),
                 LlTerm::sample({t}, {"z"}, MkTerm::var("z"))));
  CHECK_FALSE(alpha_eq(LlTerm::lam("x", kMBool, LlTerm::var("x")),
                       LlTerm::lam("x", LlType::meas(MkType::unit()), LlTerm::var("x"))));
  CHECK_FALSE(alpha_eq(LlTerm::sample({t, t}, {"x", "y"}, MkTerm::var("x")),
                       LlTerm::sample({t, t}, {"x", "y"}, MkTerm::var("y"))));
}

TEST_CASE("parse a whole program") {
  Program p = parse_program(
      "base Bool = {tt, ff}; prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} }; "
      "def main : M Bool = sample coin(()) as x in x;");
  CHECK(p.bases.size() == 1);
  CHECK(p.prims.size() == 1);
  CHECK(p.defs.size() == 1);
  CHECK(p.prims[0].kernel.at("()").at("tt") == Rational(1, 2));
}

TEST_CASE("parse errors") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_program(text);
    } catch (const ParseError& e) {
      return std::string(to_string(e.kind));
    }
    return std::string("none");
  };
  CHECK(kind_of("base Bool = {tt, ff}; prim c : 1 -> Bool = { () -> {tt: 1} }; "
                "def bad : M Bool = sample c(()) as x in y;") == "unknown-identifier");
  CHECK(kind_of("base Bool = {tt, ff}; prim p : 1 -> Bool = { () -> {tt: 2/3} };") ==
        "invalid-kernel");
  CHECK(kind_of("base Bool = {tt, ff}; base Bool = {a};") == "duplicate-declaration");
  CHECK(kind_of("base Bool = {tt, tt};") == "duplicate-declaration");
  CHECK(kind_of("base Bool = {tt, ff} def") == "syntax-error");
  CHECK(kind_of("base Bool = {tt, ff}; $") == "lexical-error");
  CHECK(kind_of("def x : M Nat = sample as in ();") == "unknown-identifier");

  try {
    parse_program("base Bool = {tt, ff};\nprim p : 1 -> Bool = { () -> {tt: 2/3} };");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 2);
    CHECK(std::string(e.message).find("2/3") != std::string::npos);
  }
}

TEST_CASE("printing") {
  CHECK(pretty_print(LlType::lolli(kMBool, kMBool)) == "M Bool -o M Bool");
  CHECK(pretty_print(LlTerm::sample({LlTerm::var("t")}, {"x"},
                                    MkTerm::pair(MkTerm::var("x"), MkTerm::var("x")))) ==
        "sample t as x in (x, x)");
  CHECK(pretty_print(LlTerm::tensor(LlTerm::var("a"), LlTerm::var("b"))) == "a (*) b");
  CHECK(pretty_print(MkType::prod(MkType::prod(kBool, kBool), kBool)) == "(Bool * Bool) * Bool");
  CHECK(pretty_print(LlType::lolli(LlType::lolli(kMBool, kMBool), kMBool)) ==
        "(M Bool -o M Bool) -o M Bool");
}

TEST_CASE("type round trip") {
  for (const char* text : {"1", "Bool", "Bool * Bool", "(Bool * 1) * Bool", "Bool * 1 * Bool"}) {
    CHECK(pretty_print(parse_mk_type(text)) == text);
  }
  for (const char* text : {"M Bool -o M Bool", "M Bool (*) M 1", "(M Bool -o M 1) -o 1",
                           "M Bool -o M Bool -o M Bool", "M Bool * Bool (*) (M Bool -o 1)"}) {
    CHECK(pretty_print(parse_ll_type(text)) == text);
  }
}

TEST_CASE("shipped programs round trip through the printer") {
  for (const char* name : {"coin_pair.llmk", "sampling.llmk", "higher_order.llmk", "laws.llmk"}) {
    CAPTURE(name);
    Program p = test::load_program(name);
    std::string once = pretty_print(p);
    Program q = parse_program(once);
    CHECK(pretty_print(q) == once);
    REQUIRE(q.defs.size() == p.defs.size());
    for (std::size_t i = 0; i < p.defs.size(); ++i) {
      if (p.defs[i].lang == Lang::LL) CHECK(alpha_eq(p.defs[i].ll_term, q.defs[i].ll_term));
      else CHECK(alpha_eq(p.defs[i].mk_term, q.defs[i].mk_term));
    }
  }
}

TEST_CASE("generated terms round trip through the printer") {
  const Signature sig = law_pool().signature();
  Generator gen(law_pool(), 11, 12);
  for (int i = 0; i < 300; ++i) {
    auto type = gen.random_pool_type(2);
    auto t = gen.gen_ll({}, type);
    std::string text = pretty_print(t);
    CAPTURE(text);
    auto back = parse_ll_term(text, sig);
    CHECK(alpha_eq(back, t));
    CHECK(pretty_print(back) == text);

    MkContext ctx{{"x", kBool}};
    auto m = gen.gen_mk(ctx, gen.random_mk_type());
    CHECK(alpha_eq(parse_mk_term(pretty_print(m), sig), m));
  }
}

TEST_CASE("parser fuzzing only raises parse errors") {
  const std::string seed_text =
      "base Bool = {tt, ff};\n"
      "prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} };\n"
      "prim both : Bool * Bool -> Bool = { (tt, tt) -> {tt: 1}, (tt, ff) -> {ff: 1},"
      " (ff, tt) -> {ff: 1}, (ff, ff) -> {ff: 1} };\n"
      "def mk k(x : Bool) : Bool = let y = coin(()) in both((x, y));\n"
      "def mk k0 : Bool = coin(());\n"
      "def f : M Bool -o M Bool = \\m:M Bool. sample m as x in both((x, k0));\n"
      "def g : M Bool (*) M Bool = let p (*) q = coin(()) (*) f coin(()) in p (*) q;\n";
  const std::string alphabet = "()[]{}:;,.=\\*-o>|/ 0123456789abcMxyz_\n";
  std::mt19937_64 rng(2024);
  std::size_t accepted = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text = seed_text;
    int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      std::size_t pos = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:
          if (pos < text.size()) text.erase(pos, 1);
          break;
        case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default:
          if (pos < text.size()) text[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      Program p = parse_program(text);
      ++accepted;
      CHECK(parse_program(pretty_print(p)).defs.size() == p.defs.size());
    } catch (const ParseError&) {
    }
  }
  CHECK(accepted > 0);
}
