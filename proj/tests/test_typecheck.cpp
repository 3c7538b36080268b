#include <doctest.h>

#include "llmk/generate.hpp"
#include "llmk/parser.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"
#include "support.hpp"

using namespace llmk;

namespace {

const Signature& sig() {
  static const Signature s = parse_program(
                                 "base Bool = {tt, ff};\n"
                                 "prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} };\n"
                                 "prim negb : Bool -> Bool = { tt -> {ff: 1}, ff -> {tt: 1} };\n")
                                 .signature();
  return s;
}

std::string ll_type_of(const std::string& text) {
  return pretty_print(typecheck_ll(sig(), {}, parse_ll_term(text, sig())));
}

std::string ll_error(const std::string& text, const LlContext& ctx = {}) {
  try {
    typecheck_ll(sig(), ctx, parse_ll_term(text, sig()));
  } catch (const TypeError& e) {
    return to_string(e.kind);
  }
  return "ok";
}

std::string mk_error(const std::string& text, const MkContext& ctx = {}) {
  try {
    typecheck_mk(sig(), ctx, parse_mk_term(text, sig()));
  } catch (const TypeError& e) {
    return to_string(e.kind);
  }
  return "ok";
}

const auto kBool = MkType::base("Bool");

}  // namespace

TEST_CASE("MK rules") {
  MkContext x{{"x", kBool}};
  CHECK(pretty_print(typecheck_mk(sig(), x, parse_mk_term("(x, x)", sig()))) == "Bool * Bool");
  CHECK(pretty_print(typecheck_mk(sig(), x, MkTerm::unit())) == "1");
  CHECK(mk_error("x") == "unbound");
  CHECK(pretty_print(typecheck_mk(sig(), x, parse_mk_term("let y = negb(x) in (x, y)", sig()))) ==
        "Bool * Bool");
  CHECK(pretty_print(typecheck_mk(sig(), {}, parse_mk_term("fst (coin(()), ())", sig()))) ==
        "Bool");
  CHECK(mk_error("negb(())") == "type-mismatch");
  CHECK(mk_error("fst x", x) == "type-mismatch");
  CHECK_THROWS_AS(typecheck_mk(sig(), x, MkTerm::prim("frob", MkTerm::var("x"))), TypeError);
}

TEST_CASE("positive LL examples") {
  CHECK(ll_type_of("\\x:M Bool. sample x as y in (y, y)") == "M Bool -o M Bool * Bool");
  CHECK(ll_type_of("\\x:M Bool. sample x as y in ()") == "M Bool -o M 1");
  CHECK(ll_type_of("\\meas:M Bool. sample meas as x in negb(x)") == "M Bool -o M Bool");
  CHECK(ll_type_of("sample as in ()") == "M 1");
  CHECK(ll_type_of("\\p:M Bool (*) M Bool. let a (*) b = p in sample b, a as x, y in (x, y)") ==
        "M Bool (*) M Bool -o M Bool * Bool");
  CHECK(ll_type_of("(\\f:M Bool -o M Bool. f coin(())) (\\m:M Bool. m)") == "M Bool");
  CHECK(ll_type_of("()") == "1");
}

TEST_CASE("negative LL examples") {
  CHECK(ll_error("\\x:M Bool. x (*) x") == "duplicate-use");
  CHECK(ll_error("\\x:M Bool. coin(())") == "unused-linear");
  CHECK(ll_error("\\x:M Bool. ()") == "nonempty-context-unit");
  CHECK(ll_error("\\m:M Bool. sample coin(()) as x in m") == "unbound");
  CHECK(ll_error("\\m:M Bool. sample m, m as x, y in (x, y)") == "duplicate-use");
  CHECK(ll_error("\\u:1. sample u as x in x") == "not-measure-type");
  CHECK(ll_error("\\m:M Bool. sample m as x, x in x") == "sample-arity");
  CHECK(ll_error("sample coin(()), coin(()) as x, x in x") == "duplicate-use");
  CHECK(ll_error("(\\m:M Bool. m) ()") == "type-mismatch");
  CHECK(ll_error("y") == "unbound");
  CHECK(ll_error("\\m:M Bool. sample m as x in negb(())") == "type-mismatch");
  CHECK(ll_error("let a (*) b = coin(()) in a") == "type-mismatch");
}

TEST_CASE("LL context discipline") {
  LlContext two{{"a", LlType::meas(kBool)}, {"b", LlType::meas(kBool)}};
  CHECK(ll_error("a (*) b", two) == "ok");
  CHECK(ll_error("b (*) a", two) == "ok");
  CHECK(ll_error("a", two) == "unused-linear");
  CHECK(ll_error("(\\z:M Bool. z) a", two) == "unused-linear");
  CHECK(ll_error("sample a, b as x, y in both", two) == "unbound");
  LlContext one{{"a", LlType::meas(kBool)}};
  CHECK(ll_error("()", one) == "nonempty-context-unit");
  CHECK(ll_error("\\a:M Bool. a", one) == "unused-linear");
}

TEST_CASE("error positions and messages") {
  try {
    typecheck_ll(sig(), {}, parse_ll_term("\\x:M Bool.\n  x (*) x", sig()));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeError::Kind::DuplicateUse);
    CHECK(e.span.line == 2);
    CHECK(std::string(e.what()).rfind("duplicate-use: ", 0) == 0);
  }
}

TEST_CASE("shipped negative programs fail with the designated kind") {
  const std::vector<std::pair<const char*, TypeError::Kind>> cases{
      {"negative/duplicate_use.llmk", TypeError::Kind::DuplicateUse},
      {"negative/unused_linear.llmk", TypeError::Kind::UnusedLinear},
      {"negative/unit_in_context.llmk", TypeError::Kind::NonemptyContextUnit},
      {"negative/ll_in_sample.llmk", TypeError::Kind::Unbound},
  };
  for (const auto& [file, kind] : cases) {
    CAPTURE(file);
    Program p = test::load_program(file);
    REQUIRE(p.defs.size() == 1);
    try {
      typecheck_def(p, p.defs[0]);
      FAIL("expected a type error");
    } catch (const TypeError& e) {
      CHECK(e.kind == kind);
    }
  }
}

TEST_CASE("shipped programs typecheck") {
  for (const char* name : {"coin_pair.llmk", "sampling.llmk", "higher_order.llmk", "laws.llmk"}) {
    Program p = test::load_program(name);
    for (const auto& d : p.defs) {
      CAPTURE(d.name);
      CHECK_NOTHROW(typecheck_def(p, d));
    }
  }
}

TEST_CASE("definitions are checked against their declared type") {
  Program p = parse_program(
      "base Bool = {tt, ff};\n"
      "prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} };\n"
      "def wrong : M 1 = coin(());\n"
      "def mk k(x : Bool) : Bool * Bool = (x, x);\n"
      "def mk bad(x : Bool) : Bool = ();\n");
  CHECK_THROWS_AS(typecheck_def(p, p.defs[0]), TypeError);
  CHECK_NOTHROW(typecheck_def(p, p.defs[1]));
  CHECK_THROWS_AS(typecheck_def(p, p.defs[2]), TypeError);
}

TEST_CASE("substitution preserves typing") {
  const Signature pool = law_pool().signature();
  Generator gen(law_pool(), 5, 8);
  for (int i = 0; i < 200; ++i) {
    auto a = gen.random_pool_type(2);
    auto b = gen.random_pool_type(2);
    LlContext with_x{{"x", a}};
    auto t = gen.gen_ll(with_x, b);
    auto u = gen.gen_ll({}, a);
    auto s = subst_ll(t, {{"x", u}});
    CAPTURE(pretty_print(s));
    CHECK(equal(typecheck_ll(pool, {}, s), b));
  }
}
