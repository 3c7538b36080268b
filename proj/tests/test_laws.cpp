#include <doctest.h>

#include <set>

#include "llmk/generate.hpp"
#include "llmk/laws.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"

using namespace llmk;

TEST_CASE("generator is reproducible") {
  Generator a(law_pool(), 9, 10), b(law_pool(), 9, 10);
  for (int i = 0; i < 50; ++i) {
    auto ta = a.random_pool_type(2), tb = b.random_pool_type(2);
    REQUIRE(pretty_print(ta) == pretty_print(tb));
    CHECK(pretty_print(a.gen_ll({}, ta)) == pretty_print(b.gen_ll({}, tb)));
  }
}

TEST_CASE("generated terms are well typed") {
  const Signature sig = law_pool().signature();
  Generator gen(law_pool(), 3, 10);
  for (int i = 0; i < 300; ++i) {
    LlContext ctx;
    std::size_t n = gen.below(3);
    for (std::size_t k = 0; k < n; ++k) ctx.push(gen.fresh("g"), gen.random_pool_type(2));
    auto type = gen.random_pool_type(2);
    auto t = gen.gen_ll(ctx, type);
    CAPTURE(pretty_print(t));
    CHECK(equal(typecheck_ll(sig, ctx, t), type));
  }
  for (int i = 0; i < 50; ++i) {
    auto t = gen.gen_ll_within({}, LlType::meas(gen.random_mk_type()), 10);
    CHECK(term_size(t) <= 10);
  }
}

TEST_CASE("MK generation can return a bare variable") {
  Generator gen(law_pool(), 1, 1);
  MkContext ctx{{"x", MkType::base("Bool")}};
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) seen.insert(pretty_print(gen.gen_mk(ctx, MkType::base("Bool"))));
  CHECK(seen.count("x") == 1);
}

TEST_CASE("linear context variables are used exactly once") {
  const Signature sig = law_pool().signature();
  Generator gen(law_pool(), 12, 10);
  auto mb = LlType::meas(MkType::base("Bool"));
  for (int i = 0; i < 100; ++i) {
    LlContext ctx{{"x", mb}};
    auto t = gen.gen_ll(ctx, LlType::lolli(mb, gen.random_pool_type(1)));
    CHECK(free_vars(t) == VarSet{"x"});
    CHECK_NOTHROW(typecheck_ll(sig, ctx, t));
  }
}

TEST_CASE("default configuration passes every law") {
  LawReport report = run_laws(GenConfig{});
  CHECK(report.laws.size() == law_catalog().size());
  for (const auto& l : report.laws) {
    CAPTURE(l.name);
    CHECK(l.pass());
    CHECK(l.instances > 0);
  }
  CHECK(report.all_pass());
  CHECK(report.find("sample-identity")->instances == 200);
  CHECK(report.find("adequacy")->anchor == "oracle-adequacy");
}

TEST_CASE("dropping the braid in copy on products is caught") {
  GenConfig cfg;
  cfg.mutate_drop_braid = true;
  LawResult r = run_law("comonoid", cfg);
  CHECK_FALSE(r.pass());
  REQUIRE_FALSE(r.counterexamples.empty());
  CHECK(r.counterexamples[0].find("copy on X (*) Y") != std::string::npos);
  LawReport report{{r}};
  std::string text = format_report(report);
  CHECK(text.rfind("LAW comonoid markov-comonoid fail ", 0) == 0);
  CHECK(text.find("counterexample:") != std::string::npos);
  CHECK(format_report_kv(report).find("all_pass=false") != std::string::npos);
}

TEST_CASE("zero instances is a vacuous pass") {
  GenConfig cfg;
  cfg.instances = 0;
  LawReport report = run_laws(cfg);
  CHECK(report.all_pass());
  for (const auto& l : report.laws) {
    CHECK(l.instances == 0);
    CHECK(l.vacuous());
  }
  std::string text = format_report(report);
  CHECK(text.find("LAW sample-fusion sample-fusion-theorem pass 0\n  note: pass by vacuity") !=
        std::string::npos);
  CHECK(format_report_kv(report).find("law.semiring.vacuous=true") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  GenConfig cfg;
  cfg.instances = 20;
  cfg.seed = 77;
  std::vector<std::string> only{"sample-fusion", "compositionality", "adequacy"};
  CHECK(format_report_kv(run_laws(cfg, only)) == format_report_kv(run_laws(cfg, only)));
  CHECK_THROWS_AS(run_law("no-such-law", cfg), std::invalid_argument);
}

TEST_CASE("kv report layout") {
  GenConfig cfg;
  cfg.instances = 3;
  std::string kv = format_report_kv(run_laws(cfg, {"semiring"}));
  CHECK(kv ==
        "laws=1\n"
        "law.semiring.anchor=semiring-axioms\n"
        "law.semiring.status=pass\n"
        "law.semiring.instances=133\n"
        "law.semiring.failures=0\n"
        "law.semiring.vacuous=false\n"
        "all_pass=true\n");
}

TEST_CASE("shrinking") {
  const Signature sig = law_pool().signature();
  Generator gen(law_pool(), 31, 14);
  auto uses_die = [](const LlTermPtr& t) { return pretty_print(t).find("die") != std::string::npos; };
  int shrunk = 0;
  for (int i = 0; i < 200 && shrunk < 10; ++i) {
    auto t = gen.gen_ll({}, LlType::meas(gen.random_mk_type()));
    if (!uses_die(t)) continue;
    auto type = typecheck_ll(sig, {}, t);
    auto small = shrink_ll(t, [&](const LlTermPtr& c) {
      try {
        return equal(typecheck_ll(sig, {}, c), type) && uses_die(c);
      } catch (const TypeError&) {
        return false;
      }
    });
    CHECK(uses_die(small));
    CHECK(term_size(small) <= term_size(t));
    CHECK(equal(typecheck_ll(sig, {}, small), type));
    ++shrunk;
  }
  CHECK(shrunk == 10);

  auto t = gen.gen_ll({}, LlType::meas(MkType::base("Bool")));
  CHECK(shrink_ll(t, [](const LlTermPtr&) { return false; }) == t);
}
