#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace llmk;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string prog(const std::string& name) { return test::program_path(name); }

}  // namespace

TEST_CASE("check") {
  Run ok = cli({"check", prog("sampling.llmk")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");

  Run dup = cli({"check", prog("negative/duplicate_use.llmk")});
  CHECK(dup.code == 1);
  CHECK(dup.out.find("duplicate-use") != std::string::npos);
  CHECK(dup.out.find("duplicate_use.llmk:2:") != std::string::npos);

  CHECK(cli({"check", prog("negative/unused_linear.llmk")}).out.find("unused-linear") != std::string::npos);
  CHECK(cli({"check", prog("negative/unit_in_context.llmk")}).out.find("nonempty-context-unit") != std::string::npos);
  CHECK(cli({"check", prog("negative/ll_in_sample.llmk")}).out.find("sample body") != std::string::npos);
}

TEST_CASE("eval") {
  Run r = cli({"eval", prog("coin_pair.llmk"), "--def", "main"});
  CHECK(r.code == 0);
  CHECK(r.out == "(tt,ff) : 1/2\n(ff,tt) : 1/2\n");
  Run rel = cli({"eval", prog("coin_pair.llmk"), "--def", "main", "--model", "rel"});
  CHECK(rel.out == "(tt,ff) : 1\n(ff,tt) : 1\n");
  CHECK(cli({"eval", prog("sampling.llmk"), "--def", "channel"}).out ==
        "(tt,tt) : 257/1200\n(tt,ff) : 203/1200\n(ff,tt) : 203/1200\n(ff,ff) : 179/400\n");
  CHECK(cli({"eval", prog("coin_pair.llmk"), "--def", "main", "--model", "quantum"}).code == 2);
  CHECK(cli({"eval", prog("coin_pair.llmk"), "--def", "nope"}).code == 2);
}

TEST_CASE("equiv") {
  Run same = cli({"equiv", prog("laws.llmk"), "--left", "identity_lhs", "--right", "identity_rhs"});
  CHECK(same.code == 0);
  CHECK(same.out == "EQUIV\n");
  CHECK(cli({"equiv", prog("laws.llmk"), "--left", "fusion_lhs", "--right", "fusion_rhs"}).out == "EQUIV\n");
  Run diff = cli({"equiv", prog("laws.llmk"), "--left", "copied", "--right", "redrawn"});
  CHECK(diff.code == 1);
  CHECK(diff.out == "INEQUIV\n(tt,tt) : copied = 23/60, redrawn = 529/3600\n");
  CHECK(cli({"equiv", prog("laws.llmk"), "--left", "copied", "--right", "redrawn", "--model", "rel"}).code == 1);
  CHECK(cli({"equiv", prog("laws.llmk"), "--left", "t", "--right", "copied"}).code == 2);
}

TEST_CASE("trace and mc") {
  Run t = cli({"trace", prog("coin_pair.llmk"), "--def", "main"});
  CHECK(t.code == 0);
  CHECK(t.out == "(tt,ff) : 1/2\n(ff,tt) : 1/2\n");
  Run m1 = cli({"mc", prog("coin_pair.llmk"), "--def", "main", "--seed", "5", "--n", "1000"});
  Run m2 = cli({"mc", prog("coin_pair.llmk"), "--def", "main", "--seed", "5", "--n", "1000"});
  CHECK(m1.code == 0);
  CHECK(m1.out == m2.out);
  CHECK(cli({"trace", prog("higher_order.llmk"), "--def", "flip"}).code == 1);
}

TEST_CASE("eval and trace agree on every shipped ground definition") {
  for (const char* file : {"coin_pair.llmk", "sampling.llmk", "higher_order.llmk", "laws.llmk"}) {
    Program p = test::load_program(file);
    for (const auto& d : p.defs) {
      if (d.lang != Lang::LL || d.ll_type->kind != LlType::Kind::Meas) continue;
      CAPTURE(d.name);
      Run e = cli({"eval", prog(file), "--def", d.name});
      Run t = cli({"trace", prog(file), "--def", d.name});
      CHECK(e.code == 0);
      CHECK(e.out == t.out);
    }
  }
}

TEST_CASE("laws") {
  Run r = cli({"laws", "--instances", "5", "--law", "sample-identity", "--law", "semiring"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "LAW sample-identity sample-identity-theorem pass 5\n"
        "LAW semiring semiring-axioms pass 133\n");
  std::string kv = "test_cli_report.kv";
  Run k = cli({"laws", "--instances", "0", "--kv", kv});
  CHECK(k.code == 0);
  std::ifstream in(kv);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("law.adequacy.vacuous=true") != std::string::npos);
  std::remove(kv.c_str());
  CHECK(cli({"laws", "--law", "nonsense"}).code == 2);
}

TEST_CASE("webs") {
  Run r = cli({"webs", "--type", "Bool"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "web M Bool\n"
        "index: tt ff\n"
        "gens:\n"
        "  (1, 0)\n"
        "  (0, 1)\n"
        "polar_gens:\n"
        "  (1, 1)\n"
        "bipolar-closed: yes\n");
  CHECK(cli({"webs", "--type", "M Bool (*) M Bool"}).code == 0);
  CHECK(cli({"webs", prog("sampling.llmk"), "--type", "Three"}).out.find("index: a b c") != std::string::npos);
  CHECK(cli({"webs", "--type", "Nat"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"eval", prog("coin_pair.llmk")}).code == 2);
  CHECK(cli({"check", "/nonexistent/file.llmk"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  Run bad = cli({"check", prog("missing.llmk")});
  CHECK(bad.err.find("cannot read") != std::string::npos);
}
