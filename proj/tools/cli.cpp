#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "llmk/denote.hpp"
#include "llmk/generate.hpp"
#include "llmk/laws.hpp"
#include "llmk/oracle.hpp"
#include "llmk/parser.hpp"
#include "llmk/pcoh.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"

namespace llmk {
namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string where(const std::string& file, const Span& span) {
  return file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column);
}

Program load(const std::string& file) { return parse_program(read_file(file)); }

const Def& require_def(const Program& program, const std::string& name) {
  const Def* def = program.find_def(name);
  if (def == nullptr) throw UsageError("no definition named " + name);
  return *def;
}

Semiring parse_model(const std::string& model) {
  if (model == "prob") return Semiring::Prob;
  if (model == "rel") return Semiring::Bool;
  throw UsageError("--model must be prob or rel");
}

std::string show_vec(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

int cmd_check(const std::string& file, std::ostream& out) {
  Program program = load(file);
  std::size_t errors = 0;
  for (const auto& def : program.defs) {
    try {
      typecheck_def(program, def);
    } catch (const TypeError& e) {
      ++errors;
      out << where(file, e.span) << ": " << to_string(e.kind) << ": " << e.message << "\n";
    }
  }
  if (errors == 0) {
    out << "OK\n";
    return kOk;
  }
  return kDomain;
}

int cmd_eval(const std::string& file, const std::string& name, const std::string& model,
             std::ostream& out) {
  Semiring s = parse_model(model);
  Program program = load(file);
  out << format_distribution(denote_def(program, require_def(program, name), s));
  return kOk;
}

std::string def_type(const Def& def) {
  if (def.lang == Lang::LL) return pretty_print(def.ll_type);
  std::string s;
  for (const auto& [x, t] : def.params.entries()) s += x + ":" + pretty_print(t) + ", ";
  return s + "|- " + pretty_print(def.mk_type);
}

int cmd_equiv(const std::string& file, const std::string& left, const std::string& right,
              const std::string& model, std::ostream& out) {
  Semiring s = parse_model(model);
  Program program = load(file);
  const Def& a = require_def(program, left);
  const Def& b = require_def(program, right);
  if (def_type(a) != def_type(b) || a.lang != b.lang) {
    throw UsageError(left + " : " + def_type(a) + " and " + right + " : " + def_type(b) +
                     " have different types");
  }
  Matrix ma = denote_def(program, a, s);
  Matrix mb = denote_def(program, b, s);
  Difference d{};
  if (!first_difference(ma, mb, d)) {
    out << "EQUIV\n";
    return kOk;
  }
  out << "INEQUIV\n";
  std::string entry = ma.rows().size() == 1 ? ma.cols().label(d.col)
                                            : ma.rows().label(d.row) + " | " + ma.cols().label(d.col);
  out << entry << " : " << left << " = " << to_string(ma.at(d.row, d.col)) << ", " << right
      << " = " << to_string(mb.at(d.row, d.col)) << "\n";
  return kDomain;
}

int cmd_trace(const std::string& file, const std::string& name, std::ostream& out) {
  Program program = load(file);
  require_def(program, name);
  out << format_trace(enumerate(program, name));
  return kOk;
}

int cmd_mc(const std::string& file, const std::string& name, std::uint64_t seed, std::size_t n,
           std::ostream& out) {
  Program program = load(file);
  require_def(program, name);
  out << format_tally(mc_sample(program, name, seed, n));
  return kOk;
}

int cmd_laws(const GenConfig& config, const std::vector<std::string>& only,
             const std::string& kv_path, std::ostream& out) {
  const auto& catalog = law_catalog();
  for (const auto& name : only) {
    bool known = std::any_of(catalog.begin(), catalog.end(),
                             [&](const LawInfo& l) { return l.name == name; });
    if (!known) throw UsageError("unknown law " + name);
  }
  LawReport report = run_laws(config, only);
  out << format_report(report);
  if (!kv_path.empty()) {
    std::ofstream kv(kv_path);
    if (!kv) throw UsageError("cannot write " + kv_path);
    kv << format_report_kv(report);
  }
  return report.all_pass() ? kOk : kDomain;
}

int cmd_webs(const std::string& file, const std::string& type_text, std::ostream& out) {
  const Program source = file.empty() ? law_pool() : load(file);
  BaseTable bases;
  for (const auto& b : source.bases) bases[b.name] = b.labels;

  Web web;
  std::string title;
  try {
    auto tau = parse_mk_type(type_text);
    web = web_meas(tau, bases);
    title = "M " + pretty_print(tau);
  } catch (const ParseError&) {
    auto a = parse_ll_type(type_text);
    web = web_of_type(a, bases);
    title = pretty_print(a);
  }
  out << "web " << title << "\n";
  out << "index:";
  for (const auto& l : web.index.labels()) out << " " << l;
  out << "\ngens:\n";
  for (const auto& g : web.gens) out << "  " << show_vec(g) << "\n";
  out << "polar_gens:\n";
  for (const auto& h : web.polar_gens) out << "  " << show_vec(h) << "\n";
  if (!web.polar_rays.empty()) {
    out << "polar_rays:\n";
    for (const auto& r : web.polar_rays) out << "  " << show_vec(r) << "\n";
  }
  bool closed = check_bipolar_closed(web);
  out << "bipolar-closed: " << (closed ? "yes" : "no") << "\n";
  return closed ? kOk : kDomain;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"llmk: exact semantics for a linear/Markov-kernel probabilistic calculus", "llmk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, def, left, right, model = "prob", type_text, kv_path;
  std::uint64_t seed = 1;
  std::size_t n = 10000;
  GenConfig config;
  std::vector<std::string> only;

  auto* check = app.add_subcommand("check", "parse and typecheck every definition");
  check->add_option("FILE", file, "program file")->required();

  auto* eval = app.add_subcommand("eval", "print the denotation of a definition");
  eval->add_option("FILE", file, "program file")->required();
  eval->add_option("--def", def, "definition name")->required();
  eval->add_option("--model", model, "prob or rel")->capture_default_str();

  auto* equiv = app.add_subcommand("equiv", "compare the denotations of two definitions");
  equiv->add_option("FILE", file, "program file")->required();
  equiv->add_option("--left", left, "first definition")->required();
  equiv->add_option("--right", right, "second definition")->required();
  equiv->add_option("--model", model, "prob or rel")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "enumerate weighted execution traces");
  trace->add_option("FILE", file, "program file")->required();
  trace->add_option("--def", def, "definition name")->required();

  auto* mc = app.add_subcommand("mc", "seeded Monte Carlo sampling");
  mc->add_option("FILE", file, "program file")->required();
  mc->add_option("--def", def, "definition name")->required();
  mc->add_option("--seed", seed, "generator seed")->capture_default_str();
  mc->add_option("--n", n, "number of draws")->capture_default_str();

  auto* laws = app.add_subcommand("laws", "run the law suite");
  laws->add_option("--seed", config.seed, "generator seed")->capture_default_str();
  laws->add_option("--instances", config.instances, "instances per law")->capture_default_str();
  laws->add_option("--max-size", config.max_size, "term size bound")->capture_default_str();
  laws->add_option("--law", only, "run only the named law (repeatable)");
  laws->add_option("--kv", kv_path, "also write a key=value report to this file");

  auto* webs = app.add_subcommand("webs", "print the coherence space of M T");
  webs->add_option("FILE", file, "program file declaring the bases (default Bool, Three)");
  webs->add_option("--type", type_text, "an MK type T, or an LL type")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, out);
    if (*eval) return cmd_eval(file, def, model, out);
    if (*equiv) return cmd_equiv(file, left, right, model, out);
    if (*trace) return cmd_trace(file, def, out);
    if (*mc) return cmd_mc(file, def, seed, n, out);
    if (*laws) return cmd_laws(config, only, kv_path, out);
    if (*webs) return cmd_webs(file, type_text, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << where(file, e.span) << ": " << to_string(e.kind) << ": " << e.message << "\n";
    return kDomain;
  } catch (const TypeError& e) {
    err << where(file, e.span) << ": " << to_string(e.kind) << ": " << e.message << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace llmk
