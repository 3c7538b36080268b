// Python bindings. Programs cross the boundary as source text and rationals
// as "p/q" strings; the llmk package converts them to fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "llmk/denote.hpp"
#include "llmk/generate.hpp"
#include "llmk/laws.hpp"
#include "llmk/oracle.hpp"
#include "llmk/parser.hpp"
#include "llmk/pcoh.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"

namespace py = pybind11;
using namespace llmk;

namespace {

using Entry = std::tuple<std::string, std::string, std::string>;

Semiring model_of(const std::string& model) {
  if (model == "prob") return Semiring::Prob;
  if (model == "rel") return Semiring::Bool;
  throw py::value_error("model must be 'prob' or 'rel'");
}

const Def& def_of(const Program& p, const std::string& name) {
  const Def* d = p.find_def(name);
  if (d == nullptr) throw py::key_error("no definition named " + name);
  return *d;
}

std::vector<py::dict> check(const std::string& text) {
  Program p = parse_program(text);
  std::vector<py::dict> out;
  for (const auto& d : p.defs) {
    try {
      typecheck_def(p, d);
    } catch (const TypeError& e) {
      py::dict diag;
      diag["definition"] = d.name;
      diag["kind"] = to_string(e.kind);
      diag["line"] = e.span.line;
      diag["column"] = e.span.column;
      diag["message"] = e.message;
      out.push_back(diag);
    }
  }
  return out;
}

std::vector<Entry> entries(const Matrix& m) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < m.rows().size(); ++i) {
    for (std::size_t j = 0; j < m.cols().size(); ++j) {
      if (sgn(m.at(i, j)) != 0) out.emplace_back(m.rows().label(i), m.cols().label(j), to_string(m.at(i, j)));
    }
  }
  return out;
}

std::vector<Entry> denote(const std::string& text, const std::string& name, const std::string& model) {
  Program p = parse_program(text);
  return entries(denote_def(p, def_of(p, name), model_of(model)));
}

bool equiv(const std::string& text, const std::string& left, const std::string& right,
           const std::string& model) {
  Program p = parse_program(text);
  Matrix a = denote_def(p, def_of(p, left), model_of(model));
  Matrix b = denote_def(p, def_of(p, right), model_of(model));
  if (a.rows().size() != b.rows().size() || a.cols().size() != b.cols().size()) {
    throw py::value_error("definitions have different types");
  }
  return a == b;
}

std::vector<std::pair<std::string, std::string>> trace(const std::string& text, const std::string& name) {
  Program p = parse_program(text);
  def_of(p, name);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [point, w] : enumerate(p, name).outcomes) out.emplace_back(point, to_string(w));
  return out;
}

std::vector<std::pair<std::string, std::size_t>> mc(const std::string& text, const std::string& name,
                                                    std::uint64_t seed, std::size_t n) {
  Program p = parse_program(text);
  def_of(p, name);
  return mc_sample(p, name, seed, n).counts;
}

py::dict to_dict(const LawResult& r) {
  py::dict d;
  d["name"] = r.name;
  d["anchor"] = r.anchor;
  d["instances"] = r.instances;
  d["failures"] = r.failures;
  d["passed"] = r.pass();
  d["vacuous"] = r.vacuous();
  d["counterexamples"] = r.counterexamples;
  return d;
}

LawReport laws(std::uint64_t seed, std::size_t instances, std::size_t max_size,
               const std::vector<std::string>& only) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.instances = instances;
  cfg.max_size = max_size;
  py::gil_scoped_release release;
  return run_laws(cfg, only);
}

std::vector<std::vector<std::string>> show(const std::vector<Vec>& vs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& v : vs) {
    std::vector<std::string> row;
    for (const auto& x : v) row.push_back(to_string(x));
    out.push_back(row);
  }
  return out;
}

py::dict web(const std::string& type_text, const std::string& program_text) {
  BaseTable bases;
  const Program source = program_text.empty() ? law_pool() : parse_program(program_text);
  for (const auto& b : source.bases) bases[b.name] = b.labels;
  Web w;
  try {
    w = web_meas(parse_mk_type(type_text), bases);
  } catch (const ParseError&) {
    w = web_of_type(parse_ll_type(type_text), bases);
  }
  py::dict d;
  d["index"] = w.index.labels();
  d["gens"] = show(w.gens);
  d["polar_gens"] = show(w.polar_gens);
  d["polar_rays"] = show(w.polar_rays);
  d["bipolar_closed"] = check_bipolar_closed(w);
  return d;
}

}  // namespace

PYBIND11_MODULE(_llmk, m) {
  m.doc() = "Exact semantics for a linear/Markov-kernel probabilistic calculus";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TypeError>(m, "TypeCheckError", PyExc_ValueError);
  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  m.def("check", &check, py::arg("text"),
        "Typechecks every definition; returns a list of diagnostics.");
  m.def("denote", &denote, py::arg("text"), py::arg("name"), py::arg("model") = "prob",
        "Nonzero entries (row, column, value) of a definition's denotation.");
  m.def("equiv", &equiv, py::arg("text"), py::arg("left"), py::arg("right"),
        py::arg("model") = "prob");
  m.def("trace", &trace, py::arg("text"), py::arg("name"),
        "Exhaustive trace enumeration of a ground definition.");
  m.def("mc", &mc, py::arg("text"), py::arg("name"), py::arg("seed") = 1, py::arg("n") = 10000,
        "Seeded Monte Carlo draw counts.");
  m.def("pretty", [](const std::string& text) { return pretty_print(parse_program(text)); },
        py::arg("text"));
  m.def("web", &web, py::arg("type"), py::arg("program") = "",
        "Generators of the coherence space of a type.");

  py::class_<LawReport>(m, "LawReport")
      .def_property_readonly("all_pass", &LawReport::all_pass)
      .def_property_readonly("laws", [](const LawReport& r) {
        std::vector<py::dict> out;
        for (const auto& l : r.laws) out.push_back(to_dict(l));
        return out;
      })
      .def("text", &format_report)
      .def("kv", &format_report_kv);
  m.def("run_laws", &laws, py::arg("seed") = 1, py::arg("instances") = 200,
        py::arg("max_size") = 10, py::arg("only") = std::vector<std::string>{});
  m.def("law_names", [] {
    std::vector<std::string> out;
    for (const auto& l : law_catalog()) out.push_back(l.name);
    return out;
  });
}
