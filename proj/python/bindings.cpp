#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abcover/fixtures.hpp"
#include "abcover/report.hpp"
#include "abcover/search.hpp"

namespace py = pybind11;
using namespace abcover;

namespace {

// Results cross the boundary as JSON text; the Python layer decodes them.

std::string analyze_json(const std::string& doc, bool verbose, unsigned threads, bool timing) {
  CoverData data = parse_cover_document(doc);
  AnalysisReport rep;
  {
    py::gil_scoped_release nogil;
    rep = analyze(data, AnalysisOptions{verbose, threads});
  }
  return report_to_json(rep, timing).dump();
}

std::string validate_json(const std::string& doc) {
  ValidationResult res = validate(parse_cover_document(doc));
  Json j;
  j["valid"] = res.ok();
  if (res.ok())
    j["line_bundle_degrees"] = res.degrees->l_e;
  else
    j["violations"] = violations_to_json(res.violations);
  return j.dump();
}

std::string bounds_json(int dim, bool include_profiles, unsigned threads) {
  if (dim < 1) throw ParseError("dim must be >= 1");
  BoundReport rep;
  {
    py::gil_scoped_release nogil;
    rep = bound_report(dim, threads);
  }
  return bound_report_to_json(rep, include_profiles).dump();
}

std::pair<std::vector<std::string>, std::string> search_json(const std::string& spec_text, unsigned threads,
                                                             bool timing) {
  SearchSpec spec = parse_search_spec(spec_text);
  spec.threads = threads;
  std::vector<std::string> hits;
  SearchSummary summary;
  {
    py::gil_scoped_release nogil;
    summary = run_search(spec, [&](const SearchHit& h) { hits.push_back(hit_to_json(h, hits.size() + 1).dump()); });
  }
  return {hits, summary_to_json(summary, timing).dump()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Abelian covers of projective space";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidCoverData>(m, "InvalidCoverData", PyExc_ValueError);

  m.def("analyze_json", &analyze_json, py::arg("document"), py::arg("verbose") = false, py::arg("threads") = 1,
        py::arg("timing") = false);
  m.def("validate_json", &validate_json, py::arg("document"));
  m.def("bounds_json", &bounds_json, py::arg("dim"), py::arg("include_profiles") = true, py::arg("threads") = 1);
  m.def("search_json", &search_json, py::arg("spec"), py::arg("threads") = 1, py::arg("timing") = false);
  m.def("example_json", [](const std::string& name) { return serialize_cover(builtin_fixture(name)); },
        py::arg("name"));
  m.def("example_names", &builtin_fixture_names);
}
