// abcover: analyze abelian covers of P^n, enumerate ramification profiles,
// search for canonical covers.
//
// Exit codes: 0 ok, 1 internal error, 2 invalid input, 3 I/O error,
// 4 search stopped by a resource limit.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "abcover/bounds.hpp"
#include "abcover/fixtures.hpp"
#include "abcover/report.hpp"
#include "abcover/search.hpp"

namespace {

using namespace abcover;

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kIo = 3, kLimit = 4 };

struct Output {
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text << std::flush;
    } else {
      write_text_file(path, text);
    }
  }
};

int cmd_analyze(const std::string& input, bool verbose, bool timing, unsigned threads, const Output& out) {
  CoverData data = parse_cover_document(read_text_file(input));
  AnalysisReport rep = analyze(data, AnalysisOptions{verbose, threads});
  out.emit(report_to_json(rep, timing).dump(2) + "\n");
  if (!rep.valid()) {
    for (const auto& v : rep.validation.violations) std::cerr << "violation: " << to_string(v.kind) << ": " << v.message << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_validate(const std::string& input, const Output& out) {
  CoverData data = parse_cover_document(read_text_file(input));
  ValidationResult res = validate(data);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["valid"] = res.ok();
  if (res.ok()) {
    j["line_bundle_degrees"] = res.degrees->l_e;
  } else {
    j["violations"] = violations_to_json(res.violations);
  }
  out.emit(j.dump(2) + "\n");
  return res.ok() ? kOk : kInvalid;
}

int cmd_bounds(int dim, bool summary_only, unsigned threads, const Output& out) {
  if (dim < 1) throw ParseError("--dim must be >= 1");
  BoundReport rep = bound_report(dim, threads);
  out.emit(bound_report_to_json(rep, !summary_only).dump(2) + "\n");
  return kOk;
}

int cmd_search(const std::string& spec_path, std::optional<std::uint64_t> limit_candidates,
               std::optional<double> limit_seconds, bool timing, unsigned threads, const Output& out) {
  SearchSpec spec = parse_search_spec(read_text_file(spec_path));
  if (limit_candidates) {
    if (*limit_candidates == 0) throw ParseError("--limit-candidates must be positive");
    spec.max_candidates = *limit_candidates;
  }
  if (limit_seconds) {
    if (*limit_seconds <= 0) throw ParseError("--limit-seconds must be positive");
    spec.max_seconds = *limit_seconds;
  }
  spec.threads = threads;

  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!out.path.empty()) {
    file.open(out.path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + out.path + " for writing");
    sink = &file;
  }
  std::uint64_t ordinal = 0;
  SearchSummary summary = run_search(spec, [&](const SearchHit& hit) {
    *sink << hit_to_json(hit, ++ordinal).dump() << "\n" << std::flush;
  });
  *sink << summary_to_json(summary, timing).dump() << "\n" << std::flush;
  if (!*sink) throw IoError("cannot write search output");
  if (!summary.complete) {
    std::cerr << "search stopped early (" << summary.stop_reason << "); results are partial\n";
    return kLimit;
  }
  return kOk;
}

int cmd_examples(const std::string& name, const Output& out) {
  CoverData data;
  try {
    data = builtin_fixture(name);
  } catch (const std::out_of_range&) {
    std::string names;
    for (const auto& n : builtin_fixture_names()) names += " " + n;
    throw ParseError("unknown example \"" + name + "\"; available:" + names);
  }
  out.emit(serialize_cover(data));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelian covers of projective space: invariants, bounds, search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  unsigned threads = 1;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", out_path, "Write the document to PATH instead of stdout");

  std::string input;
  bool verbose = false;
  bool no_timing = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full pipeline on a cover document");
  analyze_cmd->add_option("input", input, "Cover document (JSON)")->required();
  analyze_cmd->add_flag("--verbose", verbose, "Include the full g -> l_g table");
  analyze_cmd->add_flag("--no-timing", no_timing, "Omit the timing section");

  auto* validate_cmd = app.add_subcommand("validate", "Check integrality and connectedness only");
  validate_cmd->add_option("input", input, "Cover document (JSON)")->required();

  int dim = 0;
  bool summary_only = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Enumerate ramification profiles for dimension n");
  bounds_cmd->add_option("--dim", dim, "Ambient dimension n")->required();
  bounds_cmd->add_flag("--summary", summary_only, "Omit the profile list");

  std::string spec_path;
  std::optional<std::uint64_t> limit_candidates;
  std::optional<double> limit_seconds;
  auto* search_cmd = app.add_subcommand("search", "Bounded search driven by a search document");
  search_cmd->add_option("spec", spec_path, "Search document (JSON)")->required();
  search_cmd->add_option("--limit-candidates", limit_candidates, "Override limits.max_candidates");
  search_cmd->add_option("--limit-seconds", limit_seconds, "Override limits.max_seconds");
  search_cmd->add_flag("--no-timing", no_timing, "Omit timing from the summary line");

  std::string example;
  auto* examples_cmd = app.add_subcommand("examples", "Print a built-in fixture document");
  examples_cmd->add_option("name", example, "example1 | example2 | a1_singular | bad_divisibility")->required();

  for (auto* sub : {analyze_cmd, validate_cmd, bounds_cmd, search_cmd, examples_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  const Output out{out_path};
  try {
    if (*analyze_cmd) return cmd_analyze(input, verbose, !no_timing, threads, out);
    if (*validate_cmd) return cmd_validate(input, out);
    if (*bounds_cmd) return cmd_bounds(dim, summary_only, threads, out);
    if (*search_cmd) return cmd_search(spec_path, limit_candidates, limit_seconds, !no_timing, threads, out);
    if (*examples_cmd) return cmd_examples(example, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidCoverData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
