#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abcover/bounds.hpp"
#include "abcover/cover.hpp"
#include "abcover/geometry.hpp"
#include "abcover/invariants.hpp"
#include "abcover/json_io.hpp"
#include "abcover/pushforward.hpp"

namespace abcover {

inline constexpr const char* kToolVersion = "0.3.0";

struct AnalysisOptions {
  bool verbose = false;   // include the full g -> l_g table
  unsigned threads = 1;
};

/// Everything derived from one cover datum. When validation fails only
/// `data` and `validation` are populated.
struct AnalysisReport {
  CoverData data;
  ValidationResult validation;
  std::optional<TwistMultiset> decomposition;
  CanonicalStructureReport structure;
  RamificationData ramification;
  CanonicalCertificate canonical;
  SmoothnessCertificate smoothness;
  bool minimal = false;
  std::optional<InvariantReport> invariants;
  std::vector<std::pair<GroupElement, std::int64_t>> twist_table;  // verbose only
  double seconds = 0;

  bool valid() const { return validation.ok(); }
};

/// validate -> decompose -> canonical_structure -> ramification ->
/// canonical_test -> smoothness -> invariant_report.
AnalysisReport analyze(const CoverData& data, const AnalysisOptions& options = {});

/// Stable field order. Timing goes into a separate "timing" object that is
/// omitted when `include_timing` is false, so the rest is byte-deterministic.
Json report_to_json(const AnalysisReport& report, bool include_timing = true);

Json violations_to_json(const std::vector<Violation>& violations);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads, parses and analyzes one fixture file. Throws ParseError or IoError.
AnalysisReport verify_fixture(const std::string& path, const AnalysisOptions& options = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Profile list plus summary statistics; `include_profiles` = false keeps
/// only the summary.
Json bound_report_to_json(const BoundReport& report, bool include_profiles = true);
Json profile_to_json(const RamificationProfile& p);

}  // namespace abcover
