#include "doctest.h"
#include "support.hpp"

#include "abcover/report.hpp"

using namespace abcover;
using namespace testing_support;

TEST_SUITE("report") {
  TEST_CASE("reports are byte-deterministic without timing") {
    for (const auto& name : builtin_fixture_names()) {
      CoverData d = builtin_fixture(name);
      const std::string a = report_to_json(analyze(d), false).dump(2);
      const std::string b = report_to_json(analyze(d, {false, 3}), false).dump(2);
      CHECK(a == b);
      CHECK(a.find("timing") == std::string::npos);
      CHECK(report_to_json(analyze(d)).contains("timing"));
    }
  }

  TEST_CASE("canonical degree is present exactly when canonical") {
    for (const auto& name : builtin_fixture_names()) {
      AnalysisReport r = analyze(builtin_fixture(name));
      if (!r.valid()) continue;
      CHECK(r.invariants->canonical_degree.has_value() == r.canonical.is_canonical);
      CHECK(r.minimal == r.canonical.is_canonical);
    }
  }

  TEST_CASE("invalid data yields a violation list only") {
    Json j = report_to_json(analyze(builtin_fixture("bad_divisibility")), false);
    CHECK(j["valid"] == false);
    CHECK(j["violations"][0]["kind"] == "DivisibilityViolation");
    CHECK_FALSE(j.contains("decomposition"));
  }

  TEST_CASE("fixture files on disk match the built-ins") {
    for (const auto& name : builtin_fixture_names()) {
      const std::string path = std::string(ABCOVER_SOURCE_DIR) + "/fixtures/" + name + ".json";
      CHECK(read_text_file(path) == serialize_cover(builtin_fixture(name)));
      AnalysisReport from_file = verify_fixture(path);
      CHECK(report_to_json(from_file, false) == report_to_json(analyze(normalized(builtin_fixture(name))), false));
    }
  }

  TEST_CASE("verbose mode adds the full table") {
    AnalysisReport r = analyze(builtin_fixture("example2"), {true, 1});
    CHECK(r.twist_table.size() == 81);
    CHECK(report_to_json(r, false)["twist_table"].size() == 81);
  }

  TEST_CASE("missing files are I/O errors") {
    CHECK_THROWS_AS(verify_fixture("/nonexistent/abcover.json"), IoError);
  }
}
