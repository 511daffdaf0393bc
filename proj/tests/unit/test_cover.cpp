#include <string>

#include "doctest.h"
#include "support.hpp"

#include "abcover/cover.hpp"
#include "abcover/json_io.hpp"

using namespace abcover;
using namespace testing_support;

namespace {

bool has_kind(const ValidationResult& r, ViolationKind k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

std::string parse_error_text(const std::string& doc) {
  try {
    parse_cover_document(doc);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("worked examples validate with l_e = 2") {
    for (const char* name : {"example1", "example2"}) {
      ValidationResult r = validate(builtin_fixture(name));
      REQUIRE(r.ok());
      for (std::int64_t l : r.degrees->l_e) CHECK(l == 2);
    }
  }

  TEST_CASE("odd branch degree of a double cover is a divisibility violation") {
    ValidationResult r = validate(builtin_fixture("bad_divisibility"));
    CHECK_FALSE(r.ok());
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::DivisibilityViolation);
    CHECK(r.violations[0].index == 1);
    CHECK_THROWS_AS(require_valid(builtin_fixture("bad_divisibility")), InvalidCoverData);
  }

  TEST_CASE("every violated condition is reported") {
    AbelianGroup g({2, 2});
    CoverData d;
    d.group = g;
    d.ambient_dim = 2;
    d.linear_general_position = true;
    d.branches = {{1, g.element({1, 0}), ""}, {2, g.element({1, 0}), ""}, {1, g.zero(), ""}};
    ValidationResult r = validate(d);
    CHECK(has_kind(r, ViolationKind::ZeroMultiplicityColumn));
    CHECK(has_kind(r, ViolationKind::NonUnitDegreeInGeneralPosition));
    CHECK(has_kind(r, ViolationKind::DivisibilityViolation));
    CHECK(has_kind(r, ViolationKind::NotConnected));
  }

  TEST_CASE("disconnected data names the subgroup order") {
    AbelianGroup g({2, 2});
    CoverData d;
    d.group = g;
    d.ambient_dim = 2;
    d.branches = {{1, g.element({1, 0}), ""}, {1, g.element({1, 0}), ""}};
    ValidationResult r = validate(d);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::NotConnected);
    CHECK(r.violations[0].subgroup_order == 2);
  }

  TEST_CASE("trivial group with no branches is valid, nontrivial without branches is not") {
    CoverData d;
    d.ambient_dim = 2;
    CHECK(validate(d).ok());
    d.group = AbelianGroup({3});
    CHECK(has_kind(validate(d), ViolationKind::EmptyBranchList));
  }

  TEST_CASE("serialization round-trips and is canonical") {
    for (const auto& name : builtin_fixture_names()) {
      CoverData d = builtin_fixture(name);
      const std::string text = serialize_cover(d);
      CoverData back = parse_cover_document(text);
      CHECK(back == normalized(d));
      CHECK(serialize_cover(back) == text);
      CoverData shuffled = d;
      std::reverse(shuffled.branches.begin(), shuffled.branches.end());
      CHECK(serialize_cover(shuffled) == text);
    }
  }

  TEST_CASE("parse errors name the offending field") {
    CHECK(parse_error_text("[1,2]").find("object") != std::string::npos);
    CHECK(parse_error_text("{").find("malformed") != std::string::npos);
    CHECK(parse_error_text(R"({"ambient_dim":2,"linear_general_position":true,"branches":[]})").find("\"group\"") !=
          std::string::npos);
    CHECK(parse_error_text(R"({"group":[2,3],"ambient_dim":2,"linear_general_position":true,"branches":[]})")
              .find("\"group\"") != std::string::npos);
    CHECK(parse_error_text(
              R"({"group":[2],"ambient_dim":2,"linear_general_position":true,"branches":[{"degree":1,"multiplicities":[2]}]})")
              .find("branches[0].multiplicities[0]") != std::string::npos);
    CHECK(parse_error_text(
              R"({"group":[2],"ambient_dim":2,"linear_general_position":true,"branches":[{"degree":0,"multiplicities":[1]}]})")
              .find("branches[0].degree") != std::string::npos);
    CHECK(parse_error_text(
              R"({"group":[2],"ambient_dim":2,"linear_general_position":true,"branches":[{"degree":1,"multiplicities":[1,1]}]})")
              .find("branches[0].multiplicities") != std::string::npos);
    CHECK(parse_error_text(R"({"schema_version":7,"group":[2],"ambient_dim":2,"linear_general_position":true,"branches":[]})")
              .find("schema_version") != std::string::npos);
    CHECK(parse_error_text(R"({"group":[2],"ambient_dim":0,"linear_general_position":true,"branches":[]})")
              .find("ambient_dim") != std::string::npos);
  }

  TEST_CASE("repeated columns on distinct hyperplanes are accepted") {
    CoverData d = parse_cover_document(
        R"({"group":[2],"ambient_dim":2,"linear_general_position":true,
            "branches":[{"degree":1,"multiplicities":[1]},{"degree":1,"multiplicities":[1]}]})");
    CHECK(d.branches.size() == 2);
    CHECK(validate(d).ok());
  }

  TEST_CASE("big integers and rationals in JSON") {
    CHECK(big_to_json(BigInt(42)) == 42);
    CHECK(big_to_json(BigInt("123456789012345678901234567890")) == "123456789012345678901234567890");
    CHECK(rational_to_json(make_rational(6, 4)) == "3/2");
    CHECK(rational_to_json(make_rational(6, 1)) == "6");
  }
}
