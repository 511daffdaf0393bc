#include <cstdio>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

#include "abcover/search.hpp"

using namespace abcover;
using namespace testing_support;

namespace {

SearchSpec spec_for(std::vector<std::int64_t> group, std::size_t m, bool smooth, int prune = -1) {
  SearchSpec s;
  s.ambient_dim = 4;
  s.groups = {std::move(group)};
  s.m_min = s.m_max = m;
  s.require_smooth = smooth;
  s.prune_stratum_size = prune;
  s.max_candidates = 50'000'000;
  s.max_seconds = 600;
  return s;
}

std::vector<SearchHit> collect(const SearchSpec& spec, SearchSummary* summary = nullptr) {
  std::vector<SearchHit> hits;
  SearchSummary s = run_search(spec, [&](const SearchHit& h) { hits.push_back(h); });
  if (summary) *summary = s;
  return hits;
}

std::string parse_error_text(const std::string& doc) {
  try {
    parse_search_spec(doc);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Simultaneous row permutation inside equal-factor blocks, unit scaling of
// rows, and a shuffle of the hyperplanes.
CoverData scramble(const CoverData& d) {
  const AbelianGroup& g = d.group;
  std::vector<std::size_t> perm(g.rank());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (g.factor(i) == g.factor(j) && uniform(0, 1)) std::swap(perm[i], perm[j]);
  std::vector<std::int64_t> unit(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i)
    do unit[i] = uniform(1, g.factor(i) - 1);
    while (std::gcd(unit[i], g.factor(i)) != 1);
  CoverData out = d;
  for (auto& b : out.branches) {
    std::vector<std::int64_t> c(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) c[i] = b.multiplicity[perm[i]] * unit[i];
    b.multiplicity = g.element(c);
    b.label.clear();
  }
  std::shuffle(out.branches.begin(), out.branches.end(), rng());
  return out;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("search documents: limits are mandatory and the window is checked") {
    const std::string ok =
        R"({"ambient_dim":4,"groups":[[3,3,3,3]],"m_min":9,"m_max":9,"limits":{"max_candidates":10,"max_seconds":1}})";
    SearchSpec s = parse_search_spec(ok);
    CHECK(s.require_smooth);
    CHECK(s.basis_prefix);
    CHECK(s.effective_prune_size() == 4);
    CHECK(parse_search_spec(search_spec_to_json(s).dump()).groups == s.groups);

    CHECK(parse_error_text(R"({"ambient_dim":4,"groups":[[2]],"m_min":7,"m_max":12})").find("limits") !=
          std::string::npos);
    CHECK(parse_error_text(
              R"({"ambient_dim":4,"groups":[[2]],"m_min":6,"m_max":12,"limits":{"max_candidates":1,"max_seconds":1}})")
              .find("(B, 2B]") != std::string::npos);
    CHECK(parse_error_text(
              R"({"ambient_dim":4,"groups":[[2]],"m_min":7,"m_max":13,"limits":{"max_candidates":1,"max_seconds":1}})")
              .find("(B, 2B]") != std::string::npos);
    CHECK(parse_error_text(
              R"({"ambient_dim":4,"groups":[[2,3]],"m_min":7,"m_max":8,"limits":{"max_candidates":1,"max_seconds":1}})")
              .find("groups[0]") != std::string::npos);
    CHECK(parse_error_text(
              R"({"ambient_dim":4,"groups":[[2]],"m_min":7,"m_max":8,"limits":{"max_candidates":0,"max_seconds":1}})")
              .find("max_candidates") != std::string::npos);
    CHECK(parse_error_text(
              R"({"ambient_dim":4,"groups":[[2]],"m_min":7,"m_max":8,"prune_stratum_size":2,"limits":{"max_candidates":5,"max_seconds":1}})")
              .find("prune_stratum_size") != std::string::npos);
  }

  TEST_CASE("double covers of P^4: the degree-12 datum fails only smoothness") {
    SearchSpec s = spec_for({2}, 7, true);
    s.m_max = 12;
    SearchSummary summary;
    CHECK(collect(s, &summary).empty());
    CHECK(summary.complete);
    REQUIRE(summary.runs.size() == 6);
    for (std::size_t i = 0; i < 5; ++i) CHECK(summary.runs[i].status == "no-compatible-profile");
    CHECK(summary.runs[5].status == "searched");

    auto hits = collect(spec_for({2}, 12, false));
    REQUIRE(hits.size() == 1);
    const AnalysisReport& r = hits[0].report;
    CHECK(r.decomposition->count(0) == 1);
    CHECK(r.decomposition->count(6) == 1);
    CHECK(r.structure.pg_from_twists == 5);
    CHECK(r.structure.min_nonzero_twist == 6);
    CHECK(r.canonical.pg_ok);
    CHECK(r.smoothness.status == SmoothnessStatus::Singular);
  }

  TEST_CASE("smooth search over the worked-example groups is empty") {
    SearchSummary s2, s3;
    CHECK(collect(spec_for({2, 2, 2, 2, 2, 2, 2}, 12, true), &s2).empty());
    CHECK(collect(spec_for({3, 3, 3, 3}, 9, true), &s3).empty());
    CHECK(s2.complete);
    CHECK(s3.complete);
    CHECK(s2.runs[0].pruned_smooth > 0);
  }

  TEST_CASE("hits re-verify from their serialized documents") {
    auto hits = collect(spec_for({3, 3, 3, 3}, 9, false, 2));
    REQUIRE(!hits.empty());
    const auto dir = std::filesystem::temp_directory_path();
    for (std::size_t i = 0; i < hits.size(); ++i) {
      const AnalysisReport& r = hits[i].report;
      CHECK(r.valid());
      CHECK(r.canonical.is_canonical);
      CHECK(r.canonical.pg_ok);
      CHECK(r.structure.is_symmetric);
      const std::string path = (dir / ("abcover_hit_" + std::to_string(i) + ".json")).string();
      write_text_file(path, serialize_cover(hits[i].data));
      AnalysisReport again = verify_fixture(path);
      std::remove(path.c_str());
      CHECK(report_to_json(again, false) == report_to_json(analyze(normalized(hits[i].data)), false));
      CHECK(again.decomposition == r.decomposition);
    }
  }

  TEST_CASE("thread count does not change the emitted stream") {
    SearchSpec s = spec_for({3, 3, 3, 3}, 9, false, 2);
    auto serial = collect(s);
    s.threads = 3;
    auto parallel = collect(s);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
      CHECK(hit_to_json(serial[i], i).dump() == hit_to_json(parallel[i], i).dump());
  }

  TEST_CASE("candidate limit stops the search with a partial marker") {
    SearchSpec s = spec_for({3, 3, 3, 3}, 9, false, 2);
    s.max_candidates = 5;
    SearchSummary summary;
    collect(s, &summary);
    CHECK_FALSE(summary.complete);
    CHECK(summary.stop_reason == "max_candidates");
    CHECK(summary_to_json(summary, false)["summary"]["complete"] == false);
  }

  TEST_CASE("equal canonical keys for scrambled copies, and equal reports") {
    for (const char* name : {"example1", "example2"}) {
      CoverData base = builtin_fixture(name);
      const auto key = canonical_key(base);
      const AnalysisReport ref = analyze(base);
      for (int trial = 0; trial < 20; ++trial) {
        CoverData copy = scramble(base);
        CHECK(canonical_key(copy) == key);
        AnalysisReport r = analyze(copy);
        CHECK(r.decomposition == ref.decomposition);
        CHECK(r.invariants->canonical_degree == ref.invariants->canonical_degree);
        CHECK(r.invariants->chi_omega == ref.invariants->chi_omega);
        CHECK(r.canonical.is_canonical == ref.canonical.is_canonical);
        CHECK(r.smoothness.status == ref.smoothness.status);
      }
    }
  }

  TEST_CASE("changing one column changes the key") {
    CoverData a = builtin_fixture("example2");
    CoverData b = a;
    b.branches[6].multiplicity = b.group.element({2, 2, 2, 2});
    CHECK(canonical_key(a) != canonical_key(b));
  }

  TEST_CASE("subgroup closure") {
    AbelianGroup g({2, 4});
    std::vector<GroupElement> gens{g.element({0, 2})};
    CHECK(subgroup_closure(g, gens).size() == 2);
    gens.push_back(g.element({1, 1}));
    CHECK(subgroup_closure(g, gens).size() == 4);
    gens.push_back(g.element({1, 0}));
    CHECK(subgroup_closure(g, gens).size() == 8);
  }
}
