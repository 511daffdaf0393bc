#include "doctest.h"
#include "semigroup_oracle.hpp"
#include "support.hpp"

#include "abcover/geometry.hpp"

using namespace abcover;
using namespace testing_support;

namespace {

CoverData columns(const AbelianGroup& g, const std::vector<GroupElement>& cols, int n) {
  CoverData d;
  d.group = g;
  d.ambient_dim = n;
  d.linear_general_position = true;
  for (const auto& c : cols) d.branches.push_back({1, c, ""});
  return d;
}

std::vector<std::int64_t> indices_of(const CoverData& d) {
  std::vector<std::int64_t> r;
  for (const auto& b : ramification(d).branches) r.push_back(b.index);
  return r;
}

std::vector<std::string> names(const CoverData& d, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(branch_name(d, i));
  return out;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("ramification: d r = |G| and r is the column order") {
    for (int trial = 0; trial < 2000; ++trial) {
      AbelianGroup g = random_group(1024);
      CoverData d = random_valid_cover(g, 3, false, static_cast<std::size_t>(uniform(0, 4)));
      RamificationData ram = ramification(d);
      REQUIRE(ram.branches.size() == d.branches.size());
      for (std::size_t b = 0; b < d.branches.size(); ++b) {
        CHECK(ram.branches[b].preimage_count * static_cast<long>(ram.branches[b].index) == g.order());
        CHECK(ram.branches[b].index == element_order(g, d.branches[b].multiplicity));
      }
    }
  }

  TEST_CASE("canonical test on the worked examples") {
    for (const char* name : {"example1", "example2"}) {
      CoverData d = builtin_fixture(name);
      CanonicalCertificate c = canonical_test(d, ramification(d));
      CHECK(c.hurwitz_lhs == 6);
      CHECK(c.target == 6);
      CHECK(c.is_canonical);
      CHECK(c.pg_ok);
      CHECK(minimality(c));
    }
    CoverData a1 = builtin_fixture("a1_singular");
    CanonicalCertificate c = canonical_test(a1, ramification(a1));
    CHECK(c.hurwitz_lhs == 1);
    CHECK_FALSE(c.is_canonical);
    CHECK_FALSE(minimality(c));
  }

  TEST_CASE("lattice criterion agrees with semigroup normalization, |S| <= 2, |G| <= 16") {
    std::size_t compared = 0, singular = 0;
    for (const AbelianGroup& g : groups_up_to(16)) {
      std::vector<GroupElement> nonzero;
      g.for_each_element([&](const GroupElement& x) {
        if (!x.is_zero()) nonzero.push_back(x);
      });
      for (const auto& a : nonzero) {
        CoverData one = columns(g, {a}, 2);
        CHECK(stratum_is_smooth(one, std::vector<std::size_t>{0}, indices_of(one)) ==
              semigroup_is_smooth(one, {0}));
        ++compared;
        for (const auto& b : nonzero) {
          CoverData two = columns(g, {a, b}, 2);
          const bool lattice = stratum_is_smooth(two, std::vector<std::size_t>{0, 1}, indices_of(two));
          CHECK(lattice == semigroup_is_smooth(two, {0, 1}));
          singular += lattice ? 0 : 1;
          ++compared;
        }
      }
    }
    CHECK(compared > 1000);
    CHECK(singular > 0);
  }

  TEST_CASE("lattice criterion agrees with semigroup normalization on random triples") {
    for (int trial = 0; trial < 300; ++trial) {
      AbelianGroup g = random_group(36);
      if (g.exponent() > 8) continue;
      CoverData d = columns(g, {random_element(g), random_element(g), random_element(g)}, 3);
      CHECK(stratum_is_smooth(d, std::vector<std::size_t>{0, 1, 2}, indices_of(d)) ==
            semigroup_is_smooth(d, {0, 1, 2}));
    }
  }

  TEST_CASE("two-line double cover is singular over h1 h2") {
    CoverData d = builtin_fixture("a1_singular");
    SmoothnessCertificate c = smoothness(d);
    CHECK(c.status == SmoothnessStatus::Singular);
    CHECK(names(d, c.stratum) == std::vector<std::string>{"h1", "h2"});
    CHECK_FALSE(semigroup_is_smooth(d, {0, 1}));
  }

  TEST_CASE("worked examples: certifier and oracle agree on the failing strata") {
    CoverData e1 = builtin_fixture("example1");
    SmoothnessCertificate c1 = smoothness(e1);
    CHECK(c1.status == SmoothnessStatus::Singular);
    CHECK(names(e1, c1.stratum) == std::vector<std::string>{"h1", "h8", "h9", "h10"});
    CHECK_FALSE(semigroup_is_smooth(e1, c1.stratum));

    CoverData e2 = builtin_fixture("example2");
    SmoothnessCertificate c2 = smoothness(e2);
    CHECK(c2.status == SmoothnessStatus::Singular);
    CHECK(names(e2, c2.stratum) == std::vector<std::string>{"h1", "h2", "h6"});
    CHECK_FALSE(semigroup_is_smooth(e2, c2.stratum));

    // every proper sub-stratum of the failure is smooth
    for (std::size_t drop = 0; drop < c1.stratum.size(); ++drop) {
      std::vector<std::size_t> sub;
      for (std::size_t j = 0; j < c1.stratum.size(); ++j)
        if (j != drop) sub.push_back(c1.stratum[j]);
      CHECK(semigroup_is_smooth(e1, sub));
    }
  }

  TEST_CASE("smoothness certificate does not depend on the thread count") {
    for (int trial = 0; trial < 40; ++trial) {
      AbelianGroup g = random_group(64);
      CoverData d = random_valid_cover(g, 3, true, 4);
      SmoothnessCertificate a = smoothness(d, 1);
      SmoothnessCertificate b = smoothness(d, 3);
      CHECK(a.status == b.status);
      CHECK(a.stratum == b.stratum);
      CHECK(a.checked_strata == b.checked_strata);
    }
  }

  TEST_CASE("smooth examples are certified") {
    AbelianGroup g({2, 2});
    CoverData d = columns(g, {g.element({1, 0}), g.element({0, 1}), g.element({1, 1})}, 2);
    CHECK(smoothness(d).status == SmoothnessStatus::CertifiedSmooth);
    CHECK(smoothness(d).checked_strata == 6);
  }

  TEST_CASE("only hyperplane arrangements are certified") {
    CoverData d = builtin_fixture("a1_singular");
    d.linear_general_position = false;
    CHECK(smoothness(d).status == SmoothnessStatus::NotCertified);
    d.linear_general_position = true;
    d.branches[0].degree = 2;
    CHECK(smoothness(d).status == SmoothnessStatus::NotCertified);
  }
}
