#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abcover/cover.hpp"
#include "abcover/pushforward.hpp"

namespace abcover {

struct BranchRamification {
  BigInt preimage_count;     // d_P, points over a generic point of the branch
  std::int64_t index = 1;    // r_P = |G| / d_P
};

struct RamificationData {
  std::vector<BranchRamification> branches;
};

/// d_P = gcd(|G|, |G| a_1/n_1, ..., |G| a_k/n_k) for every branch. The
/// ramification index is cross-checked against the order of the branch
/// column; a disagreement throws std::logic_error.
RamificationData ramification(const CoverData& data);

struct CanonicalCertificate {
  Rational hurwitz_lhs = 0;  // sum (r - 1)/r * x_alpha
  std::int64_t target = 0;   // n + 2
  bool is_canonical = false;
  bool pg_ok = false;        // min nonzero twist >= 2 and p_g = n + 1
};

/// Degree form of K_X = phi^*(K_Y + sum (r-1)/r D) with K_X = phi^* O(1).
/// `ms` may be null, in which case the decomposition is computed here.
CanonicalCertificate canonical_test(const CoverData& data, const RamificationData& ram,
                                    const TwistMultiset* ms = nullptr);

enum class SmoothnessStatus { CertifiedSmooth, Singular, NotCertified };
const char* to_string(SmoothnessStatus s);

struct SmoothnessCertificate {
  SmoothnessStatus status = SmoothnessStatus::NotCertified;
  std::vector<std::size_t> stratum;  // 0-based; a minimal failing stratum
  std::uint64_t checked_strata = 0;
  std::string reason;
};

/// Local test above the open stratum of the hyperplanes in `stratum`: the
/// rows (alpha_{j,i}/n_i)_{j in S} must generate all of prod_j (1/r_j)Z/Z,
/// i.e. the normalization is locally z_j^{r_j} = u_j.
bool stratum_is_smooth(const CoverData& data, std::span<const std::size_t> stratum,
                       std::span<const std::int64_t> indices);

/// Checks every stratum of size 1..n in lexicographic order; the least
/// failing one is shrunk to a minimal failing subset. Only data flagged
/// linear_general_position is certified.
SmoothnessCertificate smoothness(const CoverData& data, unsigned threads = 1);

/// K_X = phi^* O(1) is nef, so a canonical cover is minimal.
bool minimality(const CanonicalCertificate& cert);

}  // namespace abcover
