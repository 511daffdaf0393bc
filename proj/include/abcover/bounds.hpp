#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcover/group.hpp"

namespace abcover {

/// Branch components (d_i, r_i) with sum (1 - 1/r_i) d_i = B. Pairs are kept
/// sorted by (r, d), so r is nondecreasing.
struct RamificationProfile {
  std::vector<std::int64_t> d;
  std::vector<std::int64_t> r;

  std::size_t m() const { return r.size(); }
  std::int64_t degree_sum() const;
  Rational hurwitz_sum() const;

  friend bool operator==(const RamificationProfile&, const RamificationProfile&) = default;
};

/// Ordering of profile lists: by m, then the d vector, then the r vector.
bool profile_less(const RamificationProfile& a, const RamificationProfile& b);

enum class ProfileScope {
  /// B < m <= sum d_i <= 2B, the branch-count window of the finiteness argument.
  BranchCountAboveTarget,
  /// Every m >= 1. Only sum d_i > B is forced; m <= B occurs once some d_i > 1
  /// (e.g. the double cover branched along a degree 2B hypersurface).
  All,
};

/// Every profile for the target B, sorted and duplicate-free. The search tree
/// is split by its first component when `threads` > 1.
std::vector<RamificationProfile> enumerate_profiles(std::int64_t target, unsigned threads = 1,
                                                    ProfileScope scope = ProfileScope::BranchCountAboveTarget);

/// prod r_i, an upper bound for the largest invariant factor of any totally
/// ramified cover with this profile.
BigInt index_product(const RamificationProfile& p);

struct BoundReport {
  int ambient_dim = 0;
  std::int64_t target = 0;  // B = n + 2
  std::vector<RamificationProfile> profiles;
  BigInt max_r_product = 0;
  /// Same maximum over ProfileScope::All, plus how many profiles have m <= B.
  BigInt max_r_product_all = 0;
  std::size_t small_m_profiles = 0;
  std::int64_t c1 = 0;      // 2B, first constant of the inductive bound
  std::optional<std::int64_t> known_maximum_degree;  // classified cases only
  std::string note;
};

BoundReport bound_report(int ambient_dim, unsigned threads = 1);

/// Multisets of ramification indices (all d_i = 1, m components) drawn from
/// `allowed`, with sum (1 - 1/r_i) = B. Used to prune search groups.
std::vector<std::vector<std::int64_t>> unit_degree_index_sets(std::int64_t target, std::size_t m,
                                                              std::span<const std::int64_t> allowed);

}  // namespace abcover
