#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "abcover/cover.hpp"

namespace abcover {

/// Multiset {l_g : g in G}: phi_* O_X = sum_t O(-t)^{k_t}.
struct TwistMultiset {
  std::map<std::int64_t, std::uint64_t> counts;  // t -> k_t
  BigInt total = 0;                              // |G|

  std::uint64_t count(std::int64_t t) const {
    auto it = counts.find(t);
    return it == counts.end() ? 0 : it->second;
  }
  friend bool operator==(const TwistMultiset&, const TwistMultiset&) = default;
};

struct CanonicalStructureReport {
  bool is_symmetric = false;      // k_t == k_{n+2-t} for all t
  BigInt c1_value = 0;            // sum_g l_g
  BigInt pg_from_twists = 0;      // sum_t k_t h^0(O(1-t))
  std::int64_t min_nonzero_twist = 0;  // 0 when only the trivial summand exists
};

/// l_g = sum_i g_i l_{e_i} - sum_alpha floor(sum_i g_i alpha_i / n_i) x_alpha.
/// Floors are taken over the common denominator n_k.
std::int64_t twist_degree(const CoverData& data, const LineBundleDegrees& lead, const GroupElement& g);

/// Tallies l_g over all of G. `threads` > 1 splits G into contiguous index
/// ranges; the result does not depend on the split.
TwistMultiset decompose(const CoverData& data, const LineBundleDegrees& lead, unsigned threads = 1);
TwistMultiset decompose(const CoverData& data, unsigned threads = 1);

/// Verbose mode: (g, l_g) for every g in lexicographic order of g.
std::vector<std::pair<GroupElement, std::int64_t>> twist_table(const CoverData& data,
                                                               const LineBundleDegrees& lead);

CanonicalStructureReport canonical_structure(const TwistMultiset& ms, int ambient_dim);

}  // namespace abcover
