#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "abcover/cover.hpp"
#include "abcover/fixtures.hpp"

namespace testing_support {

using namespace abcover;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

/// Invariant-factor chain with order at most `max_order`.
inline AbelianGroup random_group(std::int64_t max_order) {
  for (;;) {
    std::vector<std::int64_t> f;
    std::int64_t order = 1;
    std::int64_t prev = 1;
    const int rank = static_cast<int>(uniform(1, 4));
    for (int i = 0; i < rank; ++i) {
      // next factor is a multiple of the previous one
      const std::int64_t mult = uniform(prev == 1 ? 2 : 1, 4);
      const std::int64_t n = prev * mult;
      if (n < 2 || order * n > max_order) break;
      f.push_back(n);
      order *= n;
      prev = n;
    }
    if (!f.empty()) return AbelianGroup(f);
  }
}

inline GroupElement random_element(const AbelianGroup& g, bool nonzero = true) {
  for (;;) {
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < g.rank(); ++i) c.push_back(uniform(0, g.factor(i) - 1));
    GroupElement x = g.element(c);
    if (!nonzero || !x.is_zero()) return x;
  }
}

/// Random data that passes validate(): columns are random, the last one is
/// chosen so every row sum is divisible, and e_1..e_k are included so the
/// columns generate G.
inline CoverData random_valid_cover(const AbelianGroup& g, int n, bool unit_degrees, std::size_t extra_columns) {
  for (;;) {
    CoverData d;
    d.group = g;
    d.ambient_dim = n;
    d.linear_general_position = unit_degrees;
    auto deg = [&] { return unit_degrees ? std::int64_t{1} : uniform(1, 3); };
    for (std::size_t i = 0; i < g.rank(); ++i) d.branches.push_back({deg(), g.unit_vector(i), ""});
    for (std::size_t j = 0; j < extra_columns; ++j) d.branches.push_back({deg(), random_element(g), ""});
    std::vector<std::int64_t> last(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
      std::int64_t s = 0;
      for (const auto& b : d.branches) s += b.degree * b.multiplicity[i];
      last[i] = -s;
    }
    GroupElement close = g.element(last);
    if (!close.is_zero()) d.branches.push_back({1, close, ""});
    if (validate(d).ok()) return d;
  }
}

/// Every invariant-factor chain with order at most `max_order`.
inline std::vector<AbelianGroup> groups_up_to(std::int64_t max_order) {
  std::vector<AbelianGroup> out;
  std::vector<std::int64_t> chain;
  auto rec = [&](auto&& self, std::int64_t order, std::int64_t last) -> void {
    if (!chain.empty()) out.emplace_back(chain);
    for (std::int64_t n = std::max<std::int64_t>(2, last); order * n <= max_order; n += std::max<std::int64_t>(1, last)) {
      if (last > 1 && n % last != 0) continue;
      chain.push_back(n);
      self(self, order * n, n);
      chain.pop_back();
    }
  };
  rec(rec, 1, 1);
  return out;
}

}  // namespace testing_support
