#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "abcover/bounds.hpp"

namespace testing_support {

/// Brute force over the grid m in (B, 2B], sum d <= 2B: all but the last two
/// components range over r <= (2B)^2; the last two solve d1/x + d2/y = q by
/// scanning whichever of x, y is at most 2 d / q.
inline std::vector<abcover::RamificationProfile> brute_force_profiles(std::int64_t B) {
  using abcover::Rational;
  using Pair = std::pair<std::int64_t, std::int64_t>;  // (r, d)
  const std::int64_t grid_r = 4 * B * B;
  std::set<std::vector<Pair>> found;
  std::vector<Pair> prefix;

  auto finish = [&](Rational q, std::int64_t d1, std::int64_t d2) {
    // q = d1/x + d2/y
    auto record = [&](std::int64_t x, std::int64_t y) {
      std::vector<Pair> all = prefix;
      all.push_back({x, d1});
      all.push_back({y, d2});
      std::sort(all.begin(), all.end());
      found.insert(all);
    };
    for (int pass = 0; pass < 2; ++pass) {
      const std::int64_t da = pass == 0 ? d1 : d2;
      const std::int64_t db = pass == 0 ? d2 : d1;
      Rational lim = Rational(2 * da) / q;
      lim.canonicalize();
      const std::int64_t xmax = mpz_class(lim.get_num() / lim.get_den()).get_si();
      for (std::int64_t x = 2; x <= xmax; ++x) {
        Rational rest = q - abcover::make_rational(da, x);
        rest.canonicalize();
        if (rest <= 0) continue;
        // db / y = rest
        Rational y = Rational(db) / rest;
        y.canonicalize();
        if (y.get_den() != 1 || y.get_num() < 2) continue;
        const std::int64_t yi = y.get_num().get_si();
        if (pass == 0) record(x, yi);
        else record(yi, x);
      }
    }
  };

  for (std::int64_t m = B + 1; m <= 2 * B; ++m) {
    const std::size_t head = static_cast<std::size_t>(m - 2);
    // prefix nondecreasing in (r, d); hurwitz partial sum tracked exactly
    auto rec = [&](auto&& self, Rational partial, std::int64_t dsum, Pair floor) -> void {
      if (prefix.size() == head) {
        for (std::int64_t d1 = 1; dsum + d1 + 1 <= 2 * B; ++d1)
          for (std::int64_t d2 = 1; dsum + d1 + d2 <= 2 * B; ++d2) {
            // sum d/r over the tail = (d1 + d2) - (B - partial)
            Rational q = Rational(d1 + d2) - (Rational(B) - partial);
            q.canonicalize();
            if (q > 0) finish(q, d1, d2);
          }
        return;
      }
      const std::int64_t left = static_cast<std::int64_t>(head - prefix.size());
      for (std::int64_t r = floor.first; r <= grid_r; ++r)
        for (std::int64_t d = (r == floor.first ? floor.second : 1); dsum + d + (left - 1) + 2 <= 2 * B; ++d) {
          Rational next = partial + abcover::make_rational((r - 1) * d, r);
          next.canonicalize();
          // every later component adds at least 1/2
          if (next + abcover::make_rational(left + 1, 2) > B) break;
          prefix.push_back({r, d});
          self(self, next, dsum + d, Pair{r, d});
          prefix.pop_back();
        }
    };
    rec(rec, Rational(0), 0, Pair{2, 1});
  }

  std::vector<abcover::RamificationProfile> out;
  for (const auto& v : found) {
    abcover::RamificationProfile p;
    for (auto [r, d] : v) {
      p.r.push_back(r);
      p.d.push_back(d);
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), abcover::profile_less);
  return out;
}

}  // namespace testing_support
