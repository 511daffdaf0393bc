#include "abcover/pushforward.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

#include "abcover/invariants.hpp"

namespace abcover {

namespace {

// Precomputed integer form of the twist formula. With L = n_k every fraction
// g_i alpha_i / n_i becomes g_i * (alpha_i * L / n_i) / L.
struct TwistKernel {
  std::int64_t denom = 1;
  std::vector<std::int64_t> factors;
  std::vector<std::int64_t> lead;
  std::vector<std::int64_t> degrees;           // x_alpha per branch
  std::vector<std::vector<std::int64_t>> weight;  // [branch][i] = alpha_i * L / n_i

  TwistKernel(const CoverData& data, const LineBundleDegrees& l) {
    const AbelianGroup& g = data.group;
    denom = g.exponent();
    factors.assign(g.invariant_factors().begin(), g.invariant_factors().end());
    lead = l.l_e;
    if (lead.size() != g.rank()) throw std::invalid_argument("line bundle degrees do not match group rank");
    __int128 bound = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      __int128 li = lead[i] < 0 ? -static_cast<__int128>(lead[i]) : lead[i];
      bound += static_cast<__int128>(factors[i] - 1) * li;
    }
    for (const auto& br : data.branches) {
      degrees.push_back(br.degree);
      std::vector<std::int64_t> w(factors.size());
      __int128 acc_max = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        w[i] = br.multiplicity[i] * (denom / factors[i]);
        acc_max += static_cast<__int128>(factors[i] - 1) * w[i];
      }
      bound += (acc_max / denom) * br.degree;
      if (acc_max > std::numeric_limits<std::int64_t>::max() / 2) throw std::overflow_error("twist sum exceeds 64 bits");
      weight.push_back(std::move(w));
    }
    if (bound > std::numeric_limits<std::int64_t>::max() / 2) throw std::overflow_error("twist degree exceeds 64 bits");
  }

  std::int64_t evaluate(std::span<const std::int64_t> g) const {
    std::int64_t value = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) value += g[i] * lead[i];
    for (std::size_t b = 0; b < weight.size(); ++b) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) acc += g[i] * weight[b][i];
      value -= (acc / denom) * degrees[b];
    }
    return value;
  }

  // Tallies elements with lexicographic index in [begin, end).
  void tally(std::uint64_t begin, std::uint64_t end, std::map<std::int64_t, std::uint64_t>& out) const {
    if (begin >= end) return;
    const std::size_t k = factors.size();
    std::vector<std::int64_t> g(k, 0);
    std::uint64_t rest = begin;
    for (std::size_t i = k; i-- > 0;) {
      g[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(factors[i]));
      rest /= static_cast<std::uint64_t>(factors[i]);
    }
    // running sums updated incrementally as the odometer turns
    std::int64_t base = 0;
    for (std::size_t i = 0; i < k; ++i) base += g[i] * lead[i];
    std::vector<std::int64_t> acc(weight.size(), 0);
    for (std::size_t b = 0; b < weight.size(); ++b)
      for (std::size_t i = 0; i < k; ++i) acc[b] += g[i] * weight[b][i];

    for (std::uint64_t step = begin; step < end; ++step) {
      std::int64_t value = base;
      for (std::size_t b = 0; b < acc.size(); ++b) value -= (acc[b] / denom) * degrees[b];
      ++out[value];
      for (std::size_t i = k; i-- > 0;) {
        if (++g[i] < factors[i]) {
          base += lead[i];
          for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += weight[b][i];
          break;
        }
        g[i] = 0;
        base -= (factors[i] - 1) * lead[i];
        for (std::size_t b = 0; b < acc.size(); ++b) acc[b] -= (factors[i] - 1) * weight[b][i];
      }
    }
  }
};

}  // namespace

std::int64_t twist_degree(const CoverData& data, const LineBundleDegrees& lead, const GroupElement& g) {
  if (g.size() != data.group.rank()) throw std::invalid_argument("element rank mismatch");
  TwistKernel kernel(data, lead);
  return kernel.evaluate(g.components());
}

TwistMultiset decompose(const CoverData& data, const LineBundleDegrees& lead, unsigned threads) {
  TwistKernel kernel(data, lead);
  const std::uint64_t total = data.group.order_u64();
  TwistMultiset ms;
  ms.total = data.group.order();

  threads = std::max(1u, threads);
  if (threads == 1 || total < 4096) {
    kernel.tally(0, total, ms.counts);
    return ms;
  }
  std::vector<std::map<std::int64_t, std::uint64_t>> parts(threads);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t b = std::min<std::uint64_t>(total, w * chunk);
    const std::uint64_t e = std::min<std::uint64_t>(total, b + chunk);
    workers.emplace_back([&, w, b, e] { kernel.tally(b, e, parts[w]); });
  }
  for (auto& t : workers) t.join();
  for (const auto& p : parts)
    for (const auto& [t, k] : p) ms.counts[t] += k;
  return ms;
}

TwistMultiset decompose(const CoverData& data, unsigned threads) {
  return decompose(data, require_valid(data), threads);
}

std::vector<std::pair<GroupElement, std::int64_t>> twist_table(const CoverData& data,
                                                               const LineBundleDegrees& lead) {
  TwistKernel kernel(data, lead);
  std::vector<std::pair<GroupElement, std::int64_t>> out;
  data.group.for_each_element([&](const GroupElement& g) { out.emplace_back(g, kernel.evaluate(g.components())); });
  return out;
}

CanonicalStructureReport canonical_structure(const TwistMultiset& ms, int ambient_dim) {
  CanonicalStructureReport r;
  const std::int64_t mirror = ambient_dim + 2;
  r.is_symmetric = true;
  for (const auto& [t, k] : ms.counts) {
    if (k == 0) continue;
    if (ms.count(mirror - t) != k) r.is_symmetric = false;
    r.c1_value += BigInt(static_cast<long>(t)) * static_cast<unsigned long>(k);
    r.pg_from_twists += line_bundle_cohomology(ambient_dim, 1 - t).h.front() * static_cast<unsigned long>(k);
    if (t >= 1 && r.min_nonzero_twist == 0) r.min_nonzero_twist = t;
  }
  return r;
}

}  // namespace abcover
