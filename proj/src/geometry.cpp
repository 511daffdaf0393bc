#include "abcover/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "abcover/invariants.hpp"

namespace abcover {

RamificationData ramification(const CoverData& data) {
  const AbelianGroup& g = data.group;
  const BigInt& order = g.order();
  RamificationData out;
  for (std::size_t b = 0; b < data.branches.size(); ++b) {
    const GroupElement& alpha = data.branches[b].multiplicity;
    BigInt d = order;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      BigInt term = order / static_cast<long>(g.factor(i)) * static_cast<long>(alpha[i]);
      mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), term.get_mpz_t());
    }
    BigInt r = order / d;
    const std::int64_t by_order = element_order(g, alpha);
    if (r != static_cast<long>(by_order))
      throw std::logic_error("ramification index " + r.get_str() + " of branch " + branch_name(data, b) +
                             " disagrees with element order " + std::to_string(by_order));
    out.branches.push_back(BranchRamification{d, by_order});
  }
  return out;
}

CanonicalCertificate canonical_test(const CoverData& data, const RamificationData& ram, const TwistMultiset* ms) {
  if (ram.branches.size() != data.branches.size()) throw std::invalid_argument("ramification data does not match");
  CanonicalCertificate cert;
  cert.target = data.ambient_dim + 2;
  for (std::size_t b = 0; b < data.branches.size(); ++b) {
    const long r = static_cast<long>(ram.branches[b].index);
    cert.hurwitz_lhs += make_rational(r - 1, r) * static_cast<long>(data.branches[b].degree);
  }
  cert.hurwitz_lhs.canonicalize();
  cert.is_canonical = cert.hurwitz_lhs == static_cast<long>(cert.target);

  TwistMultiset local;
  if (ms == nullptr) {
    local = decompose(data);
    ms = &local;
  }
  const CanonicalStructureReport cs = canonical_structure(*ms, data.ambient_dim);
  const bool only_trivial = cs.min_nonzero_twist == 0;
  cert.pg_ok = !only_trivial && cs.min_nonzero_twist >= 2 && cs.pg_from_twists == data.ambient_dim + 1;
  return cert;
}

const char* to_string(SmoothnessStatus s) {
  switch (s) {
    case SmoothnessStatus::CertifiedSmooth: return "certified-smooth";
    case SmoothnessStatus::Singular: return "singular";
    case SmoothnessStatus::NotCertified: return "not-certified";
  }
  return "unknown";
}

bool stratum_is_smooth(const CoverData& data, std::span<const std::size_t> stratum,
                       std::span<const std::int64_t> indices) {
  const AbelianGroup& g = data.group;
  const std::int64_t modulus = g.exponent();
  const std::size_t s = stratum.size();
  std::vector<std::vector<std::int64_t>> rows(g.rank(), std::vector<std::int64_t>(s));
  BigInt expected = 1;
  for (std::size_t j = 0; j < s; ++j) {
    const GroupElement& alpha = data.branches[stratum[j]].multiplicity;
    for (std::size_t i = 0; i < g.rank(); ++i) rows[i][j] = alpha[i] * (modulus / g.factor(i));
    expected *= static_cast<long>(indices[stratum[j]]);
  }
  return subgroup_order_mod(modulus, s, rows) == expected;
}

namespace {

struct SubtreeResult {
  bool failed = false;
  std::vector<std::size_t> stratum;
  std::uint64_t visited = 0;  // strata examined, the failing one included
};

// Pre-order DFS over increasing index sequences starting with `first`;
// pre-order on such sequences is lexicographic order.
SubtreeResult scan_subtree(const CoverData& data, std::span<const std::int64_t> indices, std::size_t first,
                           std::size_t max_size) {
  SubtreeResult res;
  const std::size_t m = data.branches.size();
  std::vector<std::size_t> current{first};
  for (;;) {
    ++res.visited;
    if (!stratum_is_smooth(data, current, indices)) {
      res.failed = true;
      res.stratum = current;
      return res;
    }
    // advance to the next sequence in pre-order
    if (current.size() < max_size && current.back() + 1 < m) {
      current.push_back(current.back() + 1);
      continue;
    }
    while (current.size() > 1 && current.back() + 1 >= m) current.pop_back();
    if (current.size() == 1) return res;
    ++current.back();
  }
}

}  // namespace

SmoothnessCertificate smoothness(const CoverData& data, unsigned threads) {
  SmoothnessCertificate cert;
  if (!data.linear_general_position) {
    cert.reason = "branch data is not flagged as hyperplanes in general position";
    return cert;
  }
  for (const auto& br : data.branches) {
    if (br.degree != 1) {
      cert.reason = "a branch divisor is not a hyperplane";
      return cert;
    }
  }
  RamificationData ram = ramification(data);
  std::vector<std::int64_t> indices;
  for (const auto& b : ram.branches) indices.push_back(b.index);

  const std::size_t m = data.branches.size();
  const std::size_t max_size = std::min<std::size_t>(m, static_cast<std::size_t>(data.ambient_dim));
  std::vector<SubtreeResult> results(m);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(m, 1))));
  if (threads == 1) {
    for (std::size_t f = 0; f < m; ++f) {
      results[f] = scan_subtree(data, indices, f, max_size);
      if (results[f].failed) break;
    }
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t f = w; f < m; f += threads) results[f] = scan_subtree(data, indices, f, max_size);
      });
    for (auto& t : workers) t.join();
  }

  // gather, then take the lexicographically least failure
  cert.status = SmoothnessStatus::CertifiedSmooth;
  for (std::size_t f = 0; f < m; ++f) {
    cert.checked_strata += results[f].visited;
    if (results[f].failed) {
      cert.status = SmoothnessStatus::Singular;
      // shrink to a minimal failing stratum
      std::vector<std::size_t> s = results[f].stratum;
      for (std::size_t j = 0; j < s.size() && s.size() > 1;) {
        std::vector<std::size_t> smaller = s;
        smaller.erase(smaller.begin() + static_cast<long>(j));
        if (!stratum_is_smooth(data, smaller, indices)) s = std::move(smaller);
        else ++j;
      }
      cert.stratum = s;
      std::string names;
      for (std::size_t j : cert.stratum) names += (names.empty() ? "" : ",") + branch_name(data, j);
      cert.reason = "local normalization over {" + names + "} is not a product of cyclic covers";
      break;
    }
  }
  return cert;
}

bool minimality(const CanonicalCertificate& cert) { return cert.is_canonical; }

}  // namespace abcover
