#include "abcover/invariants.hpp"

#include <stdexcept>

#include "abcover/geometry.hpp"

namespace abcover {

BigInt CohomologyVector::euler_characteristic() const {
  BigInt chi = 0;
  for (std::size_t i = 0; i < h.size(); ++i) chi += (i % 2 == 0) ? h[i] : BigInt(-h[i]);
  return chi;
}

BigInt binomial(const BigInt& top, unsigned long k) {
  BigInt num = 1;
  for (unsigned long j = 0; j < k; ++j) num *= top - j;
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  return num / fact;
}

CohomologyVector line_bundle_cohomology(int n, std::int64_t d) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  CohomologyVector v;
  v.h.assign(static_cast<std::size_t>(n) + 1, 0);
  const unsigned long un = static_cast<unsigned long>(n);
  if (d >= 0) v.h[0] = binomial(BigInt(static_cast<long>(d)) + n, un);
  if (d <= -n - 1) v.h[un] = binomial(BigInt(static_cast<long>(-d - 1)), un);
  return v;
}

BigInt euler_characteristic(int n, std::int64_t d) {
  return binomial(BigInt(static_cast<long>(d)) + n, static_cast<unsigned long>(n));
}

CohomologyVector cover_cohomology(const TwistMultiset& ms, int n, std::int64_t divisor_degree) {
  CohomologyVector total;
  total.h.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [t, k] : ms.counts) {
    CohomologyVector part = line_bundle_cohomology(n, divisor_degree - t);
    for (std::size_t i = 0; i < total.h.size(); ++i) total.h[i] += part.h[i] * static_cast<unsigned long>(k);
  }
  return total;
}

InvariantReport invariant_report(const CoverData& data, const TwistMultiset& ms, bool canonical) {
  const int n = data.ambient_dim;
  if (canonical) {
    CanonicalCertificate cert = canonical_test(data, ramification(data), &ms);
    if (!cert.is_canonical)
      throw std::invalid_argument("canonical invariants requested but the Hurwitz sum is " +
                                  cert.hurwitz_lhs.get_str() + ", not " + std::to_string(cert.target));
  }

  InvariantReport r;
  const CohomologyVector structure = cover_cohomology(ms, n, 0);
  r.q = structure.h[1];
  for (int i = 2; i <= n - 1; ++i) r.h_i0.push_back(structure.h[static_cast<std::size_t>(i)]);
  r.h_n_O = structure.h[static_cast<std::size_t>(n)];

  for (const auto& [t, k] : ms.counts) r.chi_O += euler_characteristic(n, -t) * static_cast<unsigned long>(k);
  r.chi_omega = (n % 2 == 0) ? r.chi_O : BigInt(-r.chi_O);

  if (canonical) {
    r.p_g = cover_cohomology(ms, n, 1).h[0];
    r.canonical_degree = data.group.order();
  }
  return r;
}

}  // namespace abcover
