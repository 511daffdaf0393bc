#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abcover/cover.hpp"
#include "abcover/pushforward.hpp"

namespace abcover {

/// h^0..h^n of a line bundle (or a direct sum of pullbacks) on P^n.
struct CohomologyVector {
  std::vector<BigInt> h;
  BigInt euler_characteristic() const;
  friend bool operator==(const CohomologyVector&, const CohomologyVector&) = default;
};

/// C(top, k) as a polynomial in `top`: top (top-1) ... (top-k+1) / k!.
/// Valid for negative `top`.
BigInt binomial(const BigInt& top, unsigned long k);

/// Closed form on P^n: h^0 = C(n+d, n) for d >= 0, h^n = C(-d-1, n) for d <= -n-1.
CohomologyVector line_bundle_cohomology(int n, std::int64_t d);

/// chi(O_{P^n}(d)) = C(d+n, n), evaluated as a polynomial.
BigInt euler_characteristic(int n, std::int64_t d);

/// h^i(X, phi^* O(D)) = sum_t k_t h^i(P^n, O(D - t)). Requires X smooth.
CohomologyVector cover_cohomology(const TwistMultiset& ms, int n, std::int64_t divisor_degree);

struct InvariantReport {
  std::optional<BigInt> p_g;             // h^0(K_X); only when canonical
  BigInt q = 0;                          // h^1(O_X)
  std::vector<BigInt> h_i0;              // h^{i,0} = h^i(O_X), i = 2 .. n-1
  BigInt h_n_O = 0;                      // h^n(O_X)
  BigInt chi_O = 0;
  BigInt chi_omega = 0;                  // (-1)^n chi_O
  std::optional<BigInt> canonical_degree;  // K_X^n = |G| when canonical
  bool requires_smoothness = true;       // Hodge symmetry and Serre duality are used
};

/// Throws std::invalid_argument if `canonical` is set but the Hurwitz test fails.
InvariantReport invariant_report(const CoverData& data, const TwistMultiset& ms, bool canonical);

}  // namespace abcover
