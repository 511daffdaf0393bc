#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace abcover {

using BigInt = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms; GMP rationals must be canonical before use.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Element of a finite abelian group, stored with canonical representatives
/// 0 <= g_i < n_i. Only AbelianGroup can build one, so every instance is
/// reduced against the group it came from.
class GroupElement {
 public:
  GroupElement() = default;

  std::span<const std::int64_t> components() const { return components_; }
  std::int64_t operator[](std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  bool is_zero() const;

  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  friend class AbelianGroup;
  explicit GroupElement(std::vector<std::int64_t> c) : components_(std::move(c)) {}
  std::vector<std::int64_t> components_;
};

/// G = Z_{n_1} + ... + Z_{n_k} with n_1 | n_2 | ... | n_k, every n_i >= 2.
/// The empty factor list is the trivial group.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Throws std::invalid_argument if a factor is < 2 or the chain breaks.
  explicit AbelianGroup(std::vector<std::int64_t> invariant_factors);

  std::size_t rank() const { return factors_.size(); }
  std::span<const std::int64_t> invariant_factors() const { return factors_; }
  std::int64_t factor(std::size_t i) const { return factors_[i]; }
  const BigInt& order() const { return order_; }
  /// Largest invariant factor (1 for the trivial group).
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  /// Reduces every component into [0, n_i). Throws on length mismatch.
  GroupElement element(std::span<const std::int64_t> components) const;
  GroupElement element(std::initializer_list<std::int64_t> components) const {
    return element(std::span<const std::int64_t>(components.begin(), components.size()));
  }
  GroupElement zero() const;
  GroupElement unit_vector(std::size_t i) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement scale(const GroupElement& a, std::int64_t t) const;

  /// Order as a machine integer; throws std::overflow_error when |G| does not fit.
  std::uint64_t order_u64() const;

  /// Visits every element in lexicographic order of components.
  template <typename Fn>
  void for_each_element(Fn&& fn) const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

  std::string to_string() const;

 private:
  std::vector<std::int64_t> factors_;
  BigInt order_ = 1;
};

/// Rectangular matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  /// Determinant by fraction-free elimination; square matrices only.
  BigInt determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithForm {
  /// min(rows, cols) nonnegative entries with d_1 | d_2 | ... (zeros last).
  std::vector<BigInt> diagonal;
  IntegerMatrix left;   // U, rows x rows, unimodular
  IntegerMatrix right;  // V, cols x cols, unimodular
};

/// D = U * M * V.
SmithForm smith_normal_form(const IntegerMatrix& m);

/// Diagonal only; skips transform bookkeeping.
std::vector<BigInt> smith_diagonal(IntegerMatrix m);

/// Same as smith_diagonal for small machine-integer matrices. Returns nullopt
/// if an intermediate value would overflow int64.
std::optional<std::vector<std::int64_t>> smith_diagonal_small(
    std::vector<std::int64_t> entries, std::size_t rows, std::size_t cols);

/// Least t >= 1 with t*g = 0; lcm_i n_i / gcd(n_i, g_i).
std::int64_t element_order(const AbelianGroup& g, const GroupElement& x);

/// |<gens>| computed from the Smith form of [gens; diag(n_i)].
BigInt generated_subgroup_order(const AbelianGroup& g, std::span<const GroupElement> gens);

/// Order of the subgroup of (Z/L)^s generated by integer rows (each of length s).
/// Machine-integer fast path with an exact fallback.
BigInt subgroup_order_mod(std::int64_t modulus, std::size_t width,
                          std::span<const std::vector<std::int64_t>> rows);

// ---------------------------------------------------------------------------

template <typename Fn>
void AbelianGroup::for_each_element(Fn&& fn) const {
  const std::uint64_t total = order_u64();
  std::vector<std::int64_t> c(factors_.size(), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    fn(GroupElement(c));
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++c[i] < factors_[i]) break;
      c[i] = 0;
    }
  }
}

}  // namespace abcover
