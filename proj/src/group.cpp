#include "abcover/group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace abcover {

bool GroupElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](std::int64_t v) { return v == 0; });
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? "," : "") << components_[i];
  os << ')';
  return os.str();
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw std::invalid_argument("invariant factor " + std::to_string(i + 1) + " must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain: " +
                                  std::to_string(factors_[i - 1]) + " does not divide " +
                                  std::to_string(factors_[i]));
    order_ *= static_cast<long>(factors_[i]);
  }
}

GroupElement AbelianGroup::element(std::span<const std::int64_t> components) const {
  if (components.size() != factors_.size())
    throw std::invalid_argument("element has " + std::to_string(components.size()) +
                                " components, group has rank " + std::to_string(factors_.size()));
  std::vector<std::int64_t> c(components.begin(), components.end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] %= factors_[i];
    if (c[i] < 0) c[i] += factors_[i];
  }
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::zero() const { return GroupElement(std::vector<std::int64_t>(rank(), 0)); }

GroupElement AbelianGroup::unit_vector(std::size_t i) const {
  std::vector<std::int64_t> c(rank(), 0);
  c.at(i) = 1;
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % factors_[i];
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::scale(const GroupElement& a, std::int64_t t) const {
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t n = factors_[i];
    const std::int64_t tm = ((t % n) + n) % n;
    c[i] = static_cast<std::int64_t>((static_cast<__int128>(a[i]) * tm) % n);
  }
  return GroupElement(std::move(c));
}

std::uint64_t AbelianGroup::order_u64() const {
  if (!order_.fits_ulong_p()) throw std::overflow_error("group order " + order_.get_str() + " exceeds 64 bits");
  return order_.get_ui();
}

std::string AbelianGroup::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix dimension mismatch");
  IntegerMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

BigInt IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix a = *this;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct OverflowError {};

struct BigOps {
  using T = BigInt;
  static BigInt abs(const BigInt& a) { return ::abs(a); }
  static BigInt quot(const BigInt& a, const BigInt& b) { return a / b; }
  static void sub_mul(BigInt& a, const BigInt& q, const BigInt& b) { a -= q * b; }
  static void add(BigInt& a, const BigInt& b) { a += b; }
  static void neg(BigInt& a) { a = -a; }
};

struct SmallOps {
  using T = std::int64_t;
  static std::int64_t abs(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError{};
    return a < 0 ? -a : a;
  }
  static std::int64_t quot(std::int64_t a, std::int64_t b) { return a / b; }
  static void sub_mul(std::int64_t& a, std::int64_t q, std::int64_t b) {
    std::int64_t p;
    if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &a)) throw OverflowError{};
  }
  static void add(std::int64_t& a, std::int64_t b) {
    if (__builtin_add_overflow(a, b, &a)) throw OverflowError{};
  }
  static void neg(std::int64_t& a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError{};
    a = -a;
  }
};

// Dense row-major working matrix with optional left/right transforms.
template <typename Ops>
class SmithEngine {
 public:
  using T = typename Ops::T;

  SmithEngine(std::vector<T> a, std::size_t rows, std::size_t cols, bool track)
      : a_(std::move(a)), rows_(rows), cols_(cols), track_(track) {
    if (track_) {
      u_.assign(rows * rows, T(0));
      v_.assign(cols * cols, T(0));
      for (std::size_t i = 0; i < rows; ++i) u_[i * rows + i] = 1;
      for (std::size_t i = 0; i < cols; ++i) v_[i * cols + i] = 1;
    }
  }

  std::vector<T> run() {
    const std::size_t diag = std::min(rows_, cols_);
    for (std::size_t t = 0; t < diag; ++t) {
      if (!pivot_step(t)) break;
    }
    std::vector<T> d(diag);
    for (std::size_t i = 0; i < diag; ++i) d[i] = at(i, i);
    return d;
  }

  const std::vector<T>& u() const { return u_; }
  const std::vector<T>& v() const { return v_; }

 private:
  T& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    if (track_)
      for (std::size_t c = 0; c < rows_; ++c) std::swap(u_[i * rows_ + c], u_[j * rows_ + c]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    if (track_)
      for (std::size_t r = 0; r < cols_; ++r) std::swap(v_[r * cols_ + i], v_[r * cols_ + j]);
  }
  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t c = 0; c < cols_; ++c) Ops::sub_mul(at(i, c), q, at(j, c));
    if (track_)
      for (std::size_t c = 0; c < rows_; ++c) Ops::sub_mul(u_[i * rows_ + c], q, u_[j * rows_ + c]);
  }
  // col_i -= q * col_j
  void col_sub(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t r = 0; r < rows_; ++r) Ops::sub_mul(at(r, i), q, at(r, j));
    if (track_)
      for (std::size_t r = 0; r < cols_; ++r) Ops::sub_mul(v_[r * cols_ + i], q, v_[r * cols_ + j]);
  }
  void row_add(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) Ops::add(at(i, c), at(j, c));
    if (track_)
      for (std::size_t c = 0; c < rows_; ++c) Ops::add(u_[i * rows_ + c], u_[j * rows_ + c]);
  }
  void row_neg(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) Ops::neg(at(i, c));
    if (track_)
      for (std::size_t c = 0; c < rows_; ++c) Ops::neg(u_[i * rows_ + c]);
  }

  // Returns false when the trailing submatrix is zero.
  bool pivot_step(std::size_t t) {
    for (;;) {
      // smallest nonzero magnitude in the trailing block
      std::size_t pr = rows_, pc = cols_;
      T best = 0;
      for (std::size_t r = t; r < rows_; ++r)
        for (std::size_t c = t; c < cols_; ++c) {
          const T& x = at(r, c);
          if (x == 0) continue;
          T ax = Ops::abs(x);
          if (pr == rows_ || ax < best) {
            best = ax;
            pr = r;
            pc = c;
          }
        }
      if (pr == rows_) return false;
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows_; ++r) {
        if (at(r, t) == 0) continue;
        T q = Ops::quot(at(r, t), at(t, t));
        row_sub(r, t, q);
        if (at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols_; ++c) {
        if (at(t, c) == 0) continue;
        T q = Ops::quot(at(t, c), at(t, t));
        col_sub(c, t, q);
        if (at(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t r = t + 1; r < rows_ && divisible; ++r)
        for (std::size_t c = t + 1; c < cols_; ++c) {
          const T& x = at(r, c);
          if (x != 0 && x % at(t, t) != 0) {
            row_add(t, r);
            divisible = false;
            break;
          }
        }
      if (!divisible) continue;

      if (at(t, t) < 0) row_neg(t);
      return true;
    }
  }

  std::vector<T> a_;
  std::size_t rows_, cols_;
  bool track_;
  std::vector<T> u_, v_;
};

std::vector<BigInt> flatten(const IntegerMatrix& m) {
  std::vector<BigInt> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

IntegerMatrix unflatten(const std::vector<BigInt>& v, std::size_t rows, std::size_t cols) {
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithEngine<BigOps> engine(flatten(m), m.rows(), m.cols(), true);
  SmithForm out;
  out.diagonal = engine.run();
  out.left = unflatten(engine.u(), m.rows(), m.rows());
  out.right = unflatten(engine.v(), m.cols(), m.cols());
  return out;
}

std::vector<BigInt> smith_diagonal(IntegerMatrix m) {
  const std::size_t r = m.rows(), c = m.cols();
  SmithEngine<BigOps> engine(flatten(m), r, c, false);
  return engine.run();
}

std::optional<std::vector<std::int64_t>> smith_diagonal_small(std::vector<std::int64_t> entries,
                                                              std::size_t rows, std::size_t cols) {
  try {
    SmithEngine<SmallOps> engine(std::move(entries), rows, cols, false);
    return engine.run();
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

std::int64_t element_order(const AbelianGroup& g, const GroupElement& x) {
  std::int64_t order = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::int64_t n = g.factor(i);
    order = std::lcm(order, n / std::gcd(n, x[i]));
  }
  return order;
}

BigInt generated_subgroup_order(const AbelianGroup& g, std::span<const GroupElement> gens) {
  const std::size_t k = g.rank();
  if (k == 0) return 1;
  const std::size_t rows = gens.size() + k;
  std::vector<std::int64_t> entries(rows * k, 0);
  for (std::size_t r = 0; r < gens.size(); ++r) {
    if (gens[r].size() != k) throw std::invalid_argument("generator rank mismatch");
    for (std::size_t c = 0; c < k; ++c) entries[r * k + c] = gens[r][c];
  }
  for (std::size_t i = 0; i < k; ++i) entries[(gens.size() + i) * k + i] = g.factor(i);

  BigInt index = 1;
  if (auto d = smith_diagonal_small(entries, rows, k)) {
    for (std::int64_t v : *d) index *= static_cast<long>(v);
  } else {
    IntegerMatrix m(rows, k);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < k; ++c) m(r, c) = static_cast<long>(entries[r * k + c]);
    for (const BigInt& v : smith_diagonal(std::move(m))) index *= v;
  }
  return g.order() / index;
}

BigInt subgroup_order_mod(std::int64_t modulus, std::size_t width,
                          std::span<const std::vector<std::int64_t>> rows) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  const std::size_t total_rows = rows.size() + width;
  std::vector<std::int64_t> entries(total_rows * width, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw std::invalid_argument("row width mismatch");
    for (std::size_t c = 0; c < width; ++c) {
      std::int64_t v = rows[r][c] % modulus;
      entries[r * width + c] = v < 0 ? v + modulus : v;
    }
  }
  for (std::size_t i = 0; i < width; ++i) entries[(rows.size() + i) * width + i] = modulus;

  BigInt full;
  mpz_ui_pow_ui(full.get_mpz_t(), static_cast<unsigned long>(modulus), width);
  BigInt index = 1;
  if (auto d = smith_diagonal_small(entries, total_rows, width)) {
    for (std::int64_t v : *d) index *= static_cast<long>(v);
  } else {
    IntegerMatrix m(total_rows, width);
    for (std::size_t r = 0; r < total_rows; ++r)
      for (std::size_t c = 0; c < width; ++c) m(r, c) = static_cast<long>(entries[r * width + c]);
    for (const BigInt& v : smith_diagonal(std::move(m))) index *= v;
  }
  return full / index;
}

}  // namespace abcover
