#include "abcover/bounds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace abcover {

std::int64_t RamificationProfile::degree_sum() const { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }

Rational RamificationProfile::hurwitz_sum() const {
  Rational s = 0;
  for (std::size_t i = 0; i < m(); ++i) s += make_rational(r[i] - 1, r[i]) * static_cast<long>(d[i]);
  s.canonicalize();
  return s;
}

bool profile_less(const RamificationProfile& a, const RamificationProfile& b) {
  if (a.m() != b.m()) return a.m() < b.m();
  if (a.d != b.d) return a.d < b.d;
  return a.r < b.r;
}

BigInt index_product(const RamificationProfile& p) {
  BigInt prod = 1;
  for (std::int64_t r : p.r) prod *= static_cast<long>(r);
  return prod;
}

namespace {

using Factorization = std::map<std::uint64_t, unsigned>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0) return n == p;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, Factorization& out) {
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t f = pollard_rho(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || !v.fits_ulong_p()) throw std::overflow_error("denominator " + v.get_str() + " exceeds 64 bits");
  return v.get_ui();
}

std::vector<BigInt> divisors(const Factorization& f) {
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= static_cast<unsigned long>(p);
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

using Component = std::pair<std::int64_t, std::int64_t>;  // (r, d)

// Backtracking over components sorted by (r, d). `residual` is what
// sum d_i / r_i still owes; `budget` is the unassigned part of sum d_i.
class ProfileSearch {
 public:
  explicit ProfileSearch(std::vector<RamificationProfile>& out) : out_(out) {}

  void run(std::size_t left, std::int64_t budget, const Rational& residual, Component floor) {
    if (left == 0) {
      if (residual == 0 && budget == 0) emit();
      return;
    }
    if (residual <= 0 || budget < static_cast<std::int64_t>(left)) return;
    if (left == 1) return finish_one(budget, residual, floor);
    if (left == 2) return finish_two(budget, residual, floor);

    // All later components have r' >= r, so residual <= budget / r.
    const BigInt r_hi_big = BigInt(static_cast<long>(budget) * residual.get_den()) / residual.get_num();
    const BigInt r_lo_big = residual.get_den() / residual.get_num() + 1;  // d/r < residual for d >= 1
    if (!r_hi_big.fits_slong_p()) throw std::overflow_error("ramification index bound exceeds 64 bits");
    const std::int64_t r_hi = r_hi_big.get_si();
    std::int64_t r_lo = std::max<std::int64_t>({floor.first, 2, r_lo_big.fits_slong_p() ? r_lo_big.get_si() : r_hi + 1});
    for (std::int64_t r = r_lo; r <= r_hi; ++r) {
      const std::int64_t d_lo = r == floor.first ? floor.second : 1;
      for (std::int64_t d = d_lo; d <= budget - static_cast<std::int64_t>(left - 1); ++d) {
        Rational next = residual - make_rational(d, r);
        if (next <= 0) break;
        next.canonicalize();
        stack_.emplace_back(r, d);
        run(left - 1, budget - d, next, {r, d});
        stack_.pop_back();
      }
    }
  }

  std::vector<Component> stack_;

 private:
  void emit() {
    RamificationProfile p;
    for (const auto& [r, d] : stack_) {
      p.r.push_back(r);
      p.d.push_back(d);
    }
    out_.push_back(std::move(p));
  }

  void finish_one(std::int64_t d, const Rational& residual, Component floor) {
    // d / r = residual
    BigInt num = BigInt(static_cast<long>(d)) * residual.get_den();
    if (num % residual.get_num() != 0) return;
    BigInt r = num / residual.get_num();
    if (r < 2 || !r.fits_slong_p()) return;
    Component c{r.get_si(), d};
    if (c < floor) return;
    stack_.push_back(c);
    emit();
    stack_.pop_back();
  }

  // d1/x + d2/y = a/b  <=>  (a x - b d1)(a y - b d2) = b^2 d1 d2.
  void finish_two(std::int64_t budget, const Rational& residual, Component floor) {
    const BigInt a = residual.get_num();
    const BigInt b = residual.get_den();
    Factorization fb;
    factor_into(to_u64(b), fb);
    for (std::int64_t d1 = 1; d1 < budget; ++d1) {
      const std::int64_t d2 = budget - d1;
      Factorization f;
      for (const auto& [p, e] : fb) f[p] += 2 * e;
      factor_into(static_cast<std::uint64_t>(d1), f);
      factor_into(static_cast<std::uint64_t>(d2), f);
      f.erase(1);
      const BigInt n = b * b * static_cast<long>(d1) * static_cast<long>(d2);
      for (const BigInt& u : divisors(f)) {
        BigInt xn = u + b * static_cast<long>(d1);
        BigInt yn = n / u + b * static_cast<long>(d2);
        if (xn % a != 0 || yn % a != 0) continue;
        BigInt x = xn / a, y = yn / a;
        if (x < 2 || y < 2) continue;
        if (!x.fits_slong_p() || !y.fits_slong_p()) throw std::overflow_error("ramification index exceeds 64 bits");
        Component c1{x.get_si(), d1}, c2{y.get_si(), d2};
        if (c1 > c2 || c1 < floor) continue;
        stack_.push_back(c1);
        stack_.push_back(c2);
        emit();
        stack_.pop_back();
        stack_.pop_back();
      }
    }
  }

  std::vector<RamificationProfile>& out_;
};

struct Task {
  std::int64_t degree_total;  // sum d_i
  std::size_t m;
  Component first;
};

}  // namespace

std::vector<RamificationProfile> enumerate_profiles(std::int64_t target, unsigned threads, ProfileScope scope) {
  if (target < 1) throw std::invalid_argument("profile target must be >= 1");
  // Each component contributes at least d/2, so sum d_i <= 2B; sum d_i/r_i > 0 forces sum d_i > B.
  std::vector<Task> tasks;
  std::vector<RamificationProfile> direct;  // m <= 2 handled inline
  for (std::int64_t total = target + 1; total <= 2 * target; ++total) {
    const std::size_t m_lo = scope == ProfileScope::All ? 1 : static_cast<std::size_t>(target + 1);
    for (std::size_t m = m_lo; m <= static_cast<std::size_t>(total); ++m) {
      const Rational residual(total - target);
      if (m <= 2) {
        ProfileSearch s(direct);
        s.run(m, total, residual, {2, 1});
        continue;
      }
      // one task per admissible first component
      const std::int64_t r_hi = total / (total - target);
      for (std::int64_t r = 2; r <= r_hi; ++r)
        for (std::int64_t d = 1; d <= total - static_cast<std::int64_t>(m - 1); ++d)
          if (make_rational(d, r) < residual) tasks.push_back(Task{total, m, {r, d}});
    }
  }

  threads = std::max(1u, threads);
  std::vector<std::vector<RamificationProfile>> parts(threads);
  auto work = [&](unsigned w) {
    for (std::size_t t = w; t < tasks.size(); t += threads) {
      const Task& task = tasks[t];
      ProfileSearch s(parts[w]);
      const auto [r, d] = task.first;
      Rational next = Rational(task.degree_total - target) - make_rational(d, r);
      next.canonicalize();
      s.stack_.emplace_back(r, d);
      s.run(task.m - 1, task.degree_total - d, next, task.first);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<RamificationProfile> out = std::move(direct);
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end(), profile_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundReport bound_report(int ambient_dim, unsigned threads) {
  if (ambient_dim < 1) throw std::invalid_argument("dimension must be >= 1");
  BoundReport rep;
  rep.ambient_dim = ambient_dim;
  rep.target = ambient_dim + 2;
  rep.c1 = 2 * rep.target;
  rep.profiles = enumerate_profiles(rep.target, threads);
  for (const auto& p : rep.profiles) rep.max_r_product = std::max(rep.max_r_product, index_product(p));

  rep.max_r_product_all = rep.max_r_product;
  const std::vector<RamificationProfile> all = enumerate_profiles(rep.target, threads, ProfileScope::All);
  for (const auto& p : all) {
    if (static_cast<std::int64_t>(p.m()) > rep.target) continue;
    ++rep.small_m_profiles;
    rep.max_r_product_all = std::max(rep.max_r_product_all, index_product(p));
  }

  if (ambient_dim == 2) rep.known_maximum_degree = 16;
  rep.note =
      "prod r_i bounds the largest invariant factor n_k of a totally ramified cover, not |G|. "
      "The coarse constants C_1 = 2B, C_2, ..., C_m and C = (prod C_i)^w overestimate this list; "
      "w (the number of admissible defining systems) is left unquantified.";
  return rep;
}

std::vector<std::vector<std::int64_t>> unit_degree_index_sets(std::int64_t target, std::size_t m,
                                                              std::span<const std::int64_t> allowed) {
  std::vector<std::int64_t> orders(allowed.begin(), allowed.end());
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  orders.erase(std::remove_if(orders.begin(), orders.end(), [](std::int64_t r) { return r < 2; }), orders.end());

  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> current;
  // sum (1 - 1/r) over the chosen indices must reach exactly `target`
  auto rec = [&](auto&& self, std::size_t from, const Rational& remaining) -> void {
    const std::size_t left = m - current.size();
    if (left == 0) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    // each remaining term lies in [1/2, 1)
    if (remaining < make_rational(static_cast<long>(left), 2) || remaining >= static_cast<long>(left)) return;
    for (std::size_t i = from; i < orders.size(); ++i) {
      current.push_back(orders[i]);
      Rational next = remaining - make_rational(orders[i] - 1, orders[i]);
      next.canonicalize();
      self(self, i, next);
      current.pop_back();
    }
  };
  rec(rec, 0, Rational(static_cast<long>(target)));
  return out;
}

}  // namespace abcover
