#pragma once

// Exact integer substrate: smallest-prime-factor sieve, factorizations, the
// multiplicative functions phi / phi* / mu, multiplicative orders, friable
// counts, and the summatory functions used by the averaging drivers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nftab/bigfloat.hpp"

namespace nftab {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(i128(a) * b % m); }

inline i64 powmod(i64 base, i64 exp, i64 m) {
  if (m == 1) return 0;
  i64 r = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline i64 next_prime_after(i64 n) {
  i64 c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime_i64(c)) c += 2;
  return c;
}

// Smallest-prime-factor table for 2..limit, built once and shared read-only.
class PrimeSieve {
 public:
  explicit PrimeSieve(i64 limit) : limit_(limit) {
    if (limit < 2) limit_ = 2;
    if (limit_ > (i64(1) << 31)) throw std::invalid_argument("PrimeSieve: limit too large");
    spf_.assign(static_cast<size_t>(limit_) + 1, 0);
    for (i64 i = 2; i <= limit_; ++i) {
      if (spf_[i] == 0) {
        primes_.push_back(i);
        for (i64 j = i; j <= limit_; j += i) {
          if (spf_[j] == 0) spf_[j] = static_cast<int32_t>(i);
        }
      }
    }
  }

  i64 limit() const { return limit_; }
  i64 smallest_factor(i64 n) const { return spf_[static_cast<size_t>(n)]; }
  bool is_prime(i64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  const std::vector<i64>& primes() const { return primes_; }

  // primes p with lo <= p <= hi (hi within the sieve)
  std::vector<i64> primes_in(i64 lo, i64 hi) const {
    std::vector<i64> out;
    auto it = std::lower_bound(primes_.begin(), primes_.end(), lo);
    for (; it != primes_.end() && *it <= hi; ++it) out.push_back(*it);
    return out;
  }

 private:
  i64 limit_;
  std::vector<int32_t> spf_;
  std::vector<i64> primes_;
};

// An integer together with its full prime factorization.
struct FactoredInteger {
  i64 n = 1;
  std::vector<std::pair<i64, int>> factors;  // (prime, exponent), primes increasing

  i64 value() const { return n; }

  int omega() const { return static_cast<int>(factors.size()); }

  int big_omega() const {
    int t = 0;
    for (auto& [p, e] : factors) {
      (void)p;
      t += e;
    }
    return t;
  }

  i64 phi() const {
    i64 r = 1;
    for (auto& [p, e] : factors) {
      r *= p - 1;
      for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
  }

  int mu() const {
    for (auto& [p, e] : factors) {
      (void)p;
      if (e > 1) return 0;
    }
    return (factors.size() % 2 == 0) ? 1 : -1;
  }

  // P(n): largest prime factor, with P(1) = 1.
  i64 largest_prime_factor() const { return factors.empty() ? 1 : factors.back().first; }

  bool divisible_by(i64 p) const {
    for (auto& [q, e] : factors) {
      (void)e;
      if (q == p) return true;
    }
    return false;
  }

  bool coprime_to(i64 m) const {
    for (auto& [p, e] : factors) {
      (void)e;
      if (m % p == 0) return false;
    }
    return true;
  }

  std::vector<i64> divisors() const {
    std::vector<i64> ds{1};
    for (auto& [p, e] : factors) {
      size_t base = ds.size();
      i64 pe = 1;
      for (int i = 0; i < e; ++i) {
        pe *= p;
        for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pe);
      }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
  }
};

inline FactoredInteger factorize_trial(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInteger f;
  f.n = n;
  i64 m = n;
  for (i64 d = 2; d * d <= m; d = (d == 2 ? 3 : d + 2)) {
    if (m % d == 0) {
      int e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      f.factors.emplace_back(d, e);
    }
  }
  if (m > 1) f.factors.emplace_back(m, 1);
  return f;
}

inline FactoredInteger factorize(i64 n, const PrimeSieve& sieve) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > sieve.limit()) return factorize_trial(n);
  FactoredInteger f;
  f.n = n;
  i64 m = n;
  while (m > 1) {
    i64 p = sieve.smallest_factor(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

// ell(n): the least prime not dividing n, with ell(1) = 2.
inline i64 least_nondivisor_prime(const FactoredInteger& n) {
  i64 p = 2;
  while (n.divisible_by(p)) p = next_prime_after(p);
  return p;
}

// phi*(q): the number of primitive characters mod q.  Evaluates
// q * prod_{p || q} (1 - 2/p) * prod_{p^2 | q} (1 - 1/p)^2 exactly; zero
// exactly when q = 2 (mod 4), and phi*(1) = 1 (the trivial character).
inline i64 phi_star(const FactoredInteger& n) {
  i64 r = 1;
  for (auto& [p, e] : n.factors) {
    if (e == 1) {
      r *= p - 2;
    } else {
      i64 t = (p - 1) * (p - 1);
      for (int i = 2; i < e; ++i) t *= p;
      r *= t;
    }
  }
  return r;
}

// Carmichael lambda: exponent of (Z/nZ)^x.
inline i64 carmichael_lambda(const FactoredInteger& n) {
  i64 l = 1;
  for (auto& [p, e] : n.factors) {
    i64 comp;
    if (p == 2) {
      comp = (e == 1) ? 1 : (e == 2 ? 2 : i64(1) << (e - 2));
    } else {
      comp = p - 1;
      for (int i = 1; i < e; ++i) comp *= p;
    }
    l = std::lcm(l, comp);
  }
  return l;
}

// Least f >= 1 with a^f = 1 (mod n), by factoring the group exponent and
// descending through its prime divisors (no iteration up to f).
inline i64 multiplicative_order(i64 a, const FactoredInteger& n) {
  i64 m = n.value();
  i64 ared = a % m;
  if (ared < 0) ared += m;
  if (m == 1) return 1;
  if (std::gcd(ared, m) != 1) throw std::invalid_argument("multiplicative_order: gcd(a,n) != 1");
  i64 f = carmichael_lambda(n);
  FactoredInteger ff = factorize_trial(f);
  for (auto& [p, e] : ff.factors) {
    (void)e;
    while (f % p == 0 && powmod(ared, f / p, m) == 1) f /= p;
  }
  return f;
}

// Psi(x, y): the number of y-friable integers <= x, with P(1) = 1 so that 1
// always counts when x >= 1.
inline i64 friable_count(i64 x, i64 y) {
  if (x <= 0) return 0;
  if (y < 0) y = 0;
  std::vector<i64> ps;
  for (i64 p = 2; p <= y; p = next_prime_after(p)) ps.push_back(p);
  // each friable n is counted once via its smallest-index prime decomposition
  std::function<i64(size_t, i64)> count = [&](size_t idx, i64 cap) -> i64 {
    i64 total = 1;  // the empty product
    for (size_t j = idx; j < ps.size(); ++j) {
      if (ps[j] > cap) break;
      for (i64 m = ps[j]; m <= cap; m *= ps[j]) {
        total += count(j + 1, cap / m);
        if (m > cap / ps[j]) break;  // next power would overflow cap
      }
    }
    return total;
  };
  return count(0, x);
}

// phi(n) for all n <= x via a linear sieve.
inline std::vector<i64> phi_table(i64 x) {
  std::vector<i64> phi(static_cast<size_t>(x) + 1, 0);
  std::vector<i64> primes;
  if (x >= 1) phi[1] = 1;
  for (i64 i = 2; i <= x; ++i) {
    if (phi[i] == 0) {
      primes.push_back(i);
      phi[i] = i - 1;
    }
    for (i64 p : primes) {
      if (p > x / i) break;
      if (i % p == 0) {
        phi[i * p] = phi[i] * p;
        break;
      }
      phi[i * p] = phi[i] * (p - 1);
    }
  }
  return phi;
}

enum class PhiMode { Phi, PhiStar };

struct PhiSumResult {
  i64 exact = 0;
  ErrorBounded main_term;
  double deviation = 0.0;  // exact - main term
};

// Sum of phi(n) (or phi*(n)) over n <= x coprime to m, with the asymptotic
// main term (3x^2/pi^2) prod_{p|m} (1+1/p)^{-1}, respectively
// (18x^2/pi^4) prod_{p|m} p^3/((p+1)(p^2-1)).
inline PhiSumResult sum_phi_coprime(i64 x, const FactoredInteger& m, PhiMode mode,
                                    const PrimeSieve& sieve) {
  if (x < 2) throw std::invalid_argument("sum_phi_coprime: x >= 2 required");
  PhiSumResult out;
  for (i64 n = 1; n <= x; ++n) {
    bool cop = true;
    for (auto& [p, e] : m.factors) {
      (void)e;
      if (n % p == 0) {
        cop = false;
        break;
      }
    }
    if (!cop) continue;
    FactoredInteger fn = factorize(n, sieve);
    out.exact += (mode == PhiMode::Phi) ? fn.phi() : phi_star(fn);
  }

  BigFloat pi = BigFloat::pi();
  BigFloat x2 = BigFloat::from_int(x).squared();
  mpq_class local(1);
  if (mode == PhiMode::Phi) {
    for (auto& [p, e] : m.factors) {
      (void)e;
      local *= mpq_class(p, p + 1);
    }
    ErrorBounded main(x2.mul_int(3) / pi.squared(), 0.0);
    main.bound = main.rounding_slack() * 8;
    out.main_term = main.scale_exact(local);
  } else {
    for (auto& [p, e] : m.factors) {
      (void)e;
      local *= mpq_class(p * p * p, (p + 1) * (p * p - 1));
    }
    ErrorBounded main(x2.mul_int(18) / pi.squared().squared(), 0.0);
    main.bound = main.rounding_slack() * 8;
    out.main_term = main.scale_exact(local);
  }
  out.deviation = static_cast<double>(out.exact) - out.main_term.to_double();
  return out;
}

struct PhiEllSumResult {
  i64 exact = 0;
  ErrorBounded main_term;
  double ratio = 0.0;  // exact / main term
};

// Sum of phi(q) * ell(q) over q <= x against the main term 3*delta*x^2/pi^2.
// delta is supplied by the caller (evaluated by the constants module).
inline PhiEllSumResult sum_phi_ell(i64 x, const ErrorBounded& delta, const PrimeSieve& sieve) {
  if (x < 1) throw std::invalid_argument("sum_phi_ell: x >= 1 required");
  PhiEllSumResult out;
  std::vector<i64> phi = phi_table(x);
  for (i64 q = 1; q <= x; ++q) {
    FactoredInteger fq = factorize(q, sieve);
    out.exact += phi[q] * least_nondivisor_prime(fq);
  }
  BigFloat pi = BigFloat::pi();
  ErrorBounded scale(BigFloat::from_int(x).squared().mul_int(3) / pi.squared(), 0.0);
  scale.bound = scale.rounding_slack() * 8;
  out.main_term = delta * scale;
  out.ratio = static_cast<double>(out.exact) / out.main_term.to_double();
  return out;
}

}  // namespace nftab
