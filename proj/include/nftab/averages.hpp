#pragma once

// Averaging drivers: per-modulus and global averages of the least character
// nonresidue, the primitive-character variant, and the prime-modulus average
// of the least quadratic nonresidue.  All sums are exact integers; division
// happens only in the report.

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "nftab/arith.hpp"
#include "nftab/bigfloat.hpp"
#include "nftab/characters.hpp"

namespace nftab {

struct AverageReport {
  std::string label;
  i64 range = 0;  // x or q
  i64 count = 0;
  i64 sum = 0;
  ErrorBounded reference;
  i64 ell = 0;    // set by the per-q driver
  i64 f_ord = 0;  // set by the per-q driver

  double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
  double deviation() const { return mean() - reference.to_double(); }
};

// Average of n_chi over nonprincipal characters mod q; reference ell(q).
inline AverageReport avg_nchi_mod_q(i64 q, const PrimeSieve& sieve) {
  if (q < 3) throw std::invalid_argument("avg_nchi_mod_q: q >= 3 required");
  NchiBatch b = nchi_batch(factorize(q, sieve), sieve);
  AverageReport r;
  r.label = "avg_nchi_mod_q";
  r.range = q;
  r.count = b.count;
  r.sum = b.sum;
  r.reference = ErrorBounded::exact_int(b.ell);
  r.ell = b.ell;
  r.f_ord = b.f_ord;
  return r;
}

namespace detail {

// Partition [lo, hi] into chunks, run fn on each q, and add up (count, sum)
// pairs; the merge is order-independent.
template <class PerQ>
inline std::pair<i64, i64> partitioned_sum(i64 lo, i64 hi, int threads, PerQ&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || hi - lo < 64) {
    std::pair<i64, i64> acc{0, 0};
    for (i64 q = lo; q <= hi; ++q) {
      auto [c, s] = fn(q);
      acc.first += c;
      acc.second += s;
    }
    return acc;
  }
  std::vector<std::pair<i64, i64>> partial(threads, {0, 0});
  std::vector<std::thread> pool;
  i64 span = (hi - lo + 1 + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    i64 a = lo + t * span;
    i64 b = std::min(hi, a + span - 1);
    if (a > hi) break;
    pool.emplace_back([&, t, a, b] {
      for (i64 q = a; q <= b; ++q) {
        auto [c, s] = fn(q);
        partial[t].first += c;
        partial[t].second += s;
      }
    });
  }
  for (auto& th : pool) th.join();
  std::pair<i64, i64> acc{0, 0};
  for (auto& p : partial) {
    acc.first += p.first;
    acc.second += p.second;
  }
  return acc;
}

}  // namespace detail

// Average of n_chi over all nonprincipal characters of modulus q <= x
// (moduli 1 and 2 have none and are skipped); reference is the limiting
// constant supplied by the caller.
inline AverageReport global_avg_nchi(i64 x, const PrimeSieve& sieve, const ErrorBounded& delta,
                                     int threads = 1) {
  if (x < 3) throw std::invalid_argument("global_avg_nchi: x >= 3 required");
  auto [count, sum] = detail::partitioned_sum(3, x, threads, [&](i64 q) {
    NchiBatch b = nchi_batch(factorize(q, sieve), sieve);
    return std::pair<i64, i64>{b.count, b.sum};
  });
  AverageReport r;
  r.label = "global_avg_nchi";
  r.range = x;
  r.count = count;
  r.sum = sum;
  r.reference = delta;
  return r;
}

// Same, over primitive characters of conductor q <= x only.
inline AverageReport primitive_avg_nchi(i64 x, const PrimeSieve& sieve,
                                        const ErrorBounded& delta_star, int threads = 1) {
  if (x < 3) throw std::invalid_argument("primitive_avg_nchi: x >= 3 required");
  auto [count, sum] = detail::partitioned_sum(3, x, threads, [&](i64 q) {
    PrimitiveNchiBatch b = primitive_nchi_batch(factorize(q, sieve), sieve);
    return std::pair<i64, i64>{b.phi_star, b.sum};
  });
  AverageReport r;
  r.label = "primitive_avg_nchi";
  r.range = x;
  r.count = count;
  r.sum = sum;
  r.reference = delta_star;
  return r;
}

// Least quadratic nonresidue mod an odd prime p, by direct Euler-criterion
// search over ascending primes.  Independent of the characters module; this
// is the oracle for n_chi on quadratic characters.
inline i64 least_quadratic_nonresidue(i64 p) {
  for (i64 a = 2; a < p; a = next_prime_after(a)) {
    if (powmod(a, (p - 1) / 2, p) == p - 1) return a;
  }
  throw internal_error("least_quadratic_nonresidue: none below p");
}

// Mean of the least quadratic nonresidue over odd primes p <= x.
inline AverageReport erdos_prime_avg(i64 x, const PrimeSieve& sieve,
                                     const ErrorBounded& reference) {
  if (x < 3) throw std::invalid_argument("erdos_prime_avg: x >= 3 required");
  AverageReport r;
  r.label = "erdos_prime_avg";
  r.range = x;
  r.reference = reference;
  for (i64 p : sieve.primes()) {
    if (p > x) break;
    if (p == 2) continue;
    r.sum += least_quadratic_nonresidue(p);
    ++r.count;
  }
  return r;
}

// max over lo <= q <= hi of (mean_q - ell(q)) * log q / (loglog q)^3; an
// empirical scale for the per-modulus error term, reported but not asserted.
inline double scaled_error_statistic(i64 lo, i64 hi, const PrimeSieve& sieve, int threads = 1) {
  threads = std::max(1, threads);
  std::vector<double> partial(threads, 0.0);
  std::vector<std::thread> pool;
  i64 span = (hi - lo + 1 + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    i64 a = lo + t * span;
    i64 b = std::min(hi, a + span - 1);
    if (a > hi) break;
    pool.emplace_back([&, t, a, b] {
      double best = 0.0;
      for (i64 q = a; q <= b; ++q) {
        NchiBatch batch = nchi_batch(factorize(q, sieve), sieve);
        double mean = static_cast<double>(batch.sum) / batch.count;
        double lq = std::log(static_cast<double>(q));
        double stat = (mean - batch.ell) * lq / std::pow(std::log(lq), 3.0);
        best = std::max(best, stat);
      }
      partial[t] = best;
    });
  }
  for (auto& th : pool) th.join();
  double best = 0.0;
  for (double v : partial) best = std::max(best, v);
  return best;
}

}  // namespace nftab
