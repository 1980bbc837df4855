#pragma once

// Prime-indexed average-value constants.  Every reference constant in this
// library has the shape
//
//     sum_l  l * t(l) * prod_{p < l} (1 - t(p)),
//
// the expectation of the first prime at which an independent per-prime event
// of probability t(p) occurs.  Partial sums are accumulated in exact
// rationals; the only error is the truncation tail plus one final rounding,
// both folded into the returned bound.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nftab/arith.hpp"
#include "nftab/bigfloat.hpp"

namespace nftab {

// Per-prime success probability, as an exact rational in [0, 1].
struct LocalProbability {
  std::string name;
  std::function<mpq_class(i64)> t;
};

inline mpq_class make_rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Expectation of the first failing/succeeding prime for the process t.
//
// Terms are summed until the remaining tail is provably below eps.  The tail
// is bounded by a geometric series whose ratio is the worst consecutive-term
// ratio observed over a trailing window; evaluation refuses (throws) if that
// ratio never settles below ratio_cap before the sieve's primes run out.
inline ErrorBounded first_failure_expectation(const LocalProbability& lp, double eps,
                                              const PrimeSieve& sieve,
                                              mpfr_prec_t prec = 256,
                                              double ratio_cap = 0.95) {
  if (eps <= 0) throw std::invalid_argument("first_failure_expectation: eps must be positive");
  constexpr int kWindow = 24;

  mpq_class sum(0);
  mpq_class prod(1);  // prod_{p < current} (1 - t(p))
  mpq_class prev_term(0);
  std::vector<double> ratios;  // trailing consecutive-term ratios, rounded up
  bool tail_exact_zero = false;
  double tail_bound = 0.0;
  bool stopped = false;

  for (i64 p : sieve.primes()) {
    mpq_class tp = lp.t(p);
    if (tp < 0 || tp > 1) throw std::invalid_argument("LocalProbability out of [0,1] at p=" + std::to_string(p));
    mpq_class term = mpq_class(p) * tp * prod;

    if (prev_term > 0 && term > 0) {
      mpq_class ratio = term / prev_term;
      ratios.push_back(round_up(ratio.get_d() * (1.0 + 1e-12)));
      if (ratios.size() > kWindow) ratios.erase(ratios.begin());
    }

    // stop check: current term is the first omitted one
    if (static_cast<int>(ratios.size()) == kWindow) {
      double rho = *std::max_element(ratios.begin(), ratios.end());
      if (rho < ratio_cap) {
        double head = round_up(term.get_d() * (1.0 + 1e-12));
        double bound = round_up(head / (1.0 - rho));
        if (bound < eps) {
          tail_bound = bound;
          stopped = true;
          break;
        }
      }
    }

    sum += term;
    if (term > 0) prev_term = term;
    prod *= mpq_class(1) - tp;
    if (prod == 0) {
      // some t(p) = 1: all later terms vanish, the sum is exact
      tail_exact_zero = true;
      stopped = true;
      break;
    }
  }

  if (!stopped) {
    throw internal_error("first_failure_expectation: tail ratio bound not established for '" +
                         lp.name + "' within the prime horizon");
  }

  ErrorBounded out(BigFloat::from_rational(sum, prec), 0.0);
  double rounding = out.rounding_slack();
  out.bound = round_up((tail_exact_zero ? 0.0 : tail_bound) + rounding);
  return out;
}

struct NamedConstant {
  std::string name;
  ErrorBounded value;
};

inline LocalProbability prob_constant(const mpq_class& c, std::string name) {
  return LocalProbability{std::move(name), [c](i64) -> mpq_class { return c; }};
}

// t(p) = p/(p+1): failure of "p divides", weighted by phi over moduli.
inline LocalProbability prob_all_characters() {
  return LocalProbability{"avg_nonresidue_all_chars",
                          [](i64 p) -> mpq_class { return mpq_class(p, p + 1); }};
}

// t(p) = p/(2(p+1)): quadratic-field variant.
inline LocalProbability prob_quadratic_fields() {
  return LocalProbability{"avg_nonresidue_quadratic_fields",
                          [](i64 p) -> mpq_class { return make_rational(p, 2 * (p + 1)); }};
}

// t(p) = p^3/((p+1)^2 (p-1)): primitive-character variant.
inline LocalProbability prob_primitive_characters() {
  return LocalProbability{"avg_nonresidue_primitive_chars", [](i64 p) -> mpq_class {
                            return mpq_class(p * p * p, (p + 1) * (p + 1) * (p - 1));
                          }};
}

// t'_X(p) = t_X(p) / (1 + 1/p + 1/p^2) for the cubic splitting densities;
// t_X is 1/6, 1/3, 1/2 for completely split / inert / partially split.
inline mpq_class cubic_local_density(const mpq_class& t_x, i64 p) {
  return t_x * mpq_class(p * p, p * p + p + 1);
}

inline LocalProbability prob_cubic_split_completely() {
  return LocalProbability{"avg_least_split_completely", [](i64 p) -> mpq_class {
                            return cubic_local_density(mpq_class(1, 6), p);
                          }};
}

inline LocalProbability prob_cubic_inert() {
  return LocalProbability{"avg_least_inert", [](i64 p) -> mpq_class {
                            return cubic_local_density(mpq_class(1, 3), p);
                          }};
}

inline LocalProbability prob_cubic_partially_split() {
  return LocalProbability{"avg_least_partially_split_nongalois", [](i64 p) -> mpq_class {
                            return cubic_local_density(mpq_class(1, 2), p);
                          }};
}

// t(p) = 1 - t'_cs(p): "p does not split completely".
inline LocalProbability prob_cubic_not_split_completely() {
  return LocalProbability{"avg_least_not_split_completely", [](i64 p) -> mpq_class {
                            return mpq_class(1) - cubic_local_density(mpq_class(1, 6), p);
                          }};
}

// All reference constants, each with certified bound < 10^-digits.
inline std::vector<NamedConstant> named_constants(int digits, const PrimeSieve& sieve) {
  if (digits > 30) throw std::invalid_argument("named_constants: digits <= 30");
  double eps = std::pow(10.0, -digits - 1);
  mpfr_prec_t prec = 128 + 8 * digits;
  std::vector<LocalProbability> fams = {
      prob_all_characters(),
      prob_constant(mpq_class(1, 2), "avg_quadratic_nonresidue_prime_mod"),
      prob_quadratic_fields(),
      prob_primitive_characters(),
      prob_cubic_not_split_completely(),
      prob_cubic_split_completely(),
      prob_cubic_inert(),
      prob_cubic_partially_split(),
  };
  std::vector<NamedConstant> out;
  out.reserve(fams.size());
  for (auto& f : fams) {
    out.push_back({f.name, first_failure_expectation(f, eps, sieve, prec)});
  }
  return out;
}

inline const ErrorBounded& find_constant(const std::vector<NamedConstant>& table,
                                         const std::string& name) {
  for (auto& c : table) {
    if (c.name == name) return c.value;
  }
  throw std::invalid_argument("unknown constant: " + name);
}

}  // namespace nftab
