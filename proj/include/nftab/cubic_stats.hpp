#pragma once

// Field-level averages over an enumerated set of cubic fields: the mean of
// n_K against its limiting constant, per-prime empirical splitting densities
// against the local factors t'(p), and the least split/inert/partially-split
// prime averages.

#include <array>
#include <vector>

#include "nftab/averages.hpp"
#include "nftab/constants.hpp"
#include "nftab/cubic.hpp"

namespace nftab {

struct TypeFrequencies {
  i64 p = 0;
  std::array<i64, 5> counts{};  // indexed by SplittingType
  i64 total = 0;

  double frequency(SplittingType t) const {
    return static_cast<double>(counts[static_cast<size_t>(t)]) / static_cast<double>(total);
  }
};

// t'(p) for each of the five splitting behaviors: t(p)/(1 + 1/p + 1/p^2)
// with t = 1/6, 1/2, 1/3, 1/p, 1/p^2.
inline mpq_class local_density(SplittingType t, i64 p) {
  switch (t) {
    case SplittingType::SplitCompletely: return cubic_local_density(mpq_class(1, 6), p);
    case SplittingType::PartiallySplit: return cubic_local_density(mpq_class(1, 2), p);
    case SplittingType::Inert: return cubic_local_density(mpq_class(1, 3), p);
    case SplittingType::PartiallyRamified: return cubic_local_density(make_rational(1, p), p);
    case SplittingType::TotallyRamified: return cubic_local_density(make_rational(1, p * p), p);
  }
  throw std::invalid_argument("local_density: bad type");
}

struct CubicAverages {
  i64 x = 0;
  i64 field_count = 0;
  i64 nongalois_count = 0;
  double dh_ratio = 0.0;  // field_count / (x / (3 zeta(3)))
  AverageReport avg_n_K;  // vs the not-split-completely constant
  i64 n_K_eq_2 = 0;
  std::vector<TypeFrequencies> type_freq;
  AverageReport least_split_completely;       // vs 19.795...
  AverageReport least_inert;                  // vs 8.544...
  AverageReport least_partially_split;        // non-Galois fields only, vs 5.368...
};

inline CubicAverages avg_nK_and_densities(const std::vector<CubicFieldRec>& recs, i64 x,
                                          const std::vector<i64>& density_primes,
                                          const ErrorBounded& nsc_const,
                                          const ErrorBounded& cs_const,
                                          const ErrorBounded& inert_const,
                                          const ErrorBounded& ps_const) {
  CubicAverages out;
  out.x = x;
  out.field_count = static_cast<i64>(recs.size());

  BigFloat z3 = BigFloat::zeta_ui(3);
  out.dh_ratio = static_cast<double>(out.field_count) /
                 (static_cast<double>(x) / (3.0 * z3.to_double()));

  out.avg_n_K.label = "avg_n_K";
  out.avg_n_K.range = x;
  out.avg_n_K.reference = nsc_const;
  out.least_split_completely.label = "least_split_completely";
  out.least_split_completely.range = x;
  out.least_split_completely.reference = cs_const;
  out.least_inert.label = "least_inert";
  out.least_inert.range = x;
  out.least_inert.reference = inert_const;
  out.least_partially_split.label = "least_partially_split_nongalois";
  out.least_partially_split.range = x;
  out.least_partially_split.reference = ps_const;

  for (i64 p : density_primes) {
    TypeFrequencies tf;
    tf.p = p;
    out.type_freq.push_back(tf);
  }

  auto type_at = [](const CubicFieldRec& r, i64 p) {
    for (auto& [q, t] : r.splitting) {
      if (q == p) return t;
    }
    return cubic_detail::splitting_pattern(r.form, p);
  };

  for (const auto& r : recs) {
    out.avg_n_K.sum += r.n_K;
    out.avg_n_K.count += 1;
    if (r.n_K == 2) ++out.n_K_eq_2;
    if (!r.galois) ++out.nongalois_count;

    for (auto& tf : out.type_freq) {
      tf.counts[static_cast<size_t>(type_at(r, tf.p))] += 1;
      tf.total += 1;
    }

    i64 sc = 0, inert = 0;
    for (auto& [p, t] : r.splitting) {
      if (sc == 0 && t == SplittingType::SplitCompletely) sc = p;
      if (inert == 0 && t == SplittingType::Inert) inert = p;
      if (sc && inert) break;
    }
    if (sc == 0)
      sc = least_prime_where(r.form,
                             [](SplittingType t) { return t == SplittingType::SplitCompletely; });
    if (inert == 0)
      inert = least_prime_where(r.form, [](SplittingType t) { return t == SplittingType::Inert; });
    out.least_split_completely.sum += sc;
    out.least_split_completely.count += 1;
    out.least_inert.sum += inert;
    out.least_inert.count += 1;

    if (!r.galois) {
      i64 ps = 0;
      for (auto& [p, t] : r.splitting) {
        if (t == SplittingType::PartiallySplit) {
          ps = p;
          break;
        }
      }
      if (ps == 0)
        ps = least_prime_where(r.form,
                               [](SplittingType t) { return t == SplittingType::PartiallySplit; });
      out.least_partially_split.sum += ps;
      out.least_partially_split.count += 1;
    }
  }
  return out;
}

}  // namespace nftab
