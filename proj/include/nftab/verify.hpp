#pragma once

// Acceptance suite: every desk-scale claim this library reproduces, run as
// numbered criteria with one pass/fail line each.  All tolerances come from
// the checked-in tolerances.conf (provenance notes live there, next to the
// values they justify).

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nftab/averages.hpp"
#include "nftab/characters.hpp"
#include "nftab/constants.hpp"
#include "nftab/cubic_stats.hpp"

namespace nftab {

class Tolerances {
 public:
  static Tolerances parse(std::istream& in) {
    Tolerances t;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      if (!key.empty() && !val.empty()) t.values_[key] = std::stod(val);
    }
    return t;
  }

  static Tolerances load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tolerance config: " + path);
    return parse(in);
  }

  double get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("missing tolerance: " + key);
    return it->second;
  }

 private:
  std::map<std::string, double> values_;
};

struct CriterionResult {
  int number = 0;
  std::string id;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace verify_detail {

struct Checker {
  bool ok = true;
  std::string log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log += "  FAIL: " + what + "\n";
    }
  }
  void note(const std::string& what) { log += "  " + what + "\n"; }
};

// shared expensive artifacts, built once per run
struct Context {
  const Tolerances& tol;
  int threads;
  std::ostream* progress;
  PrimeSieve sieve{2000000};
  std::optional<std::vector<NamedConstant>> constants;
  std::optional<std::vector<CubicFieldRec>> fields_1e5;
  std::optional<std::vector<CubicFieldRec>> fields_main;

  explicit Context(const Tolerances& t, int th, std::ostream* prog)
      : tol(t), threads(th), progress(prog) {}

  void say(const std::string& s) {
    if (progress) (*progress) << s << std::endl;
  }

  const std::vector<NamedConstant>& get_constants() {
    if (!constants) {
      say("evaluating reference constants to 10 digits...");
      constants = named_constants(10, sieve);
    }
    return *constants;
  }

  const ErrorBounded& constant(const std::string& name) {
    return find_constant(get_constants(), name);
  }

  const std::vector<CubicFieldRec>& get_fields(i64 x) {
    auto& slot = (x == 100000) ? fields_1e5 : fields_main;
    if (!slot) {
      say("enumerating cubic fields with |disc| <= " + std::to_string(x) + " ...");
      slot = enumerate_cubic_fields(x, SignRange::Both, sieve, threads);
    }
    return *slot;
  }

  CubicAverages cubic_averages(i64 x) {
    return avg_nK_and_densities(get_fields(x), x, {2, 3, 5},
                                constant("avg_least_not_split_completely"),
                                constant("avg_least_split_completely"),
                                constant("avg_least_inert"),
                                constant("avg_least_partially_split_nongalois"));
  }
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- criterion 1: constants regression -------------------------------------

inline void criterion_constants(Context& ctx, Checker& ck) {
  double tol10 = ctx.tol.get("constants.printed_10digit_tol");
  double tol6 = ctx.tol.get("constants.printed_6digit_tol");
  double bound_max = ctx.tol.get("constants.bound_max");
  const std::vector<std::tuple<std::string, double, double>> rows = {
      {"avg_nonresidue_all_chars", 2.5350541804, tol10},
      {"avg_quadratic_nonresidue_prime_mod", 3.67464, tol6},
      // the defining sum evaluates to 4.9809473396...; the circulated 6-digit
      // rendering 4.98085 disagrees with the sum in its fourth decimal, so
      // the exact value is what a correct evaluation must reproduce
      {"avg_nonresidue_quadratic_fields", 4.9809473396, tol10},
      {"avg_nonresidue_primitive_chars", 2.1514351057, tol10},
      {"avg_least_not_split_completely", 2.1211027269, tol10},
      {"avg_least_split_completely", 19.7952216366, tol10},
      {"avg_least_inert", 8.5447294614, tol10},
      {"avg_least_partially_split_nongalois", 5.3680248421, tol10},
  };
  for (auto& [name, printed, tol] : rows) {
    const ErrorBounded& v = ctx.constant(name);
    ck.expect(v.bound < bound_max,
              name + ": certified bound " + fmt(v.bound) + " >= " + fmt(bound_max));
    double diff = std::fabs(v.to_double() - printed);
    ck.expect(diff <= tol, name + " = " + v.value.to_string(12) + ", expected " + fmt(printed) +
                               " (diff " + fmt(diff) + ")");
  }
  ck.note("8 constants certified with bound < " + fmt(bound_max));
  ck.note("quadratic-field value asserted from its defining sum (4.9809473396); "
          "the 6-digit rendering 4.98085 mismatches that sum");
}

// --- criterion 2: exact count identity, q <= 2000 --------------------------

inline void criterion_count_identity(Context& ctx, Checker& ck) {
  i64 qmax = static_cast<i64>(ctx.tol.get("characters.count_identity_qmax"));
  for (i64 q = 3; q <= qmax; ++q) {
    FactoredInteger fq = factorize(q, ctx.sieve);
    UnitGroupStructure G = UnitGroupStructure::build(fq, ctx.sieve);
    NchiHistogram hist = nchi_histogram(G);
    i64 ell = least_nondivisor_prime(fq);
    i64 f_ord = multiplicative_order(ell, fq);

    if (hist.counts.count(ell) == 0 ? (G.phi() - G.phi() / f_ord) != 0
                                    : hist.counts.at(ell) != G.phi() - G.phi() / f_ord) {
      ck.expect(false, "count identity fails at q=" + std::to_string(q));
      return;
    }
    // every n_chi is prime and >= ell(q)
    for (auto& [n, cnt] : hist.counts) {
      (void)cnt;
      if (n < ell || !is_prime_i64(n)) {
        ck.expect(false, "n_chi value " + std::to_string(n) + " invalid at q=" + std::to_string(q));
        return;
      }
    }
    NchiBatch batch = nchi_batch(fq, ctx.sieve);
    if (batch.sum != hist.sum || batch.count != hist.characters) {
      ck.expect(false, "batch path disagrees with per-character path at q=" + std::to_string(q));
      return;
    }
    // distribution identity: successive index differences = histogram
    std::map<i64, i64> from_table;
    i64 prev = G.phi();
    for (auto& [r, idx] : batch.table.steps) {
      if (prev - idx > 0) from_table[r] = prev - idx;
      prev = idx;
    }
    if (from_table != hist.counts) {
      ck.expect(false, "distribution identity fails at q=" + std::to_string(q));
      return;
    }
  }
  ck.note("exact count identity, primality, n_chi >= ell, batch = per-character, "
          "and the distribution identity hold for all 3 <= q <= " +
          std::to_string(qmax));
}

// --- criterion 3: oracle equivalence ----------------------------------------

inline void criterion_oracle_equivalence(Context& ctx, Checker& ck) {
  i64 pmax = static_cast<i64>(ctx.tol.get("characters.oracle_pmax"));
  i64 checked = 0;
  for (i64 p : ctx.sieve.primes()) {
    if (p > pmax) break;
    if (p == 2) continue;
    UnitGroupStructure G = UnitGroupStructure::build(factorize(p, ctx.sieve), ctx.sieve);
    DirichletCharacter quad{p, {(p - 1) / 2}};
    i64 via_char = n_chi(G, quad);
    i64 via_euler = least_quadratic_nonresidue(p);
    if (via_char != via_euler) {
      ck.expect(false, "mismatch at p=" + std::to_string(p));
      return;
    }
    ++checked;
  }
  ck.note("quadratic-character n_chi equals the Euler-criterion search for all " +
          std::to_string(checked) + " odd primes <= " + std::to_string(pmax));
}

// --- criterion 4: Erdos average ---------------------------------------------

inline void criterion_erdos(Context& ctx, Checker& ck) {
  const ErrorBounded& ref = ctx.constant("avg_quadratic_nonresidue_prime_mod");
  double tol = ctx.tol.get("erdos.tol");
  std::vector<double> devs;
  for (i64 x : {1000, 10000, 100000}) {
    auto r = erdos_prime_avg(x, ctx.sieve, ref);
    devs.push_back(std::fabs(r.deviation()));
    ck.note("x=" + std::to_string(x) + ": mean " + fmt(r.mean()) + ", |dev| " +
            fmt(devs.back()));
  }
  ck.expect(devs[0] > devs[1] && devs[1] > devs[2], "deviation not decreasing along 1e3,1e4,1e5");
  ck.expect(devs[2] <= tol,
            "final deviation " + fmt(devs[2]) + " exceeds tolerance " + fmt(tol));
}

// --- criterion 5: global averages -------------------------------------------

inline void criterion_global(Context& ctx, Checker& ck) {
  double tol_g = ctx.tol.get("global.tol");
  double tol_p = ctx.tol.get("primitive.tol");
  std::vector<double> gdevs, pdevs;
  for (i64 x : {100, 1000, 10000}) {
    auto g = global_avg_nchi(x, ctx.sieve, ctx.constant("avg_nonresidue_all_chars"), ctx.threads);
    auto p = primitive_avg_nchi(x, ctx.sieve, ctx.constant("avg_nonresidue_primitive_chars"),
                                ctx.threads);
    gdevs.push_back(std::fabs(g.deviation()));
    pdevs.push_back(std::fabs(p.deviation()));
    ck.note("x=" + std::to_string(x) + ": global |dev| " + fmt(gdevs.back()) +
            ", primitive |dev| " + fmt(pdevs.back()));
  }
  ck.expect(gdevs[0] > gdevs[1] && gdevs[1] > gdevs[2], "global deviation not decreasing");
  ck.expect(pdevs[0] > pdevs[1] && pdevs[1] > pdevs[2], "primitive deviation not decreasing");
  ck.expect(gdevs[2] <= tol_g, "global deviation " + fmt(gdevs[2]) + " > " + fmt(tol_g));
  ck.expect(pdevs[2] <= tol_p, "primitive deviation " + fmt(pdevs[2]) + " > " + fmt(tol_p));
}

// --- criterion 6: summatory functions ---------------------------------------

inline void criterion_summatory(Context& ctx, Checker& ck) {
  for (i64 m : {1, 2, 6, 30}) {
    FactoredInteger fm = factorize(m, ctx.sieve);
    i64 brute_phi = 0, brute_star = 0;
    for (i64 n = 1; n <= 1000; ++n) {
      if (std::gcd(n, m) != 1) continue;
      FactoredInteger fn = factorize(n, ctx.sieve);
      brute_phi += fn.phi();
      brute_star += phi_star(fn);
    }
    auto r1 = sum_phi_coprime(1000, fm, PhiMode::Phi, ctx.sieve);
    auto r2 = sum_phi_coprime(1000, fm, PhiMode::PhiStar, ctx.sieve);
    ck.expect(r1.exact == brute_phi, "phi sum mismatch at m=" + std::to_string(m));
    ck.expect(r2.exact == brute_star, "phi* sum mismatch at m=" + std::to_string(m));
  }
  double lo = ctx.tol.get("sums.ratio_lo"), hi = ctx.tol.get("sums.ratio_hi");
  auto r100 = sum_phi_ell(100, ctx.constant("avg_nonresidue_all_chars"), ctx.sieve);
  auto r1e4 = sum_phi_ell(10000, ctx.constant("avg_nonresidue_all_chars"), ctx.sieve);
  ck.note("phi*ell ratio: x=100 -> " + fmt(r100.ratio) + ", x=10^4 -> " + fmt(r1e4.ratio));
  ck.expect(r1e4.ratio >= lo && r1e4.ratio <= hi, "ratio outside [" + fmt(lo) + "," + fmt(hi) + "]");
  ck.expect(std::fabs(r1e4.ratio - 1.0) < std::fabs(r100.ratio - 1.0),
            "ratio at 10^4 not closer to 1 than at 10^2");
}

// --- criteria 7-9: cubic fields at scale ------------------------------------

inline void criterion_cubic_counts(Context& ctx, Checker& ck) {
  i64 x = static_cast<i64>(ctx.tol.get("cubic.x"));
  CubicAverages avgs = ctx.cubic_averages(x);
  double lo = ctx.tol.get("cubic.dh_ratio_lo"), hi = ctx.tol.get("cubic.dh_ratio_hi");
  ck.note("fields: " + std::to_string(avgs.field_count) + ", count/(x/3zeta(3)) = " +
          fmt(avgs.dh_ratio));
  ck.expect(avgs.dh_ratio > lo && avgs.dh_ratio < hi, "field-count ratio outside window");

  double dtol = ctx.tol.get("cubic.type_density_tol");
  for (auto& tf : avgs.type_freq) {
    for (int t = 0; t < 5; ++t) {
      auto st = static_cast<SplittingType>(t);
      double emp = tf.frequency(st);
      double ref = local_density(st, tf.p).get_d();
      if (std::fabs(emp - ref) > dtol) {
        ck.expect(false, std::string(splitting_type_name(st)) + " at p=" + std::to_string(tf.p) +
                             ": |" + fmt(emp) + " - " + fmt(ref) + "| > " + fmt(dtol));
      }
    }
  }
  ck.note("empirical type frequencies at p in {2,3,5} within " + fmt(dtol) + " of t'(p)");

  double frac = static_cast<double>(avgs.n_K_eq_2) / static_cast<double>(avgs.field_count);
  double frac_tol = ctx.tol.get("cubic.frac_nk2_tol");
  ck.note("fraction with n_K = 2: " + fmt(frac) + " vs 19/21 = " + fmt(19.0 / 21.0));
  ck.expect(std::fabs(frac - 19.0 / 21.0) <= frac_tol, "n_K = 2 fraction off by more than " +
                                                           fmt(frac_tol));
}

inline void criterion_nk_average(Context& ctx, Checker& ck) {
  i64 x = static_cast<i64>(ctx.tol.get("cubic.x"));
  CubicAverages avgs = ctx.cubic_averages(x);
  double tol = ctx.tol.get("cubic.nk_mean_tol");
  double dev = std::fabs(avgs.avg_n_K.deviation());
  ck.note("mean n_K at |disc| <= " + std::to_string(x) + ": " + fmt(avgs.avg_n_K.mean()) +
          " vs " + fmt(avgs.avg_n_K.reference.to_double()) + " (|dev| " + fmt(dev) + ")");
  ck.expect(dev <= tol, "n_K mean deviation " + fmt(dev) + " > " + fmt(tol));
}

inline void criterion_thm4(Context& ctx, Checker& ck) {
  ck.note("property-level check of conditionally-proved limits (finite-scale averages "
          "against limits established only under GRH)");
  i64 x = static_cast<i64>(ctx.tol.get("cubic.x"));
  CubicAverages big = ctx.cubic_averages(x);
  CubicAverages small = ctx.cubic_averages(100000);

  struct Row {
    const char* what;
    const AverageReport CubicAverages::* field;
    const char* tol_key;
  };
  const Row rows[] = {
      {"least inert", &CubicAverages::least_inert, "cubic.least_inert_tol"},
      {"least split-completely", &CubicAverages::least_split_completely, "cubic.least_cs_tol"},
      {"least partially-split (non-Galois)", &CubicAverages::least_partially_split,
       "cubic.least_ps_tol"},
  };
  for (auto& row : rows) {
    double tol = ctx.tol.get(row.tol_key);
    double dev_small = std::fabs((small.*(row.field)).deviation());
    double dev_big = std::fabs((big.*(row.field)).deviation());
    ck.note(std::string(row.what) + ": mean " + fmt((big.*(row.field)).mean()) + " vs " +
            fmt((big.*(row.field)).reference.to_double()) + " (|dev| " + fmt(dev_big) +
            ", at 10^5 " + fmt(dev_small) + ")");
    ck.expect(dev_big <= tol,
              std::string(row.what) + " deviation " + fmt(dev_big) + " > " + fmt(tol));
    ck.expect(dev_big < dev_small, std::string(row.what) + " deviation not improving with scale");
  }
}

// --- criterion 10: structural property suites --------------------------------

// cyclotomic-polynomial reduction: is a sum of exact roots of unity zero?
inline bool roots_of_unity_sum_zero(const std::vector<Angle>& angles) {
  i64 L = 1;
  for (auto& a : angles) L = std::lcm(L, a.den);
  std::function<std::vector<i64>(i64)> phi_poly = [&](i64 n) -> std::vector<i64> {
    std::vector<i64> p(static_cast<size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<size_t>(n)] = 1;
    for (i64 d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      std::vector<i64> q = phi_poly(d);
      // exact division p /= q
      std::vector<i64> quo(p.size() - q.size() + 1, 0);
      std::vector<i64> rem = p;
      for (size_t i = rem.size(); i-- >= q.size();) {
        if (i + 1 < q.size()) break;
        i64 cf = rem[i] / q.back();
        quo[i - q.size() + 1] = cf;
        for (size_t j = 0; j < q.size(); ++j) rem[i - q.size() + 1 + j] -= cf * q[j];
        if (i == 0) break;
      }
      p = quo;
    }
    return p;
  };
  std::vector<i64> poly(static_cast<size_t>(L), 0);
  for (auto& a : angles) poly[static_cast<size_t>(a.num * (L / a.den))] += 1;
  std::vector<i64> cyc = phi_poly(L);
  for (size_t i = poly.size(); i-- >= cyc.size();) {
    if (i + 1 < cyc.size()) break;
    i64 cf = poly[i];
    if (cf != 0) {
      for (size_t j = 0; j < cyc.size(); ++j) poly[i - cyc.size() + 1 + j] -= cf * cyc[j];
    }
    if (i == 0) break;
  }
  for (i64 v : poly) {
    if (v != 0) return false;
  }
  return true;
}

inline void criterion_properties(Context& ctx, Checker& ck) {
  std::mt19937_64 rng(20260808);

  // phi from factorization vs brute count, all n <= 10^4
  {
    bool ok = true;
    for (i64 n = 1; n <= 10000 && ok; ++n) {
      i64 brute = 0;
      for (i64 k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) ++brute;
      }
      ok = factorize(n, ctx.sieve).phi() == brute;
    }
    ck.expect(ok, "phi vs brute count");
    ck.note("phi(n) matches the coprime count for all n <= 10^4");
  }

  // phi*(n) equals the number of characters of conductor n (cross-module
  // oracle, n <= 10^4), and sum_{d|q} phi*(d) = phi(q)
  {
    bool ok = true;
    for (i64 q = 1; q <= 10000 && ok; ++q) {
      FactoredInteger fq = factorize(q, ctx.sieve);
      UnitGroupStructure G = UnitGroupStructure::build(fq, ctx.sieve);
      i64 prim = 0;
      for_each_character(G, [&](const DirichletCharacter& chi) {
        if (conductor(G, chi) == q) ++prim;
      });
      ok = prim == phi_star(fq);
    }
    ck.expect(ok, "phi* vs primitive character count");
    bool ok2 = true;
    for (i64 q = 1; q <= 10000 && ok2; ++q) {
      FactoredInteger fq = factorize(q, ctx.sieve);
      i64 total = 0;
      for (i64 d : fq.divisors()) total += phi_star(factorize(d, ctx.sieve));
      ok2 = total == fq.phi();
    }
    ck.expect(ok2, "sum of phi* over divisors = phi");
    ck.note("phi* = #characters of conductor q (q <= 10^4); divisor sum identity (q <= 10^4)");
  }

  // multiplicative order divides phi; friable counts monotone with floor 1
  {
    bool ok = true;
    for (int i = 0; i < 2000 && ok; ++i) {
      i64 n = 2 + static_cast<i64>(rng() % 9998);
      i64 a = 1 + static_cast<i64>(rng() % (n - 1));
      if (std::gcd(a, n) != 1) continue;
      FactoredInteger fn = factorize(n, ctx.sieve);
      ok = fn.phi() % multiplicative_order(a, fn) == 0;
    }
    ck.expect(ok, "order divides phi");
    bool ok2 = true;
    for (i64 x : {1, 5, 40, 300}) {
      ok2 = ok2 && friable_count(x, 1) == 1;
      for (i64 y = 1; y + 1 <= 20; ++y) {
        ok2 = ok2 && friable_count(x, y + 1) >= friable_count(x, y) &&
              friable_count(x + 1, y) >= friable_count(x, y);
      }
    }
    ck.expect(ok2, "friable count monotonicity");
    ck.note("order | phi (2000 samples); Psi monotone, Psi(x,1) = 1");
  }

  // orthogonality over exact roots of unity, q <= 200
  {
    bool ok = true;
    for (i64 q = 3; q <= 200 && ok; ++q) {
      UnitGroupStructure G = UnitGroupStructure::build(factorize(q, ctx.sieve), ctx.sieve);
      for (i64 n = 2; n < q && ok; ++n) {
        if (std::gcd(n, q) != 1 || n % q == 1) continue;
        std::vector<Angle> angles;
        for_each_character(G, [&](const DirichletCharacter& chi) {
          auto v = char_value(G, chi, n);
          if (v) angles.push_back(*v);
        });
        ok = angles.size() == static_cast<size_t>(G.phi()) && roots_of_unity_sum_zero(angles);
      }
    }
    ck.expect(ok, "orthogonality");
    ck.note("character orthogonality verified as exact root-of-unity sums, q <= 200");
  }

  // count_trivial_on vs brute character enumeration, 100 randomized pairs
  {
    bool ok = true;
    int done = 0;
    while (done < 100 && ok) {
      i64 q = 3 + static_cast<i64>(rng() % 498);
      UnitGroupStructure G = UnitGroupStructure::build(factorize(q, ctx.sieve), ctx.sieve);
      std::vector<i64> S;
      for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i) {
        i64 s = 1 + static_cast<i64>(rng() % (q - 1));
        if (std::gcd(s, q) == 1) S.push_back(s);
      }
      if (S.empty()) continue;
      i64 brute = 0;
      for_each_character(G, [&](const DirichletCharacter& chi) {
        for (i64 s : S) {
          auto v = char_value(G, chi, s);
          if (!v || v->num != 0) return;
        }
        ++brute;
      });
      ok = count_trivial_on(G, S) == brute;
      ++done;
    }
    ck.expect(ok, "count_trivial_on vs brute enumeration");
    ck.note("lattice-index character counts match brute enumeration on 100 random (q, S)");
  }

  // cubic form properties: disc invariance, class function, idempotence,
  // splitting invariance under the unimodular action
  {
    auto random_unimodular = [&]() {
      auto mul = [](const Mat2& A, const Mat2& B) {
        return Mat2{A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
                    A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
      };
      const Mat2 gens[] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 0, -1}};
      Mat2 M;
      int len = 1 + static_cast<int>(rng() % 7);
      for (int i = 0; i < len; ++i) M = mul(M, gens[rng() % 4]);
      return M;
    };
    auto random_form = [&]() {
      for (;;) {
        BinaryCubicForm f{static_cast<i64>(rng() % 9) - 4, static_cast<i64>(rng() % 9) - 4,
                          static_cast<i64>(rng() % 9) - 4, static_cast<i64>(rng() % 9) - 4};
        if (content(f) == 1 && is_irreducible(f)) return f;
      }
    };
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
      BinaryCubicForm f = random_form();
      Mat2 M = random_unimodular();
      BinaryCubicForm g = act(f, M);
      ok = disc_form(g) == disc_form(f);
      BinaryCubicForm r = reduce_canonical(f);
      ok = ok && reduce_canonical(g) == r && reduce_canonical(r) == r;
      if (ok && i % 10 == 0) {
        i64 D = std::abs(disc_form(f));
        bool maximal = true;
        for (auto& [p, e] : factorize(D, ctx.sieve).factors) {
          if (e >= 2 && !is_maximal_at(f, p)) maximal = false;
        }
        if (maximal) {
          for (i64 p : {2, 3, 5}) ok = ok && splitting_type(g, p) == splitting_type(f, p);
        }
      }
    }
    ck.expect(ok, "cubic orbit invariance / reduction idempotence");
    ck.note("disc and splitting invariance, reduction idempotence and class function "
            "over 1000 random unimodular images");
  }

  // enumeration structure at a small bound: dedupe, record invariants,
  // Galois behavior, prefix property
  {
    auto recs = enumerate_cubic_fields(4000, SignRange::Both, ctx.sieve, ctx.threads);
    auto recs2 = enumerate_cubic_fields(8000, SignRange::Both, ctx.sieve, ctx.threads);
    bool ok = recs.size() > 100 && recs2.size() > recs.size();
    std::set<BinaryCubicForm> forms;
    for (auto& r : recs) {
      ok = ok && content(r.form) == 1 && is_irreducible(r.form) && disc_form(r.form) == r.disc;
      ok = ok && forms.insert(r.form).second;
      ok = ok && (r.galois == cubic_detail::is_perfect_square(r.disc));
      if (r.galois) {
        for (auto& [p, t] : r.splitting) ok = ok && t != SplittingType::PartiallySplit;
      }
    }
    for (size_t i = 0; i < recs.size() && ok; ++i) {
      ok = recs[i].disc == recs2[i].disc && recs[i].form == recs2[i].form;
    }
    ck.expect(ok, "enumeration record invariants / dedupe / prefix");
    ck.note("records unique, invariant-clean, Galois never partially split; smaller bound "
            "is a prefix of the larger");
  }

  // constants: term identities, stability under doubled precision
  {
    bool ok = true;
    mpq_class prod(1);
    auto fam = prob_all_characters();
    for (i64 l : ctx.sieve.primes_in(2, 100)) {
      mpq_class lhs = mpq_class(l) * fam.t(l) * prod;
      mpq_class denom(1);
      for (i64 p : ctx.sieve.primes_in(2, l)) denom *= (p + 1);
      ok = ok && lhs == mpq_class(l * l) / denom;
      prod *= mpq_class(1) - fam.t(l);
    }
    ck.expect(ok, "closed-form term identity for the all-characters family");
    bool ok2 = true;
    for (auto& f : {prob_all_characters(), prob_cubic_inert()}) {
      auto coarse = first_failure_expectation(f, 1e-9, ctx.sieve, 192);
      auto fine = first_failure_expectation(f, 5e-10, ctx.sieve, 384);
      ok2 = ok2 && std::fabs(coarse.to_double() - fine.to_double()) <= coarse.bound;
    }
    ck.expect(ok2, "stability under doubled precision and halved eps");
    ck.note("constants: exact term identities (l <= 100) and precision stability");
  }

  // per-q average floor: mean >= ell(q), equality governed by the identity
  {
    bool ok = true;
    for (i64 q = 3; q <= 500 && ok; ++q) {
      auto r = avg_nchi_mod_q(q, ctx.sieve);
      ok = r.sum >= r.ell * r.count;
      bool all_at_ell = r.sum == r.ell * r.count;
      i64 phi = r.count + 1;
      if (all_at_ell) ok = ok && (phi - phi / r.f_ord == r.count);
    }
    ck.expect(ok, "per-q mean floor at ell(q)");
    ck.note("per-q mean >= ell(q) with equality exactly per the count identity (q <= 500)");
  }

  // empirical per-q error scale: reported, no bound asserted
  {
    double s = scaled_error_statistic(1000, 100000, ctx.sieve, ctx.threads);
    ck.expect(std::isfinite(s), "scaled error statistic not finite");
    ck.note("max over 10^3 <= q <= 10^5 of (mean - ell(q)) log q / (loglog q)^3  =  " + fmt(s));
  }
}

}  // namespace verify_detail

struct CriterionSpec {
  int number;
  std::string id;
  bool fast;
  void (*fn)(verify_detail::Context&, verify_detail::Checker&);
};

inline const std::vector<CriterionSpec>& acceptance_criteria() {
  using namespace verify_detail;
  static const std::vector<CriterionSpec> list = {
      {1, "constants-regression", true, criterion_constants},
      {2, "exact-count-identity", true, criterion_count_identity},
      {3, "oracle-equivalence", true, criterion_oracle_equivalence},
      {4, "erdos-average", false, criterion_erdos},
      {5, "global-averages", false, criterion_global},
      {6, "summatory-functions", true, criterion_summatory},
      {7, "cubic-counts-densities", false, criterion_cubic_counts},
      {8, "nK-average", false, criterion_nk_average},
      {9, "least-prime-by-type", false, criterion_thm4},
      {10, "structural-properties", true, criterion_properties},
  };
  return list;
}

inline std::vector<CriterionResult> run_acceptance(bool full_suite, const Tolerances& tol,
                                                   int threads, std::ostream* progress) {
  verify_detail::Context ctx(tol, threads, progress);
  std::vector<CriterionResult> out;
  for (const auto& spec : acceptance_criteria()) {
    if (!full_suite && !spec.fast) continue;
    verify_detail::Checker ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
      spec.fn(ctx, ck);
    } catch (const std::exception& e) {
      ck.ok = false;
      ck.log += std::string("  EXCEPTION: ") + e.what() + "\n";
    }
    auto t1 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.number = spec.number;
    r.id = spec.id;
    r.pass = ck.ok;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.detail = ck.log;
    out.push_back(std::move(r));
    if (progress) {
      (*progress) << (out.back().pass ? "PASS" : "FAIL") << "  criterion " << spec.number << " ("
                  << spec.id << ", " << verify_detail::fmt(out.back().seconds) << "s)"
                  << std::endl;
    }
  }
  return out;
}

}  // namespace nftab
