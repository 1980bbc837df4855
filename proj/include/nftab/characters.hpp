#pragma once

// Structure of (Z/qZ)^x and Dirichlet characters as exponent vectors against
// fixed generators.  The heart of the module is the subgroup-index table: the
// number of characters trivial on a subgroup H equals [G : H], so per-modulus
// nonresidue statistics reduce to lattice-index computations instead of
// per-character scans.

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nftab/arith.hpp"

namespace nftab {

namespace detail {

struct ExtGcd {
  i64 g, s, t;  // s*a + t*b = g
};

inline ExtGcd extgcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 qt = old_r / r;
    std::swap(old_r -= qt * r, r);
    std::swap(old_s -= qt * s, s);
    std::swap(old_t -= qt * t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline i64 inverse_mod(i64 a, i64 m) {
  auto e = extgcd(((a % m) + m) % m, m);
  if (e.g != 1) throw std::invalid_argument("inverse_mod: not invertible");
  i64 r = e.s % m;
  return r < 0 ? r + m : r;
}

// Discrete log in the order-ell subgroup generated by gamma (baby-step
// giant-step); returns x in [0, ell) with gamma^x = h (mod m).
inline i64 bsgs(i64 gamma, i64 h, i64 m, i64 ell) {
  i64 steps = 1;
  while (steps * steps < ell) ++steps;
  std::unordered_map<i64, i64> baby;
  baby.reserve(static_cast<size_t>(steps) * 2);
  i64 cur = 1;
  for (i64 j = 0; j < steps; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, gamma, m);
  }
  i64 giant = powmod(inverse_mod(gamma, m), steps, m);
  i64 y = h % m;
  for (i64 t = 0; t <= steps; ++t) {
    auto it = baby.find(y);
    if (it != baby.end()) {
      i64 x = t * steps + it->second;
      if (x < ell) return x;
    }
    y = mulmod(y, giant, m);
  }
  throw internal_error("bsgs: element not in subgroup");
}

// Discrete log in the cyclic group <g> of order ell^k modulo m.
inline i64 dlog_prime_power(i64 g, i64 h, i64 m, i64 ell, int k) {
  i64 pk = 1;
  for (int i = 0; i < k - 1; ++i) pk *= ell;
  i64 gamma = powmod(g, pk, m);  // order ell
  i64 g_inv = inverse_mod(g, m);
  i64 x = 0;
  i64 ell_j = 1;
  i64 shrink = pk;
  for (int j = 0; j < k; ++j) {
    i64 c = powmod(mulmod(h, powmod(g_inv, x, m), m), shrink, m);
    i64 dj = bsgs(gamma, c, m, ell);
    x += dj * ell_j;
    ell_j *= ell;
    shrink /= ell;
  }
  return x;
}

// Discrete log in <g> of order d (Pohlig-Hellman over the factorization of d).
inline i64 dlog_cyclic(i64 g, i64 h, i64 m, i64 d) {
  if (d == 1) return 0;
  FactoredInteger fd = factorize_trial(d);
  i64 x = 0, mod_built = 1;
  for (auto& [ell, k] : fd.factors) {
    i64 pe = 1;
    for (int i = 0; i < k; ++i) pe *= ell;
    i64 g_part = powmod(g, d / pe, m);
    i64 h_part = powmod(h, d / pe, m);
    i64 x_part = dlog_prime_power(g_part, h_part, m, ell, k);
    // CRT combine x = x (mod mod_built), x = x_part (mod pe)
    i64 diff = ((x_part - x) % pe + pe) % pe;
    i64 step = mulmod(diff % pe, inverse_mod(mod_built % pe, pe), pe);
    x += mod_built * step;
    mod_built *= pe;
  }
  return x;
}

inline i64 least_primitive_root_uncached(i64 p, int e, const PrimeSieve& sieve) {
  FactoredInteger fp1 = factorize(p - 1, sieve);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [ell, ex] : fp1.factors) {
      (void)ex;
      if (powmod(g, (p - 1) / ell, p) == 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (e == 1) return g;
    if (powmod(g, p - 1, p * p) != 1) return g;
  }
  throw internal_error("least_primitive_root: none found mod " + std::to_string(p));
}

inline i64 least_primitive_root(i64 p, int e, const PrimeSieve& sieve) {
  static std::mutex mtx;
  static std::unordered_map<i64, i64> cache;  // keyed by p (root valid for all e of interest)
  i64 key = p * 2 + (e > 1 ? 1 : 0);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  i64 g = least_primitive_root_uncached(p, e, sieve);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, g);
  return g;
}

}  // namespace detail

struct UnitComponent {
  i64 prime = 0;
  int exp = 0;
  i64 prime_power = 1;
  std::vector<i64> generators;        // lifted to modulus q via CRT
  std::vector<i64> generators_local;  // modulo prime_power
  std::vector<i64> orders;
};

// (Z/qZ)^x as a product of cyclic groups with explicit generators.
class UnitGroupStructure {
 public:
  static UnitGroupStructure build(const FactoredInteger& fq, const PrimeSieve& sieve) {
    UnitGroupStructure G;
    G.q_ = fq.value();
    G.phi_ = fq.phi();
    for (auto& [p, e] : fq.factors) {
      UnitComponent comp;
      comp.prime = p;
      comp.exp = e;
      comp.prime_power = 1;
      for (int i = 0; i < e; ++i) comp.prime_power *= p;
      if (p == 2) {
        if (e == 2) {
          comp.generators_local = {3};
          comp.orders = {2};
        } else if (e >= 3) {
          comp.generators_local = {comp.prime_power - 1, 5};
          comp.orders = {2, comp.prime_power / 4};
        }
        // e == 1: trivial component, no generators
      } else {
        i64 g = detail::least_primitive_root(p, e, sieve);
        i64 ord = comp.prime_power / p * (p - 1);
        comp.generators_local = {g};
        comp.orders = {ord};
      }
      G.comps_.push_back(std::move(comp));
    }
    // CRT-lift each local generator so it acts trivially on the other components
    for (auto& comp : G.comps_) {
      i64 pe = comp.prime_power;
      i64 rest = G.q_ / pe;
      for (i64 g : comp.generators_local) {
        i64 lifted;
        if (rest == 1) {
          lifted = g % pe;
        } else {
          i64 inv_rest = detail::inverse_mod(rest % pe, pe);
          i64 inv_pe = detail::inverse_mod(pe % rest, rest);
          i128 v = i128(g) * rest % G.q_ * inv_rest % G.q_;
          v = (v + i128(pe) * inv_pe) % G.q_;
          lifted = static_cast<i64>(v);
        }
        comp.generators.push_back(lifted);
      }
      for (i64 d : comp.orders) G.orders_.push_back(d);
    }
    return G;
  }

  i64 q() const { return q_; }
  i64 phi() const { return phi_; }
  const std::vector<UnitComponent>& components() const { return comps_; }
  const std::vector<i64>& orders() const { return orders_; }
  size_t rank() const { return orders_.size(); }

  // Exponent vector x with prod g_i^{x_i} = n (mod q).
  std::vector<i64> dlog(i64 n) const {
    i64 m = ((n % q_) + q_) % q_;
    if (std::gcd(m, q_) != 1) throw std::invalid_argument("dlog: gcd(n,q) != 1");
    std::vector<i64> x;
    x.reserve(orders_.size());
    for (auto& comp : comps_) {
      i64 pe = comp.prime_power;
      i64 loc = m % pe;
      if (comp.prime == 2) {
        if (comp.exp == 1) continue;
        if (comp.exp == 2) {
          x.push_back(loc == 3 ? 1 : 0);
        } else {
          i64 e0 = (loc % 4 == 3) ? 1 : 0;
          i64 v = e0 ? pe - loc : loc;  // v = (-1)^e0 * n, now in <5>
          x.push_back(e0);
          x.push_back(detail::dlog_cyclic(5, v, pe, comp.orders[1]));
        }
      } else {
        x.push_back(detail::dlog_cyclic(comp.generators_local[0], loc, pe, comp.orders[0]));
      }
    }
    return x;
  }

 private:
  i64 q_ = 1;
  i64 phi_ = 1;
  std::vector<UnitComponent> comps_;
  std::vector<i64> orders_;
};

// A character mod q as an exponent vector against the group's generators.
struct DirichletCharacter {
  i64 q = 1;
  std::vector<i64> e;

  bool is_principal() const {
    for (i64 v : e) {
      if (v != 0) return false;
    }
    return true;
  }
};

// chi(n) = e^{2 pi i num/den}; nullopt encodes chi(n) = 0.
struct Angle {
  i64 num = 0;
  i64 den = 1;
};

inline std::optional<Angle> char_value(const UnitGroupStructure& G, const DirichletCharacter& chi,
                                       i64 n) {
  i64 m = ((n % G.q()) + G.q()) % G.q();
  if (std::gcd(m, G.q()) != 1) return std::nullopt;
  std::vector<i64> x = G.dlog(m);
  i64 L = 1;
  for (i64 d : G.orders()) L = std::lcm(L, d);
  i128 t = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    t += i128(chi.e[i]) * x[i] % L * (L / G.orders()[i]);
  }
  i64 num = static_cast<i64>(((t % L) + L) % L);
  i64 g = std::gcd(num, L);
  return Angle{num / g, L / g};
}

// Least n with chi(n) not in {0, 1}; always prime, found by an ascending
// prime scan that skips divisors of q.
inline i64 n_chi(const UnitGroupStructure& G, const DirichletCharacter& chi) {
  if (chi.is_principal()) throw std::invalid_argument("n_chi: principal character");
  for (i64 p = 2; p < 1000000; p = next_prime_after(p)) {
    if (G.q() % p == 0) continue;
    auto a = char_value(G, chi, p);
    if (a && a->num != 0) return p;
  }
  throw internal_error("n_chi: search horizon exceeded");
}

// Conductor, computed per prime-power component from the order of the
// component exponent.
inline i64 conductor(const UnitGroupStructure& G, const DirichletCharacter& chi) {
  i64 cond = 1;
  size_t idx = 0;
  for (auto& comp : G.components()) {
    if (comp.prime == 2) {
      if (comp.exp == 1) continue;
      if (comp.exp == 2) {
        i64 e0 = chi.e[idx++];
        if (e0 != 0) cond *= 4;
      } else {
        i64 e0 = chi.e[idx];
        i64 e1 = chi.e[idx + 1];
        idx += 2;
        i64 d1 = comp.orders[1];
        if (e1 != 0) {
          i64 o1 = d1 / std::gcd(e1, d1);  // a power of two >= 2
          cond *= 4 * o1;
        } else if (e0 != 0) {
          cond *= 4;
        }
      }
    } else {
      i64 e = chi.e[idx++];
      if (e != 0) {
        i64 d = comp.orders[0];
        i64 o = d / std::gcd(e, d);
        i64 pv = comp.prime;
        while (o % comp.prime == 0) {
          o /= comp.prime;
          pv *= comp.prime;
        }
        cond *= pv;
      }
    }
  }
  return cond;
}

inline bool is_primitive(const UnitGroupStructure& G, const DirichletCharacter& chi) {
  return conductor(G, chi) == G.q();
}

// Iterate all phi(q) characters mod q.
template <class F>
inline void for_each_character(const UnitGroupStructure& G, F&& f) {
  DirichletCharacter chi;
  chi.q = G.q();
  chi.e.assign(G.orders().size(), 0);
  while (true) {
    f(chi);
    size_t i = 0;
    for (; i < chi.e.size(); ++i) {
      if (++chi.e[i] < G.orders()[i]) break;
      chi.e[i] = 0;
    }
    if (i == chi.e.size()) break;
  }
}

// Upper-triangular basis of the integer lattice spanned by inserted dlog
// vectors together with the rows d_i * e_i.  The determinant (product of the
// diagonal) is the lattice index [Z^k : L], which equals the number of
// characters trivial on the inserted subgroup.
//
// Entries are held in 128 bits: intermediate growth during an insert is
// bounded by products of the d_i, whose total product is phi(q), and the
// off-diagonal reduction after each insert brings entries back below the
// diagonal.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const std::vector<i64>& orders) : k_(orders.size()) {
    B_.assign(k_, std::vector<i128>(k_, 0));
    for (size_t i = 0; i < k_; ++i) B_[i][i] = orders[i];
  }

  void insert(const std::vector<i64>& v_in) {
    std::vector<i128> v(v_in.begin(), v_in.end());
    for (size_t i = 0; i < k_; ++i) {
      if (v[i] == 0) continue;
      auto e = detail::extgcd(narrow(B_[i][i]), narrow(v[i]));
      i128 bi = B_[i][i] / e.g;
      i128 vi = v[i] / e.g;
      // unimodular 2-row transform: pivot = s*B_i + t*v, v' = bi*v - vi*B_i
      std::vector<i128> pivot(k_, 0);
      for (size_t j = i; j < k_; ++j) {
        pivot[j] = i128(e.s) * B_[i][j] + i128(e.t) * v[j];
        v[j] = bi * v[j] - vi * B_[i][j];
      }
      B_[i] = std::move(pivot);
    }
    normalize();
  }

  i64 index() const {
    i128 det = 1;
    for (size_t i = 0; i < k_; ++i) det *= B_[i][i];
    return narrow(det);
  }

 private:
  static i64 narrow(i128 x) {
    if (x > INT64_MAX || x < INT64_MIN) throw internal_error("SubgroupLattice: entry overflow");
    return static_cast<i64>(x);
  }

  void normalize() {
    // row_i -= m * row_j (j > i) keeps the basis; working bottom-up means
    // every row used for reduction is itself already reduced
    for (size_t i = k_; i-- > 0;) {
      for (size_t j = i + 1; j < k_; ++j) {
        if (B_[j][j] == 0) continue;
        i128 m = B_[i][j] / B_[j][j];
        if (B_[i][j] % B_[j][j] < 0) --m;
        if (m == 0) continue;
        for (size_t l = j; l < k_; ++l) B_[i][l] -= m * B_[j][l];
      }
    }
  }

  size_t k_;
  std::vector<std::vector<i128>> B_;
};

struct SubgroupIndexTable {
  i64 q = 1;
  // (r_j, I_j): cumulative index phi(q) / #<r_1..r_j>, ending at I = 1
  std::vector<std::pair<i64, i64>> steps;
};

// Successive primes coprime to q, with the index of the subgroup they
// generate; I_j is exactly the number of characters trivial on <r_1..r_j>.
inline SubgroupIndexTable subgroup_index_table(const UnitGroupStructure& G) {
  if (G.q() < 3) throw std::invalid_argument("subgroup_index_table: q >= 3 required");
  SubgroupIndexTable table;
  table.q = G.q();
  SubgroupLattice lat(G.orders());
  for (i64 r = 2; r < 100000; r = next_prime_after(r)) {
    if (G.q() % r == 0) continue;
    lat.insert(G.dlog(r));
    i64 idx = lat.index();
    table.steps.emplace_back(r, idx);
    if (idx == 1) return table;
  }
  throw internal_error("subgroup_index_table: generators not found below horizon");
}

// Number of characters mod q trivial on <S>, via the lattice index.
inline i64 count_trivial_on(const UnitGroupStructure& G, const std::vector<i64>& S) {
  SubgroupLattice lat(G.orders());
  for (i64 s : S) {
    if (std::gcd(((s % G.q()) + G.q()) % G.q(), G.q()) != 1)
      throw std::invalid_argument("count_trivial_on: element not coprime to q");
    lat.insert(G.dlog(s));
  }
  return lat.index();
}

// Per-character n_chi values for all nonprincipal characters mod q, with
// discrete logs computed once per prime and shared across characters.  This
// is the brute-force path that the batch index-table path is checked against.
struct NchiHistogram {
  std::map<i64, i64> counts;  // n_chi value -> number of characters
  i64 sum = 0;
  i64 characters = 0;  // nonprincipal count
};

inline NchiHistogram nchi_histogram(const UnitGroupStructure& G) {
  NchiHistogram h;
  i64 L = 1;
  for (i64 d : G.orders()) L = std::lcm(L, d);
  std::vector<std::pair<i64, std::vector<i64>>> prime_dlogs;
  auto ensure_prime = [&](size_t idx) -> const std::pair<i64, std::vector<i64>>& {
    while (prime_dlogs.size() <= idx) {
      i64 p = prime_dlogs.empty() ? 2 : next_prime_after(prime_dlogs.back().first);
      while (G.q() % p == 0) p = next_prime_after(p);
      prime_dlogs.emplace_back(p, G.dlog(p));
    }
    return prime_dlogs[idx];
  };
  for_each_character(G, [&](const DirichletCharacter& chi) {
    if (chi.is_principal()) return;
    for (size_t idx = 0;; ++idx) {
      auto& [p, x] = ensure_prime(idx);
      i128 t = 0;
      for (size_t i = 0; i < x.size(); ++i) t += i128(chi.e[i]) * x[i] % L * (L / G.orders()[i]);
      if (t % L != 0) {
        h.counts[p] += 1;
        h.sum += p;
        h.characters += 1;
        return;
      }
      if (idx > 10000) throw internal_error("nchi_histogram: scan horizon exceeded");
    }
  });
  return h;
}

// Batch statistics for one modulus: sum of n_chi over nonprincipal chi from
// the index table alone (no per-character work).
struct NchiBatch {
  i64 q = 0;
  i64 phi = 0;
  i64 ell = 0;
  i64 f_ord = 0;   // multiplicative order of ell(q) mod q
  i64 count = 0;   // phi(q) - 1
  i64 sum = 0;     // sum over nonprincipal chi of n_chi
  SubgroupIndexTable table;
};

inline NchiBatch nchi_batch(const FactoredInteger& fq, const PrimeSieve& sieve) {
  NchiBatch b;
  b.q = fq.value();
  if (b.q < 3) throw std::invalid_argument("nchi_batch: q >= 3 required");
  UnitGroupStructure G = UnitGroupStructure::build(fq, sieve);
  b.phi = G.phi();
  b.ell = least_nondivisor_prime(fq);
  b.f_ord = multiplicative_order(b.ell, fq);
  b.count = b.phi - 1;
  b.table = subgroup_index_table(G);
  i64 prev = b.phi;
  for (auto& [r, idx] : b.table.steps) {
    b.sum += r * (prev - idx);
    prev = idx;
  }
  return b;
}

// Primitive-character variant.  The count of primitive characters trivial on
// H is sum_{d | q} mu(q/d) * (phi(d) / #(H mod d)), evaluated with one
// lattice per squarefree-cofactor divisor.
struct PrimitiveNchiBatch {
  i64 q = 0;
  i64 phi_star = 0;
  i64 sum = 0;  // sum of n_chi over primitive characters mod q
};

inline PrimitiveNchiBatch primitive_nchi_batch(const FactoredInteger& fq, const PrimeSieve& sieve) {
  PrimitiveNchiBatch b;
  b.q = fq.value();
  if (b.q < 3) throw std::invalid_argument("primitive_nchi_batch: q >= 3 required");
  b.phi_star = phi_star(fq);
  if (b.phi_star == 0) return b;

  struct Part {
    int sign;
    UnitGroupStructure G;
    SubgroupLattice lat;
  };
  std::vector<Part> parts;
  size_t w = fq.factors.size();
  for (size_t mask = 0; mask < (size_t(1) << w); ++mask) {
    i64 d = b.q;
    int sign = 1;
    for (size_t i = 0; i < w; ++i) {
      if (mask & (size_t(1) << i)) {
        d /= fq.factors[i].first;
        sign = -sign;
      }
    }
    UnitGroupStructure G = UnitGroupStructure::build(factorize(d, sieve), sieve);
    SubgroupLattice lat(G.orders());
    parts.push_back({sign, std::move(G), std::move(lat)});
  }

  i64 prev = b.phi_star;
  for (i64 r = 2; r < 100000; r = next_prime_after(r)) {
    if (b.q % r == 0) continue;
    i64 count = 0;
    for (auto& part : parts) {
      part.lat.insert(part.G.dlog(r));
      count += part.sign * part.lat.index();
    }
    b.sum += r * (prev - count);
    prev = count;
    if (count == 0) return b;
  }
  throw internal_error("primitive_nchi_batch: generators not found below horizon");
}

}  // namespace nftab
