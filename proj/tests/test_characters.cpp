#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "nftab/averages.hpp"
#include "nftab/characters.hpp"

using namespace nftab;

namespace {

const PrimeSieve& sieve() {
  static PrimeSieve s(200000);
  return s;
}

UnitGroupStructure group(i64 q) { return UnitGroupStructure::build(factorize(q, sieve()), sieve()); }

// Z[x]/(Phi_L(x)) zero test for sums of roots of unity: accumulate exponent
// counts and reduce the polynomial modulo the L-th cyclotomic polynomial.
std::vector<i64> cyclotomic(i64 L) {
  // Phi_L = prod over divisors via repeated exact division of x^d - 1 pieces
  std::vector<i64> num{1};  // x^L - 1 divided by product of Phi_d, d < L
  auto polydiv = [](const std::vector<i64>& a, const std::vector<i64>& b) {
    std::vector<i64> r = a, q(a.size() - b.size() + 1, 0);
    for (size_t i = a.size(); i-- >= b.size() && i + 1 >= b.size();) {
      if (i + 1 < b.size()) break;
      i64 c = r[i] / b.back();
      q[i - b.size() + 1] = c;
      for (size_t j = 0; j < b.size(); ++j) r[i - b.size() + 1 + j] -= c * b[j];
      if (i == 0) break;
    }
    return q;
  };
  std::map<i64, std::vector<i64>> phi_cache;
  std::function<std::vector<i64>(i64)> phi_poly = [&](i64 n) -> std::vector<i64> {
    auto it = phi_cache.find(n);
    if (it != phi_cache.end()) return it->second;
    std::vector<i64> p(static_cast<size_t>(n) + 1, 0);
    p[0] = -1;
    p[n] = 1;  // x^n - 1
    for (i64 d = 1; d < n; ++d) {
      if (n % d == 0) p = polydiv(p, phi_poly(d));
    }
    phi_cache[n] = p;
    return p;
  };
  (void)num;
  return phi_poly(L);
}

bool root_of_unity_sum_is_zero(const std::vector<Angle>& angles) {
  i64 L = 1;
  for (auto& a : angles) L = std::lcm(L, a.den);
  std::vector<i64> poly(static_cast<size_t>(L), 0);
  for (auto& a : angles) poly[static_cast<size_t>(a.num * (L / a.den))] += 1;
  auto cyc = cyclotomic(L);
  // reduce poly mod cyc (monic)
  for (size_t i = poly.size(); i-- >= cyc.size() && i + 1 >= cyc.size();) {
    if (i + 1 < cyc.size()) break;
    i64 c = poly[i];
    if (c != 0) {
      for (size_t j = 0; j < cyc.size(); ++j) poly[i - cyc.size() + 1 + j] -= c * cyc[j];
    }
    if (i == 0) break;
  }
  return std::all_of(poly.begin(), poly.end(), [](i64 v) { return v == 0; });
}

// Brute subgroup closure in (Z/qZ)^x.
i64 subgroup_order_brute(i64 q, const std::vector<i64>& gens) {
  std::set<i64> H{1 % q};
  std::vector<i64> frontier{1 % q};
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 h : frontier) {
      for (i64 g : gens) {
        i64 v = mulmod(h, g % q, q);
        if (H.insert(v).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return static_cast<i64>(H.size());
}

i64 nchi_brute(const UnitGroupStructure& G, const DirichletCharacter& chi) {
  for (i64 n = 2;; ++n) {
    auto a = char_value(G, chi, n);
    if (a && a->num != 0) return n;
  }
}

}  // namespace

TEST_CASE("unit group structure: worked examples") {
  auto g7 = group(7);
  REQUIRE(g7.orders() == std::vector<i64>{6});
  CHECK(g7.components()[0].generators_local[0] == 3);

  auto g8 = group(8);
  REQUIRE(g8.orders() == std::vector<i64>{2, 2});
  CHECK(g8.components()[0].generators_local == std::vector<i64>{7, 5});

  auto g15 = group(15);
  CHECK(g15.orders() == std::vector<i64>{2, 4});
}

TEST_CASE("unit group invariants for q <= 500") {
  for (i64 q = 1; q <= 500; ++q) {
    auto G = group(q);
    i64 prod = 1;
    for (i64 d : G.orders()) prod *= d;
    CHECK(prod == G.phi());
    // each lifted generator has the stated order mod its component and acts
    // trivially on the others
    for (auto& comp : G.components()) {
      for (size_t i = 0; i < comp.generators.size(); ++i) {
        i64 g = comp.generators[i];
        i64 d = comp.orders[i];
        CHECK(powmod(g, d, G.q()) == 1 % G.q());
        auto fo = multiplicative_order(g, factorize(q, sieve()));
        CHECK(fo == multiplicative_order(comp.generators_local[i],
                                         factorize(comp.prime_power, sieve())) );
        CHECK(fo == d);
        for (auto& other : G.components()) {
          if (other.prime != comp.prime) CHECK(g % other.prime_power == 1);
        }
      }
    }
  }
}

TEST_CASE("dlog worked examples") {
  CHECK(group(7).dlog(3) == std::vector<i64>{1});
  CHECK(group(7).dlog(2) == std::vector<i64>{2});  // 3^2 = 9 = 2 (mod 7)
  CHECK(group(7).dlog(1) == std::vector<i64>{0});
}

TEST_CASE("dlog round trip randomized") {
  std::mt19937_64 rng(31415);
  for (int iter = 0; iter < 1000; ++iter) {
    i64 q = 3 + static_cast<i64>(rng() % 3000);
    auto G = group(q);
    i64 n = 1 + static_cast<i64>(rng() % (q - 1));
    if (std::gcd(n, q) != 1) continue;
    auto x = G.dlog(n);
    // recombine: prod g_i^{x_i} = n (mod q)
    i64 v = 1 % q;
    size_t idx = 0;
    for (auto& comp : G.components()) {
      for (size_t i = 0; i < comp.generators.size(); ++i) {
        v = mulmod(v, powmod(comp.generators[i], x[idx++], q), q);
      }
    }
    CHECK(v == n % q);
  }
  CHECK_THROWS_AS(group(10).dlog(5), std::invalid_argument);
}

TEST_CASE("char_value examples") {
  auto g4 = group(4);
  DirichletCharacter chi{4, {1}};
  auto a = char_value(g4, chi, 3);
  REQUIRE(a.has_value());
  CHECK(a->num == 1);
  CHECK(a->den == 2);  // value -1
  CHECK(!char_value(g4, chi, 2).has_value());

  // principal character: angle 0 on units
  auto g12 = group(12);
  DirichletCharacter princ{12, {0, 0}};
  for (i64 n : {1, 5, 7, 11}) {
    auto v = char_value(g12, princ, n);
    REQUIRE(v.has_value());
    CHECK(v->num == 0);
  }

  // quadratic character mod 7 (e = 3 against generator 3) is 1 at 2
  auto g7 = group(7);
  DirichletCharacter quad{7, {3}};
  auto v2 = char_value(g7, quad, 2);
  REQUIRE(v2.has_value());
  CHECK(v2->num == 0);
  CHECK(n_chi(g7, quad) == 3);
}

TEST_CASE("n_chi examples and contract") {
  auto g3 = group(3);
  CHECK(n_chi(g3, DirichletCharacter{3, {1}}) == 2);
  auto g4 = group(4);
  CHECK(n_chi(g4, DirichletCharacter{4, {1}}) == 3);
  CHECK_THROWS_AS(n_chi(g4, DirichletCharacter{4, {0}}), std::invalid_argument);
}

TEST_CASE("conductor examples") {
  auto g6 = group(6);
  // the nontrivial character mod 6 factors through mod 3
  i64 found = 0;
  for_each_character(g6, [&](const DirichletCharacter& chi) {
    if (!chi.is_principal()) {
      CHECK(conductor(g6, chi) == 3);
      ++found;
    } else {
      CHECK(conductor(g6, chi) == 1);
    }
  });
  CHECK(found == 1);

  // chi mod 8 with chi(5) = -1, chi(7) = 1 has conductor 8
  auto g8 = group(8);
  for_each_character(g8, [&](const DirichletCharacter& chi) {
    auto v5 = char_value(g8, chi, 5);
    auto v7 = char_value(g8, chi, 7);
    REQUIRE(v5.has_value());
    REQUIRE(v7.has_value());
    bool m5 = v5->num * 2 == v5->den;  // = -1
    bool p7 = v7->num == 0;
    if (m5 && p7) CHECK(conductor(g8, chi) == 8);
  });

  // brute oracle over divisors: conductor is the least d | q through which
  // chi factors
  std::mt19937_64 rng(999);
  for (int iter = 0; iter < 200; ++iter) {
    i64 q = 3 + static_cast<i64>(rng() % 300);
    auto G = group(q);
    auto fq = factorize(q, sieve());
    for_each_character(G, [&](const DirichletCharacter& chi) {
      if (rng() % 7 != 0) return;
      i64 cond = conductor(G, chi);
      // chi factors through d iff chi is trivial on the kernel of reduction
      i64 least = 0;
      for (i64 d : fq.divisors()) {
        bool trivial = true;
        for (i64 n = 1; n < q && trivial; ++n) {
          if (std::gcd(n, q) != 1) continue;
          if (n % d == 1 % d) {
            auto v = char_value(G, chi, n);
            if (v->num != 0) trivial = false;
          }
        }
        if (trivial) {
          least = d;
          break;
        }
      }
      CHECK(cond == least);
    });
  }
}

TEST_CASE("orthogonality via exact roots of unity, q <= 60") {
  for (i64 q = 3; q <= 60; ++q) {
    auto G = group(q);
    for (i64 n = 2; n < q; ++n) {
      if (std::gcd(n, q) != 1 || n % q == 1) continue;
      std::vector<Angle> angles;
      for_each_character(G, [&](const DirichletCharacter& chi) {
        auto v = char_value(G, chi, n);
        REQUIRE(v.has_value());
        angles.push_back(*v);
      });
      CHECK(root_of_unity_sum_is_zero(angles));
    }
  }
}

TEST_CASE("subgroup index tables: worked examples") {
  auto t7 = subgroup_index_table(group(7));
  REQUIRE(t7.steps.size() == 2);
  CHECK(t7.steps[0] == std::pair<i64, i64>{2, 2});
  CHECK(t7.steps[1] == std::pair<i64, i64>{3, 1});

  auto t8 = subgroup_index_table(group(8));
  REQUIRE(t8.steps.size() == 2);
  CHECK(t8.steps[0] == std::pair<i64, i64>{3, 2});
  CHECK(t8.steps[1] == std::pair<i64, i64>{5, 1});

  auto t3 = subgroup_index_table(group(3));
  REQUIRE(t3.steps.size() == 1);
  CHECK(t3.steps[0] == std::pair<i64, i64>{2, 1});
}

TEST_CASE("count_trivial_on: examples and brute cross-check") {
  auto g7 = group(7);
  CHECK(count_trivial_on(g7, {1}) == 6);
  CHECK(count_trivial_on(g7, {2}) == 2);
  auto g8 = group(8);
  CHECK(count_trivial_on(g8, {7}) == 2);
  CHECK_THROWS_AS(count_trivial_on(g8, {6}), std::invalid_argument);

  std::mt19937_64 rng(777);
  int done = 0;
  while (done < 100) {
    i64 q = 3 + static_cast<i64>(rng() % 498);
    auto G = group(q);
    std::vector<i64> S;
    int len = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < len; ++i) {
      i64 s = 1 + static_cast<i64>(rng() % (q - 1));
      if (std::gcd(s, q) == 1) S.push_back(s);
    }
    if (S.empty()) continue;
    i64 via_lattice = count_trivial_on(G, S);
    CHECK(via_lattice == G.phi() / subgroup_order_brute(q, S));
    // and against explicit character enumeration
    i64 brute = 0;
    for_each_character(G, [&](const DirichletCharacter& chi) {
      bool trivial = true;
      for (i64 s : S) {
        auto v = char_value(G, chi, s);
        if (!v || v->num != 0) trivial = false;
      }
      if (trivial) ++brute;
    });
    CHECK(via_lattice == brute);
    ++done;
  }
}

TEST_CASE("exact count identity and batch/per-character agreement, q <= 600") {
  for (i64 q = 3; q <= 600; ++q) {
    auto fq = factorize(q, sieve());
    auto G = group(q);
    i64 ell = least_nondivisor_prime(fq);
    i64 f_ord = multiplicative_order(ell, fq);

    std::map<i64, i64> hist;
    i64 per_char_sum = 0;
    for_each_character(G, [&](const DirichletCharacter& chi) {
      if (chi.is_principal()) return;
      i64 n = n_chi(G, chi);
      CHECK(n >= ell);
      CHECK(is_prime_i64(n));
      hist[n] += 1;
      per_char_sum += n;
    });

    CHECK(hist[ell] == G.phi() - G.phi() / f_ord);

    NchiBatch batch = nchi_batch(fq, sieve());
    CHECK(batch.sum == per_char_sum);

    // distribution identity: successive differences of the index table give
    // the same multiset of n_chi values
    std::map<i64, i64> from_table;
    i64 prev = G.phi();
    for (auto& [r, idx] : batch.table.steps) {
      if (prev - idx > 0) from_table[r] = prev - idx;
      prev = idx;
    }
    CHECK(from_table == hist);
  }
}

TEST_CASE("primitive character counts match phi_star, q <= 600") {
  for (i64 q = 3; q <= 600; ++q) {
    auto fq = factorize(q, sieve());
    auto G = group(q);
    i64 prim = 0;
    for_each_character(G, [&](const DirichletCharacter& chi) {
      if (is_primitive(G, chi)) ++prim;
    });
    CHECK(prim == phi_star(fq));

    // batch primitive sum equals per-character primitive sum
    i64 per_char = 0;
    for_each_character(G, [&](const DirichletCharacter& chi) {
      if (chi.is_principal() || !is_primitive(G, chi)) return;
      per_char += n_chi(G, chi);
    });
    PrimitiveNchiBatch b = primitive_nchi_batch(fq, sieve());
    CHECK(b.sum == per_char);
  }
}

TEST_CASE("oracle equivalence: quadratic character vs Euler criterion") {
  for (i64 p : sieve().primes()) {
    if (p > 2000) break;
    if (p == 2) continue;
    auto G = group(p);
    DirichletCharacter quad{p, {(p - 1) / 2}};
    CHECK(n_chi(G, quad) == least_quadratic_nonresidue(p));
  }
}

TEST_CASE("brute n_chi equals prime-scan n_chi on random characters") {
  std::mt19937_64 rng(2718);
  for (int iter = 0; iter < 300; ++iter) {
    i64 q = 3 + static_cast<i64>(rng() % 800);
    auto G = group(q);
    DirichletCharacter chi{q, {}};
    chi.e.resize(G.orders().size());
    for (size_t i = 0; i < chi.e.size(); ++i) chi.e[i] = static_cast<i64>(rng() % G.orders()[i]);
    if (chi.is_principal()) continue;
    CHECK(n_chi(G, chi) == nchi_brute(G, chi));
  }
}
