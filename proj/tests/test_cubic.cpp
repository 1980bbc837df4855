#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "nftab/cubic.hpp"

using namespace nftab;

namespace {

const PrimeSieve& sieve() {
  static PrimeSieve s(2000000);
  return s;
}

i128 eval_form(const BinaryCubicForm& f, i64 x, i64 y) {
  return i128(f.a) * x * x * x + i128(f.b) * x * x * y + i128(f.c) * x * y * y +
         i128(f.d) * y * y * y;
}

// random short word in the generators of GL2(Z); entries stay small
Mat2 random_unimodular(std::mt19937_64& rng) {
  auto mul = [](const Mat2& A, const Mat2& B) {
    return Mat2{A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
                A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
  };
  const Mat2 gens[] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 0, -1}};
  Mat2 M;
  int len = 1 + static_cast<int>(rng() % 7);
  for (int i = 0; i < len; ++i) M = mul(M, gens[rng() % 4]);
  return M;
}

BinaryCubicForm random_irreducible(std::mt19937_64& rng) {
  for (;;) {
    BinaryCubicForm f{static_cast<i64>(rng() % 9) - 4, static_cast<i64>(rng() % 9) - 4,
                      static_cast<i64>(rng() % 9) - 4, static_cast<i64>(rng() % 9) - 4};
    if (content(f) != 1) continue;
    if (!is_irreducible(f)) continue;
    return f;
  }
}

}  // namespace

TEST_CASE("discriminant formula") {
  CHECK(disc_form({1, 0, -1, -1}) == -23);
  CHECK(disc_form({1, 0, 1, 1}) == -31);
  CHECK(disc_form({1, 0, 0, 1}) == -27);
  CHECK(disc_form({1, 1, -2, -1}) == 49);
  CHECK(disc_form({1, 0, -3, -1}) == 81);
}

TEST_CASE("act: substitution against point evaluation") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 1000; ++iter) {
    BinaryCubicForm f{static_cast<i64>(rng() % 21) - 10, static_cast<i64>(rng() % 21) - 10,
                      static_cast<i64>(rng() % 21) - 10, static_cast<i64>(rng() % 21) - 10};
    Mat2 M = random_unimodular(rng);
    BinaryCubicForm g = act(f, M);
    for (i64 x = -3; x <= 3; ++x) {
      for (i64 y = -3; y <= 3; ++y) {
        CHECK(eval_form(g, x, y) == eval_form(f, M.m00 * x + M.m01 * y, M.m10 * x + M.m11 * y));
      }
    }
    CHECK(disc_form(g) == disc_form(f));
  }

  // worked examples
  BinaryCubicForm f{3, 1, 4, 1};
  CHECK(act(f, Mat2{1, 0, 0, 1}) == f);
  CHECK(act(f, Mat2{0, 1, 1, 0}) == BinaryCubicForm{1, 4, 1, 3});
  CHECK_THROWS_AS(act(f, Mat2{2, 0, 0, 1}), std::invalid_argument);
  BinaryCubicForm x3mx{1, 0, -1, -1};
  std::mt19937_64 rng2(99);
  for (int i = 0; i < 50; ++i) CHECK(disc_form(act(x3mx, random_unimodular(rng2))) == -23);
}

TEST_CASE("irreducibility") {
  CHECK_FALSE(is_irreducible({1, 0, 0, 1}));   // x + y divides x^3 + y^3
  CHECK(is_irreducible({1, 0, -1, -1}));
  CHECK_FALSE(is_irreducible({0, 1, 1, 1}));   // a = 0 forces the factor y
  CHECK_FALSE(is_irreducible({1, 0, -1, 0}));  // d = 0 forces the factor x
  CHECK_FALSE(is_irreducible({2, 1, -2, -1})); // root -1
  CHECK(is_irreducible({1, 1, -2, -1}));
  CHECK_FALSE(is_irreducible({2, 3, 3, 1}));   // root -1/2
}

TEST_CASE("reduction: idempotence and class function") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 1000; ++iter) {
    BinaryCubicForm f = random_irreducible(rng);
    BinaryCubicForm r = reduce_canonical(f);
    CHECK(disc_form(r) == disc_form(f));
    CHECK(reduce_canonical(r) == r);
    Mat2 M = random_unimodular(rng);
    CHECK(reduce_canonical(act(f, M)) == r);
  }
  CHECK_THROWS_AS(reduce_canonical({1, 0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(reduce_canonical({2, 0, -2, -2}), std::invalid_argument);
}

TEST_CASE("reduction separates classes exactly as orbit equivalence does") {
  // two forms of the same discriminant get the same canonical representative
  // iff a bounded-height BFS over GL2(Z) generator moves connects them
  auto orbit_meets = [](const BinaryCubicForm& f, const BinaryCubicForm& g) {
    const i64 cap = 60;
    std::set<BinaryCubicForm> seen{f};
    std::vector<BinaryCubicForm> frontier{f};
    const Mat2 gens[] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 0, -1}};
    while (!frontier.empty()) {
      std::vector<BinaryCubicForm> next;
      for (auto& h : frontier) {
        for (auto& M : gens) {
          BinaryCubicForm t = act(h, M);
          if (std::abs(t.a) > cap || std::abs(t.b) > cap || std::abs(t.c) > cap ||
              std::abs(t.d) > cap)
            continue;
          if (seen.insert(t).second) next.push_back(t);
        }
      }
      frontier = std::move(next);
    }
    return seen.count(g) > 0;
  };

  std::mt19937_64 rng(4242);
  int checked = 0;
  while (checked < 60) {
    BinaryCubicForm f = random_irreducible(rng);
    BinaryCubicForm g = random_irreducible(rng);
    if (disc_form(f) != disc_form(g)) continue;
    bool equal_canon = reduce_canonical(f) == reduce_canonical(g);
    bool equivalent = orbit_meets(f, g);
    CHECK(equal_canon == equivalent);
    ++checked;
  }
}

TEST_CASE("maximality basics") {
  BinaryCubicForm f{1, 0, -1, -1};  // disc -23 squarefree: maximal everywhere
  CHECK(is_maximal_at(f, 23));
  CHECK(is_maximal_at(f, 2));

  // x^3 - x^2 - 2x - 8: the classical index-2 ring; its form has disc
  // -2012 = 4 * (-503) and must be flagged non-maximal at 2
  BinaryCubicForm dedekind{1, -1, -2, -8};
  CHECK(disc_form(dedekind) == -2012);
  CHECK_FALSE(is_maximal_at(dedekind, 2));

  CHECK_THROWS_AS(is_maximal_at({1, 0, 0, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(is_maximal_at({2, 0, -2, -2}, 3), std::invalid_argument);
}

TEST_CASE("splitting types of the disc -23 field") {
  BinaryCubicForm f{1, 0, -1, -1};
  CHECK(splitting_type(f, 2) == SplittingType::Inert);
  CHECK(splitting_type(f, 5) == SplittingType::PartiallySplit);
  CHECK(splitting_type(f, 23) == SplittingType::PartiallyRamified);
  CHECK(splitting_type(f, 59) == SplittingType::SplitCompletely);
  CHECK(n_K_of(f) == 2);
}

TEST_CASE("splitting: ramified exactly at p | disc") {
  std::mt19937_64 rng(5150);
  int done = 0;
  while (done < 200) {
    BinaryCubicForm f = random_irreducible(rng);
    i64 D = disc_form(f);
    bool maximal = true;
    for (auto& [p, e] : factorize(std::abs(D), sieve()).factors) {
      if (e >= 2 && !is_maximal_at(f, p)) maximal = false;
    }
    if (!maximal) continue;
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
      SplittingType t = splitting_type(f, p);
      bool ramified =
          t == SplittingType::PartiallyRamified || t == SplittingType::TotallyRamified;
      CHECK(ramified == (D % p == 0));
    }
    ++done;
  }
}

TEST_CASE("galois field disc 49: cyclic behavior") {
  BinaryCubicForm f{1, 1, -2, -1};  // x^3 + x^2 - 2x - 1, disc 49
  CHECK(disc_form(f) == 49);
  CHECK(n_K_of(f) == 2);
  CHECK(splitting_type(f, 2) == SplittingType::Inert);
  CHECK(splitting_type(f, 7) == SplittingType::TotallyRamified);
  // unramified primes in a cyclic cubic are never partially split, and split
  // completely exactly when p = +-1 (mod 7)
  for (i64 p = 2; p <= 200; p = next_prime_after(p)) {
    if (p == 7) continue;
    CHECK(splitting_type(f, p) != SplittingType::PartiallySplit);
    bool split = splitting_type(f, p) == SplittingType::SplitCompletely;
    CHECK(split == (p % 7 == 1 || p % 7 == 6));
  }
}

TEST_CASE("splitting type contract on non-maximal input") {
  std::mt19937_64 rng(31337);
  bool found = false;
  for (int iter = 0; iter < 50000 && !found; ++iter) {
    BinaryCubicForm f = random_irreducible(rng);
    i64 D = disc_form(f);
    for (auto& [p, e] : factorize(std::abs(D), sieve()).factors) {
      if (e >= 2 && !is_maximal_at(f, p)) {
        CHECK_THROWS_AS(splitting_type(f, p), std::invalid_argument);
        found = true;
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("cache round trip") {
  auto recs = enumerate_cubic_fields(500, SignRange::Both, sieve(), 2);
  REQUIRE(!recs.empty());
  std::stringstream ss;
  write_field_cache(ss, recs);
  std::stringstream ss2(ss.str());
  auto back = read_field_cache(ss2);
  REQUIRE(back.size() == recs.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].disc == recs[i].disc);
    CHECK(back[i].form == recs[i].form);
    CHECK(back[i].n_K == recs[i].n_K);
    CHECK(back[i].galois == recs[i].galois);
    CHECK(back[i].splitting == recs[i].splitting);
  }
  std::stringstream bad("nonsense\n");
  CHECK_THROWS_AS(read_field_cache(bad), std::invalid_argument);
}
