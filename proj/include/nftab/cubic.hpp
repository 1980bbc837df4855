#pragma once

// Cubic fields by discriminant through integral binary cubic forms:
// GL2(Z)-reduction with a deterministic canonical representative, local
// maximality, splitting types mod p, and the complete enumeration of fields
// with |disc| <= X.  The coefficient boxes scanned by the enumeration are
// derived in docs/cubic-enumeration.md.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nftab/arith.hpp"

namespace nftab {

struct BinaryCubicForm {
  i64 a = 0, b = 0, c = 0, d = 0;  // a x^3 + b x^2 y + c x y^2 + d y^3
  friend auto operator<=>(const BinaryCubicForm&, const BinaryCubicForm&) = default;
};

inline i64 content(const BinaryCubicForm& f) {
  return std::gcd(std::gcd(std::abs(f.a), std::abs(f.b)), std::gcd(std::abs(f.c), std::abs(f.d)));
}

namespace cubic_detail {

inline void check_coeff_range(const BinaryCubicForm& f, i64 cap, const char* who) {
  if (std::abs(f.a) > cap || std::abs(f.b) > cap || std::abs(f.c) > cap || std::abs(f.d) > cap)
    throw std::overflow_error(std::string(who) + ": coefficients out of supported range");
}

inline i64 narrow(i128 x, const char* who) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error(std::string(who) + ": overflow");
  return static_cast<i64>(x);
}

}  // namespace cubic_detail

// 18abcd + b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2
inline i64 disc_form(const BinaryCubicForm& f) {
  cubic_detail::check_coeff_range(f, i64(1) << 30, "disc_form");
  i128 a = f.a, b = f.b, c = f.c, d = f.d;
  i128 D = 18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d -
           27 * a * a * d * d;
  return cubic_detail::narrow(D, "disc_form");
}

struct Mat2 {
  i64 m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  i64 det() const { return m00 * m11 - m01 * m10; }
};

// f composed with (x, y) -> (m00 x + m01 y, m10 x + m11 y)
inline BinaryCubicForm act(const BinaryCubicForm& f, const Mat2& M) {
  if (std::abs(M.det()) != 1) throw std::invalid_argument("act: matrix must be unimodular");
  i128 a = f.a, b = f.b, c = f.c, d = f.d;
  i128 p = M.m00, q = M.m01, r = M.m10, s = M.m11;
  i128 a2 = a * p * p * p + b * p * p * r + c * p * r * r + d * r * r * r;
  i128 b2 = 3 * a * p * p * q + b * (p * p * s + 2 * p * q * r) + c * (2 * p * r * s + q * r * r) +
            3 * d * r * r * s;
  i128 c2 = 3 * a * p * q * q + b * (2 * p * q * s + q * q * r) + c * (p * s * s + 2 * q * r * s) +
            3 * d * r * s * s;
  i128 d2 = a * q * q * q + b * q * q * s + c * q * s * s + d * s * s * s;
  using cubic_detail::narrow;
  return {narrow(a2, "act"), narrow(b2, "act"), narrow(c2, "act"), narrow(d2, "act")};
}

inline BinaryCubicForm negate(const BinaryCubicForm& f) { return {-f.a, -f.b, -f.c, -f.d}; }

// Reducible over Q iff the form has a linear factor: a = 0 (factor y), or the
// dehomogenization has a rational root p/q with p | d, q | a.
inline bool is_irreducible(const BinaryCubicForm& f) {
  if (f.a == 0 || f.d == 0) return false;
  auto divisors_of = [](i64 n) {
    n = std::abs(n);
    std::vector<i64> ds;
    for (i64 i = 1; i * i <= n; ++i) {
      if (n % i == 0) {
        ds.push_back(i);
        ds.push_back(n / i);
      }
    }
    return ds;
  };
  for (i64 p : divisors_of(f.d)) {
    for (i64 q : divisors_of(f.a)) {
      if (std::gcd(p, q) != 1) continue;
      for (i64 sgn : {1, -1}) {
        // q^3 * f(sgn * p / q)
        i128 num = i128(sgn) * f.a * p * p * p + i128(f.b) * p * p * q +
                   i128(sgn) * f.c * p * q * q + i128(f.d) * q * q * q;
        if (num == 0) return false;
      }
    }
  }
  return true;
}

namespace cubic_detail {

struct Hessian {
  i64 P, Q, R;  // P x^2 + Q xy + R y^2, disc = Q^2 - 4PR = -3 disc(f)
};

inline Hessian hessian(const BinaryCubicForm& f) {
  return {f.b * f.b - 3 * f.a * f.c, f.b * f.c - 9 * f.a * f.d, f.c * f.c - 3 * f.b * f.d};
}

// sign of (a n^3 + b n^2 m + c n m^2 + d m^3), i.e. of f(n/m) for m > 0
inline int sign_cubic_at(const BinaryCubicForm& f, i128 n, i128 m) {
  i128 v = i128(f.a) * n * n * n + i128(f.b) * n * n * m + i128(f.c) * n * m * m +
           i128(f.d) * m * m * m;
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// Resultant of f (deg 3) and g = A t^2 + B t + C (deg 2): 5x5 Sylvester
// determinant by fraction-free elimination.  sign equals the sign of g at the
// real root of f when f is irreducible with negative discriminant.
inline i128 resultant_cubic_quadratic(const BinaryCubicForm& f, i64 A, i64 B, i64 C) {
  i128 M[5][5] = {{f.a, f.b, f.c, f.d, 0},
                  {0, f.a, f.b, f.c, f.d},
                  {A, B, C, 0, 0},
                  {0, A, B, C, 0},
                  {0, 0, A, B, C}};
  i128 denom = 1;
  int sign = 1;
  for (int k = 0; k < 4; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < 5; ++i) {
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int j = 0; j < 5; ++j) std::swap(M[k][j], M[piv][j]);
      sign = -sign;
    }
    for (int i = k + 1; i < 5; ++i) {
      for (int j = k + 1; j < 5; ++j) {
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / denom;
      }
      M[i][k] = 0;
    }
    denom = M[k][k];
  }
  return sign * M[4][4];
}

// Approximation of the single real root (a > 0, disc < 0) by bisection.
inline double real_root(const BinaryCubicForm& f) {
  auto eval = [&](double t) {
    return ((static_cast<double>(f.a) * t + f.b) * t + f.c) * t + f.d;
  };
  double bound = 1.0;
  for (i64 co : {f.b, f.c, f.d}) {
    bound = std::max(bound, std::fabs(static_cast<double>(co) / f.a));
  }
  double lo = -1.0 - bound, hi = 1.0 + bound;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::fabs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    if (eval(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// theta >= n/m  (m > 0)  <=>  f(n/m) <= 0, for a > 0 with a single real root
inline bool root_at_least(const BinaryCubicForm& f, i128 n, i128 m) {
  return sign_cubic_at(f, n, m) <= 0;
}
inline bool root_at_most(const BinaryCubicForm& f, i128 n, i128 m) {
  return sign_cubic_at(f, n, m) >= 0;
}

}  // namespace cubic_detail

// Reduced predicate, totally real case: the Hessian is Gauss-reduced.
inline bool is_reduced_pos(const BinaryCubicForm& f) {
  auto H = cubic_detail::hessian(f);
  return H.P >= 1 && std::abs(H.Q) <= H.P && H.P <= H.R;
}

// Reduced predicate, complex case: a > 0 and the positive-definite quadratic
// factor (A, B, C) = (a, a*theta + b, a*theta^2 + b*theta + c) satisfies
// |B| <= A <= C, decided exactly.
inline bool is_reduced_neg(const BinaryCubicForm& f) {
  if (f.a <= 0) return false;
  using namespace cubic_detail;
  // |a theta + b| <= a  <=>  theta in [(-b-a)/a, (-b+a)/a]
  if (!root_at_least(f, -f.b - f.a, f.a)) return false;
  if (!root_at_most(f, -f.b + f.a, f.a)) return false;
  // a <= C  <=>  v(theta) >= 0 for v = a t^2 + b t + (c - a)
  return resultant_cubic_quadratic(f, f.a, f.b, f.c - f.a) >= 0;
}

inline bool is_reduced(const BinaryCubicForm& f) {
  i64 D = disc_form(f);
  return D > 0 ? is_reduced_pos(f) : is_reduced_neg(f);
}

namespace cubic_detail {

inline i64 floor_div(i64 n, i64 d) {
  i64 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

inline BinaryCubicForm translate(const BinaryCubicForm& f, i64 k) {
  // f(x + k y, y): substitution t -> t + k on the dehomogenization
  i128 a = f.a, b = f.b, c = f.c, d = f.d, K = k;
  i128 b2 = b + 3 * a * K;
  i128 c2 = c + 2 * b * K + 3 * a * K * K;
  i128 d2 = d + c * K + b * K * K + a * K * K * K;
  return {f.a, narrow(b2, "translate"), narrow(c2, "translate"), narrow(d2, "translate")};
}

inline BinaryCubicForm hessian_reduce(BinaryCubicForm f) {
  for (int iter = 0; iter < 4000; ++iter) {
    Hessian H = hessian(f);
    if (H.P < 1) throw internal_error("hessian_reduce: non-positive Hessian");
    i64 k = floor_div(H.P - H.Q, 2 * H.P);
    if (k != 0) {
      f = translate(f, k);
      H = hessian(f);
    }
    if (H.P <= H.R) return f;
    f = act(f, Mat2{0, -1, 1, 0});  // (P,Q,R) -> (R,-Q,P)
  }
  throw internal_error("hessian_reduce: did not terminate");
}

inline BinaryCubicForm mathews_reduce(BinaryCubicForm f) {
  if (f.a < 0) f = negate(f);
  for (int iter = 0; iter < 4000; ++iter) {
    // translate so that |a theta + b| <= a, using a double estimate for k
    // verified (and fixed up) by exact sign tests
    double theta = real_root(f);
    i64 k = std::llround(-(static_cast<double>(f.a) * theta + f.b) / (2.0 * f.a));
    BinaryCubicForm g = translate(f, k);
    int guard = 0;
    while (!root_at_most(g, -g.b + g.a, g.a)) {  // theta(g) > upper end: raise window
      g = translate(g, -1);
      if (++guard > 64) throw internal_error("mathews_reduce: translation fixup diverged");
    }
    while (!root_at_least(g, -g.b - g.a, g.a)) {
      g = translate(g, 1);
      if (++guard > 64) throw internal_error("mathews_reduce: translation fixup diverged");
    }
    f = g;
    if (resultant_cubic_quadratic(f, f.a, f.b, f.c - f.a) >= 0) return f;  // A <= C
    f = act(f, Mat2{0, -1, 1, 0});
    if (f.a < 0) f = negate(f);
  }
  throw internal_error("mathews_reduce: did not terminate");
}

// GL2(Z) matrices with entries in {-1, 0, 1} and det +-1; two reduced forms
// in one class are connected by compositions of these.
inline const std::vector<Mat2>& unit_matrices() {
  static const std::vector<Mat2> ms = [] {
    std::vector<Mat2> out;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c)
          for (int d = -1; d <= 1; ++d) {
            if (std::abs(a * d - b * c) == 1) out.push_back(Mat2{a, b, c, d});
          }
    return out;
  }();
  return ms;
}

}  // namespace cubic_detail

// Canonical representative of the GL2(Z)-class of f: reduce via the quadratic
// covariant, then take the lexicographic minimum over the closure of the
// reduced set under coefficient-bounded unimodular moves.
inline BinaryCubicForm reduce_canonical(const BinaryCubicForm& f) {
  cubic_detail::check_coeff_range(f, 10000000, "reduce_canonical");
  if (content(f) != 1) throw std::invalid_argument("reduce_canonical: content != 1");
  if (!is_irreducible(f)) throw std::invalid_argument("reduce_canonical: reducible form");
  i64 D = disc_form(f);
  BinaryCubicForm r = (D > 0) ? cubic_detail::hessian_reduce(f) : cubic_detail::mathews_reduce(f);

  auto reduced_here = [D](const BinaryCubicForm& g) {
    return D > 0 ? is_reduced_pos(g) : is_reduced_neg(g);
  };
  std::set<BinaryCubicForm> seen{r};
  std::vector<BinaryCubicForm> frontier{r};
  while (!frontier.empty()) {
    std::vector<BinaryCubicForm> next;
    for (const auto& g : frontier) {
      for (const auto& M : cubic_detail::unit_matrices()) {
        BinaryCubicForm h = act(g, M);
        if (!reduced_here(h)) continue;
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
    if (seen.size() > 4096) throw internal_error("reduce_canonical: runaway closure");
  }
  return *seen.begin();
}

enum class SplittingType : uint8_t {
  SplitCompletely = 0,   // (1,1,1)
  PartiallySplit = 1,    // (1,2)
  Inert = 2,             // (3)
  PartiallyRamified = 3, // (1,1^2)
  TotallyRamified = 4,   // (1^3)
};

inline const char* splitting_type_name(SplittingType t) {
  switch (t) {
    case SplittingType::SplitCompletely: return "split_completely";
    case SplittingType::PartiallySplit: return "partially_split";
    case SplittingType::Inert: return "inert";
    case SplittingType::PartiallyRamified: return "partially_ramified";
    case SplittingType::TotallyRamified: return "totally_ramified";
  }
  return "?";
}

namespace cubic_detail {

// multiplicity of the root (t : 1) of f mod p by synthetic division
inline int finite_root_multiplicity(const BinaryCubicForm& f, i64 p, i64 t) {
  i64 co[4] = {((f.a % p) + p) % p, ((f.b % p) + p) % p, ((f.c % p) + p) % p, ((f.d % p) + p) % p};
  int deg = 3;
  int mult = 0;
  while (deg >= 1) {
    // divide co (degree deg) by (X - t); remainder is the evaluation
    i64 rem = co[0];
    i64 out[4] = {0, 0, 0, 0};
    for (int i = 1; i <= deg; ++i) {
      out[i - 1] = rem;
      rem = (mulmod(rem, t, p) + co[i]) % p;
    }
    if (rem != 0) break;
    ++mult;
    for (int i = 0; i < deg; ++i) co[i] = out[i];
    --deg;
  }
  return mult;
}

// multiplicity of (1 : 0), i.e. the power of y dividing f mod p
inline int infinity_root_multiplicity(const BinaryCubicForm& f, i64 p) {
  if (f.a % p != 0) return 0;
  if (f.b % p != 0) return 1;
  if (f.c % p != 0) return 2;
  return 3;
}

}  // namespace cubic_detail

namespace cubic_detail {

// Non-maximality witness at p (precondition checks live in the public op):
// some multiple root of f mod p, moved to (1:0), leaves p^2 | a' and p | b'.
inline bool maximal_at_unchecked(const BinaryCubicForm& f, i64 p, i64 D) {
  if ((D % p) != 0 || ((D / p) % p) != 0) return true;
  auto fails_at = [&](const BinaryCubicForm& moved) {
    i64 p2 = p * p;
    return moved.a % p2 == 0 && moved.b % p == 0;
  };
  if (infinity_root_multiplicity(f, p) >= 2) {
    if (fails_at(f)) return false;
  }
  for (i64 t = 0; t < p; ++t) {
    if (finite_root_multiplicity(f, p, t) >= 2) {
      if (fails_at(act(f, Mat2{t, -1, 1, 0}))) return false;
      break;  // a cubic has at most one multiple root in P^1
    }
  }
  return true;
}

inline SplittingType splitting_pattern(const BinaryCubicForm& f, i64 p) {
  int mults[3];
  int nroots = 0;
  int mi = infinity_root_multiplicity(f, p);
  if (mi > 0) mults[nroots++] = mi;
  for (i64 t = 0; t < p; ++t) {
    int m = finite_root_multiplicity(f, p, t);
    if (m > 0) mults[nroots++] = m;
    if (nroots == 3) break;
  }
  int total = 0;
  for (int i = 0; i < nroots; ++i) total += mults[i];
  if (total == 0) return SplittingType::Inert;
  if (total == 1) return SplittingType::PartiallySplit;
  if (total == 3) {
    if (nroots == 3) return SplittingType::SplitCompletely;
    if (nroots == 2) return SplittingType::PartiallyRamified;
    return SplittingType::TotallyRamified;
  }
  throw internal_error("splitting_pattern: impossible degree pattern");
}

}  // namespace cubic_detail

// Maximality of the cubic ring of f at p: automatic unless p^2 | disc; then f
// is non-maximal iff some multiple root (u:v) of f mod p, moved to (1:0) by a
// unimodular substitution giving (a', b', c', d'), has p^2 | a' and p | b'.
inline bool is_maximal_at(const BinaryCubicForm& f, i64 p) {
  if (content(f) != 1) throw std::invalid_argument("is_maximal_at: content != 1");
  if (!is_irreducible(f)) throw std::invalid_argument("is_maximal_at: reducible form");
  return cubic_detail::maximal_at_unchecked(f, p, disc_form(f));
}

// Degree pattern of f mod p (valid for forms maximal at p): the factorization
// type of the form over F_p matches the splitting of p in the field.
inline SplittingType splitting_type(const BinaryCubicForm& f, i64 p) {
  if (!is_maximal_at(f, p)) throw std::invalid_argument("splitting_type: form not maximal at p");
  return cubic_detail::splitting_pattern(f, p);
}

// Least prime whose splitting type satisfies pred; throws past the horizon.
template <class Pred>
inline i64 least_prime_where(const BinaryCubicForm& f, Pred&& pred, i64 horizon = 100000) {
  for (i64 p = 2; p <= horizon; p = next_prime_after(p)) {
    if (pred(cubic_detail::splitting_pattern(f, p))) return p;
  }
  throw internal_error("least_prime_where: search horizon exceeded");
}

inline i64 n_K_of(const BinaryCubicForm& f) {
  return least_prime_where(f, [](SplittingType t) { return t != SplittingType::SplitCompletely; });
}

struct CubicFieldRec {
  i64 disc = 0;
  BinaryCubicForm form;  // canonical reduced representative
  i64 n_K = 0;
  bool galois = false;  // disc a perfect square
  std::vector<std::pair<i64, SplittingType>> splitting;  // cached, p <= horizon
};

enum class SignRange { Positive, Negative, Both };

namespace cubic_detail {

inline bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

inline i64 isqrt_i64(i64 n) {
  if (n < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Totally real box scan: reduced forms have
//   1 <= a <= (2/3)^{3/2} X^{1/4},
//   P = b^2 - 3ac in [b^2 - 3a|b| + 9a^2, sqrt(X)] with P = b^2 (mod 3a),
//   |b| <= (3a + sqrt(4P - 27 a^2)) / 2,
//   Q = bc - 9ad in [-P, P] with Q = bc (mod 9a), and R = c^2 - 3bd >= P.
// See docs/cubic-enumeration.md for the derivation.
template <class Emit>
inline void scan_positive(i64 X, i64 a, Emit&& emit) {
  i64 Pmax = isqrt_i64(X);
  i64 under = 4 * Pmax - 27 * a * a;
  if (under < 0) return;
  i64 bmax = (3 * a + isqrt_i64(under)) / 2 + 1;
  for (i64 b = -bmax; b <= bmax; ++b) {
    i64 pmin = b * b - 3 * a * std::abs(b) + 9 * a * a;
    if (pmin < 1) pmin = 1;
    i64 rem = ((b * b - pmin) % (3 * a) + 3 * a) % (3 * a);  // P = b^2 (mod 3a)
    i64 P = pmin + rem;
    for (; P <= Pmax; P += 3 * a) {
      i64 c = (b * b - P) / (3 * a);
      i64 bc = b * c;
      i64 Q = bc - 9 * a * (-floor_div(P - bc, 9 * a));  // largest Q = bc (mod 9a), Q <= P
      for (; Q >= -P; Q -= 9 * a) {
        i64 d = (bc - Q) / (9 * a);
        i64 R = c * c - 3 * b * d;
        if (R < P) continue;
        i128 disc = (i128(4) * P * R - i128(Q) * Q) / 3;
        if (disc <= 0 || disc > X) continue;
        emit(BinaryCubicForm{a, b, c, d});
      }
    }
  }
}

// Complex box scan, from the reduced conditions |a theta + b| <= a <= C and
// |disc| <= X (derivation in docs/cubic-enumeration.md):
//   1 <= a <= (16 X / 27)^{1/4},
//   |theta| <= 1/2 + sqrt(sqrt(X/3)/a^2 - 3/4),
//   b in a * (u - theta) with |u| <= 1, c = a (v - u theta) with 1 <= v <= vmax,
//   d ranges over the exact interval carved by the two theta-window sign tests.
template <class Emit>
inline void scan_negative(i64 X, i64 a, Emit&& emit) {
  double Xd = static_cast<double>(X);
  double inner = std::sqrt(Xd / 3.0) / (static_cast<double>(a) * a) - 0.75;
  if (inner < 0) return;
  double theta_max = 0.5 + std::sqrt(inner);
  double vmax = std::cbrt(16.0 * Xd / 27.0) / std::pow(static_cast<double>(a), 4.0 / 3.0);
  // dyadic upper bound for theta_max, for exact window intersection
  i64 tm_num = static_cast<i64>(std::ceil(theta_max * 1024.0 * (1.0 + 1e-9))) + 1;
  const i64 tm_den = 1024;

  i64 bmax = static_cast<i64>(std::ceil(a * (1.0 + theta_max))) + 1;
  i64 cmin = static_cast<i64>(std::floor(a * (1.0 - theta_max))) - 1;
  i64 cmax = static_cast<i64>(std::ceil(a * (vmax + theta_max))) + 1;

  for (i64 b = -bmax; b <= bmax; ++b) {
    // theta window [(-b-a)/a, (-b+a)/a] intersected with [-tm, tm]
    i128 lo_n = -b - a, lo_d = a;
    i128 hi_n = -b + a, hi_d = a;
    if (lo_n * tm_den < -tm_num * lo_d) {
      lo_n = -tm_num;
      lo_d = tm_den;
    }
    if (hi_n * tm_den > tm_num * hi_d) {
      hi_n = tm_num;
      hi_d = tm_den;
    }
    if (lo_n * hi_d > hi_n * lo_d) continue;
    for (i64 c = cmin; c <= cmax; ++c) {
      // d >= -f0(hi)/hi_d^3 and d <= -f0(lo)/lo_d^3 where f0(t) = a t^3 + b t^2 + c t
      i128 num_hi = i128(a) * hi_n * hi_n * hi_n + i128(b) * hi_n * hi_n * hi_d +
                    i128(c) * hi_n * hi_d * hi_d;
      i128 den_hi = hi_d * hi_d * hi_d;
      i128 num_lo = i128(a) * lo_n * lo_n * lo_n + i128(b) * lo_n * lo_n * lo_d +
                    i128(c) * lo_n * lo_d * lo_d;
      i128 den_lo = lo_d * lo_d * lo_d;
      auto ceil_div = [](i128 n, i128 d) { return n >= 0 ? (n + d - 1) / d : -((-n) / d); };
      auto floor_div128 = [](i128 n, i128 d) { return n >= 0 ? n / d : -((-n + d - 1) / d); };
      i64 dlo = static_cast<i64>(ceil_div(-num_hi, den_hi));
      i64 dhi = static_cast<i64>(floor_div128(-num_lo, den_lo));
      if (dlo > dhi) continue;
      // disc as a quadratic in d
      i64 q2 = -27 * a * a;
      i64 q1 = 18 * a * b * c - 4 * b * b * b;
      i128 q0 = i128(b) * b * c * c - i128(4) * a * c * c * c;
      for (i64 d = dlo; d <= dhi; ++d) {
        i128 disc = i128(q2) * d * d + i128(q1) * d + q0;
        if (disc >= 0 || disc < -i128(X)) continue;
        emit(BinaryCubicForm{a, b, c, d});
      }
    }
  }
}

struct ClassRecord {
  i64 disc;
  BinaryCubicForm form;
  bool operator<(const ClassRecord& o) const {
    i64 ad = std::abs(disc), aod = std::abs(o.disc);
    if (ad != aod) return ad < aod;
    if (disc != o.disc) return disc < o.disc;
    return form < o.form;
  }
  bool operator==(const ClassRecord& o) const = default;
};

}  // namespace cubic_detail

// One canonical form per GL2(Z)-class of irreducible primitive forms with
// 0 < +-disc <= X (maximal classes only when maximal_only).  Deterministic:
// output sorted by (|disc|, disc, a, b, c, d).
inline std::vector<std::pair<i64, BinaryCubicForm>> enumerate_classes(
    i64 X, SignRange sign, const PrimeSieve& sieve, bool maximal_only = true, int threads = 1) {
  if (X < 1) throw std::invalid_argument("enumerate_classes: X >= 1 required");
  if (X > sieve.limit()) throw std::invalid_argument("enumerate_classes: X beyond sieve limit");
  using cubic_detail::ClassRecord;

  struct Task {
    bool positive;
    i64 a;
  };
  std::vector<Task> tasks;
  double x4 = std::pow(static_cast<double>(X), 0.25);
  if (sign != SignRange::Negative) {
    i64 amax = static_cast<i64>(std::pow(2.0 / 3.0, 1.5) * x4) + 1;
    for (i64 a = 1; a <= amax; ++a) tasks.push_back({true, a});
  }
  if (sign != SignRange::Positive) {
    i64 amax = static_cast<i64>(std::pow(16.0 / 27.0, 0.25) * x4) + 1;
    for (i64 a = 1; a <= amax; ++a) tasks.push_back({false, a});
  }

  std::vector<std::vector<ClassRecord>> results(tasks.size());
  std::atomic<size_t> next_task{0};
  auto worker = [&] {
    for (;;) {
      size_t idx = next_task.fetch_add(1);
      if (idx >= tasks.size()) break;
      auto& out = results[idx];
      auto process = [&](const BinaryCubicForm& f) {
        if (content(f) != 1) return;
        if (!is_irreducible(f)) return;
        i64 D = disc_form(f);
        if (maximal_only) {
          FactoredInteger fd = factorize(std::abs(D), sieve);
          for (auto& [p, e] : fd.factors) {
            if (e >= 2 && !is_maximal_at(f, p)) return;
          }
        }
        out.push_back({D, reduce_canonical(f)});
      };
      if (tasks[idx].positive) {
        cubic_detail::scan_positive(X, tasks[idx].a, process);
      } else {
        cubic_detail::scan_negative(X, tasks[idx].a, process);
      }
    }
  };
  int nthreads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<ClassRecord> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::pair<i64, BinaryCubicForm>> out;
  out.reserve(all.size());
  for (auto& r : all) out.emplace_back(r.disc, r.form);
  return out;
}

// Full field records with splitting caches for p <= cache_horizon.
inline std::vector<CubicFieldRec> enumerate_cubic_fields(i64 X, SignRange sign,
                                                         const PrimeSieve& sieve, int threads = 1,
                                                         i64 cache_horizon = 100) {
  auto classes = enumerate_classes(X, sign, sieve, true, threads);
  std::vector<CubicFieldRec> recs(classes.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= classes.size()) break;
      CubicFieldRec& r = recs[i];
      r.disc = classes[i].first;
      r.form = classes[i].second;
      r.galois = cubic_detail::is_perfect_square(r.disc);
      for (i64 p = 2; p <= cache_horizon; p = next_prime_after(p)) {
        r.splitting.emplace_back(p, cubic_detail::splitting_pattern(r.form, p));
      }
      r.n_K = 0;
      for (auto& [p, t] : r.splitting) {
        if (t != SplittingType::SplitCompletely) {
          r.n_K = p;
          break;
        }
      }
      if (r.n_K == 0) r.n_K = n_K_of(r.form);  // past the cache: rare, still exact
    }
  };
  int nthreads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return recs;
}

// --- field cache file: header disc,a,b,c,d,n_K,galois ---

inline void write_field_cache(std::ostream& os, const std::vector<CubicFieldRec>& recs) {
  os << "disc,a,b,c,d,n_K,galois\n";
  for (const auto& r : recs) {
    os << r.disc << ',' << r.form.a << ',' << r.form.b << ',' << r.form.c << ',' << r.form.d << ','
       << r.n_K << ',' << (r.galois ? 1 : 0) << '\n';
  }
}

inline std::vector<CubicFieldRec> read_field_cache(std::istream& is, i64 cache_horizon = 100) {
  std::string line;
  if (!std::getline(is, line) || line != "disc,a,b,c,d,n_K,galois")
    throw std::invalid_argument("field cache: bad header");
  std::vector<CubicFieldRec> recs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    CubicFieldRec r;
    long long v[7];
    if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%lld,%lld,%lld,%lld", &v[0], &v[1], &v[2], &v[3],
                    &v[4], &v[5], &v[6]) != 7)
      throw std::invalid_argument("field cache: bad row: " + line);
    r.disc = v[0];
    r.form = {v[1], v[2], v[3], v[4]};
    r.n_K = v[5];
    r.galois = v[6] != 0;
    if (disc_form(r.form) != r.disc) throw std::invalid_argument("field cache: disc mismatch");
    for (i64 p = 2; p <= cache_horizon; p = next_prime_after(p)) {
      r.splitting.emplace_back(p, cubic_detail::splitting_pattern(r.form, p));
    }
    recs.push_back(std::move(r));
  }
  return recs;
}

}  // namespace nftab
