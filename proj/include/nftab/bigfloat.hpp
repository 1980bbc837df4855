#pragma once

// RAII wrapper around mpfr_t plus a value-with-error-bound type.  All
// reference constants and asymptotic main terms in this library are carried
// as ErrorBounded: a high-precision value together with a proven absolute
// error bound, so comparisons against reference tolerances stay honest
// about roundoff and truncation.

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace nftab {

class internal_error : public std::runtime_error {
 public:
  explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr mpfr_prec_t kDefaultPrec = 192;

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static BigFloat from_int(long long n, mpfr_prec_t prec = kDefaultPrec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, static_cast<long>(n), MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double x, mpfr_prec_t prec = kDefaultPrec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_rational(const mpq_class& q, mpfr_prec_t prec = kDefaultPrec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec = kDefaultPrec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat zeta_ui(unsigned long n, mpfr_prec_t prec = kDefaultPrec) {
    BigFloat r(prec);
    mpfr_zeta_ui(r.v_, n, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat mul_int(long long n) const {
    BigFloat r(prec());
    mpfr_mul_si(r.v_, v_, static_cast<long>(n), MPFR_RNDN);
    return r;
  }
  BigFloat mul_rational(const mpq_class& q) const {
    BigFloat r(prec());
    mpfr_mul_q(r.v_, v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  BigFloat squared() const {
    BigFloat r(prec());
    mpfr_sqr(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }

  // Decimal rendering with the given number of significant digits.
  std::string to_string(int significant_digits = 20) const {
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%dRNg", significant_digits);
    char* s = nullptr;
    if (mpfr_asprintf(&s, fmt, v_) < 0) throw internal_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  // Fixed-point rendering with the given number of decimal places.
  std::string to_fixed_string(int decimals) const {
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%dRNf", decimals);
    char* s = nullptr;
    if (mpfr_asprintf(&s, fmt, v_) < 0) throw internal_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// Next double toward +infinity; used to keep bound arithmetic outward.
inline double round_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// A real number known to lie in [value - bound, value + bound].
struct ErrorBounded {
  BigFloat value;
  double bound = 0.0;

  ErrorBounded() = default;
  ErrorBounded(BigFloat v, double b) : value(std::move(v)), bound(b) {}

  static ErrorBounded exact_int(long long n, mpfr_prec_t prec = kDefaultPrec) {
    return ErrorBounded(BigFloat::from_int(n, prec), 0.0);
  }
  static ErrorBounded exact_rational(const mpq_class& q, mpfr_prec_t prec = kDefaultPrec) {
    ErrorBounded r(BigFloat::from_rational(q, prec), 0.0);
    r.bound = r.rounding_slack();
    return r;
  }

  double to_double() const { return value.to_double(); }

  // One-ulp-scale slack for the stored value; folded into bounds after each
  // rounded operation so the interval always contains the true result.
  double rounding_slack() const {
    double mag = std::fabs(value.to_double());
    double ulp = std::ldexp(std::max(mag, 1e-300), -static_cast<int>(value.prec()) + 2);
    return round_up(ulp + 1e-300);
  }

  friend ErrorBounded operator+(const ErrorBounded& a, const ErrorBounded& b) {
    ErrorBounded r(a.value + b.value, 0.0);
    r.bound = round_up(round_up(a.bound + b.bound) + r.rounding_slack());
    return r;
  }
  friend ErrorBounded operator-(const ErrorBounded& a, const ErrorBounded& b) {
    ErrorBounded r(a.value - b.value, 0.0);
    r.bound = round_up(round_up(a.bound + b.bound) + r.rounding_slack());
    return r;
  }
  friend ErrorBounded operator*(const ErrorBounded& a, const ErrorBounded& b) {
    ErrorBounded r(a.value * b.value, 0.0);
    double ma = std::fabs(a.value.to_double());
    double mb = std::fabs(b.value.to_double());
    double cross = round_up(round_up(ma * b.bound) + round_up(mb * a.bound));
    cross = round_up(cross + round_up(a.bound * b.bound));
    // the double magnitudes themselves are rounded; widen by a relative hair
    cross = round_up(cross * (1.0 + 1e-9) + 1e-300);
    r.bound = round_up(cross + r.rounding_slack());
    return r;
  }

  ErrorBounded scale_exact(const mpq_class& q) const {
    ErrorBounded r(value.mul_rational(q), 0.0);
    double mq = std::fabs(mpq_class(q).get_d());
    r.bound = round_up(round_up(bound * mq * (1.0 + 1e-9)) + r.rounding_slack());
    return r;
  }
};

}  // namespace nftab
