#pragma once

// Outward-rounded interval arithmetic on MPFR endpoints. Endpoints are dyadic
// rationals, so every enclosure converts exactly to a pair of Rationals.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "classnum/algebra.hpp"
#include "classnum/errors.hpp"

namespace classnum {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Interval(const Interval& other) : Interval(other.prec_) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }

  Interval(Interval&& other) noexcept : Interval(other.prec_) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }

  Interval& operator=(Interval other) noexcept {
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval exact(const Rational& r, mpfr_prec_t prec = kDefaultPrecision) {
    Interval out(prec);
    mpfr_set_q(out.lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, r.get_mpq_t(), MPFR_RNDU);
    return out;
  }

  static Interval exact(const Integer& n, mpfr_prec_t prec = kDefaultPrecision) {
    Interval out(prec);
    mpfr_set_z(out.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi_, n.get_mpz_t(), MPFR_RNDU);
    return out;
  }

  static Interval exact(long n, mpfr_prec_t prec = kDefaultPrecision) { return exact(Integer(n), prec); }

  /// Enclosure of a binary64 value taken as exact.
  static Interval from_double(double x, mpfr_prec_t prec = kDefaultPrecision) {
    Interval out(prec);
    mpfr_set_d(out.lo_, x, MPFR_RNDD);
    mpfr_set_d(out.hi_, x, MPFR_RNDU);
    return out;
  }

  static Interval hull(const Rational& a, const Rational& b, mpfr_prec_t prec = kDefaultPrecision) {
    Interval out(prec);
    const Rational& lo = a < b ? a : b;
    const Rational& hi = a < b ? b : a;
    mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return out;
  }

  static Interval pi(mpfr_prec_t prec = kDefaultPrecision) {
    Interval out(prec);
    mpfr_const_pi(out.lo_, MPFR_RNDD);
    mpfr_const_pi(out.hi_, MPFR_RNDU);
    return out;
  }

  mpfr_prec_t precision() const noexcept { return prec_; }

  Rational lower() const { return to_rational(lo_); }
  Rational upper() const { return to_rational(hi_); }
  double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }
  double width() const {
    mpfr_t w;
    mpfr_init2(w, precision());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
  }

  bool contains(const Rational& r) const {
    return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
  }

  /// Every point of a is strictly below every point of b.
  friend bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_) != 0; }
  friend bool certainly_less(const Interval& a, const Rational& b) { return mpfr_cmp_q(a.hi_, b.get_mpq_t()) < 0; }
  friend bool certainly_greater(const Interval& a, const Rational& b) { return mpfr_cmp_q(a.lo_, b.get_mpq_t()) > 0; }
  friend bool certainly_greater(const Interval& a, const Interval& b) { return certainly_less(b, a); }
  friend bool overlaps(const Interval& a, const Interval& b) {
    return mpfr_lessequal_p(a.lo_, b.hi_) != 0 && mpfr_lessequal_p(b.lo_, a.hi_) != 0;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval out(std::max(a.prec_, b.prec_));
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval out(std::max(a.prec_, b.prec_));
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
  }

  Interval operator-() const {
    Interval out(prec_);
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    return out;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    Interval out(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto* x : xs) {
      for (auto* y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return out;
  }

  Interval reciprocal() const {
    if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0) throw DomainError("interval reciprocal of a range containing zero");
    Interval out(prec_);
    mpfr_ui_div(out.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(out.hi_, 1, lo_, MPFR_RNDU);
    return out;
  }

  friend Interval operator/(const Interval& a, const Interval& b) { return a * b.reciprocal(); }

  Interval sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw DomainError("interval sqrt of a negative range");
    Interval out(prec_);
    if (mpfr_sgn(lo_) < 0)
      mpfr_set_zero(out.lo_, 1);
    else
      mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
    return out;
  }

  Interval log() const {
    if (mpfr_sgn(lo_) <= 0) throw DomainError("interval log of a range touching zero");
    Interval out(prec_);
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
    return out;
  }

  Interval exp() const {
    Interval out(prec_);
    mpfr_exp(out.lo_, lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, hi_, MPFR_RNDU);
    return out;
  }

  /// base^exponent for a strictly positive base.
  friend Interval pow(const Interval& base, const Interval& exponent) { return (exponent * base.log()).exp(); }

  friend Interval pow(const Interval& base, std::uint64_t n) {
    Interval result = Interval::exact(1L, base.prec_);
    Interval b = base;
    while (n != 0) {
      if (n & 1U) result = result * b;
      n >>= 1U;
      if (n != 0) b = b * b;
    }
    return result;
  }

  std::string str(int digits = 12) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
    return buf;
  }

 private:
  static Rational to_rational(const mpfr_t x) {
    Rational out;
    mpfr_get_q(out.get_mpq_t(), x);
    return out;
  }

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

inline Interval sqrt_interval(const Integer& n, mpfr_prec_t prec = kDefaultPrecision) {
  return Interval::exact(n, prec).sqrt();
}

}  // namespace classnum
