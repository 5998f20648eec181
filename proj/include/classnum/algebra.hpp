#pragma once

// Exact arithmetic foundation: big integers and rationals (GMP), binomials,
// the Moebius function and truncated integer power series.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "classnum/errors.hpp"

namespace classnum {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// Generalized binomial C(n, k) for any integer n (C(-1, 0) = 1, C(n, k) = 0 for 0 <= n < k).
inline Integer binomial(const Integer& n, std::uint64_t k) {
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

inline Integer pow(const Integer& base, std::uint64_t exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline Integer pow(std::uint64_t base, std::uint64_t exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

/// Exact rational power; negative exponents invert (base must then be nonzero).
inline Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  Rational out(pow(Integer(base.get_num()), static_cast<std::uint64_t>(exponent)),
               pow(Integer(base.get_den()), static_cast<std::uint64_t>(exponent)));
  out.canonicalize();
  return out;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Integer square root when n is a perfect square.
inline std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline int moebius(std::uint64_t n) {
  if (n == 0) throw DomainError("moebius is defined for n >= 1");
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Power series c_0 + c_1 T + ... + c_nmax T^nmax with big-integer coefficients.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t nmax) : coeffs_(nmax + 1) {}
  explicit TruncatedSeries(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("truncated series needs at least one coefficient");
  }

  static TruncatedSeries one(std::size_t nmax) {
    TruncatedSeries s(nmax);
    s.coeffs_[0] = 1;
    return s;
  }

  std::size_t nmax() const noexcept { return coeffs_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return coeffs_.at(i); }
  Integer& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.nmax(), b.nmax());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (b.coeffs_[j] == 0) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Integer> coeffs_;
};

/// Coefficients of (1 - T^d)^(-multiplicity) up to T^nmax.
inline TruncatedSeries series_pow_negbinom(std::uint64_t d, const Integer& multiplicity,
                                           std::size_t nmax) {
  if (d == 0) throw DomainError("series_pow_negbinom: degree must be >= 1");
  if (multiplicity < 0) throw DomainError("series_pow_negbinom: multiplicity must be >= 0");
  TruncatedSeries s(nmax);
  for (std::uint64_t m = 0; d * m <= nmax; ++m) s[d * m] = binomial(Integer(multiplicity + m - 1), m);
  return s;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& n) { return n.get_str(); }

/// Decimal rendering with `digits` significant digits.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  mpf_class f(0, 256);
  f = r;
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
  return buf;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace classnum
