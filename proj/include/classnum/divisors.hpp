#pragma once

// Effective divisor counts A_n, the sums Sigma_1, Sigma_2, S, the exact Q_r,
// and a literal enumeration oracle for A_n.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/curves.hpp"
#include "classnum/errors.hpp"
#include "classnum/zeta.hpp"

namespace classnum {

struct DivisorCounts {
  std::vector<Integer> A;  // A_0 .. A_nmax
};

struct SigmaValues {
  Integer sigma1;
  Integer sigma2;
  Integer S;
};

/// n = r m + s with 0 <= s < r.
inline std::pair<std::uint64_t, std::uint64_t> euclid_split(std::uint64_t n, std::uint64_t r) {
  if (r == 0) throw DomainError("euclid_split needs r >= 1");
  return {n / r, n % r};
}

/// Adds B_{g+1}..B_M using point counts regenerated from the zeta numerator.
inline PlaceSpectrum extend_spectrum(const PlaceSpectrum& spec, const ZetaNumerator& P, unsigned M) {
  if (M <= spec.size()) return spec;
  return mobius_invert_points(extend_point_counts(P, M));
}

/// Coefficients of prod_{d <= nmax} (1 - T^d)^(-B_d), truncated at T^nmax.
inline DivisorCounts divisor_counts(const PlaceSpectrum& spec, std::size_t nmax) {
  if (spec.size() < nmax) throw SpectrumTooShort("divisor_counts needs B_d for every d <= " + std::to_string(nmax));
  TruncatedSeries acc = TruncatedSeries::one(nmax);
  for (std::size_t d = 1; d <= nmax; ++d) {
    const Integer& B = spec.B[d - 1];
    if (B == 0) continue;
    acc = acc * series_pow_negbinom(d, B, nmax);
  }
  return DivisorCounts{acc.coeffs()};
}

inline constexpr std::uint64_t kDefaultOracleCeiling = 12;

/// A_n as the literal sum over (b_1, ..., b_n) with sum i b_i = n of prod C(B_i + b_i - 1, b_i).
inline Integer brute_force_A_n(const PlaceSpectrum& spec, std::uint64_t n,
                               std::uint64_t ceiling = kDefaultOracleCeiling,
                               const std::function<Integer(const Integer&, std::uint64_t)>& choose = {}) {
  if (n > ceiling) throw CeilingExceeded("oracle A_n limited to n <= " + std::to_string(ceiling));
  if (spec.size() < n) throw SpectrumTooShort("oracle needs B_d for every d <= " + std::to_string(n));
  auto C = [&](const Integer& top, std::uint64_t k) { return choose ? choose(top, k) : binomial(top, k); };
  // Number of multisets of size b drawn from B places of degree i.
  auto multisets = [&](const Integer& B, std::uint64_t b) -> Integer {
    if (B == 0) return b == 0 ? 1 : 0;
    return C(B + b - 1, b);
  };
  Integer total = 0;
  std::function<void(std::uint64_t, std::uint64_t, Integer)> walk = [&](std::uint64_t i, std::uint64_t left,
                                                                       Integer prod) {
    if (i == 0) {
      if (left == 0) total += prod;
      return;
    }
    for (std::uint64_t b = 0; b * i <= left; ++b) {
      const Integer f = multisets(spec.B[i - 1], b);
      if (f == 0) continue;
      walk(i - 1, left - b * i, prod * f);
    }
  };
  walk(n, n, Integer(1));
  return total;
}

inline SigmaValues sigma_values(const DivisorCounts& A, std::uint64_t q, unsigned g) {
  if (g < 2) throw DomainError("sigma values need g >= 2");
  if (A.A.size() < g) throw SpectrumTooShort("sigma values need A_0 .. A_{g-1}");
  SigmaValues out;
  for (unsigned n = 0; n + 1 <= g; ++n) out.sigma1 += A.A[n];
  for (unsigned n = 0; n + 2 <= g; ++n) out.sigma2 += pow(q, g - 1 - n) * A.A[n];
  out.S = out.sigma1 + out.sigma2;
  return out;
}

/// Q_r = sum_{m=0}^{m_r(g-2)-1} q^(-rm) C(B_r + m - 1, B_r - 1), evaluated by Horner as an integer over q^(r(M-1)).
inline Rational exact_Qr(const Integer& Br, std::uint64_t q, std::uint64_t r, std::uint64_t g) {
  if (Br < 1 || r < 1 || g < 2) throw DomainError("exact_Qr needs B_r >= 1, r >= 1, g >= 2");
  const std::uint64_t M = euclid_split(g - 2, r).first;
  if (M == 0) return 0;
  const Integer qr = pow(q, r);
  Integer acc = 0, c = 1;
  for (std::uint64_t m = 0; m < M; ++m) {
    acc = acc * qr + c;
    c = c * (Br + m) / (m + 1);
  }
  return make_rational(acc, pow(qr, M - 1));
}

/// Direct sum over i = 0..N-k of C(k+i, k) x^i.
inline Rational q_direct_sum(std::uint64_t N, std::uint64_t k, const Rational& x) {
  if (k > N) throw DomainError("q_direct_sum needs N >= k");
  Rational acc = 0;
  for (std::uint64_t i = N - k + 1; i-- > 0;) acc = acc * x + Rational(binomial(k + i, k));
  return acc;
}

/// (1-x)^(N-k) sum_{j=0}^{N-k} C(N+1, j) (x/(1-x))^j.
inline Rational q_closed_form(std::uint64_t N, std::uint64_t k, const Rational& x) {
  if (k > N) throw DomainError("q_closed_form needs N >= k");
  if (x <= 0 || x >= 1) throw DomainError("q_closed_form needs 0 < x < 1");
  const Rational y = x / (1 - x);
  Rational acc = 0;
  for (std::uint64_t j = N - k + 1; j-- > 0;) acc = acc * y + Rational(binomial(N + 1, j));
  return pow(Rational(1 - x), static_cast<std::int64_t>(N - k)) * acc;
}

/// B C(B+M, B) q^(-r(M+1)), the upper bound on the tail of (1 - q^-r)^-B past degree M.
inline Rational taylor_remainder_upper(const Integer& Br, std::uint64_t Mr, std::uint64_t q, std::uint64_t r) {
  if (Br < 1) throw DomainError("taylor_remainder_upper needs B_r >= 1");
  return make_rational(Br * binomial(Integer(Br + Mr), Mr), pow(pow(q, r), Mr + 1));
}

/// The bound above is proved when the integrand is nonincreasing, i.e. M (q^r - 1) >= B + 1.
inline bool remainder_regime_holds(const Integer& Br, std::uint64_t Mr, std::uint64_t q, std::uint64_t r) {
  return Integer(Mr) * (pow(q, r) - 1) >= Br + 1;
}

/// (q^r/(q^r-1))^B minus its Taylor polynomial of degree M at 1/q^r.
inline Rational taylor_tail_exact(const Integer& Br, std::uint64_t Mr, std::uint64_t q, std::uint64_t r) {
  const Integer qr = pow(q, r);
  const Rational full = pow(make_rational(qr, qr - 1), static_cast<std::int64_t>(Br.get_ui()));
  Rational partial = 0;
  const Rational x = make_rational(1, qr);
  for (std::uint64_t m = Mr + 1; m-- > 0;) partial = partial * x + Rational(binomial(Integer(Br + m - 1), m));
  return full - partial;
}

/// (1/q^r - t)^M / (1 - t)^(B+M+1).
inline Rational remainder_integrand(const Integer& Br, std::uint64_t Mr, std::uint64_t q, std::uint64_t r,
                                    const Rational& t) {
  const Rational x = make_rational(1, pow(q, r));
  return pow(Rational(x - t), static_cast<std::int64_t>(Mr)) /
         pow(Rational(1 - t), static_cast<std::int64_t>(Integer(Br + Mr + 1).get_ui()));
}

}  // namespace classnum
