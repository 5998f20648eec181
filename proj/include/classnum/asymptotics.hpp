#pragma once

// Asymptotic constants of the binomial envelopes, certified checks of the
// numeric claims made about them, and growth bases of class-number lower
// bounds along sequences with a positive density of degree-r places.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/divisors.hpp"
#include "classnum/errors.hpp"
#include "classnum/interval.hpp"

namespace classnum {

inline Rational default_eta() { return make_rational(1, 1000); }

namespace detail {

/// x log x on an interval inside (0, inf).
inline Interval xlogx(const Interval& x) { return x * x.log(); }

/// sqrt(q^r) as an interval.
inline Interval half_power(std::uint64_t q, unsigned r, mpfr_prec_t prec) {
  return sqrt_interval(pow(q, r), prec);
}

}  // namespace detail

struct AsymptoticConstants {
  Rational mu;
  std::uint64_t q = 2;
  unsigned r = 1;
  Rational eta;
  Interval C1, C2;
  Interval log_q1, log_q2;
  Interval inner_factor;  // (s/(s-1))^((s-1)/r) with s = q^(r/2)

  Interval q1() const { return log_q1.exp(); }
  Interval q2() const { return log_q2.exp(); }
};

/// log of ((mu + 1/r)^(mu + 1/r) / (mu^mu (1/r)^(1/r))), the growth rate of C(g(mu + 1/r), g mu) per unit g.
inline Interval log_v(const Interval& mu, unsigned r) {
  const Interval inv_r = Interval::exact(make_rational(1, r), mu.precision());
  return detail::xlogx(mu + inv_r) - detail::xlogx(mu) - detail::xlogx(inv_r);
}

/// log of (s/(s-1))^((s-1)/r), s = q^(r/2).
inline Interval log_inner_factor(std::uint64_t q, unsigned r, mpfr_prec_t prec = kDefaultPrecision) {
  const Interval s = detail::half_power(q, r, prec);
  const Interval one = Interval::exact(1L, prec);
  return (s - one) / Interval::exact(long(r), prec) * (s / (s - one)).log();
}

inline AsymptoticConstants asymptotic_constants(const Rational& mu, std::uint64_t q, unsigned r,
                                                const Rational& eta = default_eta(),
                                                mpfr_prec_t prec = kDefaultPrecision) {
  if (eta <= 0 || eta >= 1) throw DomainError("eta must lie in (0, 1)");
  if (mu <= 0) throw DomainError("mu_r must be positive");
  if (r < 1 || q < 2) throw DomainError("needs q >= 2 and r >= 1");
  AsymptoticConstants out{mu, q, r, eta, Interval(prec), Interval(prec), Interval(prec), Interval(prec),
                          Interval(prec)};
  const Interval one = Interval::exact(1L, prec);
  const Interval m = Interval::exact(mu, prec), e = Interval::exact(eta, prec);
  const Interval R = Interval::exact(long(r), prec);
  const Interval two_pi = Interval::exact(2L, prec) * Interval::pi(prec);
  const Interval s = detail::half_power(q, r, prec);
  out.C1 = ((R * m + one) / (two_pi * R * m * (one - e))).sqrt();
  out.C2 = (s / (two_pi * (s - one) * (one + e))).sqrt();
  out.log_q1 = (one - e) * log_v(m, r);
  const Interval lif = log_inner_factor(q, r, prec);
  out.inner_factor = lif.exp();
  out.log_q2 = (one + e) * (lif + Interval::exact(Integer(q), prec).log() * Interval::exact(make_rational(1, 2), prec));
  return out;
}

/// Log-envelopes log(C/sqrt(g)) + g log q_i around log C(B + m_r(g-a) - b, B).
struct SandwichCheck {
  std::uint64_t g = 0;
  Integer B;
  Interval log_lower, log_actual, log_upper;
  bool holds = false;  // certified strict inequalities on both sides
};

inline SandwichCheck binomial_sandwich(const AsymptoticConstants& k, std::uint64_t g, std::uint64_t a,
                                       std::uint64_t b, mpfr_prec_t prec = kDefaultPrecision) {
  SandwichCheck out{g, floor_div(k.mu.get_num() * g, k.mu.get_den()), Interval(prec), Interval(prec), Interval(prec),
                    false};
  if (g < a || g - a < b * k.r) throw DomainError("g too small for the shift (a, b)");
  const Integer top = out.B + euclid_split(g - a, k.r).first - b;
  const Integer c = binomial(top, out.B.get_ui());
  out.log_actual = Interval::exact(c, prec).log();
  const Interval G = Interval::exact(Integer(g), prec);
  const Interval half_log_g = G.log() * Interval::exact(make_rational(1, 2), prec);
  out.log_lower = k.C1.log() - half_log_g + G * k.log_q1;
  out.log_upper = k.C2.log() - half_log_g + G * k.log_q2;
  out.holds = certainly_less(out.log_lower, out.log_actual) && certainly_less(out.log_actual, out.log_upper);
  return out;
}

/// Q_r (1 - q^-r)^B_r: tends to 1 when the truncated binomial series captures its full sum.
inline Interval truncation_ratio(const Integer& Br, std::uint64_t q, std::uint64_t r, std::uint64_t g,
                                 mpfr_prec_t prec = kDefaultPrecision) {
  const Integer qr = pow(q, r);
  const Interval base = Interval::exact(make_rational(qr - 1, qr), prec);
  return Interval::exact(exact_Qr(Br, q, r, g), prec) * (Interval::exact(Br, prec) * base.log()).exp();
}

/// Claim checks ---------------------------------------------------------------

struct ClaimCheck {
  std::string name;
  bool holds = false;
  double margin = 0;  // certified lower bound on the slack when holds
  std::string detail;
};

/// q1 < q at mu_r (q >= 4 or r >= 2 is where the claim is made).
inline Interval q1_slack(std::uint64_t q, unsigned r, const Rational& mu, const Rational& eta = default_eta(),
                         mpfr_prec_t prec = kDefaultPrecision) {
  const auto k = asymptotic_constants(mu, q, r, eta, prec);
  return Interval::exact(Integer(q), prec) - k.q1();
}

/// Upper end of the admissible densities, (q^(r/2) - 1)/r, as an interval.
inline Interval dv_density(std::uint64_t q, unsigned r, mpfr_prec_t prec = kDefaultPrecision) {
  return (detail::half_power(q, r, prec) - Interval::exact(1L, prec)) / Interval::exact(long(r), prec);
}

/// A rational just below the admissible density bound (for sweeps).
inline Rational dv_density_floor(std::uint64_t q, unsigned r, mpfr_prec_t prec = kDefaultPrecision) {
  return dv_density(q, r, prec).lower();
}

/// f(mu) = ((mu+1)^(mu+1)/mu^mu) ((q-1)/q)^mu / q over an interval of mu in [0, inf).
/// Near zero the term -mu log mu is enclosed by [0, -b log b] for mu in [0, b], b <= 1/e.
inline Interval f_mu1(std::uint64_t q, const Interval& mu) {
  const mpfr_prec_t prec = mu.precision();
  const Interval one = Interval::exact(1L, prec);
  const Interval Q = Interval::exact(Integer(q), prec);
  Interval neg_mlogm(prec);
  if (mu.lower() <= 0) {
    const Rational b = mu.upper();
    if (b * 3 > 1) throw DomainError("f_mu1 cell touching zero must stay below 1/3");
    const Interval bi = Interval::exact(b, prec);
    neg_mlogm = Interval::hull(0, (-detail::xlogx(bi)).upper(), prec);
  } else {
    neg_mlogm = -detail::xlogx(mu);
  }
  const Interval nonneg_mu = mu.lower() < 0 ? Interval::hull(0, mu.upper(), prec) : mu;
  const Interval log_f = detail::xlogx(nonneg_mu + one) + neg_mlogm + nonneg_mu * ((Q - one) / Q).log() - Q.log();
  return log_f.exp();
}

inline double f_mu1(std::uint64_t q, double mu) {
  return f_mu1(q, Interval::from_double(mu)).mid();
}

/// Certified upper bound of f over (0, sqrt(q) - 1] using `cells` interval cells.
inline Interval f_mu1_sup(std::uint64_t q, unsigned cells = 10000, mpfr_prec_t prec = kDefaultPrecision) {
  const Rational top = (sqrt_interval(Integer(q), prec) - Interval::exact(1L, prec)).upper();
  Rational best = 0;
  Rational lo_best = 0;
  for (unsigned i = 0; i < cells; ++i) {
    const Rational a = top * i / cells, b = top * (i + 1) / cells;
    const Interval v = f_mu1(q, Interval::hull(a, b, prec));
    if (v.upper() > best) best = v.upper();
    if (v.lower() > lo_best) lo_best = v.lower();
  }
  return Interval::hull(lo_best, best, prec);
}

/// Whether F = (s/(s-1))^((s-1)/r), s = q^(r/2), equals sqrt(q) exactly, via F^(2r) = q^r.
/// Decided exactly when s is an integer, otherwise by a certified comparison.
struct InnerFactorComparison {
  bool equal = false;
  bool below = false;  // certified F < sqrt(q)
  bool above = false;  // certified F > sqrt(q)
  bool below_exp = false;  // certified F < e^(1/r)
};

inline InnerFactorComparison compare_inner_factor(std::uint64_t q, unsigned r, mpfr_prec_t prec = kDefaultPrecision) {
  InnerFactorComparison out;
  const Integer qr = pow(q, r);
  if (const auto s = exact_sqrt(qr)) {
    // F^(2r) = (s/(s-1))^(2(s-1))
    const Rational lhs = pow(make_rational(*s, *s - 1), static_cast<std::int64_t>(2 * Integer(*s - 1).get_ui()));
    out.equal = lhs == Rational(qr);
    out.below = lhs < Rational(qr);
    out.above = lhs > Rational(qr);
  } else {
    const Interval lhs = (Interval::exact(long(2 * r), prec) * log_inner_factor(q, r, prec));
    const Interval rhs = Interval::exact(qr, prec).log();
    out.below = certainly_less(lhs, rhs);
    out.above = certainly_greater(lhs, rhs);
  }
  // log F < 1/r
  out.below_exp = certainly_less(log_inner_factor(q, r, prec), make_rational(1, r));
  return out;
}

/// (1 - eta) log v over an interval of densities.
inline Interval log_q1_at(const Interval& mu, unsigned r, const Rational& eta) {
  return (Interval::exact(1L, mu.precision()) - Interval::exact(eta, mu.precision())) * log_v(mu, r);
}

struct Q1Sweep {
  std::size_t points = 0;
  std::size_t certified = 0;
  double min_margin = 0;  // smallest certified lower bound on q - q1
  std::string worst;      // grid point attaining it
};

/// Certifies q1 < q at `steps` densities mu = j/steps * (q^(r/2)-1)/r, j = 1..steps.
/// The last point encloses the irrational endpoint itself.
inline Q1Sweep sweep_q1_below_q(std::uint64_t q, unsigned r, unsigned steps, const Rational& eta = default_eta(),
                               mpfr_prec_t prec = kDefaultPrecision) {
  Q1Sweep out;
  out.min_margin = 1e300;
  const Interval top = dv_density(q, r, prec);
  const Interval Q = Interval::exact(Integer(q), prec);
  for (unsigned j = 1; j <= steps; ++j) {
    const Interval mu = j == steps ? top : Interval::exact(top.lower() * j / steps, prec);
    const Interval slack = Q - log_q1_at(mu, r, eta).exp();
    ++out.points;
    if (certainly_greater(slack, Rational(0))) {
      ++out.certified;
      if (slack.lower_d() < out.min_margin) {
        out.min_margin = slack.lower_d();
        out.worst = "q=" + std::to_string(q) + " r=" + std::to_string(r) + " j=" + std::to_string(j);
      }
    }
  }
  return out;
}

/// Growth bases ---------------------------------------------------------------

struct GrowthExponent {
  std::uint64_t q = 2;
  unsigned r = 1;
  Rational alpha;
  Rational ratio;  // q^r / (q^r - 1)
  Interval base;   // ratio^alpha * q
};

inline GrowthExponent growth_base(std::uint64_t q, unsigned r, const Rational& alpha,
                                  mpfr_prec_t prec = kDefaultPrecision) {
  const Integer qr = pow(q, r);
  GrowthExponent out{q, r, alpha, make_rational(qr, qr - 1), Interval(prec)};
  out.base = pow(Interval::exact(out.ratio, prec), Interval::exact(alpha, prec)) * Interval::exact(Integer(q), prec);
  return out;
}

/// Base of the lower bound for a density mu_r of degree-r places; needs 0 < alpha < mu_r.
inline GrowthExponent growth_exponent_places(std::uint64_t q, unsigned r, const Rational& alpha, const Rational& mu_r,
                                             mpfr_prec_t prec = kDefaultPrecision) {
  if (alpha <= 0 || alpha >= mu_r) throw DomainError("needs 0 < alpha < mu_r");
  return growth_base(q, r, alpha, prec);
}

/// Same base when only the degree-one density mu_1 of the constant field
/// extension to F_{q^r} is known; needs 0 < alpha < mu_1 / r.
inline GrowthExponent growth_exponent_extension(std::uint64_t q, unsigned r, const Rational& alpha,
                                                const Rational& mu1_ext, mpfr_prec_t prec = kDefaultPrecision) {
  if (alpha <= 0 || alpha >= mu1_ext / r) throw DomainError("needs 0 < alpha < mu_1 / r");
  return growth_base(q, r, alpha, prec);
}

/// H = 1 + sum_m beta_m log_q(q^m / (q^m - 1)).
inline Interval tsfasman_H(const std::vector<Interval>& beta, std::uint64_t q, mpfr_prec_t prec = kDefaultPrecision) {
  const Interval logq = Interval::exact(Integer(q), prec).log();
  Interval H = Interval::exact(1L, prec);
  for (std::size_t m = 1; m <= beta.size(); ++m) {
    const Integer qm = pow(q, m);
    H = H + beta[m - 1] * Interval::exact(make_rational(qm, qm - 1), prec).log() / logq;
  }
  return H;
}

inline double tsfasman_H(const std::vector<double>& beta, std::uint64_t q) {
  std::vector<Interval> b;
  for (double x : beta) b.push_back(Interval::from_double(x));
  return tsfasman_H(b, q).mid();
}

/// sum_m m beta_m / (q^(m/2) - 1) <= 1.
inline bool drinfeld_vladut_feasible(const std::vector<double>& beta, std::uint64_t q) {
  double s = 0;
  for (std::size_t m = 1; m <= beta.size(); ++m)
    s += static_cast<double>(m) * beta[m - 1] / (std::pow(static_cast<double>(q), m / 2.0) - 1.0);
  return s <= 1.0 + 1e-12;
}

}  // namespace classnum
