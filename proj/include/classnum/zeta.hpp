#pragma once

// Zeta numerator P(T) from point counts, class number h = P(1), the real
// Weil polynomial W with P(T) = T^g W(1/T + qT), and R = W'(q+1)/W(q+1).

#include <unsupported/Eigen/Polynomials>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/curves.hpp"
#include "classnum/errors.hpp"
#include "classnum/interval.hpp"

namespace classnum {

struct ZetaNumerator {
  std::vector<Integer> c;  // c_0 .. c_{2g}
  std::uint64_t q = 2;
  unsigned g = 2;
};

struct RealWeilPoly {
  std::vector<Integer> w;  // ascending, w_g = 1
  std::uint64_t q = 2;
  unsigned g = 2;
};

/// a_m = N_m - (q^m + 1), the power sums of the reciprocal roots with a sign flip.
inline std::vector<Integer> frobenius_traces(const PointCounts& counts) {
  std::vector<Integer> a;
  for (std::size_t i = 0; i < counts.N.size(); ++i) a.push_back(counts.N[i] - pow(counts.q, i + 1) - 1);
  return a;
}

inline void check_functional_equation(const ZetaNumerator& P) {
  if (P.c.size() != 2 * P.g + 1) throw DomainError("zeta numerator must have 2g+1 coefficients");
  if (P.c[0] != 1) throw DomainError("zeta numerator must have c_0 = 1");
  for (unsigned i = 0; i <= P.g; ++i)
    if (P.c[2 * P.g - i] != pow(P.q, P.g - i) * P.c[i])
      throw DomainError("functional equation fails at i = " + std::to_string(i));
}

inline ZetaNumerator zeta_numerator(const PointCounts& counts) {
  const unsigned g = counts.g;
  if (counts.N.size() != g) throw InputError("zeta_numerator needs exactly g point counts");
  const auto a = frobenius_traces(counts);
  ZetaNumerator P{std::vector<Integer>(2 * g + 1), counts.q, g};
  P.c[0] = 1;
  for (unsigned i = 1; i <= g; ++i) {
    Integer sum = 0;
    for (unsigned j = 1; j <= i; ++j) sum += a[j - 1] * P.c[i - j];
    if (sum % i != 0)
      throw NonIntegralCoefficient("c_" + std::to_string(i) + " = " + sum.get_str() + "/" + std::to_string(i) +
                                   " is not an integer");
    P.c[i] = sum / i;
  }
  for (unsigned i = 0; i < g; ++i) P.c[2 * g - i] = pow(counts.q, g - i) * P.c[i];
  return P;
}

inline Integer class_number(const ZetaNumerator& P) {
  Integer h = 0;
  for (const auto& c : P.c) h += c;
  if (h < 1) throw DomainError("P(1) = " + h.get_str() + " is not a positive class number");
  return h;
}

/// N_1..N_M from P, using c_i = 0 beyond 2g.
inline PointCounts extend_point_counts(const ZetaNumerator& P, unsigned M) {
  std::vector<Integer> a;
  for (unsigned m = 1; m <= M; ++m) {
    Integer am = m <= 2 * P.g ? Integer(m) * P.c[m] : Integer(0);
    for (unsigned j = 1; j < m; ++j)
      if (m - j <= 2 * P.g) am -= a[j - 1] * P.c[m - j];
    a.push_back(am);
  }
  PointCounts out{{}, P.q, P.g};
  for (unsigned m = 1; m <= M; ++m) out.N.push_back(pow(P.q, m) + 1 + a[m - 1]);
  return out;
}

/// Coefficients of T^g W(1/T + qT).
inline std::vector<Integer> expand_weil(const RealWeilPoly& W) {
  const unsigned g = W.g;
  std::vector<Integer> c(2 * g + 1);
  for (unsigned j = 0; j <= g; ++j) {
    if (W.w[j] == 0) continue;
    for (unsigned l = 0; l <= j; ++l) c[g - j + 2 * l] += W.w[j] * binomial(j, l) * pow(W.q, l);
  }
  return c;
}

inline RealWeilPoly real_weil_poly(const ZetaNumerator& P) {
  const unsigned g = P.g;
  RealWeilPoly W{std::vector<Integer>(g + 1), P.q, g};
  W.w[g] = P.c[0];
  for (unsigned i = 1; i <= g; ++i) {
    Integer v = P.c[i];
    for (unsigned j = g - i + 1; j <= g; ++j) {
      const unsigned s = i + j - g;
      if (s % 2 != 0) continue;
      v -= binomial(j, s / 2) * pow(P.q, s / 2) * W.w[j];
    }
    W.w[g - i] = v;
  }
  if (W.w[g] != 1 || expand_weil(W) != P.c)
    throw MatchFailure("no monic integer real Weil polynomial reproduces P");
  return W;
}

inline Integer eval(const std::vector<Integer>& poly, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

inline std::vector<Integer> derivative(const std::vector<Integer>& poly) {
  std::vector<Integer> out;
  for (std::size_t i = 1; i < poly.size(); ++i) out.push_back(Integer(i) * poly[i]);
  return out;
}

/// W(q+1) and W'(q+1).
inline std::pair<Integer, Integer> weil_values(const RealWeilPoly& W) {
  const Integer x = Integer(W.q) + 1;
  return {eval(W.w, x), eval(derivative(W.w), x)};
}

inline Rational resolvent(const RealWeilPoly& W) {
  const auto [v, dv] = weil_values(W);
  if (v == 0) throw DomainError("W(q+1) vanishes");
  return make_rational(dv, v);
}

struct IdentityCheck {
  Integer lhs;  // S * W(q+1)
  Integer rhs;  // h * W'(q+1)
  bool holds = false;
};

/// S W(q+1) = h W'(q+1), i.e. S = h R with both sides integers.
inline IdentityCheck check_main_identity(const Integer& S, const Integer& h, const RealWeilPoly& W) {
  const auto [v, dv] = weil_values(W);
  IdentityCheck out{S * v, h * dv, false};
  out.holds = out.lhs == out.rhs;
  return out;
}

inline IdentityCheck verify_main_identity(const Integer& S, const Integer& h, const RealWeilPoly& W,
                                          const std::string& name = {}) {
  auto chk = check_main_identity(S, h, W);
  if (!chk.holds)
    throw IdentityViolation((name.empty() ? std::string() : name + ": ") + "S*W(q+1) = " + chk.lhs.get_str() +
                            " but h*W'(q+1) = " + chk.rhs.get_str());
  return chk;
}

namespace detail {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline int sign_at(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return sgn(acc);
}

inline int sign_at_infinity(const RatPoly& p, bool positive) {
  const int lead = sgn(p.back());
  return (positive || (p.size() - 1) % 2 == 0) ? lead : -lead;
}

inline int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

struct RootLocation {
  int distinct_roots = 0;     // deg W - deg gcd(W, W')
  int real_roots = 0;         // distinct real roots
  int roots_in_interval = 0;  // distinct real roots in [-bound, bound]
  Rational bound;             // rational upper approximation of 2 sqrt(q) + tolerance
  bool ok() const { return real_roots == distinct_roots && roots_in_interval == real_roots; }
};

/// Sturm-sequence check that W has only real roots, all within 2 sqrt(q) + tolerance.
inline RootLocation locate_weil_roots(const RealWeilPoly& W, double tolerance = 1e-9) {
  detail::RatPoly p0(W.w.begin(), W.w.end());
  std::vector<detail::RatPoly> chain{p0};
  detail::RatPoly p1;
  for (const auto& c : derivative(W.w)) p1.emplace_back(c);
  detail::trim(p1);
  while (!p1.empty()) {
    chain.push_back(p1);
    auto r = detail::rat_rem(chain[chain.size() - 2], p1);
    for (auto& c : r) c = -c;
    p1 = std::move(r);
  }
  RootLocation out;
  out.distinct_roots = static_cast<int>(W.g) - static_cast<int>(chain.back().size() - 1);
  out.bound = (sqrt_interval(Integer(4) * W.q) + Interval::from_double(tolerance)).upper();
  std::vector<int> lo, hi, minus_inf, plus_inf;
  for (const auto& p : chain) {
    lo.push_back(detail::sign_at(p, -out.bound));
    hi.push_back(detail::sign_at(p, out.bound));
    minus_inf.push_back(detail::sign_at_infinity(p, false));
    plus_inf.push_back(detail::sign_at_infinity(p, true));
  }
  out.real_roots = detail::variations(minus_inf) - detail::variations(plus_inf);
  out.roots_in_interval = detail::variations(lo) - detail::variations(hi);
  return out;
}

struct NumericDiagnostics {
  double max_modulus_deviation = 0;  // max | |pi| / sqrt(q) - 1 |
  double resolvent = 0;              // sum over reciprocal-root pairs of 1/|1 - pi|^2
};

namespace detail {

using QPoly = RatPoly;

inline QPoly qderivative(const QPoly& a) {
  QPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * Integer(i));
  trim(out);
  return out;
}

inline std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  QPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    quo[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(quo);
  return {quo, a};
}

inline QPoly qmonic(QPoly a) {
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline QPoly qgcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = rat_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return qmonic(a);
}

/// Yun's algorithm: squarefree factors s_1, s_2, ... with P = c prod s_k^k.
inline std::vector<QPoly> squarefree_factors(const std::vector<Integer>& poly) {
  QPoly a(poly.begin(), poly.end());
  trim(a);
  std::vector<QPoly> out;
  QPoly d = qderivative(a);
  QPoly g = qgcd(a, d);
  QPoly b = qdivmod(a, g).first, c = qdivmod(d, g).first;
  for (;;) {
    QPoly bp = qderivative(b);
    QPoly e = c;
    e.resize(std::max(e.size(), bp.size()), Rational(0));
    for (std::size_t i = 0; i < bp.size(); ++i) e[i] -= bp[i];
    trim(e);
    if (b.size() <= 1) break;
    QPoly s = e.empty() ? qmonic(b) : qgcd(b, e);
    out.push_back(s);
    b = qdivmod(b, s).first;
    c = qdivmod(e, s).first;
  }
  return out;
}

}  // namespace detail

/// Floating-point reciprocal roots of P; diagnostics only. Repeated roots are
/// split off exactly first so each factor handed to the solver is squarefree.
inline NumericDiagnostics numeric_diagnostics(const ZetaNumerator& P) {
  NumericDiagnostics out;
  const double sq = std::sqrt(static_cast<double>(P.q));
  double sum = 0;
  const auto factors = detail::squarefree_factors(P.c);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].size() < 2) continue;
    Eigen::VectorXd coeffs(factors[k].size());
    for (std::size_t i = 0; i < factors[k].size(); ++i) coeffs[static_cast<Eigen::Index>(i)] = factors[k][i].get_d();
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    for (const auto& alpha : solver.roots()) {
      const std::complex<double> pi = 1.0 / alpha;
      out.max_modulus_deviation = std::max(out.max_modulus_deviation, std::abs(std::abs(pi) / sq - 1.0));
      sum += static_cast<double>(k + 1) / std::norm(1.0 - pi);
    }
  }
  out.resolvent = sum / 2;
  return out;
}

}  // namespace classnum
