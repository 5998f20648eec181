#pragma once

// Tower families with closed-form genus and place-count data, and the
// catalog of tame towers with their growth constants.

#include <cstdint>
#include <string>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/asymptotics.hpp"
#include "classnum/errors.hpp"
#include "classnum/galois_field.hpp"
#include "classnum/interval.hpp"

namespace classnum {

enum class TowerFamily { GarciaStichtenoth, FermatTame, Quad_F3_a, Quad_F3_b, Quad_F5 };

inline std::string to_string(TowerFamily f) {
  switch (f) {
    case TowerFamily::GarciaStichtenoth: return "GarciaStichtenoth";
    case TowerFamily::FermatTame: return "FermatTame";
    case TowerFamily::Quad_F3_a: return "Quad_F3_a";
    case TowerFamily::Quad_F3_b: return "Quad_F3_b";
    case TowerFamily::Quad_F5: return "Quad_F5";
  }
  return "?";
}

struct TowerSpec {
  TowerFamily family = TowerFamily::GarciaStichtenoth;
  std::uint64_t q = 2;  // base field of the growth statement (l for Fermat towers)
  unsigned r = 2;
  unsigned level = 1;
  std::string equation;
};

namespace detail {

inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = prime_factors(n);
  return f.size() == 1;
}

/// sqrt(q^r) when q^r is a perfect square prime power.
inline Integer gs_ell(std::uint64_t q, unsigned r) {
  if (!is_prime_power(q)) throw DomainError("q must be a prime power");
  const auto s = exact_sqrt(pow(q, r));
  if (!s) throw DomainError("q^r = " + pow(q, r).get_str() + " is not a perfect square");
  return *s;
}

}  // namespace detail

/// Genus of level n of the Garcia-Stichtenoth tower over F_{l^2}, l = sqrt(qr).
inline Integer gs_genus(const Integer& qr, unsigned n) {
  if (n < 1) throw DomainError("tower level starts at 1");
  const auto s = exact_sqrt(qr);
  if (!s) throw DomainError(qr.get_str() + " is not a perfect square");
  const Integer& l = *s;
  if (n % 2 == 1)
    return pow(l, n) + pow(l, n - 1) - pow(l, (n + 1) / 2) - 2 * pow(l, (n - 1) / 2) + 1;
  // Even levels: (1/2) l^(n/2+1) + (3/2) l^(n/2) is an integer since l^(n/2) (l + 3) is even.
  const Integer half = (pow(l, n / 2 + 1) + 3 * pow(l, n / 2)) / 2;
  return pow(l, n) + pow(l, n - 1) - half - pow(l, n / 2 - 1) + 1;
}

/// The same closed form with q^r substituted for l. Kept for comparison; it
/// overstates the genus and its ratio with the place count collapses.
inline Rational gs_genus_printed(const Integer& qr, unsigned n) {
  if (n < 1) throw DomainError("tower level starts at 1");
  if (!exact_sqrt(qr)) throw DomainError(qr.get_str() + " is not a perfect square");
  const Rational Q(qr);
  auto P = [&](unsigned e) { return Rational(pow(qr, e)); };
  if (n % 2 == 1) return P(n) + P(n - 1) - P((n + 1) / 2) - 2 * P((n - 1) / 2) + 1;
  return P(n) + P(n - 1) - P(n / 2 + 1) / 2 - 3 * P(n / 2) / 2 - P(n / 2 - 1) + 1;
}

/// (q^r - 1) q^((r/2)(k-1)) + 2 q^(r/2), a lower bound on rational places at level k.
inline Integer gs_b1_lower(std::uint64_t q, unsigned r, unsigned k) {
  if (k < 1) throw DomainError("tower level starts at 1");
  const Integer l = detail::gs_ell(q, r);
  return (pow(q, r) - 1) * pow(l, k - 1) + 2 * l;
}

/// Degree-r place density of the Garcia-Stichtenoth tower seen over F_q.
inline Rational gs_mu(std::uint64_t q, unsigned r) {
  return make_rational(detail::gs_ell(q, r) - 1, r);
}

struct CatalogEntry {
  TowerSpec spec;
  Rational mu1_ext;    // lower bound on mu_1 over F_{q^r}
  Rational alpha_sup;  // mu1_ext / r
  Rational ratio;      // q^r / (q^r - 1)
  Interval base_sup;   // ratio^alpha_sup * q
  std::string note;
};

namespace detail {

inline CatalogEntry make_entry(TowerFamily family, std::uint64_t q, unsigned r, const Rational& mu1,
                               std::string equation, std::string note, mpfr_prec_t prec) {
  const Rational alpha = mu1 / r;
  const auto base = growth_base(q, r, alpha, prec);
  return CatalogEntry{TowerSpec{family, q, r, 1, std::move(equation)}, mu1, alpha, base.ratio, base.base,
                      std::move(note)};
}

}  // namespace detail

/// Fermat tower y^l = ... over F_{l^r}; needs l a prime power >= 3 and r or l even.
inline CatalogEntry fermat_tame(std::uint64_t l, unsigned r, mpfr_prec_t prec = kDefaultPrecision) {
  if (!detail::is_prime_power(l)) throw DomainError("l must be a power of the characteristic");
  if (l < 3) throw DomainError("Fermat towers need l >= 3");
  if (r < 1) throw DomainError("r must be positive");
  if (r % 2 != 0 && l % 2 != 0) throw DomainError("Fermat towers need r even or l even");
  return detail::make_entry(TowerFamily::FermatTame, l, r, make_rational(2, l - 2),
                            "y^l = -x^l + ... (Fermat type, tame)", "mu_1 = 2/(l-2) over F_{l^r}", prec);
}

inline std::vector<CatalogEntry> tower_catalog(mpfr_prec_t prec = kDefaultPrecision) {
  return {
      fermat_tame(4, 1, prec),
      detail::make_entry(TowerFamily::Quad_F3_a, 3, 2, make_rational(2, 3), "y^2 = x(x-1)/(x+1)",
                         "mu_1 >= 2/3 over F_9", prec),
      detail::make_entry(TowerFamily::Quad_F3_b, 3, 4, Rational(2), "y^2 = x(1-x)/(x+1)", "mu_1 >= 2 over F_81",
                         prec),
      detail::make_entry(TowerFamily::Quad_F5, 5, 2, Rational(1), "y^2 = x(x+2)/(x+1)", "mu_1 >= 1 over F_25",
                         prec),
  };
}

/// One row of a tower sweep.
struct TowerLevel {
  TowerSpec spec;
  Integer genus;
  Rational genus_printed;
  Integer b1_lower;
  Rational alpha_sup;
  Interval base_sup;
  Interval log_q_base;
  Interval tsfasman_H;
};

/// Garcia-Stichtenoth levels 1..kmax over F_{q^r}, growth predicted over F_q at alpha -> mu_r.
inline std::vector<TowerLevel> gs_sweep(std::uint64_t q, unsigned r, unsigned kmax,
                                        mpfr_prec_t prec = kDefaultPrecision) {
  const Integer qr = pow(q, r);
  const Rational mu = gs_mu(q, r);
  const auto base = growth_base(q, r, mu, prec);
  const Interval logq = Interval::exact(Integer(q), prec).log();
  std::vector<Interval> beta(r, Interval::exact(0L, prec));
  beta[r - 1] = Interval::exact(mu, prec);
  const Interval H = tsfasman_H(beta, q, prec);
  std::vector<TowerLevel> out;
  for (unsigned k = 1; k <= kmax; ++k) {
    out.push_back(TowerLevel{TowerSpec{TowerFamily::GarciaStichtenoth, q, r, k,
                                       "z^(q^(r/2)) + z = x^(q^(r/2)+1)"},
                             gs_genus(qr, k), gs_genus_printed(qr, k), gs_b1_lower(q, r, k), mu, base.base,
                             base.base.log() / logq, H});
  }
  return out;
}

}  // namespace classnum
