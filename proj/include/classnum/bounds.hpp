#pragma once

// Lower and upper bounds on the class number h (and on the intermediate
// quantities A_n, Sigma_1, Q_r, R they are built from), evaluated as exact
// rationals or as certified enclosures when square roots are involved.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/divisors.hpp"
#include "classnum/errors.hpp"
#include "classnum/interval.hpp"

namespace classnum {

/// [lo, hi] with rational endpoints; lo == hi for exactly known values.
struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational& v) { return {v, v}; }
  static Enclosure of(const Interval& iv) { return {iv.lower(), iv.upper()}; }
  bool is_exact() const { return lo == hi; }
};

inline Integer K1(std::uint64_t i, const Integer& B) { return binomial(Integer(B + i), i); }

inline Rational K2(std::uint64_t q, std::uint64_t j, const Integer& B) {
  if (B < 1) throw DomainError("K2 needs B >= 1");
  Rational acc = 0;
  const Rational x = make_rational(1, q);
  for (std::uint64_t i = j + 1; i-- > 0;) acc = acc * x + Rational(binomial(Integer(B + i - 1), i));
  return acc;
}

/// C(B_r + m_r(n) - 1, B_r - 1) C(B_1 + s_r(n) - 1, B_1 - 1) <= A_n.
inline Integer an_lower(const Integer& B1, const Integer& Br, std::uint64_t r, std::uint64_t n) {
  if (B1 < 1 || Br < 1) throw HypothesisFailed("needs B_1 > 0 and B_r > 0");
  const auto [m, s] = euclid_split(n, r);
  return binomial(Integer(Br + m - 1), m) * binomial(Integer(B1 + s - 1), s);
}

/// Lower bound on Sigma_1 = A_0 + ... + A_{g-1} built from places of degree 1 and r.
inline Integer sigma1_lower(std::uint64_t g, const Integer& B1, const Integer& Br, std::uint64_t r) {
  if (B1 < 1 || Br < 1) throw HypothesisFailed("needs B_1 > 0 and B_r > 0");
  const auto [m, s] = euclid_split(g - 1, r);
  const Integer top = Br + m - 1;
  return K1(r - 1, B1) * binomial(top, Br.get_ui()) + K1(s, B1) * binomial(top, m);
}

enum class QrVariant { geometric, binomial, series_tail };

inline const char* to_string(QrVariant v) {
  switch (v) {
    case QrVariant::geometric: return "geometric";
    case QrVariant::binomial: return "binomial";
    default: return "series_tail";
  }
}

/// The count f_r of extra geometric terms. The printed three-case rule can
/// exceed the number m_r(g-2) - 1 of available terms when g - 1 = 2r; the
/// default clamps every case to m_r(g-2) - 1.
inline Integer qr_extra_terms(std::uint64_t q, std::uint64_t r, std::uint64_t g, const Integer& Br,
                              bool printed = false) {
  if (2 * r > g - 1) return 0;
  const std::int64_t M = static_cast<std::int64_t>(euclid_split(g - 2, r).first);
  const Integer qr = pow(q, r);
  Integer f = Br < qr ? Integer(1) : floor_div(Br - qr, qr - 1) + 1;
  if (Br >= qr || !printed) f = std::min(f, Integer(M - 1));
  return f;
}

struct QrBound {
  Rational value;
  bool degenerate = false;  // g <= 3 or too few terms: value is the exact Q_r
};

/// Lower bounds on Q_r. For g <= 3 (or when the chosen formula has no terms to
/// work with) the exact Q_r is returned with `degenerate` set, unless `strict`.
inline QrBound qr_lower(QrVariant variant, std::uint64_t q, std::uint64_t r, std::uint64_t g, const Integer& Br,
                        bool strict = false) {
  if (Br < 1) throw HypothesisFailed("needs B_r > 0");
  const auto M = euclid_split(g - 2, r).first;
  const Integer qr = pow(q, r);
  auto degenerate = [&](const std::string& why) {
    if (strict) throw DegenerateGenus(why);
    return QrBound{exact_Qr(Br, q, r, g), true};
  };
  if (g <= 3) return degenerate("Q_r lemmas assume g > 3");
  switch (variant) {
    case QrVariant::geometric: {
      const Rational geom = M == 0 ? Rational(0) : make_rational(pow(qr, M) - 1, pow(qr, M - 1) * (qr - 1));
      return {geom + make_rational(Br - 1, qr) * Rational(qr_extra_terms(q, r, g, Br)), false};
    }
    case QrVariant::binomial: {
      if (Br <= M) return {pow(make_rational(qr, qr - 1), static_cast<std::int64_t>(Br.get_ui() - 1)), false};
      if (M < 2) return degenerate("needs m_r(g-2) >= 2 when B_r > m_r(g-2)");
      return {pow(Rational(1 + make_rational(Br, qr * (M - 1))), static_cast<std::int64_t>(M - 1)), false};
    }
    case QrVariant::series_tail: {
      if (M < 1 || Br + 1 > Integer(M - 1) * (qr - 1))
        throw HypothesisFailed("needs B_r + 1 <= (m_r(g-2) - 1)(q^r - 1)");
      return {pow(make_rational(qr, qr - 1), static_cast<std::int64_t>(Br.get_ui())) -
                  taylor_remainder_upper(Br, M - 1, q, r),
              false};
    }
  }
  throw DomainError("unknown Q_r variant");
}

/// The four-term lower bound on h with denominator (g+1)(q+1) - B_1.
inline Rational h_lower_main(std::uint64_t q, std::uint64_t g, const Integer& B1, const Integer& Br, std::uint64_t r,
                             const Rational& qr_value) {
  if (B1 < 1 || Br < 1) throw HypothesisFailed("needs B_1 > 0 and B_r > 0");
  if (g < 2) throw DomainError("needs g >= 2");
  const Integer den = Integer(g + 1) * (q + 1) - B1;
  if (den <= 0) throw HypothesisFailed("(g+1)(q+1) - B_1 must be positive");
  const Integer q1sq = Integer(q - 1) * (q - 1);
  const auto [m2, s2] = euclid_split(g - 2, r);
  const auto [m1, s1] = euclid_split(g - 1, r);
  Rational sum = Rational(q1sq * pow(q, g - 1)) * K2(q, r - 1, B1) * qr_value;
  sum += Rational(q * q1sq * binomial(Integer(Br + m2 - 1), m2)) * K2(q, s2, B1);
  sum += Rational(q1sq * K1(r - 1, B1) * binomial(Integer(Br + m1 - 1), Br.get_ui()));
  sum += Rational(q1sq * K1(s1, B1) * binomial(Integer(Br + m1 - 1), m1));
  return sum / Rational(den);
}

/// Simplified bounds, prefactor (q-1)^2 q^(g-1) / ((g+1)(q+1)) times a Q_r estimate.
inline Rational h_lower_simplified(int which, std::uint64_t q, std::uint64_t g, const Integer& B1, const Integer& Br,
                                   std::uint64_t r) {
  if (B1 < 1 || Br < 1) throw HypothesisFailed("needs B_1 > 0 and B_r > 0");
  const Rational pre = make_rational(Integer(q - 1) * (q - 1) * pow(q, g - 1), Integer(g + 1) * (q + 1));
  const auto M = euclid_split(g - 2, r).first;
  const Integer qr = pow(q, r);
  switch (which) {
    case 1: {
      const Rational geom = M == 0 ? Rational(0) : make_rational(pow(qr, M) - 1, pow(qr, M - 1) * (qr - 1));
      return pre * (geom + make_rational(Br - 1, qr) * Rational(qr_extra_terms(q, r, g, Br)));
    }
    case 2:
      if (Br > M) throw HypothesisFailed("needs B_r <= m_r(g-2)");
      return pre * pow(make_rational(qr, qr - 1), static_cast<std::int64_t>(Br.get_ui() - 1));
    case 3:
      if (Br <= M) throw HypothesisFailed("needs B_r > m_r(g-2)");
      if (M < 2) throw HypothesisFailed("needs m_r(g-2) >= 2");
      return pre * pow(Rational(1 + make_rational(Br, qr * (M - 1))), static_cast<std::int64_t>(M - 1));
    case 4:
      if (M < 1 || Br + 1 > Integer(M - 1) * (qr - 1))
        throw HypothesisFailed("needs B_r + 1 <= (m_r(g-2) - 1)(q^r - 1)");
      return pre * (pow(make_rational(qr, qr - 1), static_cast<std::int64_t>(Br.get_ui())) -
                    taylor_remainder_upper(Br, M - 1, q, r));
    default:
      throw DomainError("simplified bound case must be 1..4");
  }
}

/// q^(g-1) (q-1)^2 / ((q+1)(g+1)).
inline Rational lmd_1(std::uint64_t q, std::uint64_t g) {
  return make_rational(pow(q, g - 1) * (q - 1) * (q - 1), Integer(q + 1) * (g + 1));
}

/// q^(g-1) (q-1)^2 / ((q+1)(g+1) - B_1).
inline Rational lmd_1_refined(std::uint64_t q, std::uint64_t g, const Integer& B1) {
  const Integer den = Integer(q + 1) * (g + 1) - B1;
  if (den <= 0) throw HypothesisFailed("(q+1)(g+1) - B_1 must be positive");
  return make_rational(pow(q, g - 1) * (q - 1) * (q - 1), den);
}

/// sqrt(q) as an interval, degenerate when q is a perfect square.
inline Interval sqrt_q(std::uint64_t q, mpfr_prec_t prec) {
  if (auto s = exact_sqrt(Integer(q))) return Interval::exact(*s, prec);
  return sqrt_interval(Integer(q), prec);
}

/// (sqrt(q) - 1)^2 (q^(g-1) - 1)/g (B_1 + q - 1)/(q - 1).
inline Enclosure lmd_2(std::uint64_t q, std::uint64_t g, const Integer& B1, mpfr_prec_t prec = kDefaultPrecision) {
  const Rational rest = make_rational(pow(q, g - 1) - 1, Integer(g)) * make_rational(B1 + q - 1, Integer(q - 1));
  if (auto s = exact_sqrt(Integer(q))) return Enclosure::exact(Rational((*s - 1) * (*s - 1)) * rest);
  const Interval one = Interval::exact(1L, prec);
  const Interval d = sqrt_q(q, prec) - one;
  return Enclosure::of(d * d * Interval::exact(rest, prec));
}

/// (q^g - 1)(q - 1)/(q + g + gq), valid when g > sqrt(q)/2 and B_1 >= 1.
inline Rational lmd_3(std::uint64_t q, std::uint64_t g, const Integer& B1) {
  if (B1 < 1) throw HypothesisFailed("needs a rational point (B_1 >= 1)");
  if (Integer(4) * g * g <= q) throw HypothesisFailed("needs g > sqrt(q)/2");
  return make_rational((pow(q, g) - 1) * (q - 1), Integer(q + g + g * q));
}

/// ((sqrt q + 1)/(sqrt q - 1))^(t - 2 delta) (q-1)^g with t = (B_1 - (q+1))/(2 sqrt q),
/// delta = 0 when t is an integer and 1 otherwise.
inline Enclosure perret_bound(std::uint64_t q, std::uint64_t g, const Integer& B1,
                              mpfr_prec_t prec = kDefaultPrecision) {
  const Integer excess = B1 - q - 1;
  const Integer tail = pow(Integer(q - 1), g);
  if (auto s = exact_sqrt(Integer(q))) {
    const Rational t = make_rational(excess, 2 * *s);
    const bool integral = t.get_den() == 1;
    const Rational e = t - (integral ? 0 : 2);
    const Rational base = make_rational(*s + 1, *s - 1);
    if (e.get_den() == 1) return Enclosure::exact(pow(base, e.get_num().get_si()) * Rational(tail));
    const Interval v = pow(Interval::exact(base, prec), Interval::exact(e, prec)) * Interval::exact(tail, prec);
    return Enclosure::of(v);
  }
  // sqrt(q) is irrational, so t is an integer only when it vanishes.
  if (excess == 0) return Enclosure::exact(Rational(tail));
  const Interval sq = sqrt_q(q, prec);
  const Interval one = Interval::exact(1L, prec);
  const Interval e = Interval::exact(excess, prec) / (Interval::exact(2L, prec) * sq) - Interval::exact(2L, prec);
  const Interval base = (sq + one) / (sq - one);
  return Enclosure::of(pow(base, e) * Interval::exact(tail, prec));
}

/// Enclosures of (sqrt q - 1)^(2g) and (sqrt q + 1)^(2g).
inline std::pair<Enclosure, Enclosure> weil_interval(std::uint64_t q, std::uint64_t g,
                                                     mpfr_prec_t prec = kDefaultPrecision) {
  if (auto s = exact_sqrt(Integer(q)))
    return {Enclosure::exact(Rational(pow(Integer(*s - 1), 2 * g))),
            Enclosure::exact(Rational(pow(Integer(*s + 1), 2 * g)))};
  const Interval sq = sqrt_q(q, prec), one = Interval::exact(1L, prec);
  return {Enclosure::of(pow(sq - one, 2 * g)), Enclosure::of(pow(sq + one, 2 * g))};
}

/// R <= g / (sqrt q - 1)^2.
inline Enclosure resolvent_upper_weil(std::uint64_t q, std::uint64_t g, mpfr_prec_t prec = kDefaultPrecision) {
  if (auto s = exact_sqrt(Integer(q))) return Enclosure::exact(make_rational(Integer(g), (*s - 1) * (*s - 1)));
  const Interval d = sqrt_q(q, prec) - Interval::exact(1L, prec);
  return Enclosure::of(Interval::exact(Integer(g), prec) / (d * d));
}

/// R <= ((g+1)(q+1) - B_1)/(q-1)^2.
inline Rational resolvent_upper_b1(std::uint64_t q, std::uint64_t g, const Integer& B1) {
  return make_rational(Integer(g + 1) * (q + 1) - B1, Integer(q - 1) * (q - 1));
}

/// L'_1 - (L_3 + (q-1)^2 q^(g-1)/(q+g+gq) (B_1-1)/q f_1): the r = 1 main bound
/// with the geometric Q_1 estimate, compared against the third LMD bound.
inline Rational worst_case_gap(std::uint64_t q, std::uint64_t g, const Integer& B1) {
  const Rational l1 = h_lower_main(q, g, B1, B1, 1, qr_lower(QrVariant::geometric, q, 1, g, B1).value);
  const Rational l3 = make_rational((pow(q, g) - 1) * (q - 1), Integer(q + g + g * q));
  const Rational extra = make_rational(Integer(q - 1) * (q - 1) * pow(q, g - 1), Integer(q + g + g * q)) *
                         make_rational(B1 - 1, Integer(q)) * Rational(qr_extra_terms(q, 1, g, B1));
  return l1 - (l3 + extra);
}

// ---------------------------------------------------------------------------
// Per-curve report

enum class BoundKind { lower, upper };

struct BoundResult {
  std::string name;
  std::string target = "h";  // h, R, Q_r, sigma1, A_n
  BoundKind kind = BoundKind::lower;
  std::optional<unsigned> r;
  std::optional<unsigned> n;
  bool hypotheses_met = false;
  std::string hypothesis_note;
  std::optional<Enclosure> value;
  Rational actual;  // exact value of the target
  bool dominance_ok = true;

  /// The reported number: the lower end for lower bounds, the upper end for upper bounds.
  Rational reported() const { return kind == BoundKind::lower ? value->lo : value->hi; }
};

struct BoundInputs {
  std::string name;
  std::uint64_t q = 2;
  unsigned g = 2;
  std::vector<Integer> B;  // B_1 .. B_g
  Integer h;
  std::vector<Integer> A;  // A_0 .. A_{g-1}
  Integer sigma1;
  Rational R;
};

struct BoundReport {
  std::string name;
  std::uint64_t q = 2;
  unsigned g = 2;
  std::vector<Integer> B;
  Integer h;
  std::vector<BoundResult> rows;
  std::string best;
  std::optional<unsigned> best_r;
  Rational best_value;

  bool all_dominance_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const BoundResult& b) { return b.dominance_ok; });
  }
};

/// Default r selection: every r in 1..g-1 with B_r > 0.
inline std::vector<unsigned> default_r_choices(const std::vector<Integer>& B, unsigned g) {
  std::vector<unsigned> out;
  for (unsigned r = 1; r + 1 <= g && r <= B.size(); ++r)
    if (B[r - 1] > 0) out.push_back(r);
  return out;
}

namespace detail {

template <class Fn>
BoundResult evaluate_row(std::string name, std::string target, BoundKind kind, std::optional<unsigned> r,
                         const Rational& actual, Fn fn) {
  BoundResult row;
  row.name = std::move(name);
  row.target = std::move(target);
  row.kind = kind;
  row.r = r;
  row.actual = actual;
  try {
    row.value = fn();
    row.hypotheses_met = true;
    // Certified: the whole enclosure must be on the right side.
    row.dominance_ok = kind == BoundKind::lower ? row.value->hi <= actual : row.value->lo >= actual;
  } catch (const HypothesisFailed& e) {
    row.hypotheses_met = false;
    row.hypothesis_note = e.what();
  } catch (const DegenerateGenus& e) {
    row.hypotheses_met = false;
    row.hypothesis_note = e.what();
  }
  return row;
}

}  // namespace detail

inline BoundReport bound_report(const BoundInputs& in, std::vector<unsigned> r_choices = {},
                                mpfr_prec_t prec = kDefaultPrecision) {
  if (r_choices.empty()) r_choices = default_r_choices(in.B, in.g);
  std::sort(r_choices.begin(), r_choices.end());
  r_choices.erase(std::unique(r_choices.begin(), r_choices.end()), r_choices.end());
  const std::uint64_t q = in.q, g = in.g;
  const Integer B1 = in.B.empty() ? Integer(0) : in.B[0];
  const Rational h(in.h);
  using E = Enclosure;
  BoundReport rep{in.name, q, in.g, in.B, in.h, {}, {}, std::nullopt, 0};
  auto add = [&](BoundResult row) { rep.rows.push_back(std::move(row)); };
  const auto L = BoundKind::lower, U = BoundKind::upper;

  add(detail::evaluate_row("weil_lower", "h", L, {}, h, [&] { return weil_interval(q, g, prec).first; }));
  add(detail::evaluate_row("weil_upper", "h", U, {}, h, [&] { return weil_interval(q, g, prec).second; }));
  add(detail::evaluate_row("lmd_1", "h", L, {}, h, [&] { return E::exact(lmd_1(q, g)); }));
  add(detail::evaluate_row("lmd_1_refined", "h", L, {}, h, [&] { return E::exact(lmd_1_refined(q, g, B1)); }));
  add(detail::evaluate_row("lmd_2", "h", L, {}, h, [&] { return lmd_2(q, g, B1, prec); }));
  add(detail::evaluate_row("lmd_3", "h", L, {}, h, [&] { return E::exact(lmd_3(q, g, B1)); }));
  add(detail::evaluate_row("perret", "h", L, {}, h, [&] { return perret_bound(q, g, B1, prec); }));
  add(detail::evaluate_row("resolvent_upper_weil", "R", U, {}, in.R,
                           [&] { return resolvent_upper_weil(q, g, prec); }));
  add(detail::evaluate_row("resolvent_upper_b1", "R", U, {}, in.R,
                           [&] { return E::exact(resolvent_upper_b1(q, g, B1)); }));

  for (unsigned r : r_choices) {
    if (r < 1 || r > in.B.size()) throw InputError("r = " + std::to_string(r) + " is outside 1..g");
    const Integer Br = in.B[r - 1];
    auto need = [&] {
      if (B1 < 1 || Br < 1) throw HypothesisFailed("needs B_1 > 0 and B_r > 0");
    };
    const Rational Qr = Br >= 1 ? exact_Qr(Br, q, r, g) : Rational(0);

    for (unsigned n = 0; n < in.A.size() && n + 1 <= g; ++n) {
      auto row = detail::evaluate_row("a_n_lower", "A_n", L, r, Rational(in.A[n]),
                                      [&] { return E::exact(Rational(an_lower(B1, Br, r, n))); });
      row.n = n;
      add(std::move(row));
    }
    add(detail::evaluate_row("sigma1_lower", "sigma1", L, r, Rational(in.sigma1),
                             [&] { return E::exact(Rational(sigma1_lower(g, B1, Br, r))); }));
    // At g <= 3 the lemma variants are bypassed and the exact value is reported.
    auto note_degenerate = [&] {
      if (g <= 3 && rep.rows.back().hypotheses_met) rep.rows.back().hypothesis_note = "g <= 3: exact Q_r";
    };
    for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
      add(detail::evaluate_row(std::string("q_lower/") + to_string(v), "Q_r", L, r, Qr, [&] {
        need();
        return E::exact(qr_lower(v, q, r, g, Br, g > 3).value);
      }));
      note_degenerate();
    }
    add(detail::evaluate_row("main/exact_q", "h", L, r, h, [&] {
      need();
      return E::exact(h_lower_main(q, g, B1, Br, r, Qr));
    }));
    static const char* const kQNames[] = {"main/q_geometric", "main/q_binomial", "main/q_tail"};
    int idx = 0;
    for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
      add(detail::evaluate_row(kQNames[idx++], "h", L, r, h, [&] {
        need();
        return E::exact(h_lower_main(q, g, B1, Br, r, qr_lower(v, q, r, g, Br, g > 3).value));
      }));
      note_degenerate();
    }
    static const char* const kSimplified[] = {"simplified/geometric", "simplified/small_br", "simplified/large_br",
                                              "simplified/tail"};
    for (int c = 1; c <= 4; ++c)
      add(detail::evaluate_row(kSimplified[c - 1], "h", L, r, h,
                               [&] { return E::exact(h_lower_simplified(c, q, g, B1, Br, r)); }));
  }

  bool found = false;
  for (const auto& row : rep.rows) {
    if (row.target != "h" || row.kind != BoundKind::lower || !row.hypotheses_met) continue;
    const Rational v = row.reported();
    const bool better = !found || v > rep.best_value ||
                        (v == rep.best_value && std::tie(row.name, row.r) < std::tie(rep.best, rep.best_r));
    if (better) {
      found = true;
      rep.best = row.name;
      rep.best_r = row.r;
      rep.best_value = v;
    }
  }
  return rep;
}

}  // namespace classnum
