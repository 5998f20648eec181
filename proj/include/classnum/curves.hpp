#pragma once

// Curve input models, exhaustive point counting over F_{q^m}, and the
// passage from point counts N_m to place counts B_m.

#include <cstdint>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/errors.hpp"
#include "classnum/galois_field.hpp"

namespace classnum {

/// y^2 + h(x) y = f(x), coefficients over F_q in ascending degree.
struct Hyperelliptic {
  fq::Poly f;
  fq::Poly h;
};

struct PlaneTerm {
  GaloisField::Code coeff = 0;
  unsigned ex = 0, ey = 0, ez = 0;
};

/// Homogeneous F(X, Y, Z) = 0 in the projective plane.
struct SmoothPlane {
  std::vector<PlaneTerm> terms;
};

/// Point counts N_1..N_g supplied directly.
struct DirectSpectrum {
  std::vector<Integer> N;
};

using CurveModel = std::variant<Hyperelliptic, SmoothPlane, DirectSpectrum>;

struct CurveSpec {
  std::string name;
  FieldSpec field;
  unsigned genus = 2;
  CurveModel model;
};

struct PointCounts {
  std::vector<Integer> N;  // N[0] is the count over F_{q^1}
  std::uint64_t q = 2;
  unsigned g = 2;
};

struct PlaceSpectrum {
  std::vector<Integer> B;  // B[0] is the number of degree-1 places
  std::uint64_t q = 2;
  unsigned g = 2;

  std::size_t size() const noexcept { return B.size(); }
  /// B_d with 1-based degree; zero outside the stored range.
  Integer at(std::size_t d) const { return d >= 1 && d <= B.size() ? B[d - 1] : Integer(0); }
};

struct CountOptions {
  std::uint64_t ceiling = std::uint64_t{1} << 24;
  unsigned threads = 1;
};

inline const char* model_name(const CurveModel& m) {
  switch (m.index()) {
    case 0: return "hyperelliptic";
    case 1: return "plane";
    default: return "direct";
  }
}

namespace detail {

/// Number of v in F with v^2 + a v = b.
inline unsigned quadratic_solutions(const GaloisField& F, GaloisField::Code a, GaloisField::Code b) {
  if (F.characteristic() == 2) {
    if (a == 0) return 1;
    return F.trace2(F.div(b, F.mul(a, a))) == 0 ? 2 : 0;
  }
  // (2v + a)^2 = a^2 + 4b
  const auto four = F.from_int(4);
  const auto disc = F.add(F.mul(a, a), F.mul(four, b));
  return static_cast<unsigned>(1 + F.quadratic_character(disc));
}

inline fq::Poly map_poly(const fq::Poly& f, const std::vector<GaloisField::Code>& emb) {
  fq::Poly out;
  out.reserve(f.size());
  for (auto c : f) out.push_back(emb.at(c));
  return out;
}

inline GaloisField::Code coeff(const fq::Poly& f, std::size_t i) { return i < f.size() ? f[i] : 0; }

template <class Body>
std::uint64_t parallel_sum(std::uint64_t n, unsigned threads, Body body) {
  if (threads <= 1 || n < 4096) return body(0, n);
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
    pool.emplace_back([&, t, lo, hi] { partial[t] = body(lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace detail

/// Raises if `curve` violates the model constraints for its genus and field.
inline void validate(const CurveSpec& curve) {
  const unsigned g = curve.genus;
  if (g < 2) throw InputError(curve.name + ": genus must be >= 2");
  const GaloisField F(curve.field);
  auto check_codes = [&](const fq::Poly& f, const char* what) {
    for (auto c : f)
      if (c >= F.order()) throw InputError(curve.name + ": coefficient of " + what + " outside F_q");
  };
  if (const auto* hm = std::get_if<Hyperelliptic>(&curve.model)) {
    fq::Poly f = hm->f, h = hm->h;
    fq::trim(f);
    fq::trim(h);
    check_codes(f, "f");
    check_codes(h, "h");
    const int df = fq::degree(f);
    if (df != static_cast<int>(2 * g + 1) && df != static_cast<int>(2 * g + 2))
      throw InputError(curve.name + ": deg f must be 2g+1 or 2g+2, got " + std::to_string(df));
    if (F.characteristic() != 2) {
      if (!h.empty()) throw InputError(curve.name + ": h must be zero in odd characteristic");
      if (fq::degree(fq::gcd(F, f, fq::derivative(F, f))) > 0)
        throw InputError(curve.name + ": f is not squarefree");
    } else {
      if (h.empty()) throw InputError(curve.name + ": h must be nonzero in characteristic 2");
      if (fq::degree(h) > static_cast<int>(g + 1)) throw InputError(curve.name + ": deg h exceeds g+1");
      // Singular points lie over common roots of h and h'^2 f + f'^2.
      auto singular = [&](const fq::Poly& ff, const fq::Poly& hh) {
        const auto dh = fq::derivative(F, hh), dff = fq::derivative(F, ff);
        const auto crit = fq::add(F, fq::mul(F, fq::mul(F, dh, dh), ff), fq::mul(F, dff, dff));
        return fq::degree(fq::gcd(F, hh, crit)) > 0;
      };
      if (singular(f, h) || singular(fq::reverse(f, 2 * g + 2), fq::reverse(h, g + 1)))
        throw InputError(curve.name + ": the model is singular");
    }
  } else if (const auto* pm = std::get_if<SmoothPlane>(&curve.model)) {
    if (pm->terms.empty()) throw InputError(curve.name + ": plane model has no terms");
    const unsigned d = pm->terms.front().ex + pm->terms.front().ey + pm->terms.front().ez;
    for (const auto& t : pm->terms) {
      if (t.ex + t.ey + t.ez != d) throw InputError(curve.name + ": plane model is not homogeneous");
      if (t.coeff >= F.order()) throw InputError(curve.name + ": coefficient outside F_q");
    }
    if (d < 1) throw InputError(curve.name + ": plane model has degree 0");
  } else {
    const auto& dm = std::get<DirectSpectrum>(curve.model);
    if (dm.N.size() != g) throw InputError(curve.name + ": N must have exactly g entries");
    for (const auto& n : dm.N)
      if (n < 0) throw InputError(curve.name + ": N entries must be >= 0");
  }
}

/// Rational points of y^2 + h y = f over F_Q, where f and h already live in F_Q.
inline std::uint64_t count_hyperelliptic(const GaloisField& F, const fq::Poly& f, const fq::Poly& h, unsigned g,
                                         unsigned threads = 1) {
  const std::uint64_t affine = detail::parallel_sum(F.order(), threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t acc = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const auto c = static_cast<GaloisField::Code>(x);
      acc += detail::quadratic_solutions(F, fq::eval(F, h, c), fq::eval(F, f, c));
    }
    return acc;
  });
  const std::uint64_t infinity = detail::quadratic_solutions(F, detail::coeff(h, g + 1), detail::coeff(f, 2 * g + 2));
  return affine + infinity;
}

/// Projective zeros of a homogeneous polynomial over F_Q.
inline std::uint64_t count_plane(const GaloisField& F, const std::vector<PlaneTerm>& terms, unsigned threads = 1) {
  unsigned d = 0;
  for (const auto& t : terms) d = std::max(d, t.ex);
  const std::uint64_t Q = F.order();
  auto poly_in_x = [&](GaloisField::Code y, bool z_one) {
    fq::Poly g(d + 1, 0);
    for (const auto& t : terms) {
      if (!z_one && t.ez > 0) continue;
      g[t.ex] = F.add(g[t.ex], F.mul(t.coeff, F.pow(y, t.ey)));
    }
    return g;
  };
  // Chart Z = 1: every (x, y).
  const std::uint64_t affine = detail::parallel_sum(Q, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t acc = 0;
    for (std::uint64_t y = lo; y < hi; ++y) {
      const auto g = poly_in_x(static_cast<GaloisField::Code>(y), true);
      for (std::uint64_t x = 0; x < Q; ++x)
        if (fq::eval(F, g, static_cast<GaloisField::Code>(x)) == 0) ++acc;
    }
    return acc;
  });
  // Line Z = 0: points [x : 1 : 0] and [1 : 0 : 0].
  std::uint64_t at_infinity = 0;
  const auto g1 = poly_in_x(1, false);
  for (std::uint64_t x = 0; x < Q; ++x)
    if (fq::eval(F, g1, static_cast<GaloisField::Code>(x)) == 0) ++at_infinity;
  GaloisField::Code corner = 0;
  for (const auto& t : terms)
    if (t.ey == 0 && t.ez == 0) corner = F.add(corner, t.coeff);
  if (corner == 0) ++at_infinity;
  return affine + at_infinity;
}

/// Number of points enumerated when counting `model` over a field with Q elements.
inline Integer enumeration_size(const CurveModel& model, std::uint64_t Q) {
  if (std::holds_alternative<SmoothPlane>(model)) return Integer(Q) * Q + Q + 1;
  return Integer(Q);
}

/// N_m: degree-one places of the constant field extension to F_{q^m}.
inline Integer count_points(const CurveSpec& curve, unsigned m, const CountOptions& opt = {}) {
  if (m < 1) throw DomainError("extension degree m must be >= 1");
  if (std::holds_alternative<DirectSpectrum>(curve.model))
    throw ModelUnsupported(curve.name + ": counts of a direct spectrum are given, not computed");
  const Integer Q = pow(curve.field.q, m);
  if (Q > opt.ceiling || enumeration_size(curve.model, Q.get_ui()) > opt.ceiling)
    throw CeilingExceeded(curve.name + ": enumeration over F_" + Q.get_str() + " exceeds the ceiling " +
                          std::to_string(opt.ceiling));
  const GaloisField small(curve.field);
  const GaloisField big(m == 1 ? curve.field : FieldSpec::make(curve.field.p, curve.field.k * m));
  const auto emb = embedding_table(small, big);
  if (const auto* hm = std::get_if<Hyperelliptic>(&curve.model)) {
    return Integer(count_hyperelliptic(big, detail::map_poly(hm->f, emb), detail::map_poly(hm->h, emb), curve.genus,
                                       opt.threads));
  }
  auto terms = std::get<SmoothPlane>(curve.model).terms;
  for (auto& t : terms) t.coeff = emb.at(t.coeff);
  return Integer(count_plane(big, terms, opt.threads));
}

/// Some N_m lies outside |N_m - (q^m + 1)| <= 2g q^(m/2).
inline void check_weil(const PointCounts& counts, const std::string& name = {}) {
  for (std::size_t i = 0; i < counts.N.size(); ++i) {
    const unsigned m = static_cast<unsigned>(i + 1);
    const Integer qm = pow(counts.q, m);
    const Integer dev = counts.N[i] - qm - 1;
    if (dev * dev > 4 * Integer(counts.g) * counts.g * qm)
      throw InconsistentCounts((name.empty() ? std::string() : name + ": ") + "N_" + std::to_string(m) + " = " +
                               counts.N[i].get_str() + " lies outside the Weil interval for g = " +
                               std::to_string(counts.g));
  }
}

inline PointCounts point_counts(const CurveSpec& curve, unsigned M, const CountOptions& opt = {}) {
  PointCounts out{{}, curve.field.q, curve.genus};
  if (const auto* dm = std::get_if<DirectSpectrum>(&curve.model)) {
    if (M > dm->N.size()) throw SpectrumTooShort(curve.name + ": direct spectrum has fewer than M counts");
    out.N.assign(dm->N.begin(), dm->N.begin() + M);
    return out;
  }
  for (unsigned m = 1; m <= M; ++m) out.N.push_back(count_points(curve, m, opt));
  return out;
}

/// B_m = (1/m) sum_{d | m} mu(d) N_{m/d}.
inline PlaceSpectrum mobius_invert_points(const PointCounts& counts) {
  if (counts.N.empty()) throw InputError("no point counts to invert");
  PlaceSpectrum out{{}, counts.q, counts.g};
  for (std::uint64_t m = 1; m <= counts.N.size(); ++m) {
    Integer sum = 0;
    for (auto d : divisors(m)) sum += moebius(d) * counts.N[m / d - 1];
    if (sum < 0 || sum % m != 0)
      throw InconsistentCounts("Moebius inversion gives B_" + std::to_string(m) + " = " + sum.get_str() + "/" +
                               std::to_string(m));
    out.B.push_back(sum / m);
  }
  return out;
}

/// N_m = sum_{d | m} d B_d.
inline PointCounts points_from_places(const PlaceSpectrum& spec) {
  PointCounts out{{}, spec.q, spec.g};
  for (std::uint64_t m = 1; m <= spec.B.size(); ++m) {
    Integer sum = 0;
    for (auto d : divisors(m)) sum += Integer(d) * spec.B[d - 1];
    out.N.push_back(sum);
  }
  return out;
}

inline PlaceSpectrum spectrum(const CurveSpec& curve, const CountOptions& opt = {}) {
  validate(curve);
  const auto counts = point_counts(curve, curve.genus, opt);
  check_weil(counts, curve.name);
  try {
    return mobius_invert_points(counts);
  } catch (const InconsistentCounts& e) {
    throw InconsistentCounts(curve.name + ": " + e.what());
  }
}

}  // namespace classnum
