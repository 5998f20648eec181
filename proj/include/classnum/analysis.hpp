#pragma once

// Per-curve pipeline: spectrum, zeta numerator, class number, divisor counts,
// the sums Sigma_1, Sigma_2, S, the resolvent, the identity S = hR and the
// full bound report.

#include <optional>
#include <string>
#include <vector>

#include "classnum/bounds.hpp"
#include "classnum/curves.hpp"
#include "classnum/divisors.hpp"
#include "classnum/errors.hpp"
#include "classnum/zeta.hpp"

namespace classnum {

inline constexpr const char* kCodeVersion = "classnum-1.0.0";

struct AnalysisOptions {
  CountOptions count;
  std::vector<unsigned> r_choices;  // empty: every r with B_r > 0
  mpfr_prec_t precision = kDefaultPrecision;
};

struct CurveAnalysis {
  std::string name;
  std::uint32_t p = 2;
  unsigned k = 1;
  std::uint64_t q = 2;
  unsigned g = 2;
  std::string model;

  bool ok = false;
  std::string error_kind;
  std::string error_message;

  std::vector<Integer> N;
  std::vector<Integer> B;
  std::vector<Integer> zeta;
  Integer h;
  std::vector<Integer> weil;
  Rational R;
  std::vector<Integer> A;
  SigmaValues sigma;
  IdentityCheck identity;
  RootLocation roots;
  NumericDiagnostics numeric;
  std::optional<BoundReport> bounds;

  /// Identity holds, roots located, and every bound row dominated.
  bool checks_pass() const {
    return ok && identity.holds && roots.ok() && bounds && bounds->all_dominance_ok();
  }
};

inline const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const InputError*>(&e)) return "InputError";
  if (dynamic_cast<const CeilingExceeded*>(&e)) return "CeilingExceeded";
  if (dynamic_cast<const ModelUnsupported*>(&e)) return "ModelUnsupported";
  if (dynamic_cast<const InconsistentCounts*>(&e)) return "InconsistentCounts";
  if (dynamic_cast<const NonIntegralCoefficient*>(&e)) return "NonIntegralCoefficient";
  if (dynamic_cast<const MatchFailure*>(&e)) return "MatchFailure";
  if (dynamic_cast<const IdentityViolation*>(&e)) return "IdentityViolation";
  if (dynamic_cast<const SpectrumTooShort*>(&e)) return "SpectrumTooShort";
  if (dynamic_cast<const HypothesisFailed*>(&e)) return "HypothesisFailed";
  if (dynamic_cast<const DegenerateGenus*>(&e)) return "DegenerateGenus";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

/// Runs the pipeline; library errors are recorded on the result rather than thrown.
inline CurveAnalysis analyze_curve(const CurveSpec& curve, const AnalysisOptions& opt = {}) {
  CurveAnalysis a;
  a.name = curve.name;
  a.p = curve.field.p;
  a.k = curve.field.k;
  a.q = curve.field.q;
  a.g = curve.genus;
  a.model = model_name(curve.model);
  try {
    const auto spec = spectrum(curve, opt.count);
    a.B = spec.B;
    a.N = points_from_places(spec).N;
    const auto P = zeta_numerator(PointCounts{a.N, a.q, a.g});
    check_functional_equation(P);
    a.zeta = P.c;
    a.h = class_number(P);
    const auto W = real_weil_poly(P);
    a.weil = W.w;
    a.roots = locate_weil_roots(W);
    a.R = resolvent(W);
    a.numeric = numeric_diagnostics(P);
    a.A = divisor_counts(spec, a.g - 1).A;
    a.sigma = sigma_values(DivisorCounts{a.A}, a.q, a.g);
    a.identity = check_main_identity(a.sigma.S, a.h, W);
    a.bounds = bound_report(BoundInputs{a.name, a.q, a.g, a.B, a.h, a.A, a.sigma.sigma1, a.R}, opt.r_choices,
                            opt.precision);
    a.ok = true;
  } catch (const Error& e) {
    a.ok = false;
    a.error_kind = error_kind(e);
    a.error_message = e.what();
  }
  return a;
}

}  // namespace classnum
