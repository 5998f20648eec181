#pragma once

// Named property suites run by `classnum verify`. Each suite reports the
// number of cases checked and, on failure, a shrunk counterexample.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "classnum/analysis.hpp"
#include "classnum/asymptotics.hpp"
#include "classnum/report.hpp"
#include "classnum/towers.hpp"

namespace classnum {

enum class Fault { none, binomial_off_by_one };

struct VerifyConfig {
  std::vector<CurveSpec> corpus;
  std::uint64_t seed = 20240601;
  std::uint64_t oracle_ceiling = kDefaultOracleCeiling;
  CountOptions count;
  std::uint64_t roundtrip_ceiling = std::uint64_t{1} << 18;  // enumeration size for N_{g+1}..N_{2g}
  mpfr_prec_t precision = kDefaultPrecision;
  Fault fault = Fault::none;
};

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::string message;
  Json counterexample;

  void fail(std::string msg, Json example) {
    if (!passed) return;  // keep the first failure
    passed = false;
    message = std::move(msg);
    counterexample = std::move(example);
  }
};

namespace detail {

inline std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& name) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(std::hash<std::string>{}(name))};
  return std::mt19937_64(seq);
}

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline std::function<Integer(const Integer&, std::uint64_t)> oracle_choose(Fault f) {
  if (f == Fault::binomial_off_by_one)
    return [](const Integer& top, std::uint64_t k) { return binomial(Integer(top + 1), k); };
  return {};
}

inline Json spectrum_json(const PlaceSpectrum& s) {
  Json b = Json::array();
  for (const auto& x : s.B) b.push_back(x.get_str());
  return Json{{"q", s.q}, {"g", s.g}, {"B", b}};
}

/// Greedy shrink of a failing (spectrum, n): lower n, then each B_d, while the failure persists.
inline std::pair<PlaceSpectrum, std::uint64_t> shrink(PlaceSpectrum s, std::uint64_t n,
                                                      const std::function<bool(const PlaceSpectrum&, std::uint64_t)>& fails) {
  for (bool changed = true; changed;) {
    changed = false;
    while (n > 0 && fails(s, n - 1)) {
      --n;
      changed = true;
    }
    for (std::size_t d = 0; d < s.B.size(); ++d) {
      while (s.B[d] > 0) {
        PlaceSpectrum t = s;
        t.B[d] -= 1;
        if (!fails(t, n)) break;
        s = std::move(t);
        changed = true;
      }
    }
  }
  s.B.resize(std::max<std::size_t>(n, 1));
  return {s, n};
}

inline std::vector<CurveAnalysis> analyses(const VerifyConfig& cfg) {
  std::vector<CurveAnalysis> out;
  AnalysisOptions opt;
  opt.count = cfg.count;
  opt.precision = cfg.precision;
  for (const auto& c : cfg.corpus) out.push_back(analyze_curve(c, opt));
  return out;
}

}  // namespace detail

inline SuiteResult suite_binomial(const VerifyConfig&) {
  SuiteResult res{"binomial"};
  for (std::uint64_t n = 1; n <= 200; ++n)
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
      ++res.cases;
      const Integer lhs = binomial(n, k), rhs = binomial(n - 1, k - 1) + binomial(n - 1, k);
      if (lhs != rhs) res.fail("Pascal rule fails", Json{{"n", n}, {"k", k}});
    }
  return res;
}

inline SuiteResult suite_moebius(const VerifyConfig&) {
  SuiteResult res{"moebius"};
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    ++res.cases;
    int s = 0;
    for (auto d : divisors(n)) s += moebius(d);
    if (s != (n == 1 ? 1 : 0)) res.fail("sum of mu(d) over d | n is wrong", Json{{"n", n}, {"sum", s}});
  }
  return res;
}

inline SuiteResult suite_series(const VerifyConfig& cfg) {
  SuiteResult res{"series"};
  auto rng = detail::suite_rng(cfg.seed, res.name);
  for (int t = 0; t < 200; ++t) {
    const std::size_t nmax = detail::uniform(rng, 0, 14);
    auto make = [&] {
      return series_pow_negbinom(detail::uniform(rng, 1, 5), Integer(detail::uniform(rng, 0, 6)), nmax);
    };
    const auto a = make(), b = make(), c = make();
    ++res.cases;
    if (!(a * b == b * a)) res.fail("series product is not commutative", Json{{"trial", t}});
    if (!((a * b) * c == a * (b * c))) res.fail("series product is not associative", Json{{"trial", t}});
  }
  return res;
}

inline SuiteResult suite_field(const VerifyConfig&) {
  SuiteResult res{"field"};
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u}) {
    for (unsigned k = 1; pow(std::uint64_t{p}, k) <= 64; ++k) {
      const GaloisField F(FieldSpec::make(p, k));
      const auto q = static_cast<GaloisField::Code>(F.order());
      for (GaloisField::Code x = 0; x < q; ++x) {
        ++res.cases;
        if (F.pow(x, q) != x) res.fail("x^q != x", Json{{"q", q}, {"x", x}});
        if (x != 0 && F.mul(x, F.inv(x)) != 1) res.fail("x * x^-1 != 1", Json{{"q", q}, {"x", x}});
        for (GaloisField::Code y = 0; y < q; ++y)
          if (F.pow(F.add(x, y), p) != F.add(F.pow(x, p), F.pow(y, p)))
            res.fail("Frobenius is not additive", Json{{"q", q}, {"x", x}, {"y", y}});
      }
    }
  }
  return res;
}

inline SuiteResult suite_inversion(const VerifyConfig& cfg) {
  SuiteResult res{"inversion"};
  auto rng = detail::suite_rng(cfg.seed, res.name);
  for (int t = 0; t < 300; ++t) {
    PlaceSpectrum s{{}, detail::uniform(rng, 2, 9), 2};
    const auto M = detail::uniform(rng, 1, 12);
    for (std::uint64_t d = 0; d < M; ++d) s.B.push_back(Integer(detail::uniform(rng, 0, 50)));
    ++res.cases;
    if (mobius_invert_points(points_from_places(s)).B != s.B)
      res.fail("inversion does not undo the divisor sum", detail::spectrum_json(s));
  }
  return res;
}

inline SuiteResult suite_oracle(const VerifyConfig& cfg) {
  SuiteResult res{"oracle"};
  const auto choose = detail::oracle_choose(cfg.fault);
  auto fails = [&](const PlaceSpectrum& s, std::uint64_t n) {
    if (s.size() < n) return false;
    return divisor_counts(s, n).A[n] != brute_force_A_n(s, n, cfg.oracle_ceiling, choose);
  };
  auto check = [&](const PlaceSpectrum& s, std::uint64_t n, const std::string& origin) {
    ++res.cases;
    if (!fails(s, n)) return;
    if (!res.passed) return;
    const auto [ms, mn] = detail::shrink(s, n, fails);
    res.fail("generating-function A_n differs from enumeration",
             Json{{"origin", origin},
                  {"spectrum", detail::spectrum_json(ms)},
                  {"n", mn},
                  {"series", divisor_counts(ms, mn).A[mn].get_str()},
                  {"enumeration", brute_force_A_n(ms, mn, cfg.oracle_ceiling, choose).get_str()}});
  };
  for (const auto& c : cfg.corpus) {
    PlaceSpectrum s;
    try {
      s = spectrum(c, cfg.count);
    } catch (const Error&) {
      ++res.skipped;
      continue;
    }
    const std::uint64_t top = std::min<std::uint64_t>({c.genus - 1, 8, cfg.oracle_ceiling});
    for (std::uint64_t n = 0; n <= top; ++n) check(s, n, c.name);
  }
  auto rng = detail::suite_rng(cfg.seed, res.name);
  for (int t = 0; t < 200; ++t) {
    PlaceSpectrum s{{}, detail::uniform(rng, 2, 9), 2};
    for (int d = 0; d < 8; ++d) s.B.push_back(Integer(detail::uniform(rng, 0, 5)));
    const std::uint64_t n = std::min<std::uint64_t>(detail::uniform(rng, 0, 8), cfg.oracle_ceiling);
    check(s, n, "random#" + std::to_string(t));
  }
  return res;
}

inline SuiteResult suite_roundtrip(const VerifyConfig& cfg) {
  SuiteResult res{"roundtrip"};
  for (const auto& c : cfg.corpus) {
    if (std::holds_alternative<DirectSpectrum>(c.model)) {
      ++res.skipped;
      continue;
    }
    try {
      const auto counts = point_counts(c, c.genus, cfg.count);
      const auto P = zeta_numerator(counts);
      const auto ext = extend_point_counts(P, 2 * c.genus);
      CountOptions wide = cfg.count;
      wide.ceiling = std::min(cfg.count.ceiling, cfg.roundtrip_ceiling);
      for (unsigned m = c.genus + 1; m <= 2 * c.genus; ++m) {
        Integer direct;
        try {
          direct = count_points(c, m, wide);
        } catch (const CeilingExceeded&) {
          ++res.skipped;
          continue;
        }
        ++res.cases;
        if (direct != ext.N[m - 1])
          res.fail("point count predicted by the zeta numerator differs from enumeration",
                   Json{{"curve", c.name}, {"m", m}, {"predicted", ext.N[m - 1].get_str()}, {"enumerated", direct.get_str()}});
      }
    } catch (const Error& e) {
      res.fail(e.what(), Json{{"curve", c.name}});
    }
  }
  return res;
}

inline SuiteResult suite_identity(const VerifyConfig& cfg) {
  SuiteResult res{"identity"};
  for (const auto& a : detail::analyses(cfg)) {
    ++res.cases;
    if (!a.ok) {
      res.fail(a.error_message, Json{{"curve", a.name}, {"error", a.error_kind}});
      continue;
    }
    if (!a.identity.holds)
      res.fail("S W(q+1) != h W'(q+1)",
               Json{{"curve", a.name}, {"lhs", a.identity.lhs.get_str()}, {"rhs", a.identity.rhs.get_str()}});
    if (!a.roots.ok()) res.fail("real Weil polynomial has roots outside [-2 sqrt q, 2 sqrt q]", Json{{"curve", a.name}});
  }
  return res;
}

inline SuiteResult suite_weil(const VerifyConfig& cfg) {
  SuiteResult res{"weil"};
  for (const auto& a : detail::analyses(cfg)) {
    if (!a.ok) {
      ++res.skipped;
      continue;
    }
    ++res.cases;
    const auto [lo, hi] = weil_interval(a.q, a.g, cfg.precision);
    if (!(lo.hi <= Rational(a.h) && Rational(a.h) <= hi.lo))
      res.fail("h outside the certified Weil interval", Json{{"curve", a.name}, {"h", a.h.get_str()}});
  }
  return res;
}

inline SuiteResult suite_dominance(const VerifyConfig& cfg) {
  SuiteResult res{"dominance"};
  for (const auto& a : detail::analyses(cfg)) {
    if (!a.ok) {
      ++res.skipped;
      continue;
    }
    for (const auto& row : a.bounds->rows) {
      if (!row.hypotheses_met) continue;
      ++res.cases;
      if (!row.dominance_ok) res.fail("bound on the wrong side of the exact value", Json{{"curve", a.name}, {"row", to_json(row)}});
    }
  }
  return res;
}

/// Q_r lower bounds against the exact Q_r, and the Taylor remainder bound against the exact tail.
inline SuiteResult suite_qr(const VerifyConfig&) {
  SuiteResult res{"qr"};
  for (std::uint64_t q : {2, 3, 4, 5})
    for (std::uint64_t r = 1; r <= 3; ++r)
      for (std::uint64_t g = 2; g <= 14; ++g)
        for (std::uint64_t b = 1; b <= 30; ++b) {
          const Integer Br(b);
          const Rational exact = exact_Qr(Br, q, r, g);
          for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
            try {
              const auto lb = qr_lower(v, q, r, g, Br, true);
              ++res.cases;
              if (lb.value > exact)
                res.fail("Q_r lower bound exceeds the exact Q_r",
                         Json{{"variant", to_string(v)}, {"q", q}, {"r", r}, {"g", g}, {"B_r", b},
                              {"bound", lb.value.get_str()}, {"exact", exact.get_str()}});
            } catch (const HypothesisFailed&) {
            } catch (const DegenerateGenus&) {
            }
          }
          for (std::uint64_t M = 0; M <= 12; ++M) {
            if (!remainder_regime_holds(Br, M, q, r)) continue;
            ++res.cases;
            if (taylor_tail_exact(Br, M, q, r) > taylor_remainder_upper(Br, M, q, r))
              res.fail("Taylor remainder exceeds its bound", Json{{"q", q}, {"r", r}, {"B_r", b}, {"M", M}});
          }
        }
  return res;
}

inline SuiteResult suite_closed_form(const VerifyConfig& cfg) {
  SuiteResult res{"closed_form"};
  auto rng = detail::suite_rng(cfg.seed, res.name);
  for (int t = 0; t < 500; ++t) {
    const auto N = detail::uniform(rng, 0, 40);
    const auto k = detail::uniform(rng, 0, N);
    const auto den = detail::uniform(rng, 2, 1000);
    const Rational x = make_rational(Integer(detail::uniform(rng, 1, den - 1)), Integer(den));
    ++res.cases;
    if (q_direct_sum(N, k, x) != q_closed_form(N, k, x))
      res.fail("closed form differs from the direct sum", Json{{"N", N}, {"k", k}, {"x", x.get_str()}});
  }
  return res;
}

inline SuiteResult suite_asymptotics(const VerifyConfig& cfg) {
  SuiteResult res{"asymptotics"};
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {4, 1}}) {
    ++res.cases;
    if (!compare_inner_factor(q, r, cfg.precision).equal)
      res.fail("inner factor should equal sqrt(q)", Json{{"q", q}, {"r", r}});
  }
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27})
    for (unsigned r = 1; r <= 4; ++r) {
      ++res.cases;
      if (!compare_inner_factor(q, r, cfg.precision).below_exp)
        res.fail("inner factor not below e^(1/r)", Json{{"q", q}, {"r", r}});
      if (q < 4 && r == 1) continue;
      const auto s = sweep_q1_below_q(q, r, 16, default_eta(), cfg.precision);
      res.cases += s.points;
      if (s.certified != s.points) res.fail("q1 < q not certified", Json{{"q", q}, {"r", r}});
    }
  ++res.cases;
  if (!certainly_less(f_mu1_sup(2, 2000, cfg.precision), make_rational(89, 100))) res.fail("f(mu) < 0.89 not certified for q = 2", Json{});
  ++res.cases;
  if (!certainly_less(f_mu1_sup(3, 2000, cfg.precision), make_rational(81, 100))) res.fail("f(mu) < 0.81 not certified for q = 3", Json{});
  return res;
}

inline SuiteResult suite_towers(const VerifyConfig&) {
  SuiteResult res{"towers"};
  // Level 1 of the tower is the rational function field; level 2 is the Hermitian curve.
  for (std::uint64_t l : {2, 3, 4, 5, 7, 8, 9}) {
    const Integer qr = Integer(l) * l;
    res.cases += 2;
    if (gs_genus(qr, 1) != 0) res.fail("level 1 must have genus 0", Json{{"l", l}});
    if (gs_genus(qr, 2) != Integer(l) * (l - 1) / 2) res.fail("level 2 must be Hermitian", Json{{"l", l}});
  }
  for (const auto& e : tower_catalog()) {
    ++res.cases;
    if (e.alpha_sup != e.mu1_ext / e.spec.r) res.fail("alpha sup must be mu_1 / r", to_json(e));
  }
  return res;
}

inline const std::vector<std::pair<std::string, SuiteResult (*)(const VerifyConfig&)>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteResult (*)(const VerifyConfig&)>> t = {
      {"binomial", suite_binomial}, {"moebius", suite_moebius},       {"series", suite_series},
      {"field", suite_field},       {"inversion", suite_inversion},   {"oracle", suite_oracle},
      {"roundtrip", suite_roundtrip}, {"identity", suite_identity},  {"weil", suite_weil},
      {"dominance", suite_dominance}, {"qr", suite_qr},              {"closed_form", suite_closed_form},
      {"asymptotics", suite_asymptotics}, {"towers", suite_towers},
  };
  return t;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [n, f] : suite_table()) out.push_back(n);
  return out;
}

inline std::vector<SuiteResult> run_suites(const VerifyConfig& cfg, const std::vector<std::string>& only = {}) {
  for (const auto& name : only) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw InputError("unknown suite " + name);
  }
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : suite_table()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    out.push_back(fn(cfg));
  }
  return out;
}

inline Json to_json(const SuiteResult& s) {
  Json j{{"suite", s.name}, {"passed", s.passed}, {"cases", s.cases}, {"skipped", s.skipped}};
  j["message"] = s.message;
  j["counterexample"] = s.passed ? Json(nullptr) : s.counterexample;
  return j;
}

inline Json verify_document(const std::vector<SuiteResult>& results, std::uint64_t seed) {
  Json doc{{"schema", "classnum.verify"}, {"schema_version", kSchemaVersion}, {"code_version", kCodeVersion},
           {"seed", seed}};
  bool all = true;
  doc["suites"] = Json::array();
  for (const auto& r : results) {
    doc["suites"].push_back(to_json(r));
    all = all && r.passed;
  }
  doc["passed"] = all;
  return doc;
}

}  // namespace classnum
