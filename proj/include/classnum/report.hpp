#pragma once

// Serialization of analysis results. Exact integers and rationals are JSON
// strings ("6/5"); every exact rational also carries a 6-significant-digit
// decimal for reading. The layouts are described in docs/formats.md.

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "classnum/analysis.hpp"
#include "classnum/asymptotics.hpp"
#include "classnum/towers.hpp"

namespace classnum {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// 6 significant digits, locale independent.
inline std::string decimal6(const Rational& r) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(6) << r.get_d();
  return s.str();
}

inline std::string decimal6(const Interval& x) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(6) << x.mid();
  return s.str();
}

inline Json to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

inline Json to_json(const BoundResult& b) {
  Json j;
  j["name"] = b.name;
  j["target"] = b.target;
  j["kind"] = b.kind == BoundKind::lower ? "lower" : "upper";
  j["r"] = b.r ? Json(*b.r) : Json(nullptr);
  j["n"] = b.n ? Json(*b.n) : Json(nullptr);
  j["hypotheses_met"] = b.hypotheses_met;
  j["note"] = b.hypothesis_note;
  if (b.value) {
    j["lo"] = b.value->lo.get_str();
    j["hi"] = b.value->hi.get_str();
    j["exact"] = b.value->is_exact();
    j["value_decimal"] = decimal6(b.reported());
  } else {
    j["lo"] = nullptr;
    j["hi"] = nullptr;
    j["exact"] = nullptr;
    j["value_decimal"] = nullptr;
  }
  j["actual"] = b.actual.get_str();
  j["dominance_ok"] = b.dominance_ok;
  return j;
}

inline Json to_json(const CurveAnalysis& a) {
  Json j;
  j["name"] = a.name;
  j["p"] = a.p;
  j["k"] = a.k;
  j["q"] = a.q;
  j["genus"] = a.g;
  j["model"] = a.model;
  j["status"] = a.ok ? "ok" : "error";
  if (!a.ok) {
    j["error"] = Json{{"kind", a.error_kind}, {"message", a.error_message}};
    return j;
  }
  j["N"] = to_json(a.N);
  j["B"] = to_json(a.B);
  j["zeta"] = to_json(a.zeta);
  j["h"] = a.h.get_str();
  j["weil_poly"] = to_json(a.weil);
  j["R"] = a.R.get_str();
  j["R_decimal"] = decimal6(a.R);
  j["A"] = to_json(a.A);
  j["sigma1"] = a.sigma.sigma1.get_str();
  j["sigma2"] = a.sigma.sigma2.get_str();
  j["S"] = a.sigma.S.get_str();
  j["identity"] = Json{{"lhs", a.identity.lhs.get_str()}, {"rhs", a.identity.rhs.get_str()},
                       {"holds", a.identity.holds}};
  j["roots"] = Json{{"distinct", a.roots.distinct_roots},
                    {"real", a.roots.real_roots},
                    {"in_interval", a.roots.roots_in_interval},
                    {"ok", a.roots.ok()}};
  j["numeric"] = Json{{"max_modulus_deviation", a.numeric.max_modulus_deviation},
                      {"resolvent", a.numeric.resolvent}};
  const auto& rep = *a.bounds;
  Json rows = Json::array();
  for (const auto& row : rep.rows) rows.push_back(to_json(row));
  j["bounds"] = Json{{"best", rep.best},
                     {"best_r", rep.best_r ? Json(*rep.best_r) : Json(nullptr)},
                     {"best_value", rep.best_value.get_str()},
                     {"best_decimal", decimal6(rep.best_value)},
                     {"all_dominance_ok", rep.all_dominance_ok()},
                     {"rows", rows}};
  j["checks_pass"] = a.checks_pass();
  return j;
}

/// True when a serialized curve passed every check.
inline bool curve_passes(const Json& c) { return c.value("status", "") == "ok" && c.value("checks_pass", false); }

inline Json analysis_document(const std::vector<Json>& curves) {
  Json doc;
  doc["schema"] = "classnum.analysis";
  doc["schema_version"] = kSchemaVersion;
  doc["code_version"] = kCodeVersion;
  doc["curves"] = Json::array();
  for (const auto& c : curves) doc["curves"].push_back(c);
  return doc;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string str_of(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace detail

inline const std::vector<std::string>& analysis_csv_columns() {
  static const std::vector<std::string> cols = {
      "curve", "q", "genus", "model", "status", "h", "R", "S", "bound", "target", "kind", "r", "n",
      "hypotheses_met", "lo", "hi", "value_decimal", "actual", "dominance_ok", "error"};
  return cols;
}

/// One line per bound row; curves that failed get a single line with the error.
inline std::string analysis_csv(const std::vector<Json>& curves) {
  std::ostringstream out;
  const auto& cols = analysis_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& c : curves) {
    auto head = [&](std::ostringstream& o) {
      o << detail::csv_field(c["name"].get<std::string>()) << ',' << c["q"].dump() << ',' << c["genus"].dump() << ','
        << c["model"].get<std::string>() << ',' << c["status"].get<std::string>() << ',';
    };
    if (c["status"] != "ok") {
      head(out);
      out << ",,,,,,,,,,,,,,," << detail::csv_field(c["error"]["kind"].get<std::string>() + ": " +
                                                   c["error"]["message"].get<std::string>())
          << '\n';
      continue;
    }
    for (const auto& row : c["bounds"]["rows"]) {
      head(out);
      out << c["h"].get<std::string>() << ',' << c["R"].get<std::string>() << ',' << c["S"].get<std::string>() << ','
          << detail::csv_field(row["name"].get<std::string>()) << ',' << row["target"].get<std::string>() << ','
          << row["kind"].get<std::string>() << ',' << detail::str_of(row["r"]) << ',' << detail::str_of(row["n"])
          << ',' << (row["hypotheses_met"].get<bool>() ? "true" : "false") << ',' << detail::str_of(row["lo"]) << ','
          << detail::str_of(row["hi"]) << ',' << detail::str_of(row["value_decimal"]) << ','
          << row["actual"].get<std::string>() << ',' << (row["dominance_ok"].get<bool>() ? "true" : "false")
          << ",\n";
    }
  }
  return out.str();
}

inline std::string analysis_table(const std::vector<Json>& curves) {
  std::ostringstream out;
  auto frac = [](const std::string& s) {
    Rational r(s);
    return s + " (" + decimal6(r) + ")";
  };
  for (const auto& c : curves) {
    out << "== " << c["name"].get<std::string>() << "  q=" << c["q"].dump() << " g=" << c["genus"].dump()
        << " model=" << c["model"].get<std::string>() << '\n';
    if (c["status"] != "ok") {
      out << "   error " << c["error"]["kind"].get<std::string>() << ": " << c["error"]["message"].get<std::string>()
          << "\n\n";
      continue;
    }
    auto list = [](const Json& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get<std::string>();
      return s;
    };
    out << "   N: " << list(c["N"]) << "   B: " << list(c["B"]) << '\n';
    out << "   P(T): " << list(c["zeta"]) << '\n';
    out << "   h = " << c["h"].get<std::string>() << "   R = " << frac(c["R"].get<std::string>())
        << "   S = " << c["S"].get<std::string>() << "   identity " << (c["identity"]["holds"].get<bool>() ? "ok" : "FAILED")
        << '\n';
    out << "   A: " << list(c["A"]) << "   Sigma1 = " << c["sigma1"].get<std::string>()
        << "   Sigma2 = " << c["sigma2"].get<std::string>() << '\n';
    const auto& b = c["bounds"];
    out << "   best lower bound on h: " << b["best"].get<std::string>();
    if (!b["best_r"].is_null()) out << " (r=" << b["best_r"].dump() << ")";
    out << " = " << frac(b["best_value"].get<std::string>()) << '\n';
    out << "   " << std::left << std::setw(26) << "bound" << std::setw(8) << "target" << std::setw(4) << "r"
        << std::setw(4) << "n" << "value\n";
    for (const auto& row : b["rows"]) {
      out << "   " << std::left << std::setw(26) << row["name"].get<std::string>() << std::setw(8)
          << row["target"].get<std::string>() << std::setw(4) << detail::str_of(row["r"]) << std::setw(4)
          << detail::str_of(row["n"]);
      if (!row["hypotheses_met"].get<bool>()) {
        out << "n/a (" << row["note"].get<std::string>() << ")\n";
        continue;
      }
      const bool lower = row["kind"] == "lower";
      const std::string v = lower ? row["lo"].get<std::string>() : row["hi"].get<std::string>();
      out << (lower ? ">= " : "<= ") << frac(v);
      if (!row["exact"].get<bool>()) out << " [enclosure]";
      if (!row["note"].get<std::string>().empty()) out << " [" << row["note"].get<std::string>() << "]";
      if (!row["dominance_ok"].get<bool>()) out << "  VIOLATED (actual " << row["actual"].get<std::string>() << ")";
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Tower sweeps

inline Json to_json(const TowerLevel& t) {
  Json j;
  j["family"] = to_string(t.spec.family);
  j["q"] = t.spec.q;
  j["r"] = t.spec.r;
  j["level"] = t.spec.level;
  j["genus"] = t.genus.get_str();
  j["genus_printed"] = t.genus_printed.get_str();
  j["b1_lower"] = t.b1_lower.get_str();
  j["b1_over_genus"] = t.genus == 0 ? Json(nullptr) : Json(decimal6(make_rational(t.b1_lower, t.genus)));
  j["alpha_sup"] = t.alpha_sup.get_str();
  j["base_sup_lo"] = decimal6(t.base_sup.lower());
  j["base_sup_hi"] = decimal6(t.base_sup.upper());
  j["log_q_base"] = decimal6(t.log_q_base);
  j["tsfasman_H"] = decimal6(t.tsfasman_H);
  return j;
}

inline Json to_json(const CatalogEntry& e) {
  Json j;
  j["family"] = to_string(e.spec.family);
  j["q"] = e.spec.q;
  j["r"] = e.spec.r;
  j["equation"] = e.spec.equation;
  j["mu1_lower"] = e.mu1_ext.get_str();
  j["alpha_sup"] = e.alpha_sup.get_str();
  j["ratio"] = e.ratio.get_str();
  j["base_sup"] = Json{{"prefactor", e.spec.q}, {"ratio", e.ratio.get_str()}, {"exponent", e.alpha_sup.get_str()}};
  j["base_sup_lo"] = decimal6(e.base_sup.lower());
  j["base_sup_hi"] = decimal6(e.base_sup.upper());
  j["note"] = e.note;
  return j;
}

inline std::string rows_csv(const Json& rows) {
  std::ostringstream out;
  if (rows.empty()) return "";
  bool first = true;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
    if (it.value().is_object()) continue;
    out << (first ? "" : ",") << it.key();
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (it.value().is_object()) continue;
      out << (first ? "" : ",") << detail::csv_field(detail::str_of(it.value()));
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

inline std::string rows_table(const Json& rows) {
  std::ostringstream out;
  if (rows.empty()) return "";
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
    if (!it.value().is_object()) keys.push_back(it.key());
  std::vector<std::size_t> width(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    width[i] = keys[i].size();
    for (const auto& row : rows) width[i] = std::max(width[i], detail::str_of(row[keys[i]]).size());
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out << std::left << std::setw(int(width[i] + 2)) << keys[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      out << std::left << std::setw(int(width[i] + 2)) << detail::str_of(row[keys[i]]);
    out << '\n';
  }
  return out.str();
}

}  // namespace classnum
