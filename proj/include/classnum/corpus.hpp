#pragma once

// Curve corpus files: a YAML stream with one document per curve.
//
//   name: klein_quartic_f2
//   p: 2
//   k: 1
//   modulus: [1, 1, 1]   # optional, ascending; default is the smallest irreducible
//   genus: 3
//   model: plane         # hyperelliptic | plane | direct
//   F: [[1, 3, 1, 0], [1, 0, 3, 1], [1, 1, 0, 3]]   # [coeff, deg X, deg Y, deg Z]
//
// Hyperelliptic entries give f and h (ascending degree); direct entries give N.
// A coefficient is an integer (reduced mod p) or a digit list for F_{p^k}.

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classnum/curves.hpp"
#include "classnum/errors.hpp"
#include "classnum/galois_field.hpp"

namespace classnum {

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

template <class T>
T scalar_as(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ParseError("expected a scalar", line_of(n), field);
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError("cannot read '" + n.Scalar() + "'", line_of(n), field);
  }
}

inline Integer integer_of(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ParseError("expected an integer", line_of(n), field);
  Integer v;
  if (v.set_str(n.Scalar(), 10) != 0) throw ParseError("'" + n.Scalar() + "' is not an integer", line_of(n), field);
  return v;
}

inline GaloisField::Code element_of(const GaloisField& F, const YAML::Node& n, const std::string& field) {
  try {
    if (n.IsScalar()) return F.from_int(scalar_as<long long>(n, field));
    if (n.IsSequence()) {
      std::vector<std::uint32_t> digits;
      for (const auto& d : n) digits.push_back(scalar_as<std::uint32_t>(d, field));
      return F.from_digits(digits);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(e.what(), line_of(n), field);
  }
  throw ParseError("expected an integer or a digit list", line_of(n), field);
}

inline fq::Poly poly_of(const GaloisField& F, const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw ParseError("expected a coefficient list", line_of(n), field);
  fq::Poly out;
  for (const auto& c : n) out.push_back(element_of(F, c, field));
  return out;
}

inline CurveSpec curve_of(const YAML::Node& doc) {
  if (!doc.IsMap()) throw ParseError("a curve entry must be a mapping", line_of(doc), "");
  static const std::set<std::string> kKeys = {"name", "p", "k", "modulus", "genus", "model", "f", "h", "F", "N"};
  for (const auto& kv : doc) {
    const auto key = kv.first.as<std::string>();
    if (!kKeys.count(key)) throw ParseError("unknown key", line_of(kv.first), key);
  }
  auto need = [&](const char* key) {
    const YAML::Node n = doc[key];
    if (!n) throw ParseError("missing required key", line_of(doc), key);
    return n;
  };
  CurveSpec c;
  c.name = scalar_as<std::string>(need("name"), "name");
  const auto p = scalar_as<std::uint32_t>(need("p"), "p");
  const auto k = doc["k"] ? scalar_as<unsigned>(doc["k"], "k") : 1u;
  try {
    if (doc["modulus"]) {
      fp::Poly mod;
      for (const auto& d : doc["modulus"]) mod.push_back(scalar_as<std::uint32_t>(d, "modulus"));
      c.field = FieldSpec::make(p, k, mod);
    } else {
      c.field = FieldSpec::make(p, k);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(e.what(), line_of(doc["p"]), doc["modulus"] ? "modulus" : "p");
  }
  const auto g = scalar_as<int>(need("genus"), "genus");
  if (g < 2) throw ParseError("genus must be >= 2", line_of(doc["genus"]), "genus");
  c.genus = static_cast<unsigned>(g);
  const auto kind = scalar_as<std::string>(need("model"), "model");
  const GaloisField F(c.field);
  if (kind == "hyperelliptic") {
    Hyperelliptic m;
    m.f = poly_of(F, need("f"), "f");
    if (doc["h"]) m.h = poly_of(F, doc["h"], "h");
    c.model = m;
  } else if (kind == "plane") {
    SmoothPlane m;
    const YAML::Node terms = need("F");
    if (!terms.IsSequence()) throw ParseError("expected a list of terms", line_of(terms), "F");
    for (const auto& t : terms) {
      if (!t.IsSequence() || t.size() != 4)
        throw ParseError("a term is [coeff, deg X, deg Y, deg Z]", line_of(t), "F");
      m.terms.push_back(PlaneTerm{element_of(F, t[0], "F"), scalar_as<unsigned>(t[1], "F"),
                                  scalar_as<unsigned>(t[2], "F"), scalar_as<unsigned>(t[3], "F")});
    }
    c.model = m;
  } else if (kind == "direct") {
    DirectSpectrum m;
    const YAML::Node N = need("N");
    if (!N.IsSequence()) throw ParseError("expected a list of point counts", line_of(N), "N");
    for (const auto& v : N) m.N.push_back(integer_of(v, "N"));
    c.model = m;
  } else {
    throw ParseError("model must be hyperelliptic, plane or direct", line_of(doc["model"]), "model");
  }
  try {
    validate(c);
  } catch (const InputError& e) {
    throw ParseError(e.what(), line_of(doc), "model");
  }
  return c;
}

}  // namespace detail

inline std::vector<CurveSpec> parse_corpus(std::istream& in) {
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(in);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, "");
  }
  std::vector<CurveSpec> out;
  std::set<std::string> names;
  for (const auto& doc : docs) {
    if (doc.IsNull()) continue;
    auto c = detail::curve_of(doc);
    if (!names.insert(c.name).second) throw ParseError("duplicate curve name " + c.name, detail::line_of(doc), "name");
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<CurveSpec> parse_corpus_string(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

inline std::vector<CurveSpec> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus " + path);
  return parse_corpus(in);
}

/// Stable textual form of a curve, used for cache keys.
inline std::string canonical(const CurveSpec& c) {
  std::ostringstream s;
  s << "name=" << c.name << ";p=" << c.field.p << ";k=" << c.field.k << ";mod=";
  for (auto d : c.field.modulus) s << d << ',';
  s << ";g=" << c.genus << ";model=" << model_name(c.model) << ';';
  if (const auto* h = std::get_if<Hyperelliptic>(&c.model)) {
    s << "f=";
    for (auto x : h->f) s << x << ',';
    s << ";h=";
    for (auto x : h->h) s << x << ',';
  } else if (const auto* pl = std::get_if<SmoothPlane>(&c.model)) {
    for (const auto& t : pl->terms) s << t.coeff << '*' << t.ex << '.' << t.ey << '.' << t.ez << ',';
  } else {
    for (const auto& n : std::get<DirectSpectrum>(c.model).N) s << n.get_str() << ',';
  }
  return s.str();
}

}  // namespace classnum
