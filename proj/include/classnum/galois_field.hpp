#pragma once

// Finite fields F_q, q = p^k, with elements encoded as 32-bit integers whose
// base-p digits are the coefficients of the polynomial representative.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "classnum/algebra.hpp"
#include "classnum/errors.hpp"

namespace classnum {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Dense polynomials over the prime field F_p, coefficients in ascending degree.
namespace fp {

using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e != 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

inline Poly sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  Poly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

/// Remainder of a modulo m (m nonzero).
inline Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const int dm = degree(m);
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (degree(a) >= dm) {
    const int shift = degree(a) - dm;
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (int i = 0; i <= dm; ++i) {
      auto& c = a[static_cast<std::size_t>(shift + i)];
      c = static_cast<std::uint32_t>((c + p - factor * m[static_cast<std::size_t>(i)] % p) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
  }
  return a;
}

/// base^e mod m with e given as a big integer.
inline Poly powmod(const Poly& base, const Integer& e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  Poly b = mod(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = mod(mul(result, b, p), m, p);
  }
  return result;
}

/// A degree-k polynomial is irreducible iff it has no factor of degree <= k/2,
/// i.e. gcd(x^(p^i) - x, f) = 1 for i = 1..k/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int k = degree(f);
  if (k < 1) return false;
  if (k == 1) return true;
  const Poly x{0, 1};
  Poly xp = x;
  for (int i = 1; i <= k / 2; ++i) {
    xp = powmod(xp, Integer(p), f, p);
    if (degree(gcd(f, sub(xp, x, p), p)) > 0) return false;
  }
  return true;
}

/// Smallest monic irreducible of degree k in the order that reads (c_{k-1} ... c_0) as a base-p number.
inline Poly smallest_irreducible(std::uint32_t p, unsigned k) {
  if (k == 0) throw InputError("extension degree must be >= 1");
  if (k == 1) return {0, 1};
  const std::uint64_t limit = pow(std::uint64_t{p}, k).get_ui();
  for (std::uint64_t i = 0; i < limit; ++i) {
    Poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t v = i;
    for (unsigned j = 0; j < k; ++j, v /= p) f[j] = static_cast<std::uint32_t>(v % p);
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace fp

/// Parameters of F_q: the prime, the extension degree, and the defining modulus.
struct FieldSpec {
  std::uint32_t p = 2;
  unsigned k = 1;
  std::uint64_t q = 2;
  fp::Poly modulus;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

  static FieldSpec make(std::uint32_t p, unsigned k) {
    if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
    return make(p, k, fp::smallest_irreducible(p, k));
  }

  static FieldSpec make(std::uint32_t p, unsigned k, fp::Poly modulus) {
    if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
    if (k == 0) throw InputError("field exponent k must be >= 1");
    const Integer q = pow(std::uint64_t{p}, k);
    if (q > kMaxOrder) throw InputError("field order p^k exceeds 2^31");
    fp::trim(modulus);
    if (fp::degree(modulus) != static_cast<int>(k) || modulus.back() != 1)
      throw InputError("field modulus must be monic of degree k");
    if (!fp::is_irreducible(modulus, p)) throw InputError("field modulus is not irreducible");
    return FieldSpec{p, k, q.get_ui(), std::move(modulus)};
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Arithmetic in F_q on element codes. Large tables (log/antilog) are built
/// when q is at most kTableLimit; otherwise arithmetic is done on digits.
class GaloisField {
 public:
  using Code = std::uint32_t;
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

  explicit GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
    place_.resize(spec_.k + 1);
    place_[0] = 1;
    for (unsigned i = 1; i <= spec_.k; ++i) place_[i] = place_[i - 1] * spec_.p;
    find_primitive();
    if (spec_.q <= kTableLimit) build_tables();
    if (spec_.p == 2) build_trace_mask();
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t characteristic() const noexcept { return spec_.p; }
  unsigned degree() const noexcept { return spec_.k; }
  std::uint64_t order() const noexcept { return spec_.q; }
  Code primitive() const noexcept { return primitive_; }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }

  /// The prime-field element n mod p.
  Code from_int(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(spec_.p);
    return static_cast<Code>(((n % p) + p) % p);
  }

  Code from_digits(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() > spec_.k) throw InputError("field element has too many digits");
    Code c = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] >= spec_.p) throw InputError("field element digit not reduced mod p");
      c = c * spec_.p + digits[i];
    }
    return c;
  }

  std::vector<std::uint32_t> digits(Code a) const {
    std::vector<std::uint32_t> out(spec_.k);
    for (unsigned i = 0; i < spec_.k; ++i, a /= spec_.p) out[i] = a % spec_.p;
    return out;
  }

  Code add(Code a, Code b) const {
    if (spec_.p == 2) return a ^ b;
    if (!zech_.empty()) {
      if (a == 0) return b;
      if (b == 0) return a;
      const std::uint64_t n = spec_.q - 1;
      const std::uint32_t la = log_[a];
      const std::uint32_t z = zech_[(log_[b] + n - la) % n];
      return z == kNoLog ? 0 : exp_[la + z];
    }
    return add_digits(a, b);
  }

  Code neg(Code a) const {
    if (spec_.p == 2 || a == 0) return a;
    if (!log_.empty()) return exp_[log_[a] + (spec_.q - 1) / 2];
    Code out = 0;
    for (unsigned i = 0; i < spec_.k; ++i, a /= spec_.p) out += ((spec_.p - a % spec_.p) % spec_.p) * place_[i];
    return out;
  }

  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_digits(a, b);
  }

  Code pow(Code a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log_.empty()) return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (e % (spec_.q - 1))) % (spec_.q - 1))];
    return pow_digits(a, e);
  }

  Code inv(Code a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (!log_.empty()) return exp_[(spec_.q - 1 - log_[a]) % (spec_.q - 1)];
    return pow_digits(a, spec_.q - 2);
  }

  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  /// 1 for nonzero squares, -1 for non-squares, 0 for zero (odd characteristic).
  int quadratic_character(Code a) const {
    if (a == 0) return 0;
    if (spec_.p == 2) return 1;
    if (!log_.empty()) return (log_[a] % 2 == 0) ? 1 : -1;
    return pow_digits(a, (spec_.q - 1) / 2) == 1 ? 1 : -1;
  }

  /// Absolute trace to F_2 (characteristic 2 only).
  int trace2(Code a) const {
    if (spec_.p != 2) throw DomainError("trace2 needs characteristic 2");
    return std::popcount(a & trace_mask_) & 1;
  }

  /// Evaluates a polynomial with coefficients in the prime field, given as raw digits.
  Code eval_prime_poly(const fp::Poly& f, Code x) const {
    Code acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x), from_int(f[i]));
    return acc;
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffU;

  Code add_digits(Code a, Code b) const {
    Code out = 0;
    for (unsigned i = 0; i < spec_.k; ++i) {
      const Code d = (a % spec_.p + b % spec_.p) % spec_.p;
      out += d * place_[i];
      a /= spec_.p;
      b /= spec_.p;
    }
    return out;
  }

  Code mul_digits(Code a, Code b) const {
    fp::Poly pa = to_poly(a), pb = to_poly(b);
    return from_poly(fp::mod(fp::mul(pa, pb, spec_.p), spec_.modulus, spec_.p));
  }

  Code pow_digits(Code a, std::uint64_t e) const {
    Code result = 1;
    Code base = a;
    while (e != 0) {
      if (e & 1U) result = mul_digits(result, base);
      base = mul_digits(base, base);
      e >>= 1U;
    }
    return result;
  }

  fp::Poly to_poly(Code a) const {
    fp::Poly out(spec_.k);
    for (unsigned i = 0; i < spec_.k; ++i, a /= spec_.p) out[i] = a % spec_.p;
    fp::trim(out);
    return out;
  }

  Code from_poly(const fp::Poly& f) const {
    Code c = 0;
    for (std::size_t i = f.size(); i-- > 0;) c = c * spec_.p + f[i];
    return c;
  }

  void find_primitive() {
    const std::uint64_t n = spec_.q - 1;
    if (n == 1) {
      primitive_ = 1;
      return;
    }
    const auto factors = prime_factors(n);
    for (Code c = 2; c < spec_.q; ++c) {
      bool ok = true;
      for (auto l : factors) {
        if (pow_digits(c, n / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        primitive_ = c;
        return;
      }
    }
    throw DomainError("no primitive element found");
  }

  void build_tables() {
    const std::uint64_t n = spec_.q - 1;
    exp_.assign(2 * n, 0);
    log_.assign(spec_.q, 0);
    Code x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = mul_digits(x, primitive_);
    }
    for (std::uint64_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
    if (spec_.p == 2) return;
    // Zech logarithms: 1 + g^i = g^zech[i].
    zech_.assign(n, kNoLog);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Code v = add_digits(1, exp_[i]);
      if (v != 0) zech_[i] = log_[v];
    }
  }

  void build_trace_mask() {
    trace_mask_ = 0;
    for (unsigned j = 0; j < spec_.k; ++j) {
      const Code basis = Code{1} << j;
      Code t = 0, y = basis;
      for (unsigned i = 0; i < spec_.k; ++i) {
        t ^= y;
        y = mul(y, y);
      }
      if (t == 1) trace_mask_ |= basis;
    }
  }

  FieldSpec spec_;
  std::vector<Code> place_;
  Code primitive_ = 1;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  Code trace_mask_ = 0;
};

/// Value-semantic element handle; `field` must outlive the element.
class FieldElement {
 public:
  FieldElement(const GaloisField& field, GaloisField::Code code) : field_(&field), code_(code) {}

  GaloisField::Code code() const noexcept { return code_; }
  const GaloisField& field() const noexcept { return *field_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) { return {*a.field_, a.field_->add(a.code_, b.code_)}; }
  friend FieldElement operator-(FieldElement a, FieldElement b) { return {*a.field_, a.field_->sub(a.code_, b.code_)}; }
  friend FieldElement operator*(FieldElement a, FieldElement b) { return {*a.field_, a.field_->mul(a.code_, b.code_)}; }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return {*a.field_, a.field_->div(a.code_, b.code_)}; }
  FieldElement operator-() const { return {*field_, field_->neg(code_)}; }
  FieldElement pow(std::uint64_t e) const { return {*field_, field_->pow(code_, e)}; }
  FieldElement inverse() const { return {*field_, field_->inv(code_)}; }
  friend bool operator==(FieldElement a, FieldElement b) { return a.code_ == b.code_; }

 private:
  const GaloisField* field_;
  GaloisField::Code code_;
};

/// Image of every element of `small` inside `big` under a fixed embedding
/// (sends the generator of `small` to the first root of its modulus found
/// along the powers of a generator of the subfield).
inline std::vector<GaloisField::Code> embedding_table(const GaloisField& small, const GaloisField& big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
    throw DomainError("no embedding between these fields");
  GaloisField::Code beta = 0;
  if (small.degree() == 1) {
    beta = 0;  // unused
  } else {
    const std::uint64_t cofactor = (big.order() - 1) / (small.order() - 1);
    const auto w = big.pow(big.primitive(), cofactor);
    GaloisField::Code x = 1;
    bool found = false;
    for (std::uint64_t i = 0; i + 1 < small.order(); ++i, x = big.mul(x, w)) {
      if (big.eval_prime_poly(small.spec().modulus, x) == 0) {
        beta = x;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("failed to embed subfield");
  }
  std::vector<GaloisField::Code> table(small.order());
  for (GaloisField::Code a = 0; a < small.order(); ++a) {
    const auto d = small.digits(a);
    GaloisField::Code acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, beta), big.from_int(d[i]));
    table[a] = acc;
  }
  return table;
}

/// Polynomials over F_q stored as ascending element codes.
namespace fq {

using Poly = std::vector<GaloisField::Code>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) {
  Poly t = a;
  trim(t);
  return static_cast<int>(t.size()) - 1;
}

inline GaloisField::Code eval(const GaloisField& F, const Poly& f, GaloisField::Code x) {
  GaloisField::Code acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

inline Poly derivative(const GaloisField& F, const Poly& f) {
  Poly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(F.mul(F.from_int(static_cast<std::int64_t>(i % F.characteristic())), f[i]));
  trim(out);
  return out;
}

inline Poly add(const GaloisField& F, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  trim(a);
  return a;
}

inline Poly mul(const GaloisField& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  trim(out);
  return out;
}

inline Poly mod(const GaloisField& F, Poly a, Poly m) {
  trim(a);
  trim(m);
  if (m.empty()) throw DomainError("polynomial division by zero");
  const auto lead_inv = F.inv(m.back());
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const auto factor = F.mul(a.back(), lead_inv);
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(factor, m[i]));
    trim(a);
  }
  return a;
}

inline Poly gcd(const GaloisField& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^n f(1/x) for n >= deg f.
inline Poly reverse(Poly f, std::size_t n) {
  f.resize(n + 1, 0);
  std::reverse(f.begin(), f.end());
  trim(f);
  return f;
}

}  // namespace fq

}  // namespace classnum
