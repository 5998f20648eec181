#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "classnum/bounds.hpp"
#include "classnum/corpus.hpp"
#include "classnum/divisors.hpp"
#include "classnum/zeta.hpp"

using namespace classnum;

namespace {

using IntPoly = std::vector<Integer>;

IntPoly mul_trunc(const IntPoly& a, const IntPoly& b, std::size_t n) {
  IntPoly out(n + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// A random zeta numerator built as prod (1 - x_i T + q T^2) with |x_i| <= 2 sqrt(q),
// returned with its point counts N_1..N_M from the power sums of each factor.
struct Synthetic {
  IntPoly P;
  std::vector<Integer> N;
  std::vector<long> x;
};

Synthetic random_zeta(std::mt19937_64& rng, std::uint64_t q, unsigned g, unsigned M) {
  const long bound = static_cast<long>(std::floor(2 * std::sqrt(double(q))));
  std::uniform_int_distribution<long> pick(-bound, bound);
  Synthetic s;
  s.P = {1};
  std::vector<Integer> power_sum(M + 1, 0);
  for (unsigned i = 0; i < g; ++i) {
    const long x = pick(rng);
    s.x.push_back(x);
    s.P = mul_trunc(s.P, IntPoly{1, -x, Integer(q)}, 2 * g);
    Integer prev2 = 2, prev1 = x;
    power_sum[1] += x;
    for (unsigned m = 2; m <= M; ++m) {
      const Integer cur = x * prev1 - Integer(q) * prev2;
      power_sum[m] += cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
  for (unsigned m = 1; m <= M; ++m) s.N.push_back(pow(q, m) + 1 - power_sum[m]);
  return s;
}

// Euler product prod_d (1 - T^d)^(-B_d) times (1 - T)(1 - qT), to order n.
IntPoly euler_product_oracle(const std::vector<Integer>& B, std::uint64_t q, std::size_t n) {
  IntPoly acc(n + 1, 0);
  acc[0] = 1;
  for (std::size_t d = 1; d <= n; ++d) {
    IntPoly factor(n + 1, 0);
    for (std::size_t m = 0; m * d <= n; ++m) {
      // C(B + m - 1, m) by the product formula
      Integer c = 1;
      for (std::size_t i = 0; i < m; ++i) c = c * (B[d - 1] + Integer(i)) / Integer(i + 1);
      factor[m * d] = c;
    }
    acc = mul_trunc(acc, factor, n);
  }
  acc = mul_trunc(acc, IntPoly{1, -1}, n);
  return mul_trunc(acc, IntPoly{1, -Integer(q)}, n);
}

ZetaNumerator artin_schreier_zeta() { return zeta_numerator(PointCounts{{3, 5}, 2, 2}); }

}  // namespace

TEST(ZetaNumerator, Examples) {
  const auto P = artin_schreier_zeta();
  EXPECT_EQ(P.c, (std::vector<Integer>{1, 0, 0, 0, 4}));
  EXPECT_EQ(class_number(P), 5);
  EXPECT_NO_THROW(check_functional_equation(P));
}

TEST(ZetaNumerator, AllTracesZeroGivesOnePlusQSquared) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const auto P = zeta_numerator(PointCounts{{Integer(q + 1), Integer(q * q + 1)}, q, 2});
    EXPECT_EQ(class_number(P), Integer(q * q + 1));
    const auto W = real_weil_poly(P);
    EXPECT_EQ(W.w, (std::vector<Integer>{-Integer(2 * q), 0, 1}));
  }
}

TEST(ZetaNumerator, NonIntegralCoefficient) {
  // a_1 = 1, a_2 = 0: c_2 = (a_1 c_1 + a_2) / 2 = 1/2
  EXPECT_THROW(zeta_numerator(PointCounts{{4, 5}, 2, 2}), NonIntegralCoefficient);
  EXPECT_THROW(zeta_numerator(PointCounts{{3}, 2, 2}), InputError);
}

TEST(ZetaNumerator, MatchesEulerProductOracle) {
  std::mt19937_64 rng(17);
  int tested = 0;
  for (int t = 0; t < 400 && tested < 150; ++t) {
    const std::uint64_t q = std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9}[rng() % 7];
    const unsigned g = 2 + static_cast<unsigned>(rng() % 3);
    const auto s = random_zeta(rng, q, g, 2 * g);
    PlaceSpectrum spec;
    try {
      spec = mobius_invert_points(PointCounts{s.N, q, g});
    } catch (const InconsistentCounts&) {
      continue;  // not the zeta function of any curve
    }
    ++tested;
    const auto P = zeta_numerator(PointCounts{std::vector<Integer>(s.N.begin(), s.N.begin() + g), q, g});
    ASSERT_EQ(P.c, s.P);
    ASSERT_EQ(P.c, euler_product_oracle(spec.B, q, 2 * g));
    const auto W = real_weil_poly(P);
    // W has the chosen x_i as roots
    for (long x : s.x) ASSERT_EQ(eval(W.w, Integer(x)), 0);
  }
  EXPECT_GE(tested, 100);
}

TEST(RealWeilPoly, Examples) {
  const auto W = real_weil_poly(artin_schreier_zeta());
  EXPECT_EQ(W.w, (std::vector<Integer>{-4, 0, 1}));
  EXPECT_EQ(resolvent(W), make_rational(6, 5));
  // generic g = 2: e1 = -c_1, e2 = c_2 - 2q
  const ZetaNumerator P{{1, 1, 3, 3, 9}, 3, 2};
  const auto V = real_weil_poly(P);
  EXPECT_EQ(V.w, (std::vector<Integer>{3 - 6, 1, 1}));
}

TEST(RealWeilPoly, MatchFailure) {
  // satisfies the functional equation but c_3 is not q c_1
  const ZetaNumerator bad{{1, 1, 0, 3, 4}, 2, 2};
  EXPECT_THROW(real_weil_poly(bad), MatchFailure);
}

TEST(Resolvent, AllRootsZero) {
  for (std::uint64_t q : {2, 3, 5, 9})
    for (unsigned g = 1; g <= 6; ++g) {
      RealWeilPoly W{std::vector<Integer>(g + 1, 0), q, g};
      W.w[g] = 1;
      EXPECT_EQ(resolvent(W), make_rational(g, q + 1));
    }
}

TEST(Resolvent, MainIdentityOnArtinSchreierCurve) {
  const auto W = real_weil_poly(artin_schreier_zeta());
  const auto chk = verify_main_identity(6, 5, W);
  EXPECT_TRUE(chk.holds);
  EXPECT_EQ(chk.lhs, 30);
  EXPECT_THROW(verify_main_identity(7, 5, W), IdentityViolation);
}

TEST(Resolvent, ExactAgreesWithFloatingPoint) {
  for (const auto& c : load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml")) {
    const auto spec = spectrum(c);
    const auto P = zeta_numerator(points_from_places(spec));
    const auto W = real_weil_poly(P);
    const auto d = numeric_diagnostics(P);
    EXPECT_NEAR(d.resolvent, resolvent(W).get_d(), 1e-9) << c.name;
    EXPECT_LT(d.max_modulus_deviation, 1e-6) << c.name;
    EXPECT_TRUE(locate_weil_roots(W).ok()) << c.name;
    const Rational R = resolvent(W);
    EXPECT_LE(R, resolvent_upper_weil(c.field.q, c.genus).hi) << c.name;
    EXPECT_LE(R, resolvent_upper_b1(c.field.q, c.genus, spec.B[0])) << c.name;
  }
}

TEST(RootLocation, RejectsRootsOutsideInterval) {
  // x^2 - 9 over q = 2 has roots 3, -3 outside [-2 sqrt 2, 2 sqrt 2]
  const RealWeilPoly W{{-9, 0, 1}, 2, 2};
  const auto loc = locate_weil_roots(W);
  EXPECT_EQ(loc.real_roots, 2);
  EXPECT_EQ(loc.roots_in_interval, 0);
  EXPECT_FALSE(loc.ok());
  // x^2 + 1 has no real roots
  EXPECT_FALSE(locate_weil_roots(RealWeilPoly{{1, 0, 1}, 2, 2}).ok());
  // a double root at the boundary 2 sqrt 4 = 4 still counts as inside
  EXPECT_TRUE(locate_weil_roots(RealWeilPoly{{16, -8, 1}, 4, 2}).ok());
}

TEST(ExtendPointCounts, ReproducesInputs) {
  // P = 1 + 4T^4: the reciprocal roots satisfy pi^4 = -4, so only s_4, s_8, ... are nonzero
  const auto N = extend_point_counts(artin_schreier_zeta(), 6).N;
  EXPECT_EQ(N, (std::vector<Integer>{3, 5, 9, 33, 33, 65}));
}
