#include <gtest/gtest.h>

#include <random>

#include "classnum/corpus.hpp"
#include "classnum/curves.hpp"
#include "classnum/zeta.hpp"

using namespace classnum;

namespace {

CurveSpec artin_schreier_g2() {
  return CurveSpec{"y2+y=x5", FieldSpec::make(2, 1), 2, Hyperelliptic{{0, 0, 0, 0, 0, 1}, {1}}};
}

// Affine solutions of y^2 + h(x) y = f(x) by trying every (x, y), plus the one
// point at infinity of an odd-degree model. Prime-field coefficients only.
std::uint64_t naive_count(const CurveSpec& c, unsigned m) {
  const auto& hm = std::get<Hyperelliptic>(c.model);
  const GaloisField F(FieldSpec::make(c.field.p, m));
  auto ev = [&](const fq::Poly& f, GaloisField::Code x) {
    GaloisField::Code acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
  };
  std::uint64_t n = 0;
  for (GaloisField::Code x = 0; x < F.order(); ++x)
    for (GaloisField::Code y = 0; y < F.order(); ++y)
      if (F.add(F.mul(y, y), F.mul(ev(hm.h, x), y)) == ev(hm.f, x)) ++n;
  return n + 1;
}

// Monic irreducible polynomials of degree m over F_2, by trial division on bitmasks.
int irreducible_count_f2(unsigned m) {
  auto degree = [](unsigned v) { return 31 - __builtin_clz(v); };
  auto rem = [&](unsigned a, unsigned b) {
    while (a && degree(a) >= degree(b)) a ^= b << (degree(a) - degree(b));
    return a;
  };
  int count = 0;
  for (unsigned f = 1u << m; f < (2u << m); ++f) {
    bool irreducible = true;
    for (unsigned d = 2; d < (1u << (m / 2 + 1)) && irreducible; ++d)
      if (degree(d) >= 1 && 2 * degree(d) <= static_cast<int>(m) && rem(f, d) == 0) irreducible = false;
    count += irreducible;
  }
  return count;
}

}  // namespace

TEST(CountPoints, ArtinSchreierGenusTwo) {
  const auto c = artin_schreier_g2();
  EXPECT_EQ(count_points(c, 1), 3);
  EXPECT_EQ(count_points(c, 2), 5);
  for (unsigned m = 1; m <= 6; ++m) EXPECT_EQ(count_points(c, m), naive_count(c, m)) << m;
}

TEST(CountPoints, OddCharacteristicMatchesNaive) {
  const CurveSpec c{"y2=x5+x", FieldSpec::make(3, 1), 2, Hyperelliptic{{0, 1, 0, 0, 0, 1}, {}}};
  for (unsigned m = 1; m <= 4; ++m) EXPECT_EQ(count_points(c, m), naive_count(c, m)) << m;
  const CurveSpec d{"y2=x7+x+1", FieldSpec::make(5, 1), 3, Hyperelliptic{{1, 1, 0, 0, 0, 0, 0, 1}, {}}};
  for (unsigned m = 1; m <= 3; ++m) EXPECT_EQ(count_points(d, m), naive_count(d, m)) << m;
}

TEST(CountPoints, ConicIsRational) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const GaloisField F(FieldSpec::make(p, 1));
    // X Z - Y^2
    const CurveSpec conic{"conic", FieldSpec::make(p, 1), 2,
                          SmoothPlane{{PlaneTerm{1, 1, 0, 1}, PlaneTerm{F.from_int(-1), 0, 2, 0}}}};
    for (unsigned m = 1; m <= 2; ++m) EXPECT_EQ(count_points(conic, m), pow(std::uint64_t{p}, m) + 1);
  }
}

TEST(CountPoints, Errors) {
  const auto c = artin_schreier_g2();
  CountOptions small;
  small.ceiling = 16;
  EXPECT_NO_THROW(count_points(c, 4, small));
  EXPECT_THROW(count_points(c, 5, small), CeilingExceeded);
  const CurveSpec direct{"d", FieldSpec::make(2, 1), 2, DirectSpectrum{{3, 5}}};
  EXPECT_THROW(count_points(direct, 1), ModelUnsupported);
  EXPECT_THROW(count_points(c, 0), DomainError);
}

TEST(CountPoints, ThreadsDoNotChangeCounts) {
  const CurveSpec c{"y2=x7+x", FieldSpec::make(3, 1), 3, Hyperelliptic{{0, 1, 0, 0, 0, 0, 0, 1}, {}}};
  const CurveSpec klein{"klein", FieldSpec::make(2, 1), 3,
                        SmoothPlane{{PlaneTerm{1, 3, 1, 0}, PlaneTerm{1, 0, 3, 1}, PlaneTerm{1, 1, 0, 3}}}};
  for (unsigned m = 1; m <= 4; ++m) {
    CountOptions one, many;
    many.threads = 4;
    EXPECT_EQ(count_points(c, m, one), count_points(c, m, many));
    EXPECT_EQ(count_points(klein, m, one), count_points(klein, m, many));
  }
}

TEST(Inversion, Examples) {
  EXPECT_EQ(mobius_invert_points(PointCounts{{3}, 2, 2}).B, std::vector<Integer>{3});
  EXPECT_EQ(mobius_invert_points(PointCounts{{3, 5}, 2, 2}).B, (std::vector<Integer>{3, 1}));
  EXPECT_EQ(mobius_invert_points(PointCounts{{3, 5, 9}, 2, 0}).B, (std::vector<Integer>{3, 1, 2}));
}

TEST(Inversion, ProjectiveLineMatchesIrreducibleCount) {
  PointCounts line{{}, 2, 0};
  for (unsigned m = 1; m <= 12; ++m) line.N.push_back(pow(std::uint64_t{2}, m) + 1);
  const auto B = mobius_invert_points(line).B;
  for (unsigned m = 1; m <= 12; ++m) EXPECT_EQ(B[m - 1], irreducible_count_f2(m) + (m == 1 ? 1 : 0)) << m;
}

TEST(Inversion, RoundTripOnRandomSpectra) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> b(0, 1000);
  for (int t = 0; t < 300; ++t) {
    PlaceSpectrum s{{}, 3, 4};
    const int len = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) s.B.push_back(b(rng));
    ASSERT_EQ(mobius_invert_points(points_from_places(s)).B, s.B);
  }
}

TEST(Inversion, RejectsInconsistentCounts) {
  EXPECT_THROW(mobius_invert_points(PointCounts{{3, 4}, 2, 2}), InconsistentCounts);  // B_2 = 1/2
  EXPECT_THROW(mobius_invert_points(PointCounts{{5, 3}, 2, 2}), InconsistentCounts);  // B_2 = -1
  EXPECT_THROW(mobius_invert_points(PointCounts{{}, 2, 2}), InputError);
}

TEST(Spectrum, ModelsAgree) {
  EXPECT_EQ(spectrum(artin_schreier_g2()).B, (std::vector<Integer>{3, 1}));
  const CurveSpec direct{"d", FieldSpec::make(2, 1), 2, DirectSpectrum{{3, 5}}};
  EXPECT_EQ(spectrum(direct).B, (std::vector<Integer>{3, 1}));
}

TEST(Spectrum, WeilViolationIsInconsistent) {
  const CurveSpec direct{"d", FieldSpec::make(2, 1), 2, DirectSpectrum{{20, 5}}};
  EXPECT_THROW(spectrum(direct), InconsistentCounts);
}

TEST(Spectrum, NoRationalPlacesPassesThrough) {
  const auto corpus = load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml");
  auto it = std::find_if(corpus.begin(), corpus.end(), [](const CurveSpec& c) { return c.name == "fermat_quartic_f5"; });
  ASSERT_NE(it, corpus.end());
  EXPECT_EQ(spectrum(*it).B[0], 0);
}

TEST(Spectrum, RoundTripThroughZeta) {
  // N_{g+1}..N_{2g} predicted by the zeta numerator agree with enumeration
  const auto corpus = load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml");
  CountOptions opt;
  opt.ceiling = std::uint64_t{1} << 16;
  int checked = 0;
  for (const auto& c : corpus) {
    if (std::holds_alternative<DirectSpectrum>(c.model)) continue;
    const auto P = zeta_numerator(point_counts(c, c.genus));
    const auto predicted = extend_point_counts(P, 2 * c.genus);
    for (unsigned m = c.genus + 1; m <= 2 * c.genus; ++m) {
      Integer direct;
      try {
        direct = count_points(c, m, opt);
      } catch (const CeilingExceeded&) {
        break;
      }
      EXPECT_EQ(direct, predicted.N[m - 1]) << c.name << " m=" << m;
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Spectrum, CorpusCountsInsideWeilInterval) {
  for (const auto& c : load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml")) {
    const auto counts = point_counts(c, c.genus);
    EXPECT_NO_THROW(check_weil(counts, c.name));
  }
}
