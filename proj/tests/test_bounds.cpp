#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "classnum/analysis.hpp"
#include "classnum/bounds.hpp"
#include "classnum/corpus.hpp"

using namespace classnum;

namespace {

const std::vector<CurveAnalysis>& corpus_analyses() {
  static const std::vector<CurveAnalysis> all = [] {
    std::vector<CurveAnalysis> out;
    for (const auto& c : load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml")) out.push_back(analyze_curve(c));
    return out;
  }();
  return all;
}

}  // namespace

TEST(Constants, K1AndK2) {
  for (long B = 1; B <= 10; ++B) {
    EXPECT_EQ(K1(0, Integer(B)), 1);
    EXPECT_EQ(K2(3, 0, Integer(B)), 1);
  }
  for (std::uint64_t r = 1; r <= 20; ++r) EXPECT_EQ(K1(r - 1, Integer(1)), Integer(r));
  // K2(2, 2, 3) = 1 + 3/2 + 6/4
  EXPECT_EQ(K2(2, 2, Integer(3)), Rational(4));
  EXPECT_THROW(K2(2, 1, Integer(0)), DomainError);
}

TEST(Constants, K1AgainstLinearLowerEstimate) {
  // K1(r-1, B1) >= B1 + r - 1 holds for r >= 2 and is an equality exactly at B1 = 1 once r >= 3;
  // at r = 2 both sides are B1 + 1, at r = 1 the left side is 1.
  for (std::uint64_t r = 1; r <= 8; ++r)
    for (long B1 = 1; B1 <= 30; ++B1) {
      const Integer lhs = K1(r - 1, Integer(B1)), rhs = Integer(B1 + r - 1);
      if (r == 1) {
        EXPECT_EQ(lhs, 1);
      } else if (r == 2) {
        EXPECT_EQ(lhs, rhs);
      } else {
        EXPECT_GE(lhs, rhs);
        EXPECT_EQ(lhs == rhs, B1 == 1) << r << " " << B1;
      }
    }
}

TEST(PlaceBounds, AnLower) {
  EXPECT_EQ(an_lower(Integer(3), Integer(1), 2, 2), 1);
  EXPECT_EQ(an_lower(Integer(3), Integer(1), 2, 0), 1);
  for (long B1 = 1; B1 <= 8; ++B1)
    for (std::uint64_t n = 0; n <= 10; ++n)
      EXPECT_EQ(an_lower(Integer(B1), Integer(B1), 1, n), binomial(Integer(B1 + n - 1), n));
  EXPECT_THROW(an_lower(Integer(0), Integer(2), 2, 3), HypothesisFailed);
  EXPECT_THROW(an_lower(Integer(2), Integer(0), 2, 3), HypothesisFailed);
}

TEST(PlaceBounds, Sigma1Lower) {
  EXPECT_EQ(sigma1_lower(2, Integer(3), Integer(3), 1), 4);
  EXPECT_EQ(sigma1_lower(2, Integer(1), Integer(1), 1), 2);
  for (std::uint64_t g = 2; g <= 8; ++g)
    for (long B1 = 1; B1 <= 6; ++B1)
      EXPECT_EQ(sigma1_lower(g, Integer(B1), Integer(B1), 1), binomial(Integer(B1 + g - 1), g - 1));
}

TEST(PlaceBounds, ChainOnRandomSpectra) {
  // an_lower <= A_n and sigma1_lower <= sigma_1 whenever B_1, B_r > 0
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const unsigned g = 2 + static_cast<unsigned>(rng() % 7);
    PlaceSpectrum s{{}, 2, g};
    for (unsigned d = 1; d <= g; ++d) s.B.push_back(Integer(rng() % 6));
    s.B[0] += 1;
    const auto A = divisor_counts(s, g - 1).A;
    Integer sigma1 = 0;
    for (const auto& a : A) sigma1 += a;
    for (unsigned r = 1; r <= g - 1; ++r) {
      if (s.B[r - 1] == 0) continue;
      for (unsigned n = 0; n + 1 <= g; ++n) ASSERT_LE(an_lower(s.B[0], s.B[r - 1], r, n), A[n]);
      ASSERT_LE(sigma1_lower(g, s.B[0], s.B[r - 1], r), sigma1);
    }
  }
}

TEST(QrLower, DegenerateGenera) {
  for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
    const auto at2 = qr_lower(v, 2, 1, 2, Integer(3));
    EXPECT_TRUE(at2.degenerate);
    EXPECT_EQ(at2.value, 0);
    EXPECT_EQ(qr_lower(v, 2, 1, 3, Integer(3)).value, 1);
    EXPECT_THROW(qr_lower(v, 2, 1, 3, Integer(3), true), DegenerateGenus);
  }
}

TEST(QrLower, ClosedCases) {
  // binomial variant with B_r <= m_r(g-2)
  EXPECT_EQ(qr_lower(QrVariant::binomial, 2, 1, 8, Integer(4)).value, pow(make_rational(2, 1), 3));
  // geometric variant with B_r = 1 is the geometric sum alone
  for (std::uint64_t g = 4; g <= 12; ++g)
    EXPECT_EQ(qr_lower(QrVariant::geometric, 3, 1, g, Integer(1)).value, exact_Qr(Integer(1), 3, 1, g));
  EXPECT_THROW(qr_lower(QrVariant::series_tail, 2, 1, 5, Integer(10)), HypothesisFailed);
}

TEST(QrLower, NeverExceedsExactValue) {
  int applicable = 0;
  for (std::uint64_t q : {2, 3, 4, 5})
    for (std::uint64_t r = 1; r <= 4; ++r)
      for (std::uint64_t g = 4; g <= 16; ++g)
        for (long B = 1; B <= 40; ++B)
          for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
            QrBound b;
            try {
              b = qr_lower(v, q, r, g, Integer(B), true);
            } catch (const HypothesisFailed&) {
              continue;
            } catch (const DegenerateGenus&) {
              continue;
            }
            ++applicable;
            ASSERT_LE(b.value, exact_Qr(Integer(B), q, r, g))
                << to_string(v) << " q=" << q << " r=" << r << " g=" << g << " B=" << B;
          }
  EXPECT_GT(applicable, 3000);
}

TEST(QrLower, PrintedExtraTermCountOvershoots) {
  // g - 1 = 2r leaves m_r(g-2) - 1 = 0 extra terms, but the printed case rule gives 1
  const std::uint64_t q = 2, r = 2, g = 5;
  const Integer Br(2);
  EXPECT_EQ(qr_extra_terms(q, r, g, Br), 0);
  EXPECT_EQ(qr_extra_terms(q, r, g, Br, true), 1);
  const Rational printed = Rational(1) + make_rational(Br - 1, pow(q, r)) * Rational(qr_extra_terms(q, r, g, Br, true));
  EXPECT_GT(printed, exact_Qr(Br, q, r, g));
  EXPECT_LE(qr_lower(QrVariant::geometric, q, r, g, Br).value, exact_Qr(Br, q, r, g));
}

TEST(MainBound, ArtinSchreierCurve) {
  // y^2 + y = x^5 over F_2: 0 + 1/3 + 1/6 + 1/2
  EXPECT_EQ(h_lower_main(2, 2, Integer(3), Integer(3), 1, Rational(0)), 1);
  EXPECT_THROW(h_lower_main(2, 2, Integer(0), Integer(3), 1, Rational(0)), HypothesisFailed);
}

TEST(MainBound, MonotoneInQrEstimate) {
  for (std::uint64_t q : {2, 3, 4})
    for (std::uint64_t g = 4; g <= 10; ++g)
      for (std::uint64_t r = 1; r <= 3; ++r)
        for (long B = 1; B <= 12; ++B) {
          const Rational exact = h_lower_main(q, g, Integer(B), Integer(B), r, exact_Qr(Integer(B), q, r, g));
          for (auto v : {QrVariant::geometric, QrVariant::binomial}) {
            const Rational est = h_lower_main(q, g, Integer(B), Integer(B), r, qr_lower(v, q, r, g, Integer(B)).value);
            ASSERT_LE(est, exact);
          }
          ASSERT_GT(h_lower_main(q, g, Integer(B), Integer(B), r, Rational(0)), 0);
        }
}

TEST(SimplifiedBound, Cases) {
  const Rational pre = make_rational(pow(std::uint64_t{2}, 7), Integer(9 * 3));
  // case 2 with B_r = m_r(g-2): g = 8, r = 1, B = 6
  EXPECT_EQ(h_lower_simplified(2, 2, 8, Integer(3), Integer(6), 1), pre * pow(Rational(2), 5));
  EXPECT_THROW(h_lower_simplified(2, 2, 8, Integer(3), Integer(7), 1), HypothesisFailed);
  EXPECT_THROW(h_lower_simplified(3, 2, 8, Integer(3), Integer(6), 1), HypothesisFailed);
  EXPECT_EQ(h_lower_simplified(1, 2, 2, Integer(3), Integer(1), 1), 0);
  EXPECT_THROW(h_lower_simplified(5, 2, 8, Integer(3), Integer(6), 1), DomainError);
}

TEST(ClassicalBounds, Examples) {
  EXPECT_EQ(lmd_1(2, 2), make_rational(2, 9));
  EXPECT_EQ(lmd_1_refined(2, 2, Integer(3)), make_rational(2, 6));
  EXPECT_EQ(perret_bound(4, 3, Integer(9)).lo, Rational(3 * 27));
  EXPECT_TRUE(perret_bound(4, 3, Integer(9)).is_exact());
  for (std::uint64_t q : {2, 3, 4, 9}) EXPECT_EQ(perret_bound(q, 2, Integer(q + 1)).lo, Rational(Integer(q - 1) * (q - 1)));
  const auto [lo, hi] = weil_interval(4, 2);
  EXPECT_EQ(lo.lo, 1);
  EXPECT_EQ(hi.hi, 81);
  // q = 2: (sqrt2 - 1)^4 = 17 - 12 sqrt2, (sqrt2 + 1)^4 = 17 + 12 sqrt2
  const auto [l2, h2] = weil_interval(2, 2);
  EXPECT_LT(l2.lo, l2.hi);
  EXPECT_NEAR(l2.lo.get_d(), 1 / (17 + 12 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(h2.hi.get_d(), 17 + 12 * std::sqrt(2.0), 1e-12);
  EXPECT_LE(l2.hi - l2.lo, Rational(1, 1000000000));
  EXPECT_THROW(lmd_3(9, 1, Integer(1)), HypothesisFailed);
}

TEST(ClassicalBounds, LmdBoundTwoExactForSquares) {
  // (sqrt 9 - 1)^2 (9 - 1)/2 (B_1 + 8)/8 at g = 2, B_1 = 8
  EXPECT_EQ(lmd_2(9, 2, Integer(8)).lo, Rational(4 * 4 * 2));
  EXPECT_TRUE(lmd_2(9, 2, Integer(8)).is_exact());
  EXPECT_FALSE(lmd_2(2, 3, Integer(3)).is_exact());
}

TEST(ClassicalBounds, WorstCaseRelation) {
  // the main bound with the geometric Q_1 estimate is at least L_3 plus the extra-term contribution
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (std::uint64_t g = 4; g <= 12; ++g) {
      const long top = static_cast<long>(q + 1 + 2 * g * std::sqrt(double(q)));
      for (long B1 = 1; B1 <= top; ++B1) {
        if (Integer(g + 1) * (q + 1) <= B1) break;
        ASSERT_GE(worst_case_gap(q, g, Integer(B1)), 0) << q << " " << g << " " << B1;
      }
    }
}

TEST(Report, ArtinSchreierBest) {
  const BoundInputs in{"y2+y=x5", 2, 2, {3, 1}, 5, {1, 3}, 4, make_rational(6, 5)};
  const auto rep = bound_report(in);
  EXPECT_TRUE(rep.all_dominance_ok());
  EXPECT_EQ(rep.best_value, 1);
  EXPECT_EQ(rep.best, "main/exact_q");
  EXPECT_EQ(rep.best_r, 1u);
}

TEST(Report, CorpusDominance) {
  std::size_t applicable = 0;
  for (const auto& a : corpus_analyses()) {
    ASSERT_TRUE(a.ok) << a.name << ": " << a.error_message;
    std::vector<unsigned> all_r;
    for (unsigned r = 1; r <= a.g; ++r)
      if (a.B[r - 1] > 0) all_r.push_back(r);
    const auto rep = bound_report(BoundInputs{a.name, a.q, a.g, a.B, a.h, a.A, a.sigma.sigma1, a.R}, all_r);
    for (const auto& row : rep.rows) {
      if (!row.hypotheses_met) continue;
      ++applicable;
      EXPECT_TRUE(row.dominance_ok) << a.name << " " << row.name;
      if (row.target == "h" && row.kind == BoundKind::lower) { EXPECT_LE(row.value->hi, Rational(a.h)); }
    }
  }
  EXPECT_GT(applicable, 200u);
}

TEST(Report, BestIsLargestApplicableLowerBound) {
  for (const auto& a : corpus_analyses()) {
    const auto& rep = *a.bounds;
    for (const auto& row : rep.rows)
      if (row.hypotheses_met && row.target == "h" && row.kind == BoundKind::lower) {
        EXPECT_LE(row.reported(), rep.best_value) << a.name;
      }
  }
}

TEST(Report, NoRationalPlaceRejectsPlaceBounds) {
  for (const auto& a : corpus_analyses()) {
    if (a.B[0] != 0) continue;
    for (const auto& row : a.bounds->rows)
      if (row.r) { EXPECT_FALSE(row.hypotheses_met) << a.name << " " << row.name; }
  }
}

TEST(Report, RejectsOutOfRangeR) {
  const BoundInputs in{"y2+y=x5", 2, 2, {3, 1}, 5, {1, 3}, 4, make_rational(6, 5)};
  EXPECT_THROW(bound_report(in, {3}), InputError);
}

TEST(Report, DegenerateGenusReportsExactQr) {
  const BoundInputs in{"y2+y=x5", 2, 2, {3, 1}, 5, {1, 3}, 4, make_rational(6, 5)};
  const auto rep = bound_report(in, {1});
  int seen = 0;
  for (const auto& row : rep.rows) {
    if (row.name.rfind("q_lower/", 0) != 0) continue;
    ++seen;
    ASSERT_TRUE(row.hypotheses_met) << row.name;
    EXPECT_EQ(row.value->lo, 0) << row.name;
    EXPECT_FALSE(row.hypothesis_note.empty());
  }
  EXPECT_EQ(seen, 3);
  for (std::uint64_t q : {2, 3, 5})
    for (auto v : {QrVariant::geometric, QrVariant::binomial, QrVariant::series_tail}) {
      EXPECT_EQ(qr_lower(v, q, 1, 3, Integer(4)).value, 1);
      EXPECT_TRUE(qr_lower(v, q, 1, 3, Integer(4)).degenerate);
      EXPECT_THROW(qr_lower(v, q, 1, 3, Integer(4), true), DegenerateGenus);
    }
}
