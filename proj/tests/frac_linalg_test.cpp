#include "fixtures.hpp"

#include <crformal/error.hpp>
#include <crformal/frac_series.hpp>
#include <crformal/series_matrix.hpp>

#include <gtest/gtest.h>

using namespace crformal;

namespace {

// Two variables (z, chi) unless stated otherwise.
Series z() { return Series::polynomial_variable(2, 0); }
Series chi() { return Series::polynomial_variable(2, 1); }
Series one() { return Series::polynomial_constant(2, 1); }

FracSeries frac(const Series& s) { return FracSeries(s); }

}  // namespace

TEST(FracSeriesTest, CancellationAndReflexivity) {
  const FracSeries a = FracSeries::quotient(z() * chi(), chi());
  const FracSeries b = FracSeries::quotient(chi(), one());
  EXPECT_EQ(a * b, frac(z() * chi()));
  EXPECT_EQ(a, a);
  const FracSeries lhs = FracSeries::quotient(chi().pow(2) + chi().pow(3), chi());
  EXPECT_EQ(lhs, frac(chi() + chi().pow(2)));
  EXPECT_EQ(lhs.to_series().value(), chi() + chi().pow(2));
  EXPECT_FALSE(lhs == frac(chi()));
}

TEST(FracSeriesTest, AdditionUsesCommonDenominator) {
  const FracSeries s = FracSeries::quotient(one(), chi()) + FracSeries::quotient(one(), chi().pow(2));
  EXPECT_EQ(s, FracSeries::quotient(chi() + one(), chi().pow(2)));
  ASSERT_EQ(s.factors().size(), 1u);
  EXPECT_EQ(s.factors()[0].exponent, 2u);
  EXPECT_EQ(s.denominator_order(), 2u);
}

TEST(FracSeriesTest, DivisionByZeroAtTruncation) {
  const Series hidden = Series::variable(2, 0, Precision::upto(3)).pow(4);  // zero at D=3
  EXPECT_THROW(frac(one()) / frac(hidden), Error);
  try {
    (void)(frac(one()) / frac(hidden));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionUncertifiable);
  }
  EXPECT_THROW(FracSeries::quotient(one(), Series(2, Precision::exact())), Error);
}

TEST(FracSeriesTest, CertifiedPrecisionDropsByDenominatorOrder) {
  const Series num = (z() + chi().pow(3)).truncate(6);
  const FracSeries q = FracSeries::quotient(num, chi().pow(2) * Scalar(3));
  EXPECT_EQ(q.certified_precision(), Precision::upto(4));
  EXPECT_FALSE(q.to_series().has_value());  // z is not divisible by chi^2
}

TEST(FracSeriesTest, SeriesDivisionOfUnits) {
  // 1 / (1 - z) needs a degree for exact input.
  EXPECT_THROW(divide_series(one(), one() - z()), Error);
  const auto q = divide_series(one(), one() - z(), 4);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->coefficient(MultiIndex({4, 0})), Scalar(1));
  EXPECT_EQ(q->precision(), Precision::upto(4));
}

TEST(DeterminantTest, SmallCases) {
  SeriesMatrix id(3, 3, 2);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, one());
  EXPECT_EQ(determinant(id), one());

  // Jacobian of (z, z w).
  const Series w = chi();
  FormalMap h{{z(), z() * w}};
  EXPECT_EQ(determinant(SeriesMatrix::jacobian(h)), z());

  const auto rep = SeriesMatrix::from_rows({{z(), chi()}, {z(), chi()}});
  EXPECT_TRUE(determinant(rep).is_zero());
  EXPECT_THROW(determinant(SeriesMatrix(2, 3, 2)), Error);
}

TEST(DeterminantTest, MatchesLeibnizOracleOnLargerMatrices) {
  oracle::Generator gen(7);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::vector<Series>> rows(n);
    std::vector<std::vector<oracle::Poly>> dense(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        rows[r].push_back(gen.polynomial(2, 2, 2));
        dense[r].push_back(oracle::from_series(rows[r].back()));
      }
    }
    EXPECT_EQ(determinant(SeriesMatrix::from_rows(rows)),
              oracle::to_series(oracle::determinant(dense, 2), 2, Precision::exact()))
        << n;
  }
}

TEST(GenericRankTest, PsiJacobian) {
  const Series z1 = z(), z2 = chi();
  FormalMap psi{{z1, z1 * z2}};
  const RankResult r = generic_rank(SeriesMatrix::jacobian(psi));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_TRUE(r.lower.is_true());
  EXPECT_TRUE(r.upper.is_true());
  EXPECT_EQ(r.witness_monomial, MultiIndex({1, 0}));
  EXPECT_EQ(r.witness_coefficient, Scalar(1));
}

TEST(GenericRankTest, DegenerateShapes) {
  const RankResult zero = generic_rank(SeriesMatrix(3, 2, 2));
  EXPECT_EQ(zero.rank, 0u);
  EXPECT_TRUE(zero.upper.is_true());

  const Series x = Series::polynomial_variable(1, 0);
  FormalMap curve{{x, x * x}};
  EXPECT_EQ(generic_rank(SeriesMatrix::jacobian(curve)).rank, 1u);

  // Entries are known only to degree 2 and vanish there.
  SeriesMatrix hidden(2, 2, 2);
  hidden.set(0, 0, one().truncate(2));
  hidden.set(1, 1, z().pow(3).truncate(2));
  const RankResult h = generic_rank(hidden);
  EXPECT_EQ(h.rank, 1u);
  EXPECT_TRUE(h.upper.is_unknown());
  EXPECT_EQ(h.upper.label(), "unknown@2");
}

TEST(GenericRankTest, RandomMatricesAgreeWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const fixtures::RandomMatrix rm = fixtures::random_matrix(seed);
    const RankResult got = generic_rank(rm.matrix, seed);
    EXPECT_EQ(got.rank, oracle::brute_force_rank(rm.dense, 2)) << "seed " << seed;
    EXPECT_TRUE(got.upper.is_true()) << "seed " << seed;
    for (const auto& p : rm.points) EXPECT_GE(got.rank, fixtures::evaluated_rank(rm.matrix, p));
  }
}

TEST(TriangularTest, IdentityAndErrors) {
  SeriesMatrix id(2, 2, 2);
  id.set(0, 0, one());
  id.set(1, 1, one());
  const std::vector<FracSeries> rhs = {frac(z()), FracSeries::quotient(one(), chi())};
  const auto x = solve_triangular(id, rhs);
  EXPECT_EQ(x[0], rhs[0]);
  EXPECT_EQ(x[1], rhs[1]);

  SeriesMatrix singular(1, 1, 2);
  try {
    solve_triangular(singular, {frac(z())});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSolvableAtTruncation);
  }
  SeriesMatrix upper(2, 2, 2);
  upper.set(0, 0, one());
  upper.set(1, 1, one());
  upper.set(0, 1, z());
  EXPECT_THROW(solve_triangular(upper, rhs), Error);
}

TEST(TriangularTest, RandomSystemsMultiplyBack) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracle::Generator gen(seed);
    const std::size_t n = 3;
    SeriesMatrix l(n, n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) l.set(i, j, gen.polynomial(2, 2, 3));
      if (l.at(i, i).is_zero()) l.set(i, i, chi());
    }
    std::vector<FracSeries> rhs;
    for (std::size_t i = 0; i < n; ++i) {
      rhs.push_back(FracSeries::quotient(gen.polynomial(2, 3, 3), chi() + gen.polynomial(2, 2, 2, true)));
    }
    const auto x = solve_triangular(l, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      FracSeries back(Series(2, Precision::exact()));
      for (std::size_t j = 0; j <= i; ++j) back = back + FracSeries(l.at(i, j)) * x[j];
      EXPECT_EQ(back, rhs[i]) << "seed " << seed << " row " << i;
    }
  }
}

TEST(SpanTest, MembershipVerdicts) {
  const std::vector<FracSeries> g1 = {frac(z()), frac(one())};
  const std::vector<FracSeries> g2 = {frac(chi()), frac(chi() * chi())};
  // chi * g1 / z + g2 is in the span; (1, 0) is not when only g1 is given.
  const std::vector<FracSeries> in = {frac(chi()) + frac(chi()),
                                      FracSeries::quotient(chi(), z()) + frac(chi() * chi())};
  EXPECT_TRUE(span_membership(in, {g1, g2}).is_true());
  const Verdict out = span_membership({frac(one()), frac(Series(2, Precision::exact()))}, {g1});
  EXPECT_TRUE(out.is_false());
  const Verdict zero_gen = span_membership({frac(one()), frac(one())}, {});
  EXPECT_TRUE(zero_gen.is_false());

  // Generators known only up to degree 1 with a hidden dependency.
  const std::vector<FracSeries> t1 = {frac(z().truncate(1)), frac(chi().truncate(1))};
  const Verdict unk = span_membership({frac(z().truncate(1)), frac(z().truncate(1))}, {t1});
  EXPECT_TRUE(unk.is_unknown());
}
