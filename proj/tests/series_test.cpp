#include "oracles.hpp"

#include <crformal/error.hpp>
#include <crformal/series.hpp>

#include <gtest/gtest.h>

#include <vector>

using namespace crformal;

namespace {

const std::vector<std::string> kZChiTau = {"z", "chi", "tau"};

Series var3(std::size_t i) { return Series::polynomial_variable(3, i); }

Series two_i() { return Series::polynomial_constant(3, Scalar::gaussian(0, 2)); }

}  // namespace

TEST(MultiIndexTest, GradedLexOrder) {
  EXPECT_TRUE(MultiIndex({0, 1}) < MultiIndex({1, 0}));
  EXPECT_TRUE(MultiIndex({2, 0}) < MultiIndex({0, 3}));
  EXPECT_FALSE(MultiIndex({1, 0}) < MultiIndex({1, 0}));
  auto level = indices_of_degree(2, 2);
  ASSERT_EQ(level.size(), 3u);
  EXPECT_EQ(level[0], MultiIndex({0, 2}));
  EXPECT_EQ(level[2], MultiIndex({2, 0}));
  EXPECT_EQ(indices_up_to(3, 2).size(), 10u);
  EXPECT_EQ(multi_binomial(MultiIndex({3, 2}), MultiIndex({1, 1})), 6u);
  EXPECT_EQ(MultiIndex({3, 2}).factorial(), 12u);
}

TEST(MultiIndexTest, NegativeDifferenceThrows) {
  EXPECT_THROW(MultiIndex({1, 0}) - MultiIndex({0, 1}), Error);
}

TEST(ScalarTest, Text) {
  EXPECT_EQ(Scalar::rational(3, 2).to_string(), "3/2");
  EXPECT_EQ(Scalar::i().to_string(), "i");
  EXPECT_EQ((-Scalar::i()).to_string(), "-i");
  EXPECT_EQ(Scalar::gaussian(0, 2).to_string(), "2*i");
  EXPECT_EQ(Scalar::gaussian(2, 1, 2).to_string(), "(1+1/2*i)");
  EXPECT_THROW(Scalar(1) / Scalar(), Error);
  EXPECT_EQ(Scalar::gaussian(1, 1) * Scalar::gaussian(1, -1), Scalar(2));
  EXPECT_EQ(Scalar(1) / Scalar::i(), -Scalar::i());
}

TEST(SeriesTest, ProductOfConjugateFactors) {
  const Series z = var3(0), chi = var3(1), tau = var3(2);
  const Series a = tau + two_i() * z * chi;
  const Series b = tau - two_i() * z * chi;
  const Series prod = a * b;
  EXPECT_TRUE(prod.is_exact());
  EXPECT_EQ(prod.to_string(kZChiTau), "tau^2 + 4*z^2*chi^2");
}

TEST(SeriesTest, TruncationTakesMinimum) {
  const Series x = Series::variable(1, 0, Precision::upto(3));
  const Series y = Series::polynomial_variable(1, 0);
  EXPECT_EQ((x * y).precision(), Precision::upto(3));
  EXPECT_EQ((x + y).precision(), Precision::upto(3));
  EXPECT_TRUE(x.pow(4).is_zero());
  EXPECT_EQ(y.pow(4).term_count(), 1u);
  EXPECT_THROW(x.coefficient(MultiIndex({4})), Error);
}

TEST(SeriesTest, InvertUnit) {
  const Series z = var3(0), chi = var3(1), tau = var3(2);
  const Series f = Series::polynomial_constant(3, 1) - two_i() * z * chi * tau;
  EXPECT_THROW(invert_unit(f), Error);
  const Series inv = invert_unit(f, 6);
  EXPECT_EQ(inv.precision(), Precision::upto(6));
  EXPECT_EQ(inv.to_string(kZChiTau), "1 + 2*i*z*chi*tau - 4*z^2*chi^2*tau^2");
  EXPECT_EQ((inv * f).truncate(6), Series::constant(3, 1, Precision::upto(6)));
  EXPECT_THROW(invert_unit(z * chi, 4), Error);
}

TEST(SeriesTest, CatalanImplicitSolve) {
  // u = x + u^2.
  const Series x = Series::polynomial_variable(2, 0);
  const Series u = Series::polynomial_variable(2, 1);
  const Series sol = solve_implicit(x + u * u, 6);
  const long catalan[] = {1, 1, 2, 5, 14, 42};
  for (unsigned k = 1; k <= 6; ++k) {
    EXPECT_EQ(sol.coefficient(MultiIndex({k})), Scalar(catalan[k - 1])) << k;
  }
  EXPECT_THROW(solve_implicit(x + u * u), Error);
  EXPECT_THROW(solve_implicit(x + u * Series::polynomial_constant(2, 2), 4), Error);
}

TEST(SeriesTest, ExpOfImaginaryProduct) {
  const Series z = Series::polynomial_variable(2, 0), chi = Series::polynomial_variable(2, 1);
  const Series e = exp_series(Scalar::i() * z * chi, 8);
  EXPECT_EQ(e.coefficient(MultiIndex({2, 2})), Scalar::rational(-1, 2));
  EXPECT_EQ(e.coefficient(MultiIndex({3, 3})), Scalar::gaussian(0, -1, 6));
  EXPECT_THROW(exp_series(Series::polynomial_constant(2, 1), 3), Error);
}

TEST(SeriesTest, ComposeRequiresPointed) {
  const Series f = Series::polynomial_variable(1, 0);
  FormalMap g{{Series::polynomial_constant(1, 1)}};
  EXPECT_THROW(compose(f, g), Error);
}

TEST(SeriesTest, BlockCoefficientAndRestriction) {
  const Series z = var3(0), chi = var3(1), tau = var3(2);
  const Series q = tau + two_i() * z * chi + z * z * tau;
  const Series qz = block_coefficient(q, Block{0, 1}, MultiIndex({1}));
  EXPECT_EQ(qz.arity(), 2u);
  EXPECT_EQ(qz.to_string(), "2*i*x1");
  EXPECT_EQ(restrict_to_zero(q, Block{0, 1}).to_string(), "x2");
  const Series t = q.truncate(3);
  EXPECT_EQ(block_coefficient(t, Block{0, 1}, MultiIndex({2})).precision(), Precision::upto(1));
  EXPECT_THROW(block_coefficient(t, Block{0, 1}, MultiIndex({4})), Error);
  const Series swapped = swap_blocks(q, Block{0, 1}, Block{1, 1});
  EXPECT_EQ(swapped.to_string(kZChiTau), "tau + 2*i*z*chi + chi^2*tau");
}

TEST(SeriesTest, DerivativeLowersPrecision) {
  const Series x = Series::variable(2, 0, Precision::upto(5));
  const Series f = x.pow(3) * Scalar(2);
  const Series d = partial_derivative(f, 0);
  EXPECT_EQ(d.precision(), Precision::upto(4));
  EXPECT_EQ(d.coefficient(MultiIndex({2, 0})), Scalar(6));
}

TEST(SeriesTest, ValuationTrackingProduct) {
  // (x^3 + O(4)) * x^2 known to degree 5 where the plain rule would say 4.
  const Series a = Series::variable(1, 0, Precision::upto(4)).pow(3);
  const Series b = Series::variable(1, 0, Precision::upto(4)).pow(2);
  EXPECT_EQ((a * b).precision(), Precision::upto(4));
  const Series c = mul_tracking_valuation(a, b);
  EXPECT_EQ(c.precision(), Precision::upto(6));
  EXPECT_EQ(c.coefficient(MultiIndex({5})), Scalar(1));
}

// Property tests against the dense oracle.

class SeriesPropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SeriesPropertyTest, RingAxiomsAndOracleProduct) {
  oracle::Generator gen(GetParam());
  const std::size_t k = static_cast<std::size_t>(gen.small(1, 3));
  const int D = static_cast<int>(gen.small(2, 6));
  const Series a = gen.polynomial(k, 4, 5).truncate(D);
  const Series b = gen.polynomial(k, 4, 5).truncate(D);
  const Series c = gen.polynomial(k, 4, 5);

  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ(a + (b - a), b);
  const Series pa = gen.polynomial(k, 4, 6), pb = gen.polynomial(k, 4, 6);
  EXPECT_EQ(pa * pb, oracle::to_series(oracle::mul(oracle::from_series(pa), oracle::from_series(pb), -1),
                                       k, Precision::exact()));
  EXPECT_EQ((pa.truncate(D) * pb), oracle::to_series(oracle::mul(oracle::from_series(pa),
                                                                 oracle::from_series(pb), D),
                                                     k, Precision::upto(D)));
}

TEST_P(SeriesPropertyTest, OrderIsMultiplicative) {
  oracle::Generator gen(GetParam());
  const std::size_t k = static_cast<std::size_t>(gen.small(1, 3));
  const Series a = gen.polynomial(k, 5, 4), b = gen.polynomial(k, 5, 4);
  if (a.is_zero() || b.is_zero()) GTEST_SKIP();
  EXPECT_EQ(*ord(a * b), *ord(a) + *ord(b));
}

TEST_P(SeriesPropertyTest, ComposeMatchesOracleAndIsAssociative) {
  oracle::Generator gen(GetParam());
  const int D = static_cast<int>(gen.small(3, 6));
  const Series f = gen.polynomial(2, 3, 4);
  FormalMap g{{gen.polynomial(2, 3, 3, true), gen.polynomial(2, 3, 3, true)}};
  FormalMap h{{gen.polynomial(2, 2, 3, true), gen.polynomial(2, 2, 3, true)}};

  const Series fg = compose(f.truncate(D), g);
  const auto expected = oracle::compose(oracle::from_series(f),
                                        {oracle::from_series(g.components[0]),
                                         oracle::from_series(g.components[1])},
                                        2, D);
  EXPECT_EQ(fg, oracle::to_series(expected, 2, Precision::upto(D)));

  FormalMap gh{{compose(g.components[0], h), compose(g.components[1], h)}};
  EXPECT_EQ(compose(fg, h), compose(f.truncate(D), gh).truncate(D));
}

TEST_P(SeriesPropertyTest, ConjugateIsInvolutiveAndMultiplicative) {
  oracle::Generator gen(GetParam());
  const Series a = gen.polynomial(3, 4, 5), b = gen.polynomial(3, 4, 5);
  EXPECT_EQ(conjugate(conjugate(a)), a);
  EXPECT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
}

TEST_P(SeriesPropertyTest, InverseAndImplicitSolution) {
  oracle::Generator gen(GetParam());
  const int D = static_cast<int>(gen.small(2, 7));
  Series f = gen.polynomial(2, 3, 4, true) + Series::polynomial_constant(2, gen.scalar() + Scalar(7));
  const Series inv = invert_unit(f, D);
  EXPECT_EQ((inv * f).truncate(D), Series::constant(2, 1, Precision::upto(D)));

  // rhs(x, u) with no u-linear term at the origin.
  const Series x = Series::polynomial_variable(2, 0), u = Series::polynomial_variable(2, 1);
  const Series rhs = gen.polynomial(2, 2, 2, true) * x + gen.polynomial(2, 3, 3) * u * u;
  const Series sol = solve_implicit(rhs, D);
  FormalMap sub{{Series::polynomial_variable(1, 0), sol}};
  EXPECT_EQ(compose(rhs, sub), sol);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SeriesPropertyTest, ::testing::Range<std::uint64_t>(1, 41));
