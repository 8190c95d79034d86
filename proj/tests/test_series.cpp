#include <gtest/gtest.h>

#include "twoxor/connected_table.hpp"
#include "twoxor/exp_polynomial.hpp"
#include "twoxor/series.hpp"

using namespace twoxor;

namespace {

BiSeries small_series(std::size_t mm, std::size_t nn, long seed) {
  BiSeries s(mm, nn);
  for (std::size_t a = 0; a <= mm; ++a)
    for (std::size_t b = 0; b <= nn; ++b)
      if (a + b > 0) s.at(a, b) = make_rational(static_cast<long>((a * 7 + b * 3 + seed) % 11) - 5, 1 + (a + 2 * b) % 4);
  return s;
}

}  // namespace

TEST(UniSeries, ExpLogRoundTrip) {
  UniSeries s(8);
  for (std::size_t k = 1; k <= 8; ++k) s[k] = make_rational(static_cast<long>(k) - 3, static_cast<long>(k + 1));
  EXPECT_EQ(series_log(series_exp(s)), s);
}

TEST(UniSeries, PowIsAdditiveInExponent) {
  UniSeries s(10);
  s[0] = 1;
  for (std::size_t k = 1; k <= 10; ++k) s[k] = make_rational(1, static_cast<long>(k * k));
  auto a = series_pow(s, make_rational(1, 3));
  auto b = series_pow(s, make_rational(5, 7));
  EXPECT_EQ(a * b, series_pow(s, make_rational(1, 3) + make_rational(5, 7)));
  EXPECT_EQ(series_pow(s, 1), s);
}

TEST(UniSeries, InverseTimesSelfIsOne) {
  UniSeries s(6);
  s[0] = 2;
  s[3] = make_rational(-1, 5);
  s[5] = 7;
  EXPECT_EQ(s * s.inverse(), UniSeries::constant(6, 1));
}

TEST(BiSeries, ExpLogRoundTrip) {
  auto s = small_series(4, 4, 3);
  s.at(0, 0) = 0;
  EXPECT_EQ(series_log(series_exp(s)), s);
}

TEST(BiSeries, SquareRootSquaredIsM) {
  auto M = build_M(2, 2, 1, 1);
  auto r = series_pow(M, make_rational(1, 2));
  EXPECT_EQ(r * r, M);
  EXPECT_EQ(series_pow(M, 1), M);
}

TEST(BiSeries, PowIsAdditiveInExponent) {
  auto M = build_M(4, 4, 1, 1);
  auto a = series_pow(M, make_rational(1, 2));
  auto b = series_pow(M, make_rational(3, 2));
  EXPECT_EQ(a * b, series_pow(M, 2));
}

TEST(BiSeries, RejectsBadConstantTerm) {
  auto M = build_M(2, 2, 1, 1);
  EXPECT_THROW(series_exp(M), UsageError);
  auto s = small_series(2, 2, 1);
  s.at(0, 0) = 3;
  EXPECT_THROW(series_log(s), UsageError);
  EXPECT_THROW(series_pow(s, make_rational(1, 2)), UsageError);
}

TEST(BiSeries, CoefficientRangeIsChecked) {
  BiSeries s(2, 3);
  EXPECT_THROW(s.coeff(3, 0), UsageError);
  EXPECT_THROW(s.coeff(0, 4), UsageError);
}

TEST(BuildM, TotalExpressionCount) {
  auto M = build_M(4, 4, 8, 1);
  EXPECT_EQ(M.egf_coeff(2, 2), BigRational(256));
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(M.egf_coeff(m, n), BigRational(pow_ui(4 * n * n, m)));
}

TEST(BuildM, SmallCoefficients) {
  EXPECT_EQ(build_M(1, 1, 1, 1).egf_coeff(1, 1), make_rational(1, 2));
  EXPECT_EQ(build_M(1, 1, 8, 1).coeff(1, 1), BigRational(4));
  EXPECT_EQ(build_M(1, 1, 4, 2).coeff(1, 1), BigRational(4));
  auto M0 = build_M(3, 0, 5, 7);
  EXPECT_EQ(M0.coeff(0, 0), BigRational(1));
  for (std::size_t m = 1; m <= 3; ++m) EXPECT_EQ(M0.coeff(m, 0), BigRational(0));
}

TEST(BlockEgf, SmallBlocks) {
  EXPECT_EQ(block_egf(1), ExpPolynomial::exponential(make_rational(1, 2)));
  EXPECT_EQ(block_egf(2), ExpPolynomial({{1, 2}, {-1, 1}}));
  ExpPolynomial three({{1, make_rational(9, 2)}, {-3, make_rational(5, 2)}, {2, make_rational(3, 2)}});
  EXPECT_EQ(block_egf(3), three);
}

TEST(BlockEgf, AgreesWithLogSeries) {
  const std::size_t mm = 7;
  auto C = series_log(build_M(mm, 6, 1, 1));
  for (std::size_t l = 1; l <= 6; ++l) {
    UniSeries from_log = BigRational(factorial(l)) * C.v_coefficient(l);
    EXPECT_EQ(block_egf(l).to_series(mm), from_log) << "block " << l;
  }
}

TEST(BlockEgf, AgreesWithConnectedTable) {
  for (std::size_t l = 1; l <= 8; ++l) EXPECT_EQ(ConnectedTable::instance().egf(l).to_exppoly(), block_egf(l));
}

TEST(ExpPolynomial, EgfCoefficients) {
  auto p = block_egf(2);
  EXPECT_EQ(p.egf_coeff(1), BigRational(1));
  EXPECT_EQ(p.egf_coeff(0), BigRational(0));
  auto sq = exppoly_product({{p, 2}});
  EXPECT_EQ(sq, ExpPolynomial({{1, 4}, {-2, 3}, {1, 2}}));
  EXPECT_EQ(exppoly_product({}), ExpPolynomial::unit());
  auto s = sq.to_series(6);
  for (unsigned long m = 0; m <= 6; ++m) EXPECT_EQ(sq.egf_coeff(m), s[m] * BigRational(factorial(m)));
}

TEST(ExpPolynomial, Evaluation) {
  EXPECT_NEAR(block_egf(2).eval(0.3), std::exp(0.6) - std::exp(0.3), 1e-14);
}
