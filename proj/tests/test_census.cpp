#include <gtest/gtest.h>

#include "twoxor/census.hpp"
#include "twoxor/multigraph.hpp"

using namespace twoxor;

namespace {

/// m!/n^{2m} times the sum over edge counts m_j per block of prod C_{m_j, |B_j|}.
BigRational excess_composition(const IntegerPartition& part, unsigned long m) {
  auto parts = part.parts();
  const std::size_t n = part.size();
  BigRational sum;
  auto rec = [&](auto&& self, std::size_t j, unsigned long left, BigRational acc) -> void {
    if (j == parts.size()) {
      if (left == 0) sum += acc;
      return;
    }
    for (unsigned long mj = parts[j] - 1; mj <= left; ++mj) self(self, j + 1, left - mj, acc * connected_count_series(mj, parts[j]));
  };
  rec(rec, 0, m, BigRational(1));
  return sum * BigRational(factorial(m)) / BigRational(pow_ui(n, 2 * m));
}

}  // namespace

TEST(Connected, Values) {
  EXPECT_EQ(connected_count(2, 3), BigRational(3));
  EXPECT_EQ(connected_count(1, 1), make_rational(1, 2));
  EXPECT_EQ(connected_count(0, 2), BigRational(0));
  for (unsigned long n = 1; n <= 8; ++n) EXPECT_EQ(connected_count(n - 1, n), BigRational(n == 1 ? BigInt(1) : pow_ui(n, n - 2)));
  for (unsigned long n = 1; n <= 5; ++n)
    for (unsigned long m = 0; m <= 6; ++m) EXPECT_EQ(connected_count(m, n), connected_count_series(m, n));
}

TEST(Weighted, Values) {
  EXPECT_EQ(weighted_count(1, 1, make_rational(1, 2)), make_rational(1, 4));
  for (unsigned long n = 0; n <= 4; ++n) {
    EXPECT_EQ(weighted_count(0, n, make_rational(2, 3)), pow(make_rational(2, 3), n));
    for (unsigned long m = 0; m <= 4; ++m) EXPECT_EQ(weighted_count(m, n, 1), multigraph_count(m, n));
  }
}

TEST(Weighted, AgreesWithSeries) {
  for (auto sigma : {make_rational(1, 2), make_rational(3, 5), BigRational(2)})
    for (unsigned long n = 1; n <= 5; ++n)
      for (unsigned long m = 0; m <= 5; ++m) EXPECT_EQ(weighted_count(m, n, sigma), weighted_count_series(m, n, sigma));
}

TEST(Weighted, AgreesWithEnumeration) {
  const BigRational sigma = make_rational(1, 2);
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      BigRational sum;
      for (const auto& w : enumerate_multigraphs(n, m)) sum += w.kappa * pow(sigma, connected_components(w.graph));
      EXPECT_EQ(sum, weighted_count(m, n, sigma));
    }
}

TEST(ProbSat, Values) {
  EXPECT_EQ(prob_sat_exact(1, 1), make_rational(1, 2));
  EXPECT_EQ(prob_sat_exact(1, 2), make_rational(3, 4));
  EXPECT_EQ(prob_sat_exact(0, 5), BigRational(1));
  for (unsigned long n = 1; n <= 5; ++n)
    for (unsigned long m = 0; m <= 5; ++m) EXPECT_EQ(prob_sat_exact(m, n), prob_sat_series(m, n));
}

TEST(ProbInput, Values) {
  EXPECT_EQ(prob_input_satisfies_exact(1, 1), BigRational(1));
  EXPECT_EQ(prob_input_satisfies_exact(0, 4), BigRational(1));
  EXPECT_EQ(prob_input_satisfies_exact(1, 2), make_rational(2, 3));
  for (unsigned long n = 1; n <= 6; ++n)
    for (unsigned long m = 0; m <= 6; ++m)
      EXPECT_EQ(prob_input_satisfies_exact(m, n) * prob_sat_exact(m, n), make_rational(1, 1) / BigRational(pow_ui(2, m)));
}

TEST(ProbFunction, Values) {
  EXPECT_EQ(prob_function_exact(IntegerPartition::parse("2"), 1).prob_per_function, make_rational(1, 4));
  EXPECT_EQ(prob_function_exact(IntegerPartition::parse("3"), 2).prob_per_function, make_rational(2, 27));
  EXPECT_EQ(prob_function_exact(IntegerPartition::parse("1"), 1).prob_per_function, make_rational(1, 2));
  EXPECT_EQ(prob_function_exact(IntegerPartition::parse("2+2"), 1).prob_per_function, BigRational(0));
  auto c = prob_function_exact(IntegerPartition::parse("3"), 2);
  EXPECT_EQ(c.count_per_function, BigRational(96));
  EXPECT_EQ(c.class_size, BigInt(4));
  EXPECT_EQ(c.prob_class, c.prob_per_function * BigRational(4));
}

TEST(ProbFunction, TwoPathsAgree) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& p : partitions_of(n))
      for (unsigned long m = 0; m <= 6; ++m)
        EXPECT_EQ(prob_function_exact(p, m).prob_per_function, prob_function_series(p, m).prob_per_function)
            << p.to_string() << " m=" << m;
}

TEST(ProbFunction, ExcessCompositionOracle) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : partitions_of(n))
      for (unsigned long m = 0; m <= 5; ++m)
        EXPECT_EQ(prob_function_exact(p, m).prob_per_function, excess_composition(p, m)) << p.to_string() << " m=" << m;
}

TEST(ProbFunction, TermCapFallsBackToSeries) {
  auto p = IntegerPartition::parse("4+3+2+1");
  EXPECT_EQ(prob_function_exact(p, 7, 1).prob_per_function, prob_function_series(p, 7).prob_per_function);
}

TEST(ProbFunction, SingleBlockIsConnectedCount) {
  for (unsigned long n = 1; n <= 10; ++n)
    for (unsigned long m = n - 1; m <= n + 4; ++m)
      EXPECT_EQ(prob_function_exact(IntegerPartition::single_block(n), m).prob_per_function,
                BigRational(factorial(m)) * connected_count(m, n) / BigRational(pow_ui(n, 2 * m)));
}

TEST(ProbFunction, SupportIsExact) {
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& p : partitions_of(n))
      for (unsigned long m = 0; m <= n + 1; ++m) {
        bool zero = prob_function_exact(p, m).prob_per_function == 0;
        EXPECT_EQ(zero, m + p.num_parts() < n) << p.to_string() << " m=" << m;
      }
}

TEST(ProbFunction, RejectsEmptyPartition) { EXPECT_THROW(prob_function_exact(IntegerPartition(), 1), UsageError); }

TEST(ClosedForm, Anchors) {
  EXPECT_EQ(prob_g_blocks_closed_form(2, 2, 1), make_rational(1, 4));
  EXPECT_EQ(prob_g_blocks_closed_form(3, 3, 2), make_rational(2, 27));
  EXPECT_EQ(prob_g_blocks_closed_form(2, 4, 1), BigRational(0));
  EXPECT_THROW(prob_g_blocks_closed_form(3, 4, 2), UsageError);
  EXPECT_THROW(prob_g_blocks_closed_form(4, 4, 2), UsageError);
}

TEST(ClosedForm, MatchesProductFormula) {
  for (unsigned g : {2U, 3U})
    for (unsigned long n = g; n <= 12; n += g) {
      auto part = IntegerPartition::from_counts({{g, n / g}});
      for (unsigned long m = 0; m <= n + 3; ++m)
        EXPECT_EQ(prob_g_blocks_closed_form(g, n, m), prob_function_exact(part, m).prob_per_function)
            << "g=" << g << " n=" << n << " m=" << m;
    }
}

TEST(Distribution, Normalization) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned long m = 0; m <= 5; ++m) {
      auto d = full_distribution(n, m);
      BigRational sum;
      for (const auto& c : d.classes) {
        EXPECT_GE(sign(c.prob_class), 0);
        sum += BigRational(c.class_size) * c.prob_per_function;
      }
      EXPECT_EQ(sum, prob_sat_exact(m, n));
      EXPECT_EQ(d.prob_false, BigRational(1) - prob_sat_exact(m, n));
    }
}

TEST(Distribution, SmallCases) {
  auto d = full_distribution(1, 1);
  ASSERT_EQ(d.classes.size(), 1u);
  EXPECT_EQ(d.classes[0].prob_class, make_rational(1, 2));
  EXPECT_EQ(d.prob_false, make_rational(1, 2));
  EXPECT_THROW(full_distribution(0, 1), UsageError);
}
