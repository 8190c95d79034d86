#include <gtest/gtest.h>

#include <map>
#include <random>

#include "twoxor/census.hpp"
#include "twoxor/multigraph.hpp"

using namespace twoxor;

namespace {

Multigraph running_example() { return Multigraph(7, {{2, 3}, {7, 7}, {1, 3}, {5, 6}}); }

/// Counts vertex sequences producing each multigraph, by brute force over n^{2m}.
std::map<Multigraph, std::uint64_t> brute_sequences(std::size_t n, std::size_t m) {
  std::map<Multigraph, std::uint64_t> out;
  std::vector<Vertex> seq(2 * m, 1);
  while (true) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) edges.emplace_back(seq[2 * i], seq[2 * i + 1]);
    ++out[Multigraph(n, edges)];
    std::size_t k = 0;
    while (k < seq.size() && seq[k] == n) seq[k++] = 1;
    if (k == seq.size()) break;
    ++seq[k];
  }
  return out;
}

}  // namespace

TEST(Kappa, RunningExample) {
  auto g = running_example();
  EXPECT_EQ(seqv(g), BigInt(192));
  EXPECT_EQ(kappa(g), make_rational(1, 2));
  EXPECT_EQ(connected_components(g), 4u);
}

TEST(Kappa, SimpleGraphsHaveKappaOne) {
  EXPECT_EQ(kappa(Multigraph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})), BigRational(1));
  EXPECT_EQ(kappa(Multigraph(3, {})), BigRational(1));
}

TEST(Kappa, SingleLoop) {
  Multigraph g(1, {{1, 1}});
  EXPECT_EQ(seqv(g), BigInt(1));
  EXPECT_EQ(kappa(g), make_rational(1, 2));
}

TEST(Kappa, ClosedFormMatchesBruteForce) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m)
      for (const auto& [g, count] : brute_sequences(n, m)) EXPECT_EQ(seqv(g), BigInt(count)) << g.to_string();
}

TEST(Counts, Formulas) {
  EXPECT_EQ(multigraph_count(1, 1), make_rational(1, 2));
  EXPECT_EQ(cubic_count(1), make_rational(5, 12));
  EXPECT_EQ(core_count(1, 1), make_rational(1, 2));
  EXPECT_THROW(cubic_count(0), UsageError);
}

TEST(Counts, CoreMatchesEnumeration) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      BigRational sum;
      for (const auto& w : enumerate_multigraphs(n, m)) {
        std::vector<int> deg(n + 1, 0);
        for (const Edge& e : w.graph.edges()) {
          ++deg[e.first];
          ++deg[e.second];
        }
        bool core = true;
        for (std::size_t v = 1; v <= n; ++v) core = core && deg[v] >= 2;
        if (core) sum += w.kappa;
      }
      EXPECT_EQ(sum, core_count(m, n)) << n << "," << m;
    }
}

TEST(Enumerate, SumsToTotal) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      BigRational sum;
      for (const auto& w : enumerate_multigraphs(n, m)) sum += w.kappa;
      EXPECT_EQ(sum, multigraph_count(m, n));
    }
  auto one = enumerate_multigraphs(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].kappa, make_rational(1, 2));
  BigRational two;
  for (const auto& w : enumerate_multigraphs(2, 1)) two += w.kappa;
  EXPECT_EQ(two, BigRational(2));
}

TEST(Enumerate, ConnectedMatchesLogSeries) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m) {
      BigRational sum;
      for (const auto& w : enumerate_multigraphs(n, m))
        if (is_connected(w.graph)) sum += w.kappa;
      EXPECT_EQ(sum, connected_count_series(m, n)) << n << "," << m;
    }
}

TEST(Enumerate, RefusesOverCap) {
  try {
    enumerate_multigraphs(10, 10, 1000);
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.cap(), 1000u);
    EXPECT_GT(e.required(), 1000u);
  }
}

TEST(Components, EdgelessAndTree) {
  EXPECT_EQ(connected_components(Multigraph(5, {})), 5u);
  EXPECT_TRUE(is_connected(Multigraph(4, {{1, 2}, {2, 3}, {2, 4}})));
}

TEST(Sampler, DrawsRequestedShape) {
  std::mt19937_64 rng(7);
  auto g = sample_multigraph(5, 9, rng);
  EXPECT_EQ(g.vertices(), 5u);
  EXPECT_EQ(g.edges_count(), 9u);
  EXPECT_EQ(g.excess(), 4);
}
