#pragma once

// Labelled multigraphs of the multigraph process: loops and repeated edges allowed,
// each weighted by its compensation factor kappa(G) = seqv(G) / (2^m m!).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/errors.hpp"
#include "twoxor/series.hpp"

namespace twoxor {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with first <= second. Vertices are 1-based.
struct Edge {
  Vertex first;
  Vertex second;

  Edge(Vertex a, Vertex b) : first(std::min(a, b)), second(std::max(a, b)) {}
  bool is_loop() const noexcept { return first == second; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Multigraph {
 public:
  explicit Multigraph(std::size_t n, std::vector<Edge> edges = {}) : n_(n), edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
      if (e.first < 1 || e.second > n_) throw UsageError("edge endpoint outside [1, n]");
    }
    std::sort(edges_.begin(), edges_.end());
  }

  std::size_t vertices() const noexcept { return n_; }
  std::size_t edges_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  long excess() const noexcept { return static_cast<long>(edges_.size()) - static_cast<long>(n_); }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;
  friend auto operator<=>(const Multigraph& a, const Multigraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.edges_ <=> b.edges_;
  }

  std::string to_string() const {
    std::string s = "n=" + std::to_string(n_) + " {";
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i) s += ",";
      s += "{" + std::to_string(edges_[i].first) + "," + std::to_string(edges_[i].second) + "}";
    }
    return s + "}";
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;  // sorted
};

/// Number of vertex sequences u1,v1,...,um,vm producing G:
/// m! 2^{#non-loop edges} / prod(multiplicity!).
inline BigInt seqv(const Multigraph& g) {
  const auto& e = g.edges();
  BigInt r = factorial(e.size());
  std::size_t non_loops = 0;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    while (j < e.size() && e[j] == e[i]) ++j;
    r /= factorial(j - i);
    if (!e[i].is_loop()) non_loops += j - i;
    i = j;
  }
  return r * pow_ui(2, non_loops);
}

inline BigRational kappa(const Multigraph& g) {
  const std::size_t m = g.edges_count();
  return make_rational(seqv(g), pow_ui(2, m) * factorial(m));
}

inline std::size_t connected_components(const Multigraph& g) {
  std::vector<std::size_t> parent(g.vertices() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = g.vertices();
  for (const Edge& e : g.edges()) {
    std::size_t a = find(e.first), b = find(e.second);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

inline bool is_connected(const Multigraph& g) { return connected_components(g) == 1; }

/// M_{m,n} = n^{2m} / (2^m m!)
inline BigRational multigraph_count(unsigned long m, unsigned long n) {
  return make_rational(pow_ui(n, 2 * m), pow_ui(2, m) * factorial(m));
}

/// Cubic multigraphs on 2r vertices: (6r)! / ((3!)^{2r} 2^{3r} (3r)!)
inline BigRational cubic_count(unsigned long r) {
  if (r < 1) throw UsageError("cubic_count needs r >= 1");
  return make_rational(factorial(6 * r), pow_ui(6, 2 * r) * pow_ui(2, 3 * r) * factorial(3 * r));
}

/// Q(n, m) = [x^{2m}] (e^x - 1 - x)^n
inline BigRational core_sequence_weight(unsigned long n, unsigned long m) {
  if (n == 0) return m == 0 ? 1 : 0;
  if (m < n) return 0;
  // (e^x - 1 - x)^n = x^{2n} (2h)^n / 2^n with h = (e^x - 1 - x)/x^2 = 1/2 + x/6 + ...
  const std::size_t order = 2 * (m - n);
  UniSeries twice_h(order);
  for (std::size_t k = 0; k <= order; ++k) twice_h[k] = BigRational(2) / BigRational(factorial(k + 2));
  UniSeries p = series_pow(twice_h, BigRational(static_cast<long>(n)));
  return p[order] / BigRational(pow_ui(2, n));
}

/// Core_{m,n} = (2m)! / (2^m m!) Q(n, m): multigraphs with minimum degree >= 2.
inline BigRational core_count(unsigned long m, unsigned long n) {
  return BigRational(factorial(2 * m)) / BigRational(pow_ui(2, m) * factorial(m)) * core_sequence_weight(n, m);
}

/// One draw of the multigraph process: 2m independent uniform vertices.
template <class URBG>
Multigraph sample_multigraph(std::size_t n, std::size_t m, URBG& rng) {
  if (n == 0 && m > 0) throw UsageError("cannot draw edges on zero vertices");
  std::uniform_int_distribution<Vertex> pick(1, static_cast<Vertex>(std::max<std::size_t>(n, 1)));
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vertex a = pick(rng);
    Vertex b = pick(rng);
    edges.emplace_back(a, b);
  }
  return Multigraph(n, std::move(edges));
}

struct WeightedMultigraph {
  Multigraph graph;
  BigRational kappa;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Every distinct multigraph with n vertices and m edges, once each, with kappa.
/// Refuses when the n^{2m} sequences it stands for exceed the cap.
inline std::vector<WeightedMultigraph> enumerate_multigraphs(std::size_t n, std::size_t m,
                                                             std::uint64_t cap = kDefaultEnumerationCap) {
  long double budget = std::pow(static_cast<long double>(n), 2.0L * static_cast<long double>(m));
  if (budget > static_cast<long double>(cap)) {
    throw BudgetExceeded("enumerate_multigraphs", static_cast<std::uint64_t>(std::min<long double>(budget, 1.8e19L)),
                         cap);
  }
  std::vector<Edge> slots;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a; b <= n; ++b) slots.emplace_back(a, b);

  std::vector<WeightedMultigraph> out;
  std::vector<Edge> current;
  // multisets of size m from slots, non-decreasing slot index
  auto rec = [&](auto&& self, std::size_t start, std::size_t left) -> void {
    if (left == 0) {
      Multigraph g(n, current);
      BigRational k = kappa(g);
      out.push_back({std::move(g), std::move(k)});
      return;
    }
    for (std::size_t i = start; i < slots.size(); ++i) {
      current.push_back(slots[i]);
      self(self, i, left - 1);
      current.pop_back();
    }
  };
  if (n > 0 || m == 0) rec(rec, 0, m);
  return out;
}

}  // namespace twoxor
