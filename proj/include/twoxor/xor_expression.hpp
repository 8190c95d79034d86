#pragma once

// 2-Xor expressions: clauses l1 xor l2 over n variables, their reduction to a
// canonical Boolean function, and the colored multigraph encoding.
//
// Text format (round-trips through format_expression):
//   expression := clause ("," clause)*  |  ""
//   clause     := literal " " literal
//   literal    := ["-"] variable        variable in [1, n]
// e.g. "1 -3, -6 5, 7 -7".

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twoxor/errors.hpp"
#include "twoxor/multigraph.hpp"
#include "twoxor/partition.hpp"

namespace twoxor {

struct Literal {
  Vertex var = 1;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
  Literal first;
  Literal second;

  friend auto operator<=>(const Clause&, const Clause&) = default;
};

class Expression {
 public:
  explicit Expression(std::size_t n, std::vector<Clause> clauses = {}) : n_(n), clauses_(std::move(clauses)) {
    for (const Clause& c : clauses_) {
      if (c.first.var < 1 || c.first.var > n_ || c.second.var < 1 || c.second.var > n_)
        throw UsageError("clause variable outside [1, n]");
    }
  }

  std::size_t variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  std::size_t n_;
  std::vector<Clause> clauses_;
};

/// TRUE iff every clause has literals of different values. assignment[i] is x_{i+1}.
inline bool evaluate(const Expression& e, const std::vector<bool>& assignment) {
  if (assignment.size() != e.variables()) throw UsageError("assignment length differs from n");
  for (const Clause& c : e.clauses()) {
    bool a = assignment[c.first.var - 1] != c.first.negated;
    bool b = assignment[c.second.var - 1] != c.second.negated;
    if (a == b) return false;
  }
  return true;
}

inline std::string format_expression(const Expression& e) {
  std::string s;
  auto lit = [](const Literal& l) { return (l.negated ? "-" : "") + std::to_string(l.var); };
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ", ";
    s += lit(e.clauses()[i].first) + " " + lit(e.clauses()[i].second);
  }
  return s;
}

/// Parses the clause list. With n = 0 the variable count is the largest index seen.
inline Expression parse_expression(std::string_view text, std::size_t n = 0) {
  std::vector<Clause> clauses;
  std::size_t max_var = 0;
  auto fail = [&](const std::string& why) { throw UsageError("malformed expression (" + why + "): '" + std::string(text) + "'"); };

  auto parse_literal = [&](std::string_view tok) {
    Literal l;
    if (!tok.empty() && tok.front() == '-') {
      l.negated = true;
      tok.remove_prefix(1);
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) fail("bad literal");
    l.var = static_cast<Vertex>(v);
    max_var = std::max<std::size_t>(max_var, v);
    return l;
  };

  std::size_t pos = 0;
  bool all_blank = text.find_first_not_of(" \t") == std::string_view::npos;
  while (!all_blank && pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::istringstream in{std::string(text.substr(pos, next - pos))};
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra)) fail("each clause needs exactly two literals");
    clauses.push_back({parse_literal(a), parse_literal(b)});
    pos = next + 1;
  }
  if (n == 0) n = max_var;
  if (max_var > n) fail("variable exceeds n");
  return Expression(n, std::move(clauses));
}

// Clause encoding: literal index 2(var-1) + negated, clause index lit1 * 2n + lit2,
// giving the 4n^2 distinct clauses.

inline std::uint64_t clause_count(std::size_t n) { return 4ULL * n * n; }

inline std::uint64_t clause_index(const Clause& c, std::size_t n) {
  auto lit = [](const Literal& l) -> std::uint64_t { return 2ULL * (l.var - 1) + (l.negated ? 1 : 0); };
  return lit(c.first) * 2 * n + lit(c.second);
}

inline Clause clause_from_index(std::uint64_t index, std::size_t n) {
  if (index >= clause_count(n)) throw UsageError("clause index out of range");
  auto lit = [](std::uint64_t k) { return Literal{static_cast<Vertex>(k / 2 + 1), (k & 1U) != 0}; };
  return {lit(index / (2 * n)), lit(index % (2 * n))};
}

/// m clauses drawn uniformly with replacement from the 4n^2 clauses.
template <class URBG>
Expression sample_expression(std::size_t n, std::size_t m, URBG& rng) {
  if (n == 0) throw UsageError("sample_expression needs n >= 1");
  std::uniform_int_distribution<std::uint64_t> pick(0, clause_count(n) - 1);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t i = 0; i < m; ++i) clauses.push_back(clause_from_index(pick(rng), n));
  return Expression(n, std::move(clauses));
}

// ---------------------------------------------------------------------------
// Colored multigraph encoding. A clause on one variable is a loop with one of 4
// colors (the two polarities); a clause on two variables is an edge with one of
// 8 colors (which endpoint comes first, and the two polarities).

struct ColoredEdge {
  Edge edge;
  unsigned color;  // < 4 for loops, < 8 otherwise
  friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

struct ColoredMultigraph {
  Multigraph graph;
  std::vector<ColoredEdge> edges;  // in clause order
};

inline ColoredMultigraph to_multigraph(const Expression& e) {
  std::vector<ColoredEdge> colored;
  std::vector<Edge> plain;
  for (const Clause& c : e.clauses()) {
    Edge edge(c.first.var, c.second.var);
    unsigned color;
    if (edge.is_loop()) {
      color = (c.first.negated ? 1U : 0U) | (c.second.negated ? 2U : 0U);
    } else {
      bool low_first = c.first.var < c.second.var;
      const Literal& low = low_first ? c.first : c.second;
      const Literal& high = low_first ? c.second : c.first;
      color = (low.negated ? 1U : 0U) | (high.negated ? 2U : 0U) | (low_first ? 0U : 4U);
    }
    colored.push_back({edge, color});
    plain.push_back(edge);
  }
  return {Multigraph(e.variables(), std::move(plain)), std::move(colored)};
}

inline Expression decode(const ColoredMultigraph& g) {
  std::vector<Clause> clauses;
  for (const ColoredEdge& ce : g.edges) {
    const Edge& ed = ce.edge;
    if (ed.is_loop()) {
      if (ce.color >= 4) throw UsageError("loop color must be < 4");
      clauses.push_back({{ed.first, (ce.color & 1U) != 0}, {ed.first, (ce.color & 2U) != 0}});
    } else {
      if (ce.color >= 8) throw UsageError("edge color must be < 8");
      Literal low{ed.first, (ce.color & 1U) != 0};
      Literal high{ed.second, (ce.color & 2U) != 0};
      clauses.push_back((ce.color & 4U) ? Clause{high, low} : Clause{low, high});
    }
  }
  return Expression(g.graph.vertices(), std::move(clauses));
}

// ---------------------------------------------------------------------------

/// Disjoint sets where each element carries its xor-offset to the root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  /// (root, x xor root)
  std::pair<std::size_t, unsigned char> find(std::size_t x) {
    unsigned char p = 0;
    std::size_t r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // compress
    unsigned char acc = p;
    while (parent_[x] != r) {
      std::size_t next = parent_[x];
      unsigned char here = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= here;
      x = next;
    }
    return {r, p};
  }

  /// Imposes x_a xor x_b = value. Returns false on contradiction.
  bool unite(std::size_t a, std::size_t b, unsigned char value) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == value;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = static_cast<unsigned char>(pa ^ pb ^ value);
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> parity_;
  std::vector<unsigned char> rank_;
};

/// FALSE, or blocks of literals that must share one value. Each block is sorted by
/// variable and its smallest variable is positive; blocks are sorted by that variable.
class FunctionRepr {
 public:
  static FunctionRepr false_function(std::size_t n) {
    FunctionRepr f;
    f.n_ = n;
    f.is_false_ = true;
    return f;
  }

  static FunctionRepr true_function(std::size_t n) {
    std::vector<std::vector<Literal>> blocks;
    for (Vertex v = 1; v <= n; ++v) blocks.push_back({{v, false}});
    return from_blocks(n, std::move(blocks));
  }

  /// Canonicalizes arbitrary blocks; they must partition [1, n].
  static FunctionRepr from_blocks(std::size_t n, std::vector<std::vector<Literal>> blocks) {
    std::vector<bool> seen(n + 1, false);
    for (auto& b : blocks) {
      if (b.empty()) throw UsageError("empty block");
      std::sort(b.begin(), b.end());
      bool flip = b.front().negated;
      for (auto& l : b) {
        if (l.var < 1 || l.var > n || seen[l.var]) throw UsageError("blocks must partition the variables");
        seen[l.var] = true;
        l.negated = l.negated != flip;
      }
    }
    for (std::size_t v = 1; v <= n; ++v)
      if (!seen[v]) throw UsageError("blocks must cover every variable");
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front().var < b.front().var; });
    FunctionRepr f;
    f.n_ = n;
    f.blocks_ = std::move(blocks);
    return f;
  }

  bool is_false() const noexcept { return is_false_; }
  std::size_t variables() const noexcept { return n_; }
  const std::vector<std::vector<Literal>>& blocks() const noexcept { return blocks_; }

  /// The function's value under an assignment (assignment[i] is x_{i+1}).
  bool operator()(const std::vector<bool>& assignment) const {
    if (assignment.size() != n_) throw UsageError("assignment length differs from n");
    if (is_false_) return false;
    for (const auto& b : blocks_) {
      bool first = assignment[b.front().var - 1] != b.front().negated;
      for (const auto& l : b)
        if ((assignment[l.var - 1] != l.negated) != first) return false;
    }
    return true;
  }

  /// "FALSE" or "{1,-2,-3}{4}{5,6}{7}".
  std::string to_string() const {
    if (is_false_) return "FALSE";
    std::string s;
    for (const auto& b : blocks_) {
      s += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ',';
        if (b[i].negated) s += '-';
        s += std::to_string(b[i].var);
      }
      s += '}';
    }
    return s;
  }

  friend bool operator==(const FunctionRepr&, const FunctionRepr&) = default;
  friend auto operator<=>(const FunctionRepr& a, const FunctionRepr& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.is_false_ <=> b.is_false_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  std::size_t n_ = 0;
  bool is_false_ = false;
  std::vector<std::vector<Literal>> blocks_;
};

inline FunctionRepr reduce(const Expression& e) {
  const std::size_t n = e.variables();
  ParityUnionFind uf(n + 1);
  bool contradiction = false;
  for (const Clause& c : e.clauses()) {
    // l1 xor l2 = 1  <=>  x_a xor x_b = 1 xor neg1 xor neg2
    unsigned char value = 1U ^ (c.first.negated ? 1U : 0U) ^ (c.second.negated ? 1U : 0U);
    if (!uf.unite(c.first.var, c.second.var, value)) contradiction = true;
  }
  if (contradiction) return FunctionRepr::false_function(n);

  std::vector<std::vector<Literal>> by_root(n + 1);
  for (Vertex v = 1; v <= n; ++v) {
    auto [root, parity] = uf.find(v);
    by_root[root].push_back({v, parity != 0});
  }
  std::vector<std::vector<Literal>> blocks;
  for (auto& b : by_root)
    if (!b.empty()) blocks.push_back(std::move(b));
  return FunctionRepr::from_blocks(n, std::move(blocks));
}

inline IntegerPartition partition_of(const FunctionRepr& f) {
  if (f.is_false()) throw UsageError("FALSE has no partition");
  std::vector<std::size_t> parts;
  for (const auto& b : f.blocks()) parts.push_back(b.size());
  return IntegerPartition::from_parts(parts);
}

/// Number of variables the function depends on: n minus the singleton blocks.
inline std::size_t essential_count(const FunctionRepr& f) {
  if (f.is_false()) return 0;
  std::size_t singles = 0;
  for (const auto& b : f.blocks()) singles += b.size() == 1;
  return f.variables() - singles;
}

/// Truth table indexed by the assignment bits (bit i of the index is x_{i+1}).
template <class F>
std::vector<bool> truth_table(std::size_t n, F&& f) {
  if (n > 24) throw UsageError("truth table needs n <= 24");
  std::vector<bool> table(std::size_t{1} << n);
  std::vector<bool> a(n);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (idx >> i) & 1U;
    table[idx] = f(a);
  }
  return table;
}

inline std::size_t satisfying_count(const FunctionRepr& f) {
  auto t = truth_table(f.variables(), f);
  return static_cast<std::size_t>(std::count(t.begin(), t.end(), true));
}

}  // namespace twoxor
