#pragma once

// Integer partitions of n, indexing the equivalence classes of satisfiable functions.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/errors.hpp"

namespace twoxor {

class IntegerPartition {
 public:
  IntegerPartition() = default;

  /// From a list of part sizes in any order.
  static IntegerPartition from_parts(const std::vector<std::size_t>& parts) {
    IntegerPartition p;
    for (std::size_t part : parts) {
      if (part == 0) throw UsageError("partition parts must be positive");
      ++p.counts_[part];
    }
    return p;
  }

  /// From block-size multiplicities: counts[l] = number of blocks of size l.
  static IntegerPartition from_counts(const std::map<std::size_t, std::size_t>& counts) {
    IntegerPartition p;
    for (auto [size, count] : counts) {
      if (size == 0) throw UsageError("partition parts must be positive");
      if (count > 0) p.counts_[size] = count;
    }
    return p;
  }

  /// Parses "3+2+1+1" (whitespace tolerated).
  static IntegerPartition parse(std::string_view text) {
    std::vector<std::size_t> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find('+', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string_view tok = text.substr(pos, next - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value == 0) {
        throw UsageError("malformed partition: '" + std::string(text) + "'");
      }
      parts.push_back(value);
      pos = next + 1;
    }
    return from_parts(parts);
  }

  /// The partition of TRUE: n singletons.
  static IntegerPartition singletons(std::size_t n) {
    IntegerPartition p;
    if (n > 0) p.counts_[1] = n;
    return p;
  }

  /// One block holding every variable.
  static IntegerPartition single_block(std::size_t n) { return from_parts({n}); }

  const std::map<std::size_t, std::size_t>& counts() const noexcept { return counts_; }

  std::size_t count(std::size_t block_size) const {
    auto it = counts_.find(block_size);
    return it == counts_.end() ? 0 : it->second;
  }

  /// s(i) = sum l * i_l
  std::size_t size() const {
    std::size_t s = 0;
    for (auto [l, c] : counts_) s += l * c;
    return s;
  }

  /// xi(i) = sum i_l
  std::size_t num_parts() const {
    std::size_t s = 0;
    for (auto [l, c] : counts_) s += c;
    return s;
  }

  /// Part sizes in non-increasing order.
  std::vector<std::size_t> parts() const {
    std::vector<std::size_t> out;
    for (auto it = counts_.rbegin(); it != counts_.rend(); ++it) out.insert(out.end(), it->second, it->first);
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t part : parts()) {
      if (!s.empty()) s += '+';
      s += std::to_string(part);
    }
    return s;
  }

  friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;
  friend auto operator<=>(const IntegerPartition& a, const IntegerPartition& b) { return a.counts_ <=> b.counts_; }

 private:
  std::map<std::size_t, std::size_t> counts_;
};

/// All partitions of n, largest parts first, in reverse lexicographic order.
inline std::vector<IntegerPartition> partitions_of(std::size_t n) {
  std::vector<IntegerPartition> out;
  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t max_part) -> void {
    if (remaining == 0) {
      out.push_back(IntegerPartition::from_parts(current));
      return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// |C_i| = 2^{n - xi} n! / prod_l i_l! (l!)^{i_l}
inline BigInt class_size(const IntegerPartition& p) {
  const std::size_t n = p.size();
  BigInt den = 1;
  for (auto [l, c] : p.counts()) den *= factorial(c) * pow(factorial(l), c);
  BigInt num = pow_ui(2, n - p.num_parts()) * factorial(n);
  return num / den;
}

/// p(n) + 1: one class per partition plus the class of FALSE.
inline BigInt num_classes(std::size_t n) {
  // p(n) by the standard part-size recurrence.
  std::vector<BigInt> p(n + 1, BigInt(0));
  p[0] = 1;
  for (std::size_t part = 1; part <= n; ++part)
    for (std::size_t s = part; s <= n; ++s) p[s] += p[s - part];
  return p[n] + 1;
}

}  // namespace twoxor
