#pragma once

// Exhaustive ground truth: every one of the (4n^2)^m expressions, reduced and tallied.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "twoxor/errors.hpp"
#include "twoxor/partition.hpp"
#include "twoxor/xor_expression.hpp"

namespace twoxor {

struct ClassTally {
  std::uint64_t functions = 0;  // distinct functions of the class that were reached
  std::uint64_t total = 0;      // expressions computing some function of the class
};

struct OracleCensus {
  std::size_t n = 0;
  std::size_t m = 0;
  std::map<FunctionRepr, std::uint64_t> per_function;
  std::map<IntegerPartition, ClassTally> per_class;
  std::uint64_t false_count = 0;
  std::uint64_t total = 0;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

/// (4n^2)^m, or nothing if it does not fit the cap.
inline std::optional<std::uint64_t> expression_count(std::size_t n, std::size_t m, std::uint64_t cap) {
  const std::uint64_t c = clause_count(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (c != 0 && total > cap / c) return std::nullopt;
    total *= c;
  }
  if (total > cap) return std::nullopt;
  return total;
}

/// Enumerates clause sequences in mixed-radix order (first clause most significant),
/// split into contiguous ranges across threads and merged in range order.
inline OracleCensus exhaustive_census(std::size_t n, std::size_t m, std::uint64_t cap = kDefaultOracleCap,
                                      unsigned parallelism = 1) {
  if (n == 0) throw UsageError("exhaustive_census needs n >= 1");
  auto total = expression_count(n, m, cap);
  if (!total) {
    long double need = std::pow(static_cast<long double>(clause_count(n)), static_cast<long double>(m));
    throw BudgetExceeded("exhaustive_census", static_cast<std::uint64_t>(std::min<long double>(need, 1.8e19L)), cap);
  }
  const std::uint64_t radix = clause_count(n);
  const unsigned chunks = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(parallelism, *total)));
  std::vector<std::map<FunctionRepr, std::uint64_t>> partial(chunks);

  auto work = [&](unsigned c) {
    std::uint64_t begin = *total * c / chunks, end = *total * (c + 1) / chunks;
    std::vector<std::uint64_t> digit(m);
    std::uint64_t x = begin;
    for (std::size_t i = m; i-- > 0;) {
      digit[i] = x % radix;
      x /= radix;
    }
    std::vector<Clause> clauses(m, clause_from_index(0, n));
    for (std::uint64_t k = begin; k < end; ++k) {
      for (std::size_t i = 0; i < m; ++i) clauses[i] = clause_from_index(digit[i], n);
      ++partial[c][reduce(Expression(n, clauses))];
      for (std::size_t i = m; i-- > 0;) {
        if (++digit[i] < radix) break;
        digit[i] = 0;
      }
    }
  };
  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned c = 0; c < chunks; ++c) pool.emplace_back(work, c);
    for (auto& t : pool) t.join();
  }

  OracleCensus out;
  out.n = n;
  out.m = m;
  out.total = *total;
  for (const auto& part : partial)
    for (const auto& [f, count] : part) out.per_function[f] += count;
  for (const auto& [f, count] : out.per_function) {
    if (f.is_false()) {
      out.false_count += count;
      continue;
    }
    ClassTally& t = out.per_class[partition_of(f)];
    ++t.functions;
    t.total += count;
  }
  return out;
}

/// True when every reached function of a class has the same count.
inline bool equiprobable_within_classes(const OracleCensus& c) {
  std::map<IntegerPartition, std::uint64_t> seen;
  for (const auto& [f, count] : c.per_function) {
    if (f.is_false()) continue;
    auto [it, fresh] = seen.try_emplace(partition_of(f), count);
    if (!fresh && it->second != count) return false;
  }
  return true;
}

}  // namespace twoxor
