#pragma once

// Sampling harness: random expressions and multigraphs, compared against predictions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "twoxor/errors.hpp"
#include "twoxor/multigraph.hpp"
#include "twoxor/partition.hpp"
#include "twoxor/xor_expression.hpp"

namespace twoxor {

/// SplitMix64 finaliser, used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Generator for trial `index`; depends only on (seed, index).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix_seed(seed, index));
}

/// Runs body(begin, end, chunk) over [0, total) split into `parallelism` contiguous chunks.
template <class Body>
void for_chunks(std::uint64_t total, unsigned parallelism, Body&& body) {
  const unsigned chunks = std::max(1U, parallelism);
  auto bound = [&](unsigned c) { return total * c / chunks; };
  if (chunks == 1) {
    body(std::uint64_t{0}, total, 0U);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned c = 0; c < chunks; ++c) pool.emplace_back([&, c] { body(bound(c), bound(c + 1), c); });
  for (auto& t : pool) t.join();
}

struct TrialReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t sat_count = 0;
  std::uint64_t false_count = 0;
  double sat_frequency = 0.0;
  std::map<IntegerPartition, std::uint64_t> class_histogram;
  std::map<std::string, double> standard_errors;  // "sat" and partition strings
};

/// sqrt(p(1-p)/N) at the empirical frequency.
inline double standard_error(std::uint64_t count, std::uint64_t trials) {
  double p = static_cast<double>(count) / static_cast<double>(trials);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

namespace detail {

/// Block sizes of a random expression, or an empty vector when it is FALSE.
template <class URBG>
std::vector<std::size_t> sample_blocks(std::size_t n, std::size_t m, URBG& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, clause_count(n) - 1);
  ParityUnionFind uf(n + 1);
  bool contradiction = false;
  for (std::size_t i = 0; i < m; ++i) {
    Clause c = clause_from_index(pick(rng), n);
    unsigned char value = 1U ^ (c.first.negated ? 1U : 0U) ^ (c.second.negated ? 1U : 0U);
    if (!uf.unite(c.first.var, c.second.var, value)) contradiction = true;
  }
  if (contradiction) return {};
  std::vector<std::size_t> size(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) ++size[uf.find(v).first];
  std::vector<std::size_t> parts;
  for (std::size_t s : size)
    if (s) parts.push_back(s);
  return parts;
}

}  // namespace detail

/// Draws `trials` uniform expressions and tallies FALSE and the class of each result.
/// The report depends on (n, m, trials, seed) only, not on parallelism.
inline TrialReport run_trials(std::size_t n, std::size_t m, std::uint64_t trials, std::uint64_t seed,
                              unsigned parallelism = 1) {
  if (n == 0) throw UsageError("run_trials needs n >= 1");
  if (trials == 0) throw UsageError("run_trials needs trials >= 1");
  const unsigned chunks = std::max(1U, parallelism);
  std::vector<std::map<std::vector<std::size_t>, std::uint64_t>> hist(chunks);
  std::vector<std::uint64_t> falses(chunks, 0);
  for_chunks(trials, chunks, [&](std::uint64_t begin, std::uint64_t end, unsigned c) {
    for (std::uint64_t t = begin; t < end; ++t) {
      auto rng = trial_rng(seed, t);
      auto parts = detail::sample_blocks(n, m, rng);
      if (parts.empty()) {
        ++falses[c];
        continue;
      }
      std::sort(parts.begin(), parts.end());
      ++hist[c][parts];
    }
  });

  TrialReport r;
  r.n = n;
  r.m = m;
  r.trials = trials;
  r.seed = seed;
  for (unsigned c = 0; c < chunks; ++c) {
    r.false_count += falses[c];
    for (const auto& [parts, count] : hist[c]) r.class_histogram[IntegerPartition::from_parts(parts)] += count;
  }
  r.sat_count = trials - r.false_count;
  r.sat_frequency = static_cast<double>(r.sat_count) / static_cast<double>(trials);
  r.standard_errors["sat"] = standard_error(r.sat_count, trials);
  for (const auto& [p, count] : r.class_histogram) r.standard_errors[p.to_string()] = standard_error(count, trials);
  return r;
}

enum class VerdictStatus { kPass, kFail, kUntestable };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kPass: return "pass";
    case VerdictStatus::kFail: return "fail";
    case VerdictStatus::kUntestable: return "untestable";
  }
  return "unknown";
}

struct Verdict {
  std::string estimand;
  std::uint64_t count = 0;
  std::uint64_t trials = 0;
  double empirical = 0.0;
  std::optional<double> predicted;
  double z = 0.0;
  VerdictStatus status = VerdictStatus::kUntestable;
};

inline constexpr double kZThreshold = 4.0;
inline constexpr std::uint64_t kMinNormalCount = 30;

/// z-score of count/trials against p. With fewer than 30 successes or failures the
/// score statistic is used, so |z| < 4 is the same as p lying in the Wilson interval.
inline Verdict judge(std::string estimand, std::uint64_t count, std::uint64_t trials, std::optional<double> predicted,
                     double z_threshold = kZThreshold) {
  Verdict v;
  v.estimand = std::move(estimand);
  v.count = count;
  v.trials = trials;
  v.empirical = static_cast<double>(count) / static_cast<double>(trials);
  v.predicted = predicted;
  if (!predicted) return v;
  const double p = *predicted;
  const double N = static_cast<double>(trials);
  double se;
  if (count < kMinNormalCount || trials - count < kMinNormalCount) se = std::sqrt(p * (1.0 - p) / N);
  else se = std::sqrt(v.empirical * (1.0 - v.empirical) / N);
  double diff = v.empirical - p;
  if (se > 0.0) v.z = diff / se;
  else v.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  v.status = std::fabs(v.z) < z_threshold ? VerdictStatus::kPass : VerdictStatus::kFail;
  return v;
}

struct Predictions {
  std::optional<double> sat;
  std::map<IntegerPartition, double> prob_class;  // probability of landing in the whole class
};

/// One verdict for Pr(Sat) and one per class that was observed or predicted.
inline std::vector<Verdict> compare(const TrialReport& r, const Predictions& pred, double z_threshold = kZThreshold) {
  std::vector<Verdict> out;
  out.push_back(judge("sat", r.sat_count, r.trials, pred.sat, z_threshold));
  std::map<IntegerPartition, std::uint64_t> keys = r.class_histogram;
  for (const auto& [p, _] : pred.prob_class) keys.try_emplace(p, 0);
  for (const auto& [p, count] : keys) {
    auto it = pred.prob_class.find(p);
    std::optional<double> q;
    if (it != pred.prob_class.end()) q = it->second;
    out.push_back(judge(p.to_string(), count, r.trials, q, z_threshold));
  }
  return out;
}

inline bool all_pass(const std::vector<Verdict>& vs) {
  return std::none_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.status == VerdictStatus::kFail; });
}

/// Samples the multigraph process and compares each multigraph's frequency with
/// kappa(G) / M_{m,n}.
inline std::vector<Verdict> multigraph_frequency_check(std::size_t n, std::size_t m, std::uint64_t samples,
                                                       std::uint64_t seed, unsigned parallelism = 1,
                                                       double z_threshold = kZThreshold) {
  if (samples == 0) throw UsageError("samples must be >= 1");
  auto all = enumerate_multigraphs(n, m);
  const BigRational total = multigraph_count(m, n);
  const unsigned chunks = std::max(1U, parallelism);
  std::vector<std::map<Multigraph, std::uint64_t>> hist(chunks);
  for_chunks(samples, chunks, [&](std::uint64_t begin, std::uint64_t end, unsigned c) {
    for (std::uint64_t t = begin; t < end; ++t) {
      auto rng = trial_rng(seed, t);
      ++hist[c][sample_multigraph(n, m, rng)];
    }
  });
  std::map<Multigraph, std::uint64_t> merged;
  for (const auto& h : hist)
    for (const auto& [g, count] : h) merged[g] += count;
  std::vector<Verdict> out;
  for (const auto& w : all) {
    auto it = merged.find(w.graph);
    std::uint64_t count = it == merged.end() ? 0 : it->second;
    out.push_back(judge(w.graph.to_string(), count, samples, to_double(BigRational(w.kappa / total)), z_threshold));
  }
  return out;
}

}  // namespace twoxor
