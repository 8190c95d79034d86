// Acceptance run: prints one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "twoxor/asymptotics.hpp"
#include "twoxor/census.hpp"
#include "twoxor/montecarlo.hpp"
#include "twoxor/oracle.hpp"

using namespace twoxor;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Outcome oracle_equivalence() {
  const std::vector<std::pair<std::size_t, std::size_t>> cases{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2},
                                                               {2, 3}, {3, 1}, {3, 2}, {2, 4}};
  for (auto [n, m] : cases) {
    auto census = exhaustive_census(n, m);
    const BigRational total(census.total);
    const std::string at = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    if (prob_sat_exact(m, n) != BigRational(census.total - census.false_count) / total)
      return {false, "prob_sat_exact differs at " + at};
    auto dist = full_distribution(n, m);
    if (dist.prob_false != BigRational(census.false_count) / total) return {false, "prob_false differs at " + at};
    for (const auto& c : dist.classes) {
      auto single = prob_function_exact(c.partition, m);
      if (single.prob_per_function != c.prob_per_function) return {false, "distribution row differs at " + at};
      auto it = census.per_class.find(c.partition);
      std::uint64_t reached = it == census.per_class.end() ? 0 : it->second.functions;
      std::uint64_t hits = it == census.per_class.end() ? 0 : it->second.total;
      if (c.prob_class != BigRational(hits) / total) return {false, "class probability differs at " + at};
      if (c.prob_per_function != 0 && BigInt(static_cast<unsigned long>(reached)) != c.class_size)
        return {false, "class size differs at " + at};
    }
    for (const auto& [f, count] : census.per_function)
      if (!f.is_false() && prob_function_exact(partition_of(f), m).prob_per_function != BigRational(count) / total)
        return {false, "function " + f.to_string() + " differs at " + at};
  }
  return {true, "9 cases exact"};
}

Outcome normalization() {
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned long m = 0; m <= 5; ++m) {
      BigRational sum;
      for (const auto& p : partitions_of(n))
        sum += BigRational(class_size(p)) * prob_function_exact(p, m).prob_per_function;
      if (sum != prob_sat_exact(m, n)) return {false, "n=" + std::to_string(n) + " m=" + std::to_string(m)};
    }
  return {true, "n<=4, m<=5 exact"};
}

Outcome closed_form() {
  if (prob_g_blocks_closed_form(2, 2, 1) != make_rational(1, 4)) return {false, "anchor 1/4"};
  if (prob_g_blocks_closed_form(3, 3, 2) != make_rational(2, 27)) return {false, "anchor 2/27"};
  int checked = 0;
  for (unsigned g : {2U, 3U})
    for (unsigned long n = g; n <= 12; n += g) {
      auto part = IntegerPartition::from_counts({{g, n / g}});
      for (unsigned long m = 0; m <= n + 3; ++m, ++checked)
        if (prob_g_blocks_closed_form(g, n, m) != prob_function_exact(part, m).prob_per_function)
          return {false, "g=" + std::to_string(g) + " n=" + std::to_string(n) + " m=" + std::to_string(m)};
    }
  return {true, std::to_string(checked) + " cases exact"};
}

Outcome known_constants() {
  for (unsigned long n = 1; n <= 8; ++n)
    if (connected_count(n - 1, n) != BigRational(n == 1 ? BigInt(1) : pow_ui(n, n - 2)))
      return {false, "tree count n=" + std::to_string(n)};
  double e0 = std::fabs(K_r(0) - std::sqrt(2 * std::numbers::pi) / 4);
  double e1 = std::fabs(K_r(1) - 5.0 / 24.0);
  return {e0 < 1e-12 && e1 < 1e-12, "|K0 err|=" + fmt(e0) + " |K1 err|=" + fmt(e1)};
}

Outcome fixed_excess() {
  std::string detail;
  bool ok = true;
  for (long r : {-1L, 0L, 1L}) {
    std::vector<double> dev;
    for (unsigned long n : {50UL, 100UL, 200UL}) {
      const double dn = static_cast<double>(n);
      double log_ratio = log_abs(connected_count(static_cast<unsigned long>(static_cast<long>(n) + r), n)) -
                         std::log(K_r(r)) - (dn + (3.0 * static_cast<double>(r) - 1.0) / 2.0) * std::log(dn);
      dev.push_back(std::fabs(std::exp(log_ratio) - 1));
    }
    ok = ok && dev[1] <= dev[0] + 1e-12 && dev[2] <= dev[1] + 1e-12 && dev[2] < 0.10;
    detail += " r=" + std::to_string(r) + ":" + fmt(dev[0]) + "," + fmt(dev[1]) + "," + fmt(dev[2]);
  }
  return {ok, "|ratio-1| at n=50,100,200" + detail};
}

Outcome subcritical() {
  const unsigned long n = 400, m = 150;
  const double exact = to_double(prob_sat_exact(m, n));
  auto t = run_trials(n, m, 100000, 1);
  const double z = (t.sat_frequency - exact) / standard_error(t.sat_count, t.trials);
  bool ok = std::fabs(exact - 0.707107) < 0.03 && std::fabs(z) < 4;
  return {ok, "exact=" + fmt(exact) + " mc=" + fmt(t.sat_frequency) + " z=" + fmt(z)};
}

Outcome critical() {
  std::vector<double> dev;
  for (unsigned long n : {100UL, 200UL, 400UL})
    dev.push_back(std::fabs(to_double(prob_sat_exact(n / 2, n)) / prob_sat_critical(n, n / 2).value - 1));
  auto s = critical_sum(make_rational(1, 2), 0.0, 20);
  bool ok = dev[1] < dev[0] && dev[2] < dev[1] && s.tail < 1e-8 * s.partial;
  return {ok, "dev=" + fmt(dev[0]) + "," + fmt(dev[1]) + "," + fmt(dev[2]) + " tail/partial=" + fmt(s.tail / s.partial)};
}

Outcome single_block() {
  const double pi = std::numbers::pi;
  auto tree = prob_function_exact(IntegerPartition::single_block(30), 29).prob_per_function;
  bool tree_exact = tree == make_rational(factorial(29), pow_ui(30, 30));
  double d1 = std::fabs(std::exp(log_abs(tree) - (0.5 * std::log(2 * pi / 30) - 30)) - 1);
  auto uni = prob_function_exact(IntegerPartition::single_block(200), 200).prob_per_function;
  double d2 = std::fabs(std::exp(log_abs(uni) - (std::log(pi / 2) - 200)) - 1);
  double a1 = std::fabs(std::exp(log_abs(tree) - single_block_asympt(30, 29).value.log_abs) - 1);
  double a2 = std::fabs(std::exp(log_abs(uni) - single_block_asympt(200, 200).value.log_abs) - 1);
  bool ok = tree_exact && d1 < 0.01 && d2 < 0.05 && a1 < 0.01 && a2 < 0.05;
  return {ok, "tree dev=" + fmt(d1) + " unicyclic dev=" + fmt(d2)};
}

Outcome saddle() {
  std::string detail;
  bool ok = true;
  for (double x : {0.01, 0.02, 0.05}) {
    auto s = saddle_g2(1000, 1000 * x);
    double rem = std::fabs(s.saddle.root - s.bootstrap) / (x * x * x);
    ok = ok && rem < 1.0 && std::fabs(s.saddle.residual) < 1e-12;
    detail += " x=" + fmt(x) + " rem/x^3=" + fmt(rem);
  }
  const unsigned long n = 200, m = 110;
  auto exact = prob_function_exact(IntegerPartition::from_counts({{2, n / 2}}), m).count_per_function;
  double dev = std::fabs(std::exp(saddle_g2(n, 10).count.log_abs - log_abs(exact)) - 1);
  ok = ok && dev < 0.10;
  return {ok, detail.substr(1) + " E dev=" + fmt(dev)};
}

Outcome airy() {
  double e1 = std::fabs(airy_A(1, 0) - std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0));
  double e0 = std::fabs(airy_A(0, 0) - std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0));
  return {e1 < 1e-12 && e0 < 1e-12, "errors " + fmt(e1) + ", " + fmt(e0)};
}

Outcome fact_one() {
  auto v = multigraph_frequency_check(2, 2, 1'000'000, 1);
  double worst = 0;
  for (const auto& x : v) worst = std::max(worst, std::fabs(x.z));
  return {all_pass(v), std::to_string(v.size()) + " multigraphs, max|z|=" + fmt(worst)};
}

std::string capture(const std::string& args) {
  std::string out;
  FILE* p = popen((std::string(TWOXOR_CLI) + " " + args + " 2>&1").c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  pclose(p);
  return out;
}

Outcome reproducibility() {
  const std::vector<std::string> commands{"simulate --n 60 --m 20 --trials 50000 --seed 9 --compare exact",
                                          "sat-prob --n 400 --m 150 --method mc --trials 50000 --seed 3",
                                          "simulate --n 2 --m 2 --multigraphs --trials 20000 --seed 5"};
  for (const auto& c : commands) {
    auto a = capture(c + " --parallel 1");
    auto b = capture(c + " --parallel 4");
    if (a.empty() || a != b) return {false, "differs: " + c};
  }
  return {true, std::to_string(commands.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"normalization identity", normalization},
      {"closed-form cross-check", closed_form},
      {"known constants", known_constants},
      {"fixed-excess convergence", fixed_excess},
      {"subcritical satisfiability", subcritical},
      {"critical window", critical},
      {"single-block regimes", single_block},
      {"saddle point g=2", saddle},
      {"airy self-consistency", airy},
      {"multigraph process distribution", fact_one},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << " ("
              << fmt(secs) << "s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
