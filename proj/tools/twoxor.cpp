// twoxor: command-line front end.
//
// Exit codes: 0 success, 2 usage error, 3 unsupported regime, 4 budget exceeded.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twoxor/asymptotics.hpp"
#include "twoxor/census.hpp"
#include "twoxor/json_io.hpp"
#include "twoxor/montecarlo.hpp"
#include "twoxor/multigraph.hpp"
#include "twoxor/oracle.hpp"
#include "twoxor/partition.hpp"

namespace {

using namespace twoxor;

constexpr const char* kVersion = "1.0.0";

struct Common {
  std::string format = "json";
  int rmax = kDefaultRmax;
  std::uint64_t enum_cap = kDefaultOracleCap;
  std::size_t term_cap = kDefaultTermCap;
  unsigned parallel = 1;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  double z_threshold = kZThreshold;
};

Json record(const std::string& command, const std::string& method, Json inputs) {
  Json r;
  r["command"] = command;
  r["version"] = kVersion;
  r["method"] = method;
  r["inputs"] = std::move(inputs);
  r["seed"] = nullptr;
  r["results"] = Json::object();
  return r;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const Json& rec, const Common& c, std::ostream& os = std::cout) {
  if (c.format == "json") {
    os << rec.dump(2) << "\n";
    return;
  }
  const Json& res = rec["results"];
  if (res.contains("table")) {
    const Json& rows = res["table"];
    if (rows.empty()) return;
    std::vector<std::string> cols;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const Json& v = row[cols[i]];
        os << (i ? "," : "") << csv_field(v.is_string() ? v.get<std::string>() : v.dump());
      }
      os << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(res, "", kv);
  os << "key,value\n";
  for (const auto& [k, v] : kv) os << csv_field(k) << "," << csv_field(v) << "\n";
}

void require_n(unsigned long n) {
  if (n == 0) throw UsageError("--n must be >= 1");
}

InputCriticalForm parse_form(const std::string& f) {
  if (f == "reciprocal") return InputCriticalForm::kReciprocal;
  if (f == "sigma-two") return InputCriticalForm::kSigmaTwo;
  throw UsageError("unknown --form '" + f + "'");
}

// ---------------------------------------------------------------------------

struct SatArgs {
  unsigned long n = 0, m = 0;
  std::string method = "exact";
  std::string quantity = "sat";
  std::string form = "reciprocal";
};

Json run_sat(const SatArgs& a, const Common& c) {
  require_n(a.n);
  Json in{{"n", a.n}, {"m", a.m}, {"quantity", a.quantity}};
  if (a.quantity != "sat" && a.quantity != "input") throw UsageError("--quantity must be sat or input");
  const bool sat = a.quantity == "sat";
  if (a.method == "exact") {
    Json r = record("sat-prob", "exact", in);
    r["results"]["probability"] = rational_json(sat ? prob_sat_exact(a.m, a.n) : prob_input_satisfies_exact(a.m, a.n));
    return r;
  }
  if (a.method == "limit") {
    Json r = record("sat-prob", "asymptotic", in);
    r["results"]["regime"] = to_string(RegimeTag::kSubcritical);
    if (sat) r["results"]["probability"] = prob_sat_subcritical(a.n, a.m);
    else r["results"]["probability"] = log_json(prob_input_subcritical(a.n, a.m));
    return r;
  }
  if (a.method == "critical") {
    in["rmax"] = c.rmax;
    Json r = record("sat-prob", "asymptotic", in);
    r["results"]["regime"] = to_string(RegimeTag::kCritical);
    r["results"]["mu"] = critical_mu(static_cast<double>(a.n), static_cast<double>(a.m));
    if (sat) {
      CriticalValue v = prob_sat_critical(a.n, a.m, c.rmax);
      r["results"]["probability"] = v.value;
      r["results"]["partial_sum"] = v.sum.partial;
      r["results"]["tail_estimate"] = v.sum.tail;
    } else {
      in["form"] = a.form;
      r["inputs"] = in;
      r["results"]["probability"] = log_json(prob_input_critical(a.n, a.m, parse_form(a.form), c.rmax));
    }
    return r;
  }
  if (a.method == "mc") {
    if (!sat) throw UsageError("--method mc supports --quantity sat only");
    in["trials"] = c.trials;
    Json r = record("sat-prob", "montecarlo", in);
    r["seed"] = c.seed;
    TrialReport t = run_trials(a.n, a.m, c.trials, c.seed, c.parallel);
    r["results"]["probability"] = t.sat_frequency;
    r["results"]["standard_error"] = t.standard_errors.at("sat");
    r["results"]["sat_count"] = t.sat_count;
    return r;
  }
  throw UsageError("unknown --method '" + a.method + "'");
}

// ---------------------------------------------------------------------------

struct FuncArgs {
  std::string partition;
  unsigned long m = 0;
  std::string method = "exact";
};

/// Picks the asymptotic evaluator by partition shape.
Json func_asympt(const IntegerPartition& part, unsigned long m) {
  const std::size_t n = part.size(), xi = part.num_parts();
  Json res;
  if (m + xi < n) {
    res["regime"] = "outside-support";
    res["probability"] = log_json(LogValue{});
    return res;
  }
  auto parts = part.parts();
  if (xi == 1) {
    auto v = single_block_asympt(n, m);
    res["regime"] = to_string(v.regime);
    res["probability"] = log_json(v.value);
    return res;
  }
  if (xi == 2) {
    std::size_t p = parts[1];
    RegimeTag tag = two_block_regime(n, p, m);
    auto v = two_block_asympt(n, p, m, tag);
    res["regime"] = to_string(v.regime);
    res["probability"] = log_json(v.value);
    return res;
  }
  if (part.count(2) == xi && 2 * m > n) {
    auto s = saddle_g2(n, static_cast<double>(m) - static_cast<double>(n) / 2.0);
    res["regime"] = to_string(RegimeTag::kProportionalBlocks);
    res["saddle"] = saddle_json(s.saddle);
    res["bootstrap"] = s.bootstrap;
    LogValue count = s.count;
    res["count"] = log_json(count);
    res["probability"] = log_json(
        LogValue::from_log(count.log_abs - static_cast<double>(m) * std::log(4.0 * static_cast<double>(n * n))));
    return res;
  }
  if (2 * part.count(1) >= n) {
    std::map<std::size_t, std::size_t> tail;
    for (auto [l, k] : part.counts())
      if (l >= 2) tail[l] = k;
    auto v = prob_fixed_function_limit(tail, static_cast<double>(m) / static_cast<double>(n), n);
    res["regime"] = to_string(v.regime);
    res["probability"] = log_json(v.value);
    return res;
  }
  throw UnsupportedRegime("no asymptotic formula covers partition " + part.to_string());
}

Json run_func(const FuncArgs& a, const Common& c) {
  IntegerPartition part = IntegerPartition::parse(a.partition);
  Json in{{"partition", part.to_string()}, {"n", part.size()}, {"m", a.m}};
  if (a.method == "exact" || a.method == "series") {
    Json r = record("func-prob", "exact", in);
    ClassProbability p = a.method == "exact" ? prob_function_exact(part, a.m, c.term_cap) : prob_function_series(part, a.m);
    r["results"] = class_json(p);
    return r;
  }
  if (a.method == "asympt") {
    Json r = record("func-prob", "asymptotic", in);
    r["results"] = func_asympt(part, a.m);
    return r;
  }
  throw UsageError("unknown --method '" + a.method + "'");
}

// ---------------------------------------------------------------------------

struct CensusArgs {
  unsigned long n = 0, m = 0, r = 1;
  bool connected = false, multigraphs = false, cubic = false, core = false, weighted = false;
  std::string sigma = "1/2";
  std::string method = "exact";
};

Json run_census(const CensusArgs& a, const Common&) {
  int chosen = a.connected + a.multigraphs + a.cubic + a.core + a.weighted;
  if (chosen > 1) throw UsageError("choose one of --connected, --multigraphs, --cubic, --core, --weighted");
  Json in{{"n", a.n}, {"m", a.m}};
  if (a.cubic) {
    Json r = record("census", "exact", Json{{"r", a.r}});
    r["results"]["family"] = "cubic";
    r["results"]["count"] = rational_json(cubic_count(a.r));
    return r;
  }
  if (a.multigraphs) {
    Json r = record("census", "exact", in);
    r["results"]["family"] = "multigraphs";
    r["results"]["count"] = rational_json(multigraph_count(a.m, a.n));
    return r;
  }
  if (a.core) {
    Json r = record("census", "exact", in);
    r["results"]["family"] = "core";
    r["results"]["count"] = rational_json(core_count(a.m, a.n));
    return r;
  }
  if (a.weighted) {
    BigRational sigma = parse_rational(a.sigma);
    if (sign(sigma) <= 0) throw UsageError("--sigma must be positive");
    in["sigma"] = to_string(sigma);
    Json r = record("census", "exact", in);
    r["results"]["family"] = "weighted";
    r["results"]["count"] = rational_json(weighted_count(a.m, a.n, sigma));
    return r;
  }
  if (a.method == "asympt") {
    auto v = connected_asympt(a.m, a.n);
    Json r = record("census", "asymptotic", in);
    r["results"]["family"] = "connected";
    r["results"]["regime"] = to_string(v.regime);
    r["results"]["count"] = log_json(v.value);
    return r;
  }
  if (a.method != "exact") throw UsageError("unknown --method '" + a.method + "'");
  Json r = record("census", "exact", in);
  r["results"]["family"] = "connected";
  r["results"]["count"] = rational_json(connected_count(a.m, a.n));
  return r;
}

// ---------------------------------------------------------------------------

struct SimArgs {
  unsigned long n = 0, m = 0;
  std::string compare = "none";
  bool multigraphs = false;
};

Json run_simulate(const SimArgs& a, const Common& c) {
  require_n(a.n);
  Json in{{"n", a.n}, {"m", a.m}, {"trials", c.trials}, {"compare", a.compare}};
  if (a.multigraphs) in["multigraphs"] = true;
  if (a.multigraphs || a.compare != "none") in["z_threshold"] = c.z_threshold;
  Json r = record("simulate", "montecarlo", in);
  r["seed"] = c.seed;
  if (a.multigraphs) {
    auto verdicts = multigraph_frequency_check(a.n, a.m, c.trials, c.seed, c.parallel, c.z_threshold);
    Json v = Json::array();
    for (const auto& x : verdicts) v.push_back(verdict_json(x));
    r["results"]["verdicts"] = v;
    r["results"]["all_pass"] = all_pass(verdicts);
    return r;
  }
  TrialReport t = run_trials(a.n, a.m, c.trials, c.seed, c.parallel);
  r["results"]["report"] = report_json(t);
  if (a.compare == "none") return r;
  Predictions pred;
  if (a.compare == "exact") {
    pred.sat = to_double(prob_sat_exact(a.m, a.n));
    for (const auto& [p, _] : t.class_histogram) pred.prob_class[p] = to_double(prob_function_exact(p, a.m).prob_class);
  } else if (a.compare == "limit") {
    pred.sat = prob_sat_limit(a.n, a.m, c.rmax).value.value();
  } else {
    throw UsageError("--compare must be none, exact or limit");
  }
  auto verdicts = compare(t, pred, c.z_threshold);
  Json v = Json::array();
  for (const auto& x : verdicts) v.push_back(verdict_json(x));
  r["results"]["verdicts"] = v;
  r["results"]["all_pass"] = all_pass(verdicts);
  return r;
}

// ---------------------------------------------------------------------------

Json run_oracle(unsigned long n, unsigned long m, const Common& c) {
  require_n(n);
  Json r = record("oracle", "oracle", Json{{"n", n}, {"m", m}});
  r["results"] = oracle_json(exhaustive_census(n, m, c.enum_cap, c.parallel));
  return r;
}

Json run_distribution(unsigned long n, unsigned long m, const Common&) {
  require_n(n);
  Json r = record("distribution", "exact", Json{{"n", n}, {"m", m}});
  Distribution d = full_distribution(n, m);
  Json rows = Json::array();
  for (const auto& cp : d.classes) {
    rows.push_back(Json{{"partition", cp.partition.to_string()},
                        {"class_size", cp.class_size.get_str()},
                        {"prob_function", to_string(cp.prob_per_function)},
                        {"prob_class", to_string(cp.prob_class)},
                        {"prob_class_float", to_double(cp.prob_class)}});
  }
  rows.push_back(Json{{"partition", "FALSE"},
                      {"class_size", "1"},
                      {"prob_function", to_string(d.prob_false)},
                      {"prob_class", to_string(d.prob_false)},
                      {"prob_class_float", to_double(d.prob_false)}});
  r["results"]["table"] = rows;
  return r;
}

// ---------------------------------------------------------------------------

struct PlotArgs {
  unsigned long n = 0;
  double alpha_min = 0.05, alpha_max = 0.45;
  unsigned steps = 9;
  std::string method = "limit";
};

Json run_plot(const PlotArgs& a, const Common& c) {
  require_n(a.n);
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  if (!(a.alpha_min >= 0.0 && a.alpha_max >= a.alpha_min)) throw UsageError("need 0 <= alpha-min <= alpha-max");
  Json in{{"n", a.n}, {"alpha_min", a.alpha_min}, {"alpha_max", a.alpha_max}, {"steps", a.steps}};
  std::string method = a.method == "mc" ? "montecarlo" : (a.method == "exact" ? "exact" : "asymptotic");
  Json r = record("plot-data", method, in);
  if (a.method == "mc") {
    r["inputs"]["trials"] = c.trials;
    r["seed"] = c.seed;
  }
  Json rows = Json::array();
  for (unsigned i = 0; i < a.steps; ++i) {
    double alpha = a.steps == 1 ? a.alpha_min : a.alpha_min + (a.alpha_max - a.alpha_min) * i / (a.steps - 1);
    auto m = static_cast<unsigned long>(std::llround(alpha * static_cast<double>(a.n)));
    double y;
    if (a.method == "exact") y = to_double(prob_sat_exact(m, a.n));
    else if (a.method == "limit") y = prob_sat_subcritical(a.n, m);
    else if (a.method == "critical") y = prob_sat_critical(a.n, m, c.rmax).value;
    else if (a.method == "mc") y = run_trials(a.n, m, c.trials, c.seed, c.parallel).sat_frequency;
    else throw UsageError("unknown --method '" + a.method + "'");
    rows.push_back(Json{{"x", static_cast<double>(m) / static_cast<double>(a.n)}, {"m", m}, {"y", y}});
  }
  r["results"]["table"] = rows;
  return r;
}

Json error_record(const std::string& type, const std::string& message) {
  Json r;
  r["version"] = kVersion;
  r["error"] = Json{{"type", type}, {"message", message}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic probabilities for random 2-Xor expressions"};
  app.set_config("--config", "", "key=value file with default option values");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--rmax", c.rmax, "terms kept in critical-window sums")->check(CLI::Range(0, 200));
  app.add_option("--enum-cap", c.enum_cap, "largest exhaustive enumeration allowed")->envname("TWOXOR_ENUM_CAP");
  app.add_option("--term-cap", c.term_cap, "work cap before the series fallback in func-prob");
  app.add_option("--parallel", c.parallel, "worker threads; results do not depend on it")->check(CLI::Range(1U, 256U));
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--z-threshold", c.z_threshold, "largest |z| a Monte Carlo comparison passes with")
      ->check(CLI::PositiveNumber);

  std::function<Json()> action;

  SatArgs sat;
  auto* s = app.add_subcommand("sat-prob", "probability of satisfiability, or that a random input satisfies");
  s->add_option("--n", sat.n)->required();
  s->add_option("--m", sat.m)->required();
  s->add_option("--method", sat.method, "exact, limit, critical or mc");
  s->add_option("--quantity", sat.quantity, "sat or input");
  s->add_option("--form", sat.form, "critical form for --quantity input: reciprocal or sigma-two");
  s->callback([&] { action = [&] { return run_sat(sat, c); }; });

  FuncArgs fn;
  auto* f = app.add_subcommand("func-prob", "probability of one function of a class");
  f->add_option("--partition", fn.partition, "block sizes, e.g. 3+2+1+1")->required();
  f->add_option("--m", fn.m)->required();
  f->add_option("--method", fn.method, "exact, series or asympt");
  f->callback([&] { action = [&] { return run_func(fn, c); }; });

  CensusArgs cen;
  auto* ce = app.add_subcommand("census", "multigraph counts");
  ce->add_option("--n", cen.n);
  ce->add_option("--m", cen.m);
  ce->add_option("--r", cen.r, "excess for --cubic");
  ce->add_flag("--connected", cen.connected);
  ce->add_flag("--multigraphs", cen.multigraphs);
  ce->add_flag("--cubic", cen.cubic);
  ce->add_flag("--core", cen.core);
  ce->add_flag("--weighted", cen.weighted);
  ce->add_option("--sigma", cen.sigma, "weight per component for --weighted");
  ce->add_option("--method", cen.method, "exact or asympt (connected only)");
  ce->callback([&] { action = [&] { return run_census(cen, c); }; });

  SimArgs sim;
  auto* si = app.add_subcommand("simulate", "Monte Carlo over random expressions");
  si->add_option("--n", sim.n)->required();
  si->add_option("--m", sim.m)->required();
  si->add_option("--compare", sim.compare, "none, exact or limit");
  si->add_flag("--multigraphs", sim.multigraphs, "sample the multigraph process instead");
  si->callback([&] { action = [&] { return run_simulate(sim, c); }; });

  unsigned long on = 0, om = 0;
  auto* o = app.add_subcommand("oracle", "exhaustive enumeration of all expressions");
  o->add_option("--n", on)->required();
  o->add_option("--m", om)->required();
  o->callback([&] { action = [&] { return run_oracle(on, om, c); }; });

  unsigned long dn = 0, dm = 0;
  auto* d = app.add_subcommand("distribution", "every class of functions with its probability");
  d->add_option("--n", dn)->required();
  d->add_option("--m", dm)->required();
  d->callback([&] { action = [&] { return run_distribution(dn, dm, c); }; });

  PlotArgs pl;
  auto* p = app.add_subcommand("plot-data", "Pr(Sat) against m/n");
  p->add_option("--n", pl.n)->required();
  p->add_option("--alpha-min", pl.alpha_min);
  p->add_option("--alpha-max", pl.alpha_max);
  p->add_option("--steps", pl.steps);
  p->add_option("--method", pl.method, "exact, limit, critical or mc");
  p->callback([&] { action = [&] { return run_plot(pl, c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_record("usage", e.what()).dump(2) << "\n";
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    emit(action(), c);
    return 0;
  } catch (const UsageError& e) {
    std::cout << error_record("usage", e.what()).dump(2) << "\n";
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedRegime& e) {
    std::cout << error_record("unsupported-regime", e.what()).dump(2) << "\n";
    std::cerr << "unsupported regime: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    Json r = error_record("budget-exceeded", e.what());
    r["error"]["required"] = e.required();
    r["error"]["cap"] = e.cap();
    std::cout << r.dump(2) << "\n";
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  }
}
