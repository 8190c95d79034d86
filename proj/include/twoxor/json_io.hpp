#pragma once

// JSON renderings of results. Rationals appear as {"exact": "p/q", "float": x}.

#include <cmath>
#include <string>

#include <json.hpp>

#include "twoxor/asymptotics.hpp"
#include "twoxor/census.hpp"
#include "twoxor/montecarlo.hpp"
#include "twoxor/oracle.hpp"

namespace twoxor {

using Json = nlohmann::ordered_json;

inline Json rational_json(const BigRational& q) {
  Json j;
  j["exact"] = to_string(q);
  j["float"] = to_double(q);
  return j;
}

inline Json integer_json(const BigInt& z) {
  Json j;
  j["exact"] = z.get_str();
  j["float"] = to_double(BigRational(z));
  return j;
}

/// Log-scale magnitude; "float" is null when the value under- or overflows.
inline Json log_json(const LogValue& v) {
  Json j;
  j["log_scale"] = true;
  j["sign"] = v.sign;
  j["ln"] = v.log_abs;
  j["log2"] = v.log2_abs();
  double x = v.value();
  if (std::isfinite(x) && (x != 0.0 || v.sign == 0)) j["float"] = x;
  else j["float"] = nullptr;
  return j;
}

inline Json saddle_json(const SaddleSolution& s) {
  return Json{{"root", s.root}, {"residual", s.residual}, {"iterations", s.iterations}};
}

inline Json class_json(const ClassProbability& c) {
  Json j;
  j["partition"] = c.partition.to_string();
  j["class_size"] = integer_json(c.class_size);
  j["count"] = rational_json(c.count_per_function);
  j["prob_function"] = rational_json(c.prob_per_function);
  j["prob_class"] = rational_json(c.prob_class);
  return j;
}

inline Json distribution_json(const Distribution& d) {
  Json j;
  j["n"] = d.n;
  j["m"] = d.m;
  Json rows = Json::array();
  for (const auto& c : d.classes) rows.push_back(class_json(c));
  j["classes"] = rows;
  j["prob_false"] = rational_json(d.prob_false);
  return j;
}

inline Json report_json(const TrialReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["sat_count"] = r.sat_count;
  j["false_count"] = r.false_count;
  j["sat_frequency"] = r.sat_frequency;
  Json h = Json::object();
  for (const auto& [p, count] : r.class_histogram) h[p.to_string()] = count;
  j["class_histogram"] = h;
  Json se = Json::object();
  for (const auto& [k, v] : r.standard_errors) se[k] = v;
  j["standard_errors"] = se;
  return j;
}

inline Json verdict_json(const Verdict& v) {
  Json j;
  j["estimand"] = v.estimand;
  j["count"] = v.count;
  j["empirical"] = v.empirical;
  if (v.predicted) j["predicted"] = *v.predicted;
  else j["predicted"] = nullptr;
  j["z"] = std::isfinite(v.z) ? Json(v.z) : Json(nullptr);
  j["verdict"] = to_string(v.status);
  return j;
}

inline Json oracle_json(const OracleCensus& c) {
  Json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["total"] = c.total;
  j["false_count"] = c.false_count;
  Json f = Json::array();
  for (const auto& [fn, count] : c.per_function) {
    if (fn.is_false()) continue;
    f.push_back(Json{{"function", fn.to_string()}, {"partition", partition_of(fn).to_string()}, {"count", count}});
  }
  j["per_function"] = f;
  Json cls = Json::array();
  for (const auto& [p, t] : c.per_class) {
    cls.push_back(Json{{"partition", p.to_string()},
                       {"functions_reached", t.functions},
                       {"class_size", class_size(p).get_str()},
                       {"total", t.total}});
  }
  j["per_class"] = cls;
  j["equiprobable_within_classes"] = equiprobable_within_classes(c);
  return j;
}

}  // namespace twoxor
