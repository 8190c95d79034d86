#pragma once

// Floating-point asymptotic evaluators. Magnitudes are returned as natural logs.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/connected_table.hpp"
#include "twoxor/errors.hpp"
#include "twoxor/series.hpp"

namespace twoxor {

/// sign * exp(log_abs); sign 0 means exactly zero.
struct LogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogValue from_log(double l) { return {l, 1}; }
  static LogValue from_double(double x) {
    if (x == 0.0) return {};
    return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  double log2_abs() const { return log_abs / std::numbers::ln2; }
};

enum class RegimeTag {
  // connected multigraph counts
  kFixedExcess,
  kLargeExcess,
  kDense,
  // satisfiability
  kSubcritical,
  kCritical,
  // single block, cases 1 to 7
  kSingleTree,
  kSingleUnicyclic,
  kSingleFixedExcess,
  kSingleGrowingExcess,
  kSingleProportionalExcess,
  kSingleLargeExcess,
  kSingleDense,
  // two blocks
  kTwoBlockFixedSingleLarge,
  kTwoBlockFixedTwoLarge,
  kTwoBlockLargeSingleLarge,
  kTwoBlockLargeProportional,
  // others
  kFixedFunction,
  kProportionalBlocks,
};

inline std::string to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::kFixedExcess: return "fixed-excess";
    case RegimeTag::kLargeExcess: return "large-excess";
    case RegimeTag::kDense: return "dense";
    case RegimeTag::kSubcritical: return "subcritical";
    case RegimeTag::kCritical: return "critical";
    case RegimeTag::kSingleTree: return "single-block-1-tree";
    case RegimeTag::kSingleUnicyclic: return "single-block-2-unicyclic";
    case RegimeTag::kSingleFixedExcess: return "single-block-3-fixed-excess";
    case RegimeTag::kSingleGrowingExcess: return "single-block-4-growing-excess";
    case RegimeTag::kSingleProportionalExcess: return "single-block-5-proportional-excess";
    case RegimeTag::kSingleLargeExcess: return "single-block-6-large-excess";
    case RegimeTag::kSingleDense: return "single-block-7-dense";
    case RegimeTag::kTwoBlockFixedSingleLarge: return "two-block-fixed-excess-single-large";
    case RegimeTag::kTwoBlockFixedTwoLarge: return "two-block-fixed-excess-two-large";
    case RegimeTag::kTwoBlockLargeSingleLarge: return "two-block-large-excess-single-large";
    case RegimeTag::kTwoBlockLargeProportional: return "two-block-large-excess-proportional";
    case RegimeTag::kFixedFunction: return "fixed-function";
    case RegimeTag::kProportionalBlocks: return "proportional-blocks";
  }
  return "unknown";
}

struct TaggedValue {
  LogValue value;
  RegimeTag regime;
};

struct SaddleSolution {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

namespace detail {

inline constexpr double kSqrt2Pi = 2.5066282746310002;

/// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 0.0) return std::exp(-std::lgamma(x));
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  return std::sin(std::numbers::pi * x) * std::exp(std::lgamma(1.0 - x)) / std::numbers::pi;
}

/// log|1/Gamma(x)| and its sign; sign 0 at the poles.
inline std::pair<double, int> log_rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return {-std::numeric_limits<double>::infinity(), 0};
  if (x > 0.0) return {-std::lgamma(x), 1};
  const double s = std::sin(std::numbers::pi * x);
  return {std::log(std::fabs(s) / std::numbers::pi) + std::lgamma(1.0 - x), s < 0 ? -1 : 1};
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// log(m! / n^{2m})
inline double log_total_ratio(double m, double n) { return log_factorial(m) - 2.0 * m * std::log(n); }

/// x coth x - 1, accurate for small x.
inline double xcoth_minus_one(double x) {
  if (std::fabs(x) < 1e-3) {
    double x2 = x * x;
    return x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0;
  }
  return x / std::tanh(x) - 1.0;
}

/// Guarded Newton on an increasing function over [lo, hi].
inline SaddleSolution solve_increasing(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                       double lo, double hi, double start) {
  SaddleSolution s;
  double x = start;
  for (s.iterations = 1; s.iterations <= 200; ++s.iterations) {
    double fx = f(x);
    if (fx > 0) hi = std::min(hi, x);
    else lo = std::max(lo, x);
    double d = df(x);
    double next = x - fx / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  s.root = x;
  s.residual = f(x);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Implicit equations

/// zeta > 0 with zeta coth zeta = 1 + x, for x > 0.
inline SaddleSolution zeta_solve(double x) {
  if (!(x > 0.0)) throw UsageError("zeta_solve needs x > 0");
  auto f = [x](double z) { return detail::xcoth_minus_one(z) - x; };
  auto df = [](double z) {
    if (z < 1e-3) return 2.0 * z / 3.0;
    double s = std::sinh(z);
    return 1.0 / std::tanh(z) - z / (s * s);
  };
  double start = x < 1.0 ? std::sqrt(3.0 * x) : 1.0 + x;
  return detail::solve_increasing(f, df, 0.0, 2.0 + x, std::min(start, 1.0 + x));
}

/// lambda > 0 with (lambda/2) coth(lambda/2) = ratio, for ratio > 1.
inline SaddleSolution lambda_solve(double ratio) {
  SaddleSolution z = zeta_solve(ratio - 1.0);
  z.root *= 2.0;
  return z;
}

/// s > 0 with s (2e^s - 1)/(e^s - 1) = 1 + 2x, for x > 0.
inline SaddleSolution saddle_g2_root(double x) {
  if (!(x > 0.0)) throw UsageError("saddle_g2_root needs x > 0");
  auto h = [](double s) {  // s(2e^s - 1)/(e^s - 1) - 1 = s + s/(1 - e^{-s}) - 1
    if (s < 1e-4) return 1.5 * s + s * s / 12.0;
    return s + s / -std::expm1(-s) - 1.0;
  };
  auto f = [&](double s) { return h(s) - 2.0 * x; };
  auto df = [](double s) {
    if (s < 1e-4) return 1.5 + s / 6.0;
    double e = std::expm1(s);
    return 1.0 + (e * (e + 1.0) - s * (e + 1.0)) / (e * e);
  };
  return detail::solve_increasing(f, df, 0.0, 2.0 * x + 1.0, 4.0 * x / 3.0);
}

// ---------------------------------------------------------------------------
// Constants

/// sum_l (6l)!/(288^l (3l)!) v^{2l}/(2l)!, exact to the given order.
inline UniSeries cubic_kernel_series(std::size_t order) {
  UniSeries s(order);
  for (std::size_t l = 0; 2 * l <= order; ++l) {
    s[2 * l] = make_rational(factorial(6 * l), pow_ui(288, l) * factorial(3 * l) * factorial(2 * l));
  }
  return s;
}

/// [v^{2r}] log of the cubic kernel series: connected cubic multigraphs / (2r)!.
inline BigRational connected_cubic_weight(unsigned long r) {
  return series_log(cubic_kernel_series(2 * r))[2 * r];
}

inline double K_r(long r) {
  if (r < -1) throw UsageError("K_r needs r >= -1");
  if (r == -1) return 1.0;
  if (r == 0) return detail::kSqrt2Pi / 4.0;
  double c = to_double(connected_cubic_weight(static_cast<unsigned long>(r)));
  double l = std::log(c) + std::log(detail::kSqrt2Pi) - 1.5 * r * std::numbers::ln2 - std::lgamma(1.5 * r);
  return std::exp(l);
}

/// e_r^{(sigma)} = [z^{2r}] (cubic kernel series)^sigma.
inline BigRational e_sigma_r(const BigRational& sigma, unsigned long r) {
  return series_pow(cubic_kernel_series(2 * r), sigma)[2 * r];
}

/// A(y, mu) = e^{-mu^3/6} / 3^{(y+1)/3} sum_k (3^{2/3} mu / 2)^k / (k! Gamma((y+1-2k)/3)).
inline double airy_A(double y, double mu) {
  const double u = std::cbrt(9.0) * mu / 2.0;
  double sum = 0.0;
  if (mu == 0.0) {
    sum = detail::rgamma((y + 1.0) / 3.0);
  } else {
    const double lu = std::log(std::fabs(u));
    double largest = 0.0;
    for (int k = 0; k < 400; ++k) {
      double arg = (y + 1.0 - 2.0 * k) / 3.0;
      auto [lrg, sg] = detail::log_rgamma(arg);
      if (sg == 0) continue;
      double lt = k * lu - std::lgamma(k + 1.0) + lrg;
      double term = std::exp(lt) * ((sg < 0) != (u < 0 && k % 2 == 1) ? -1.0 : 1.0);
      sum += term;
      largest = std::max(largest, std::fabs(term));
      if (k > 10 && std::fabs(term) < 1e-18 * std::max(largest, std::fabs(sum))) break;
    }
  }
  return std::exp(-mu * mu * mu / 6.0) / std::pow(3.0, (y + 1.0) / 3.0) * sum;
}

// ---------------------------------------------------------------------------
// Connected multigraphs

/// Largest excess treated as fixed at this n.
inline long fixed_excess_limit(double n) { return std::max(1L, std::min(20L, static_cast<long>(std::cbrt(n)))); }

/// Threshold on 2m/n - log n above which multigraphs are taken as connected.
inline constexpr double kDenseThreshold = 3.0;

/// log of the large-excess estimate: alpha(lambda) n^m (2 sinh(lambda/2))^n / (sqrt(2 pi n) lambda^m).
inline double log_connected_large_excess(double m, double n) {
  if (!(m > n)) throw UsageError("large-excess estimate needs m > n");
  double lam = lambda_solve(m / n).root;
  double e1 = std::expm1(lam) - lam;                         // e^l - 1 - l
  double e2 = std::expm1(2 * lam) - 2 * lam * std::exp(lam);  // e^{2l} - 1 - 2l e^l
  double pref = 0.5 * (std::log(2.0) + 2.0 * std::log(e1) - std::log(lam) - std::log(e2));
  return pref + m * std::log(n) - 0.5 * std::log(2 * std::numbers::pi * n) + n * std::log(2.0 * std::sinh(lam / 2)) -
         m * std::log(lam);
}

inline TaggedValue connected_asympt(unsigned long m, unsigned long n) {
  if (n == 0 || m + 1 < n) throw UsageError("connected multigraphs need m >= n - 1");
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  const long r = static_cast<long>(m) - static_cast<long>(n);
  const double L = 2.0 * dm / dn - std::log(dn);
  if (r <= fixed_excess_limit(dn)) {
    double l = std::log(K_r(r)) + (dn + (3.0 * r - 1.0) / 2.0) * std::log(dn);
    return {LogValue::from_log(l), RegimeTag::kFixedExcess};
  }
  if (L > kDenseThreshold) {
    double l = 2.0 * dm * std::log(dn) - dm * std::numbers::ln2 - detail::log_factorial(dm);
    return {LogValue::from_log(l), RegimeTag::kDense};
  }
  return {LogValue::from_log(log_connected_large_excess(dm, dn)), RegimeTag::kLargeExcess};
}

// ---------------------------------------------------------------------------
// Satisfiability

struct CriticalSum {
  double partial = 0.0;  // sum over r <= r_max
  double tail = 0.0;     // magnitude of the last included term
};

inline constexpr int kDefaultRmax = 20;

/// sum_{r <= r_max} sigma^r e_r^{(sigma)} A(3r + sigma/2, mu).
inline CriticalSum critical_sum(const BigRational& sigma, double mu, int r_max = kDefaultRmax) {
  if (r_max < 0) throw UsageError("r_max must be >= 0");
  UniSeries e = series_pow(cubic_kernel_series(2 * static_cast<std::size_t>(r_max)), sigma);
  const double s = to_double(sigma);
  CriticalSum out;
  for (int r = 0; r <= r_max; ++r) {
    double term = std::pow(s, r) * to_double(e[2 * static_cast<std::size_t>(r)]) * airy_A(3.0 * r + s / 2.0, mu);
    out.partial += term;
    out.tail = std::fabs(term);
  }
  return out;
}

/// mu with m = (n/2)(1 + mu n^{-1/3}).
inline double critical_mu(double n, double m) { return (2.0 * m / n - 1.0) * std::cbrt(n); }

/// |mu| range where the Airy series is evaluated reliably in double precision.
inline constexpr double kCriticalWindow = 4.0;

/// Below this mu (with m < n/2) the subcritical closed form is used.
inline constexpr double kSubcriticalMu = -2.0;

/// (1 - 2m/n)^{1/4}, for m/n < 1/2.
inline double prob_sat_subcritical(unsigned long n, unsigned long m) {
  if (n == 0) throw UsageError("n must be >= 1");
  double a = static_cast<double>(m) / static_cast<double>(n);
  if (!(a < 0.5)) throw UnsupportedRegime("subcritical limit needs m/n < 1/2");
  return std::pow(1.0 - 2.0 * a, 0.25);
}

struct CriticalValue {
  double value = 0.0;
  double mu = 0.0;
  CriticalSum sum;
};

/// n^{-1/12} sqrt(2 pi) sum_r e_r^{(1/2)} / 2^r A(3r + 1/4, mu).
inline CriticalValue prob_sat_critical(unsigned long n, unsigned long m, int r_max = kDefaultRmax) {
  if (n == 0) throw UsageError("n must be >= 1");
  CriticalValue v;
  v.mu = critical_mu(static_cast<double>(n), static_cast<double>(m));
  if (std::fabs(v.mu) > kCriticalWindow) throw UnsupportedRegime("mu outside the critical window");
  v.sum = critical_sum(make_rational(1, 2), v.mu, r_max);
  v.value = std::pow(static_cast<double>(n), -1.0 / 12.0) * detail::kSqrt2Pi * v.sum.partial;
  return v;
}

/// Subcritical limit when mu < kSubcriticalMu, the critical sum inside the window, otherwise unsupported.
inline TaggedValue prob_sat_limit(unsigned long n, unsigned long m, int r_max = kDefaultRmax) {
  if (n == 0) throw UsageError("n must be >= 1");
  double mu = critical_mu(static_cast<double>(n), static_cast<double>(m));
  if (mu < kSubcriticalMu && 2 * m < n) return {LogValue::from_double(prob_sat_subcritical(n, m)), RegimeTag::kSubcritical};
  if (std::fabs(mu) <= kCriticalWindow)
    return {LogValue::from_double(prob_sat_critical(n, m, r_max).value), RegimeTag::kCritical};
  throw UnsupportedRegime("m/n beyond the critical window");
}

/// Critical-window form for the probability that an input satisfies a random
/// satisfiable expression. kReciprocal mirrors the satisfiability sum (sigma = 1/2
/// with sqrt(2 pi)); kSigmaTwo uses e_r^{(2)} without sqrt(2 pi).
enum class InputCriticalForm { kReciprocal, kSigmaTwo };

/// 2^{-m} (1 - 2m/n)^{-1/4}, for m/n < 1/2.
inline LogValue prob_input_subcritical(unsigned long n, unsigned long m) {
  if (n == 0) throw UsageError("n must be >= 1");
  const double a = static_cast<double>(m) / static_cast<double>(n);
  if (!(a < 0.5)) throw UnsupportedRegime("subcritical limit needs m/n < 1/2");
  return LogValue::from_log(-static_cast<double>(m) * std::numbers::ln2 - 0.25 * std::log1p(-2.0 * a));
}

inline LogValue prob_input_critical(unsigned long n, unsigned long m,
                                    InputCriticalForm form = InputCriticalForm::kReciprocal, int r_max = kDefaultRmax) {
  if (n == 0) throw UsageError("n must be >= 1");
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  const double mu = critical_mu(dn, dm);
  if (std::fabs(mu) > kCriticalWindow) throw UnsupportedRegime("mu outside the critical window");
  double sum;
  if (form == InputCriticalForm::kReciprocal) {
    sum = detail::kSqrt2Pi * critical_sum(make_rational(1, 2), mu, r_max).partial;
  } else {
    // sum_r 2^{-r} e_r^{(2)} A(3r + 1/4, mu)
    UniSeries e = series_pow(cubic_kernel_series(2 * static_cast<std::size_t>(r_max)), BigRational(2));
    sum = 0.0;
    for (int r = 0; r <= r_max; ++r)
      sum += std::pow(0.5, r) * to_double(e[2 * static_cast<std::size_t>(r)]) * airy_A(3.0 * r + 0.25, mu);
  }
  return LogValue::from_log(std::log(dn) / 12.0 - dm * std::numbers::ln2 - std::log(sum));
}

/// Same regime selection as prob_sat_limit.
inline TaggedValue prob_input_limit(unsigned long n, unsigned long m,
                                    InputCriticalForm form = InputCriticalForm::kReciprocal, int r_max = kDefaultRmax) {
  if (n == 0) throw UsageError("n must be >= 1");
  if (m == 0) return {LogValue::from_log(0.0), RegimeTag::kSubcritical};
  const double mu = critical_mu(static_cast<double>(n), static_cast<double>(m));
  if (mu < kSubcriticalMu && 2 * m < n) return {prob_input_subcritical(n, m), RegimeTag::kSubcritical};
  if (std::fabs(mu) > kCriticalWindow) throw UnsupportedRegime("m/n beyond the critical window");
  return {prob_input_critical(n, m, form, r_max), RegimeTag::kCritical};
}

// ---------------------------------------------------------------------------
// Fixed function, m = alpha n

/// l! [v^l] C(4x, v) at x = alpha/2, i.e. sum_j (connected sequences of j edges on l vertices) alpha^j / j!.
inline double block_egf_at(std::size_t l, double alpha) {
  if (l == 0) throw UsageError("block size must be >= 1");
  if (alpha <= 0.0) return l == 1 ? 1.0 : 0.0;
  const double growth = static_cast<double>(l * l) * alpha;
  const std::size_t jmax = static_cast<std::size_t>(3.0 * growth + 60.0 + static_cast<double>(l));
  auto seq = ConnectedTable::instance().egf(l).sequence_counts(jmax);
  double sum = 0.0, peak = -1e300;
  std::vector<double> logs;
  for (std::size_t j = 0; j <= jmax; ++j) {
    if (seq[j] == 0) continue;
    logs.push_back(log_abs(seq[j]) + j * std::log(alpha) - std::lgamma(j + 1.0));
    peak = std::max(peak, logs.back());
  }
  for (double t : logs) sum += std::exp(t - peak);
  return std::exp(peak) * sum;
}

/// Pr(f) for a fixed f with block counts i_l (l >= 2) among n variables, m = alpha n:
/// e^{-alpha e(f)} / (2n)^{alpha n} prod_l (l! [v^l] C(2 alpha, v))^{i_l}.
inline TaggedValue prob_fixed_function_limit(const std::map<std::size_t, std::size_t>& i_tail, double alpha,
                                             unsigned long n) {
  if (n == 0 || alpha < 0.0) throw UsageError("need n >= 1 and alpha >= 0");
  double essential = 0.0, min_edges = 0.0;
  for (auto [l, c] : i_tail) {
    if (l < 2) throw UsageError("i_tail lists blocks of size >= 2 only");
    essential += static_cast<double>(l * c);
    min_edges += static_cast<double>((l - 1) * c);
  }
  if (essential > static_cast<double>(n)) throw UsageError("blocks exceed n variables");
  const double m = alpha * static_cast<double>(n);
  if (m + 1e-9 < min_edges) throw UsageError("m below the support of the function");
  double l = -alpha * essential - m * std::log(2.0 * static_cast<double>(n));
  for (auto [size, c] : i_tail) l += static_cast<double>(c) * std::log(block_egf_at(size, alpha));
  return {LogValue::from_log(l), RegimeTag::kFixedFunction};
}

// ---------------------------------------------------------------------------
// Single block x1 ~ ... ~ xn

/// (e^{2z} - 1 - 2z) / sqrt(z (e^{4z} - 1 - 4z e^{2z}))
inline double alpha_of_zeta(double z) {
  double a = std::expm1(2 * z) - 2 * z;
  double b = std::expm1(4 * z) - 4 * z * std::exp(2 * z);
  return a / std::sqrt(z * b);
}

/// The regime used for (n, m): deterministic and total for m >= n - 1.
inline RegimeTag single_block_regime(unsigned long n, unsigned long m) {
  if (n == 0 || m + 1 < n) throw UsageError("single block needs m >= n - 1");
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  const long r = static_cast<long>(m) - static_cast<long>(n);
  const double L = 2.0 * dm / dn - std::log(dn);
  if (r == -1) return RegimeTag::kSingleTree;
  if (r == 0) return RegimeTag::kSingleUnicyclic;
  if (L > kDenseThreshold) return RegimeTag::kSingleDense;
  if (r <= fixed_excess_limit(dn)) return RegimeTag::kSingleFixedExcess;
  if (static_cast<double>(r) <= std::pow(dn, 0.4)) return RegimeTag::kSingleGrowingExcess;
  if (L <= 0.0) return RegimeTag::kSingleProportionalExcess;
  return RegimeTag::kSingleLargeExcess;
}

/// c_r = sqrt(2 pi) K_r, the constant of the fixed-excess case.
inline double single_block_constant(long r) { return detail::kSqrt2Pi * K_r(r); }

inline TaggedValue single_block_asympt(unsigned long n, unsigned long m) {
  const RegimeTag tag = single_block_regime(n, m);
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  const double r = dm - dn;
  double l = 0.0;
  switch (tag) {
    case RegimeTag::kSingleTree: l = 0.5 * std::log(2 * std::numbers::pi / dn) - dn; break;
    case RegimeTag::kSingleUnicyclic: l = std::log(std::numbers::pi / 2) - dn; break;
    case RegimeTag::kSingleFixedExcess:
      l = std::log(single_block_constant(static_cast<long>(r))) - dn + 0.5 * r * std::log(dn);
      break;
    case RegimeTag::kSingleGrowingExcess:
      l = 0.5 * std::log(1.5) + r / 2 - r * std::log(2 * std::sqrt(3.0)) - dn + 0.5 * r * std::log(dn / r);
      break;
    case RegimeTag::kSingleProportionalExcess: {
      const double a = dm / dn;
      const double z = zeta_solve(a - 1.0).root;
      const double K = std::sqrt(a) * alpha_of_zeta(z);
      l = std::log(K) + dn * ((a - 1) * std::log(a) + std::log(std::cosh(z)) - (a - 1) * std::log(2 * z) - a);
      break;
    }
    case RegimeTag::kSingleLargeExcess: {
      const double z = zeta_solve(r / dn).root;
      l = std::log(alpha_of_zeta(z)) - r * std::log(2 * z) + dn * std::log(std::sinh(z) / z) +
          (dn + r + 0.5) * std::log1p(r / dn) - (dn + r);
      break;
    }
    case RegimeTag::kSingleDense: l = -dm * std::numbers::ln2; break;
    default: throw UnsupportedRegime("unexpected single-block regime");
  }
  return {LogValue::from_log(l), tag};
}

// ---------------------------------------------------------------------------
// Two blocks of sizes p <= n - p

/// d/da log g(a) = c log(gamma/(1-gamma) * zeta2/zeta1).
inline double two_block_dlog_g(double a, double gamma, double c) {
  if (!(a > 0.0 && a < 1.0)) throw UsageError("a must lie in (0, 1)");
  double z1 = zeta_solve(a * c / gamma).root;
  double z2 = zeta_solve((1 - a) * c / (1 - gamma)).root;
  return c * std::log(gamma / (1 - gamma) * z2 / z1);
}

/// log g(a)
inline double two_block_log_g(double a, double gamma, double c) {
  double x1 = a * c / gamma, x2 = (1 - a) * c / (1 - gamma);
  double z1 = zeta_solve(x1).root, z2 = zeta_solve(x2).root;
  return gamma * (std::log(std::cosh(z1)) - std::log1p(x1)) + (1 - gamma) * (std::log(std::cosh(z2)) - std::log1p(x2)) +
         a * c * std::log(gamma / z1) + (1 - a) * c * std::log((1 - gamma) / z2);
}

/// The unique maximiser of g on (0,1), by bisection on the sign of d/da log g.
inline SaddleSolution two_block_a0(double gamma, double c) {
  if (!(gamma > 0.0 && gamma < 1.0) || !(c > 0.0)) throw UsageError("need 0 < gamma < 1 and c > 0");
  double lo = 0.0, hi = 1.0;
  SaddleSolution s;
  for (s.iterations = 0; s.iterations < 200 && hi - lo > 1e-13; ++s.iterations) {
    double mid = 0.5 * (lo + hi);
    if (two_block_dlog_g(mid, gamma, c) > 0) lo = mid;
    else hi = mid;
  }
  s.root = 0.5 * (lo + hi);
  s.residual = two_block_dlog_g(s.root, gamma, c);
  return s;
}

/// -(log g)''(a)
inline double two_block_curvature(double a, double gamma, double c) {
  double x1 = a * c / gamma, x2 = (1 - a) * c / (1 - gamma);
  double z1 = zeta_solve(x1).root, z2 = zeta_solve(x2).root;
  return c * (c / (1 - gamma) / (z2 * z2 - x2 * (1 + x2)) + c / gamma / (z1 * z1 - x1 * (1 + x1)));
}

inline RegimeTag two_block_regime(unsigned long n, unsigned long p, unsigned long m) {
  if (p < 1 || 2 * p > n) throw UsageError("two blocks need 1 <= p <= n - p");
  if (m + 2 < n) throw UsageError("two blocks need m >= n - 2");
  const long r = static_cast<long>(m) - static_cast<long>(n);
  const bool small_part = static_cast<double>(p) <= std::sqrt(static_cast<double>(n)) / 2.0 || p <= 3;
  if (r <= fixed_excess_limit(static_cast<double>(n)))
    return small_part ? RegimeTag::kTwoBlockFixedSingleLarge : RegimeTag::kTwoBlockFixedTwoLarge;
  return small_part ? RegimeTag::kTwoBlockLargeSingleLarge : RegimeTag::kTwoBlockLargeProportional;
}

/// Pr(f) for f = (x1 ~ ... ~ xp)(x_{p+1} ~ ... ~ xn) in the requested regime.
inline TaggedValue two_block_asympt(unsigned long n, unsigned long p, unsigned long m, RegimeTag regime) {
  if (p < 1 || 2 * p > n) throw UsageError("two blocks need 1 <= p <= n - p");
  if (m + 2 < n) throw UsageError("two blocks need m >= n - 2");
  const double dn = static_cast<double>(n), dm = static_cast<double>(m), dp = static_cast<double>(p);
  const double N = dn - dp;
  const long r = static_cast<long>(m) - static_cast<long>(n);
  const double base = detail::log_total_ratio(dm, dn);
  switch (regime) {
    case RegimeTag::kTwoBlockFixedSingleLarge: {
      // the small block is a tree: p^{p-2} K_{r+1} (n-p)^{(n-p) + (3(r+1)-1)/2}
      double l = base + (dp - 2) * std::log(dp) + std::log(K_r(r + 1)) + (N + (3.0 * (r + 1) - 1) / 2) * std::log(N);
      return {LogValue::from_log(l), regime};
    }
    case RegimeTag::kTwoBlockFixedTwoLarge: {
      double peak = -1e300;
      std::vector<double> logs;
      for (long d = -1; d <= r + 1; ++d) {
        double t = std::log(K_r(d)) + (dp + (3.0 * d - 1) / 2) * std::log(dp) + std::log(K_r(r - d)) +
                   (N + (3.0 * (r - d) - 1) / 2) * std::log(N);
        logs.push_back(t);
        peak = std::max(peak, t);
      }
      double s = 0.0;
      for (double t : logs) s += std::exp(t - peak);
      return {LogValue::from_log(base + peak + std::log(s)), regime};
    }
    case RegimeTag::kTwoBlockLargeSingleLarge: {
      if (r < 1) throw UnsupportedRegime("large-excess regime needs r >= 1");
      double l = base + (dp - 2) * std::log(dp) + log_connected_large_excess(N + r + 1, N);
      return {LogValue::from_log(l), regime};
    }
    case RegimeTag::kTwoBlockLargeProportional: {
      if (r < 1) throw UnsupportedRegime("large-excess regime needs r >= 1");
      const double gamma = dp / dn, c = r / dn;
      const double a0 = two_block_a0(gamma, c).root;
      const double lam = two_block_curvature(a0, gamma, c);
      const double z1 = zeta_solve(a0 * c / gamma).root, z2 = zeta_solve((1 - a0) * c / (1 - gamma)).root;
      // sum_d over the excess split: r terms of spacing 1/r, Laplace over a
      double l = 0.5 * std::log((c + 1) / (gamma * (1 - gamma))) +
                 dn * (gamma * std::log(gamma) + (1 - gamma) * std::log(1 - gamma) + (c + 1) * std::log(c + 1) -
                       c * std::numbers::ln2 - (c + 1)) +
                 std::log(alpha_of_zeta(z1)) + std::log(alpha_of_zeta(z2)) - 0.5 * std::log(2 * std::numbers::pi * dn) +
                 dn * two_block_log_g(a0, gamma, c) + std::log(static_cast<double>(r)) +
                 0.5 * std::log(2 * std::numbers::pi / (lam * dn));
      return {LogValue::from_log(l), regime};
    }
    default: throw UnsupportedRegime("not a two-block regime");
  }
}

// ---------------------------------------------------------------------------
// n/2 blocks of size 2, m = n/2 + kappa

struct SaddleG2 {
  SaddleSolution saddle;
  double bootstrap = 0.0;  // 4x/3 - 8x^2/81 with x = kappa/n
  LogValue count;          // E_{m,n}(f)
};

inline SaddleG2 saddle_g2(unsigned long n, double kappa) {
  if (n == 0 || n % 2 != 0) throw UsageError("saddle_g2 needs even n >= 2");
  if (!(kappa > 0.0)) throw UsageError("saddle_g2 needs kappa > 0");
  const double dn = static_cast<double>(n);
  const double x = kappa / dn;
  SaddleG2 out;
  out.saddle = saddle_g2_root(x);
  out.bootstrap = 4.0 * x / 3.0 - 8.0 * x * x / 81.0;
  const double s = out.saddle.root;
  const double m = dn / 2 + kappa;
  double l = detail::log_factorial(m) + (2 * m + 1) * std::numbers::ln2 - 0.5 * std::log(6 * std::numbers::pi * dn * s) +
             (-m + dn / 2) * std::log(s) + 3 * dn * s / 4 + dn * s * s / 48;
  out.count = LogValue::from_log(l);
  return out;
}

}  // namespace twoxor
