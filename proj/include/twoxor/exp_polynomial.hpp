#pragma once

// Finite sums  sum_k c_k e^{a_k z}  with exact rational coefficients and rates.

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/errors.hpp"
#include "twoxor/series.hpp"

namespace twoxor {

struct ExpTerm {
  BigRational coeff;
  BigRational rate;
  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

class ExpPolynomial {
 public:
  ExpPolynomial() = default;

  /// Builds from arbitrary terms: merges equal rates, drops zeros, sorts by rate.
  explicit ExpPolynomial(const std::vector<ExpTerm>& terms) {
    std::map<BigRational, BigRational> acc;
    for (const auto& t : terms) acc[t.rate] += t.coeff;
    assign(acc);
  }

  static ExpPolynomial unit() { return ExpPolynomial({{BigRational(1), BigRational(0)}}); }
  static ExpPolynomial exponential(const BigRational& rate, const BigRational& coeff = 1) {
    return ExpPolynomial({{coeff, rate}});
  }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend bool operator==(const ExpPolynomial&, const ExpPolynomial&) = default;

  friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
    std::map<BigRational, BigRational> acc;
    for (const auto& t : a.terms_) acc[t.rate] += t.coeff;
    for (const auto& t : b.terms_) acc[t.rate] += t.coeff;
    ExpPolynomial r;
    r.assign(acc);
    return r;
  }

  friend ExpPolynomial operator*(const BigRational& c, const ExpPolynomial& a) {
    if (c == 0) return {};
    ExpPolynomial r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
    std::map<BigRational, BigRational> acc;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) acc[x.rate + y.rate] += x.coeff * y.coeff;
    ExpPolynomial r;
    r.assign(acc);
    return r;
  }

  /// p(scale * z): every rate multiplied by scale.
  ExpPolynomial rescaled(const BigRational& scale) const {
    std::vector<ExpTerm> t = terms_;
    for (auto& x : t) x.rate *= scale;
    return ExpPolynomial(t);
  }

  ExpPolynomial pow(unsigned long e) const {
    ExpPolynomial result = unit();
    ExpPolynomial base = *this;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// m! [z^m] p = sum_k c_k a_k^m.
  BigRational egf_coeff(unsigned long m) const {
    BigRational acc;
    for (const auto& t : terms_) acc += t.coeff * twoxor::pow(t.rate, m);
    return acc;
  }

  /// Floating-point evaluation at z0.
  double eval(double z0) const {
    double acc = 0.0;
    for (const auto& t : terms_) acc += to_double(t.coeff) * std::exp(to_double(t.rate) * z0);
    return acc;
  }

  /// Taylor expansion to the given order.
  UniSeries to_series(std::size_t order) const {
    UniSeries s(order);
    for (std::size_t m = 0; m <= order; ++m) s[m] = egf_coeff(m) / BigRational(factorial(m));
    return s;
  }

 private:
  void assign(const std::map<BigRational, BigRational>& acc) {
    terms_.clear();
    for (const auto& [rate, c] : acc)
      if (c != 0) terms_.push_back({c, rate});
  }

  std::vector<ExpTerm> terms_;  // sorted by rate, no zero coefficients
};

/// Product of powers; an empty list gives the unit 1 e^{0z}.
inline ExpPolynomial exppoly_product(const std::vector<std::pair<ExpPolynomial, unsigned long>>& factors) {
  ExpPolynomial r = ExpPolynomial::unit();
  for (const auto& [p, mult] : factors) {
    if (mult == 0) throw UsageError("exppoly_product: multiplicity must be >= 1");
    r = r * p.pow(mult);
  }
  return r;
}

namespace detail {

/// Coefficients [v^k] of Mhat(z,v) = (M(z,v) - 1) / v, i.e. e^{(k+1)^2 z / 2} / (k+1)!.
inline ExpPolynomial mhat_coefficient(std::size_t k) {
  return ExpPolynomial::exponential(make_rational(static_cast<long>((k + 1) * (k + 1)), 2),
                                    BigRational(1) / BigRational(factorial(k + 1)));
}

}  // namespace detail

/// l! [v^l] log M(z,v) via the alternating sum over powers of Mhat:
/// sum_{j=1}^{l} ((-1)^{j-1}/j) e_{j,l-j}(z), with e_{j,n} = [v^n] Mhat^j.
inline ExpPolynomial block_egf(std::size_t block) {
  if (block == 0) throw UsageError("block_egf needs a block size >= 1");
  static std::mutex mu;
  static std::map<std::size_t, ExpPolynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(block); it != cache.end()) return it->second;
  }

  const std::size_t deg = block - 1;  // highest v-degree of Mhat^j needed
  std::vector<ExpPolynomial> mhat;
  for (std::size_t k = 0; k <= deg; ++k) mhat.push_back(detail::mhat_coefficient(k));

  // power[n] = e_{j,n} for the current j.
  std::vector<ExpPolynomial> power = mhat;
  ExpPolynomial sum;
  for (std::size_t j = 1; j <= block; ++j) {
    BigRational w(j % 2 == 1 ? 1 : -1, static_cast<long>(j));
    sum = sum + w * power[block - j];
    if (j == block) break;
    std::vector<ExpPolynomial> next(deg + 1);
    for (std::size_t a = 0; a <= deg; ++a)
      for (std::size_t b = 0; a + b <= deg; ++b) next[a + b] = next[a + b] + power[a] * mhat[b];
    power = std::move(next);
  }
  ExpPolynomial result = BigRational(factorial(block)) * sum;
  std::lock_guard lock(mu);
  cache.emplace(block, result);
  return result;
}

}  // namespace twoxor
