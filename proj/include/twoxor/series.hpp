#pragma once

// Truncated univariate and bivariate power series over exact rationals.
//
// BiSeries uses z for edges/clauses and v for vertices/variables:
// coefficient (a, b) is [z^a v^b].

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/errors.hpp"

namespace twoxor {

class UniSeries {
 public:
  explicit UniSeries(std::size_t order) : coeffs_(order + 1) {}
  UniSeries(std::size_t order, std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
  }

  static UniSeries constant(std::size_t order, const BigRational& c) {
    UniSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const BigRational& operator[](std::size_t k) const { return coeffs_.at(k); }
  BigRational& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<BigRational>& coeffs() const noexcept { return coeffs_; }

  UniSeries truncated(std::size_t order) const {
    return UniSeries(order, std::vector<BigRational>(
                                coeffs_.begin(),
                                coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1)));
  }

  friend bool operator==(const UniSeries&, const UniSeries&) = default;

  friend UniSeries operator+(const UniSeries& a, const UniSeries& b) {
    std::size_t ord = std::min(a.order(), b.order());
    UniSeries r(ord);
    for (std::size_t k = 0; k <= ord; ++k) r.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return r;
  }

  friend UniSeries operator-(const UniSeries& a, const UniSeries& b) {
    std::size_t ord = std::min(a.order(), b.order());
    UniSeries r(ord);
    for (std::size_t k = 0; k <= ord; ++k) r.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return r;
  }

  friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
    std::size_t ord = std::min(a.order(), b.order());
    UniSeries r(ord);
    for (std::size_t i = 0; i <= ord; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= ord; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  friend UniSeries operator*(const BigRational& c, const UniSeries& a) {
    UniSeries r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r.coeffs_[k] = c * a.coeffs_[k];
    return r;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  UniSeries inverse() const {
    if (coeffs_[0] == 0) throw UsageError("series inverse needs a nonzero constant term");
    UniSeries r(order());
    BigRational inv0 = 1 / coeffs_[0];
    r.coeffs_[0] = inv0;
    for (std::size_t n = 1; n <= order(); ++n) {
      BigRational acc;
      for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * r.coeffs_[n - k];
      r.coeffs_[n] = -acc * inv0;
    }
    return r;
  }

 private:
  std::vector<BigRational> coeffs_;
};

/// exp(s) for s with zero constant term: n f_n = sum k s_k f_{n-k}.
inline UniSeries series_exp(const UniSeries& s) {
  if (s[0] != 0) throw UsageError("series_exp needs a zero constant term");
  UniSeries f(s.order());
  f[0] = 1;
  for (std::size_t n = 1; n <= s.order(); ++n) {
    BigRational acc;
    for (std::size_t k = 1; k <= n; ++k) acc += BigRational(static_cast<long>(k)) * s[k] * f[n - k];
    f[n] = acc / static_cast<long>(n);
  }
  return f;
}

/// log(s) for s with constant term 1: n l_n = n s_n - sum_{k<n} k l_k s_{n-k}.
inline UniSeries series_log(const UniSeries& s) {
  if (s[0] != 1) throw UsageError("series_log needs constant term 1");
  UniSeries l(s.order());
  for (std::size_t n = 1; n <= s.order(); ++n) {
    BigRational acc = BigRational(static_cast<long>(n)) * s[n];
    for (std::size_t k = 1; k < n; ++k) acc -= BigRational(static_cast<long>(k)) * l[k] * s[n - k];
    l[n] = acc / static_cast<long>(n);
  }
  return l;
}

/// s^sigma for s with constant term 1: n f_n = sum_{k>=1} (sigma k - (n-k)) s_k f_{n-k}.
inline UniSeries series_pow(const UniSeries& s, const BigRational& sigma) {
  if (s[0] != 1) throw UsageError("series_pow needs constant term 1");
  UniSeries f(s.order());
  f[0] = 1;
  for (std::size_t n = 1; n <= s.order(); ++n) {
    BigRational acc;
    for (std::size_t k = 1; k <= n; ++k) {
      if (s[k] == 0) continue;
      BigRational w = sigma * static_cast<long>(k) - static_cast<long>(n - k);
      acc += w * s[k] * f[n - k];
    }
    f[n] = acc / static_cast<long>(n);
  }
  return f;
}

class BiSeries {
 public:
  BiSeries(std::size_t m_max, std::size_t n_max)
      : m_max_(m_max), n_max_(n_max), coeffs_((m_max + 1) * (n_max + 1)) {}

  std::size_t m_max() const noexcept { return m_max_; }
  std::size_t n_max() const noexcept { return n_max_; }

  /// [z^m v^n]
  const BigRational& coeff(std::size_t m, std::size_t n) const {
    check(m, n);
    return coeffs_[m * (n_max_ + 1) + n];
  }
  BigRational& at(std::size_t m, std::size_t n) {
    check(m, n);
    return coeffs_[m * (n_max_ + 1) + n];
  }

  /// m! n! [z^m v^n]
  BigRational egf_coeff(std::size_t m, std::size_t n) const {
    return coeff(m, n) * BigRational(factorial(m) * factorial(n));
  }

  /// The z-series multiplying v^n.
  UniSeries v_coefficient(std::size_t n) const {
    UniSeries s(m_max_);
    for (std::size_t m = 0; m <= m_max_; ++m) s[m] = coeff(m, n);
    return s;
  }

  void set_v_coefficient(std::size_t n, const UniSeries& s) {
    for (std::size_t m = 0; m <= m_max_; ++m) at(m, n) = m <= s.order() ? s[m] : BigRational(0);
  }

  BiSeries truncated(std::size_t m_max, std::size_t n_max) const {
    m_max = std::min(m_max, m_max_);
    n_max = std::min(n_max, n_max_);
    BiSeries r(m_max, n_max);
    for (std::size_t m = 0; m <= m_max; ++m)
      for (std::size_t n = 0; n <= n_max; ++n) r.at(m, n) = coeff(m, n);
    return r;
  }

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.m_max_, b.m_max_), std::min(a.n_max_, b.n_max_));
    for (std::size_t m = 0; m <= r.m_max_; ++m)
      for (std::size_t n = 0; n <= r.n_max_; ++n) r.at(m, n) = a.coeff(m, n) + b.coeff(m, n);
    return r;
  }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.m_max_, b.m_max_), std::min(a.n_max_, b.n_max_));
    for (std::size_t m1 = 0; m1 <= r.m_max_; ++m1)
      for (std::size_t n1 = 0; n1 <= r.n_max_; ++n1) {
        const BigRational& x = a.coeff(m1, n1);
        if (x == 0) continue;
        for (std::size_t m2 = 0; m1 + m2 <= r.m_max_; ++m2)
          for (std::size_t n2 = 0; n1 + n2 <= r.n_max_; ++n2) r.at(m1 + m2, n1 + n2) += x * b.coeff(m2, n2);
      }
    return r;
  }

 private:
  void check(std::size_t m, std::size_t n) const {
    if (m > m_max_ || n > n_max_) {
      throw UsageError("coefficient (" + std::to_string(m) + "," + std::to_string(n) +
                       ") outside truncation (" + std::to_string(m_max_) + "," + std::to_string(n_max_) + ")");
    }
  }

  std::size_t m_max_;
  std::size_t n_max_;
  std::vector<BigRational> coeffs_;
};

/// M(z_scale z, v_scale v) = sum_n e^{n^2 z_scale z / 2} (v_scale v)^n / n!, truncated.
inline BiSeries build_M(std::size_t m_max, std::size_t n_max, const BigRational& z_scale,
                        const BigRational& v_scale) {
  BiSeries s(m_max, n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    BigRational rate = z_scale * make_rational(static_cast<long>(n * n), 2);
    BigRational vpart = pow(v_scale, n) / BigRational(factorial(n));
    BigRational term = vpart;  // rate^a / a! * vpart
    for (std::size_t a = 0; a <= m_max; ++a) {
      s.at(a, n) = term;
      term = term * rate / static_cast<long>(a + 1);
    }
  }
  return s;
}

namespace detail {

inline void require_constant(const BiSeries& s, long expected, const char* op) {
  if (s.coeff(0, 0) != expected) {
    throw UsageError(std::string(op) + " needs constant term " + std::to_string(expected));
  }
}

}  // namespace detail

// The bivariate routines run the univariate recurrences in v, with z-series
// coefficients. The v^0 column is handled by the univariate routine.

inline BiSeries series_exp(const BiSeries& s) {
  detail::require_constant(s, 0, "series_exp");
  std::vector<UniSeries> S, F;
  for (std::size_t n = 0; n <= s.n_max(); ++n) S.push_back(s.v_coefficient(n));
  F.push_back(series_exp(S[0]));
  for (std::size_t n = 1; n <= s.n_max(); ++n) {
    UniSeries acc(s.m_max());
    for (std::size_t k = 1; k <= n; ++k) acc = acc + BigRational(static_cast<long>(k)) * (S[k] * F[n - k]);
    F.push_back(BigRational(1, static_cast<long>(n)) * acc);
  }
  BiSeries r(s.m_max(), s.n_max());
  for (std::size_t n = 0; n <= s.n_max(); ++n) r.set_v_coefficient(n, F[n]);
  return r;
}

inline BiSeries series_log(const BiSeries& s) {
  detail::require_constant(s, 1, "series_log");
  std::vector<UniSeries> S, L;
  for (std::size_t n = 0; n <= s.n_max(); ++n) S.push_back(s.v_coefficient(n));
  UniSeries inv0 = S[0].inverse();
  L.push_back(series_log(S[0]));
  for (std::size_t n = 1; n <= s.n_max(); ++n) {
    UniSeries acc = BigRational(static_cast<long>(n)) * S[n];
    for (std::size_t k = 1; k < n; ++k) acc = acc - BigRational(static_cast<long>(k)) * (L[k] * S[n - k]);
    L.push_back(BigRational(1, static_cast<long>(n)) * (acc * inv0));
  }
  BiSeries r(s.m_max(), s.n_max());
  for (std::size_t n = 0; n <= s.n_max(); ++n) r.set_v_coefficient(n, L[n]);
  return r;
}

inline BiSeries series_pow(const BiSeries& s, const BigRational& sigma) {
  detail::require_constant(s, 1, "series_pow");
  std::vector<UniSeries> S, F;
  for (std::size_t n = 0; n <= s.n_max(); ++n) S.push_back(s.v_coefficient(n));
  UniSeries inv0 = S[0].inverse();
  F.push_back(series_pow(S[0], sigma));
  for (std::size_t n = 1; n <= s.n_max(); ++n) {
    UniSeries acc(s.m_max());
    for (std::size_t k = 1; k <= n; ++k) {
      BigRational w = sigma * static_cast<long>(k) - static_cast<long>(n - k);
      if (w == 0) continue;
      acc = acc + w * (S[k] * F[n - k]);
    }
    F.push_back(BigRational(1, static_cast<long>(n)) * (acc * inv0));
  }
  BiSeries r(s.m_max(), s.n_max());
  for (std::size_t n = 0; n <= s.n_max(); ++n) r.set_v_coefficient(n, F[n]);
  return r;
}

}  // namespace twoxor
