#pragma once

// Exact arithmetic backbone: thin helpers over GMP's C++ classes.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twoxor {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", "p" or a signed integer string.
inline BigRational parse_rational(std::string_view text) {
  BigRational q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational: " + std::string(text));
  }
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const BigRational& q) { return q.get_str(10); }
inline std::string to_string(const BigInt& z) { return z.get_str(10); }

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

inline BigRational pow(const BigRational& base, unsigned long e) {
  BigRational r(pow(BigInt(base.get_num()), e), pow(BigInt(base.get_den()), e));
  r.canonicalize();
  return r;
}

/// Natural logarithm of a positive integer, valid far beyond double range.
inline double log_abs(const BigInt& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

/// Natural logarithm of |q|; -inf for zero.
inline double log_abs(const BigRational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(BigInt(q.get_num())) - log_abs(BigInt(q.get_den()));
}

/// Nearest double, computed through logs when the value leaves double range.
inline double to_double(const BigRational& q) {
  if (q == 0) return 0.0;
  double l = log_abs(q);
  if (std::fabs(l) < 700.0) return q.get_d();
  double mag = std::exp(l);
  return q < 0 ? -mag : mag;
}

inline int sign(const BigRational& q) { return sgn(q); }

/// Factorials 0!..n! memoised for repeated coefficient extraction.
class FactorialCache {
 public:
  const BigInt& operator()(std::size_t n) {
    while (table_.size() <= n) {
      if (table_.empty()) {
        table_.emplace_back(1);
      } else {
        table_.push_back(table_.back() * static_cast<unsigned long>(table_.size()));
      }
    }
    return table_[n];
  }

 private:
  std::vector<BigInt> table_;
};

}  // namespace twoxor
