#pragma once

// Connected multigraph generating functions c_k(z) = k! [v^k] log M(z,v), exact.
//
// Every c_k is a finite integer combination of e^{s z / 2} where s runs over
// k, k+2, ..., k^2 (sums of squared block sizes of a set partition of [k]).
// The table is built with the logarithmic-derivative recurrence
//
//   c_n(z) = e^{n^2 z/2} - sum_{k=1}^{n-1} C(n-1, k-1) c_k(z) e^{(n-k)^2 z/2},
//
// where multiplying by a single exponential is a shift of s. This path is
// independent of block_egf(), which expands powers of Mhat instead.

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/exp_polynomial.hpp"

namespace twoxor {

/// Integer coefficients of c_k, indexed by (s - k) / 2.
struct ConnectedEgf {
  std::size_t vertices = 0;
  std::vector<BigInt> coeffs;

  unsigned long s_of(std::size_t index) const { return static_cast<unsigned long>(vertices + 2 * index); }

  ExpPolynomial to_exppoly() const {
    std::vector<ExpTerm> t;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) t.push_back({BigRational(coeffs[i]), make_rational(static_cast<long>(s_of(i)), 2)});
    return ExpPolynomial(t);
  }

  /// 2^j j! [z^j] c_k(z) = sum_i coeff_i s_i^j: the number of vertex sequences of
  /// length 2j whose multigraph on [k] is connected.
  BigInt sequence_count(unsigned long edges) const {
    BigInt acc;
    BigInt term;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      term = pow_ui(s_of(i), edges);
      acc += coeffs[i] * term;
    }
    return acc;
  }

  /// sequence_count(j) for every j in [0, max_edges].
  std::vector<BigInt> sequence_counts(unsigned long max_edges) const {
    std::vector<BigInt> out(max_edges + 1);
    std::vector<BigInt> run(coeffs);
    for (unsigned long j = 0; j <= max_edges; ++j) {
      BigInt acc;
      for (std::size_t i = 0; i < run.size(); ++i) {
        if (run[i] == 0) continue;
        acc += run[i];
        run[i] *= s_of(i);
      }
      out[j] = acc;
    }
    return out;
  }
};

class ConnectedTable {
 public:
  /// Shared process-wide table, grown on demand.
  static ConnectedTable& instance() {
    static ConnectedTable table;
    return table;
  }

  /// c_k for k >= 1. The reference stays valid for the program lifetime.
  const ConnectedEgf& egf(std::size_t k) {
    std::lock_guard lock(mu_);
    grow(k);
    return *table_[k];
  }

  /// Sum of compensation factors of connected multigraphs with n vertices, m edges.
  BigRational connected_count(unsigned long m, std::size_t n) {
    if (n == 0) return 0;
    BigInt seq = egf(n).sequence_count(m);
    return make_rational(seq, pow_ui(2, m) * factorial(m));
  }

 private:
  ConnectedTable() { table_.emplace_back(std::make_unique<ConnectedEgf>()); }

  void grow(std::size_t k) {
    while (table_.size() <= k) {
      const std::size_t n = table_.size();
      auto next = std::make_unique<ConnectedEgf>();
      next->vertices = n;
      next->coeffs.assign((n * n - n) / 2 + 1, BigInt(0));
      next->coeffs.back() = 1;  // e^{n^2 z / 2}
      BigInt w;
      for (std::size_t k2 = 1; k2 < n; ++k2) {
        const std::size_t rest = n - k2;
        const std::size_t shift = (rest * rest - rest) / 2;
        mpz_bin_uiui(w.get_mpz_t(), n - 1, k2 - 1);
        const auto& src = table_[k2]->coeffs;
        for (std::size_t i = 0; i < src.size(); ++i) {
          if (src[i] == 0) continue;
          mpz_submul(next->coeffs[i + shift].get_mpz_t(), w.get_mpz_t(), src[i].get_mpz_t());
        }
      }
      table_.push_back(std::move(next));
    }
  }

  std::mutex mu_;
  std::vector<std::unique_ptr<ConnectedEgf>> table_;
};

}  // namespace twoxor
