#pragma once

// Exact probabilities over random 2-Xor expressions with m clauses on n variables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twoxor/bignum.hpp"
#include "twoxor/connected_table.hpp"
#include "twoxor/errors.hpp"
#include "twoxor/exp_polynomial.hpp"
#include "twoxor/partition.hpp"
#include "twoxor/series.hpp"

namespace twoxor {

/// Sum of compensation factors of connected multigraphs with n vertices and m edges.
inline BigRational connected_count(unsigned long m, unsigned long n) {
  return ConnectedTable::instance().connected_count(m, n);
}

/// Same quantity through the bivariate logarithm of M.
inline BigRational connected_count_series(unsigned long m, unsigned long n) {
  BiSeries c = series_log(build_M(m, n, 1, 1));
  return c.egf_coeff(m, n) / BigRational(factorial(m));
}

namespace detail {

/// forests[N][e]: labelled forests on N vertices with e edges, for N <= n_max, e <= e_max.
inline std::vector<std::vector<BigInt>> forest_table(std::size_t n_max, std::size_t e_max) {
  std::vector<BigInt> tree(e_max + 2);  // tree[s] = s^{s-2}
  for (std::size_t s = 1; s < tree.size(); ++s) tree[s] = s == 1 ? BigInt(1) : pow_ui(s, s - 2);
  std::vector<std::vector<BigInt>> f(n_max + 1, std::vector<BigInt>(e_max + 1));
  f[0][0] = 1;
  BigInt w;
  for (std::size_t N = 1; N <= n_max; ++N) {
    for (std::size_t e = 0; e <= e_max && e < N; ++e) {
      // tree through vertex N has s vertices
      BigInt& acc = f[N][e];
      for (std::size_t s = 1; s <= e + 1 && s <= N; ++s) {
        const BigInt& rest = f[N - s][e - (s - 1)];
        if (rest == 0) continue;
        mpz_bin_uiui(w.get_mpz_t(), N - 1, s - 1);
        w *= tree[s];
        mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), rest.get_mpz_t());
      }
    }
  }
  return f;
}

}  // namespace detail

/// n! [z^m v^n] M^sigma(z,v) = sum over multigraphs of kappa(G) sigma^{components}.
///
/// Splits each multigraph into its tree components and the rest (components with
/// at least as many edges as vertices). Trees are counted directly; the rest uses
/// the exact connected table, so the cost is polynomial in m and n.
inline BigRational weighted_count(unsigned long m, unsigned long n, const BigRational& sigma) {
  if (sigma <= 0) throw UsageError("weighted_count needs sigma > 0");
  const BigInt p = sigma.get_num();
  const BigInt q = sigma.get_den();
  const std::size_t kmax = std::min(m, n);

  // Complex part, scaled by q^k: cx[j][k] over sequences of j edges on k vertices.
  std::vector<std::vector<BigInt>> cx(m + 1, std::vector<BigInt>(kmax + 1));
  cx[0][0] = 1;
  std::vector<std::vector<BigInt>> conn(kmax + 1);  // conn[k'][j'] = p q^{k'-1} * connected sequences
  auto& table = ConnectedTable::instance();
  for (std::size_t k = 1; k <= kmax; ++k) {
    conn[k] = table.egf(k).sequence_counts(m);
    BigInt w = p * pow(q, k - 1);
    for (auto& x : conn[k]) x *= w;
  }
  std::vector<BigInt> bj(m + 1);
  BigInt acc, bk, t;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = 0; i <= j; ++i) mpz_bin_uiui(bj[i].get_mpz_t(), j, i);
    for (std::size_t k = 1; k <= std::min(j, kmax); ++k) {
      BigInt& out = cx[j][k];
      for (std::size_t k1 = 1; k1 <= k; ++k1) {
        acc = 0;
        // j1 edges in the component of the smallest vertex; the remainder needs j - j1 >= k - k1
        for (std::size_t j1 = k1; j1 + (k - k1) <= j; ++j1) {
          const BigInt& rest = cx[j - j1][k - k1];
          if (rest == 0) continue;
          t = bj[j1] * conn[k1][j1];
          mpz_addmul(acc.get_mpz_t(), t.get_mpz_t(), rest.get_mpz_t());
        }
        if (acc == 0) continue;
        mpz_bin_uiui(bk.get_mpz_t(), k - 1, k1 - 1);
        mpz_addmul(out.get_mpz_t(), bk.get_mpz_t(), acc.get_mpz_t());
      }
    }
  }

  // Forest part on N = n - k vertices with e = m - j edges, scaled by q^N:
  // 2^e e! p^{N-e} q^e forests(N, e).
  auto forests = detail::forest_table(n, m);
  BigInt total;
  for (std::size_t j = 0; j <= m; ++j) {
    const std::size_t e = m - j;
    for (std::size_t k = 0; k <= std::min(j, kmax); ++k) {
      if (cx[j][k] == 0) continue;
      const std::size_t N = n - k;
      if (e >= N && !(N == 0 && e == 0)) continue;
      const BigInt& fo = forests[N][e];
      if (fo == 0) continue;
      BigInt term = binomial(n, k) * binomial(m, j) * cx[j][k] * fo;
      term *= pow_ui(2, e) * factorial(e) * pow(p, N - e) * pow(q, e);
      total += term;
    }
  }
  return make_rational(total, pow_ui(2, m) * factorial(m) * pow(q, n));
}

/// weighted_count through the bivariate power of M (small sizes only).
inline BigRational weighted_count_series(unsigned long m, unsigned long n, const BigRational& sigma) {
  BiSeries s = series_pow(build_M(m, n, 1, 1), sigma);
  return s.coeff(m, n) * BigRational(factorial(n));
}

/// Probability that m uniform clauses on n variables are satisfiable.
inline BigRational prob_sat_exact(unsigned long m, unsigned long n) {
  if (n == 0) throw UsageError("prob_sat_exact needs n >= 1");
  BigRational w = weighted_count(m, n, make_rational(1, 2));
  return w * BigRational(factorial(m) * pow_ui(2, n)) / BigRational(pow_ui(n, 2 * m));
}

/// prob_sat_exact as the ratio [z^m v^n] sqrt(M(4z,2v)) / [z^m v^n] M(8z,v).
inline BigRational prob_sat_series(unsigned long m, unsigned long n) {
  if (n == 0) throw UsageError("prob_sat_series needs n >= 1");
  BiSeries num = series_pow(build_M(m, n, 4, 2), make_rational(1, 2));
  BiSeries den = build_M(m, n, 8, 1);
  return num.coeff(m, n) / den.coeff(m, n);
}

/// Probability that a uniform assignment satisfies a uniform satisfiable expression.
inline BigRational prob_input_satisfies_exact(unsigned long m, unsigned long n) {
  if (n == 0) throw UsageError("prob_input_satisfies_exact needs n >= 1");
  BigRational w = weighted_count(m, n, make_rational(1, 2));
  return make_rational(pow_ui(n, 2 * m), pow_ui(2, m) * factorial(m) * pow_ui(2, n)) / w;
}

struct ClassProbability {
  IntegerPartition partition;
  BigRational count_per_function;  // E_{m,n}(f)
  BigInt class_size;
  BigRational prob_per_function;
  BigRational prob_class;
};

inline constexpr std::size_t kDefaultTermCap = 4'000'000;

namespace detail {

/// Polynomial in e^{z/2} with integer coefficients and exponents offset + 2i.
struct HalfExpPoly {
  std::size_t offset = 0;
  std::vector<BigInt> coeffs;

  static HalfExpPoly unit() { return {0, {BigInt(1)}}; }

  static HalfExpPoly from_connected(const ConnectedEgf& c) { return {c.vertices, c.coeffs}; }

  friend HalfExpPoly operator*(const HalfExpPoly& a, const HalfExpPoly& b) {
    HalfExpPoly r{a.offset + b.offset, std::vector<BigInt>(a.coeffs.size() + b.coeffs.size() - 1)};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (a.coeffs[i] == 0) continue;
      for (std::size_t k = 0; k < b.coeffs.size(); ++k)
        mpz_addmul(r.coeffs[i + k].get_mpz_t(), a.coeffs[i].get_mpz_t(), b.coeffs[k].get_mpz_t());
    }
    return r;
  }

  HalfExpPoly pow(unsigned long e) const {
    HalfExpPoly result = unit();
    HalfExpPoly base = *this;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// 2^m m! [z^m] = sum c_i (offset + 2i)^m.
  BigInt scaled_egf_coeff(unsigned long m) const {
    BigInt acc;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) acc += coeffs[i] * pow_ui(offset + 2 * i, m);
    return acc;
  }
};

/// Rough multiplication count of the exponential-polynomial product.
inline double product_work(const IntegerPartition& part) {
  double len = 1.0, work = 0.0;
  for (auto [l, c] : part.counts()) {
    double f = static_cast<double>((l * l - l) / 2 + 1);
    for (std::size_t i = 0; i < c; ++i) {
      work += len * f;
      len += f - 1;
    }
  }
  return work;
}

inline ClassProbability assemble(const IntegerPartition& part, unsigned long m, const BigRational& prob) {
  ClassProbability out;
  out.partition = part;
  out.class_size = class_size(part);
  out.prob_per_function = prob;
  out.count_per_function = prob * BigRational(pow_ui(4 * part.size() * part.size(), m));
  out.prob_class = BigRational(out.class_size) * prob;
  return out;
}

}  // namespace detail

/// Pr(f) for one function of the class through the bivariate series:
/// m!/n^{2m} [z^m] prod_l (l! [v^l] log M(z,v))^{i_l}.
inline ClassProbability prob_function_series(const IntegerPartition& part, unsigned long m) {
  const std::size_t n = part.size();
  if (n == 0) throw UsageError("partition must be non-empty");
  const std::size_t lmax = part.counts().rbegin()->first;
  BiSeries c = series_log(build_M(m, lmax, 1, 1));
  UniSeries prod = UniSeries::constant(m, 1);
  for (auto [l, cnt] : part.counts()) {
    UniSeries phi = BigRational(factorial(l)) * c.v_coefficient(l);
    for (std::size_t i = 0; i < cnt; ++i) prod = prod * phi;
  }
  BigRational prob = prod[m] * BigRational(factorial(m)) / BigRational(pow_ui(n, 2 * m));
  return detail::assemble(part, m, prob);
}

/// Exact Pr(f) for every function f of the class indexed by the partition.
/// Uses products of exponential polynomials; falls back to the series path when
/// the product would exceed term_cap multiplications.
inline ClassProbability prob_function_exact(const IntegerPartition& part, unsigned long m,
                                            std::size_t term_cap = kDefaultTermCap) {
  const std::size_t n = part.size();
  if (n == 0) throw UsageError("partition must be non-empty");
  if (m < n - part.num_parts()) return detail::assemble(part, m, BigRational(0));
  if (detail::product_work(part) > static_cast<double>(term_cap)) return prob_function_series(part, m);

  auto& table = ConnectedTable::instance();
  detail::HalfExpPoly prod = detail::HalfExpPoly::unit();
  for (auto [l, cnt] : part.counts()) prod = prod * detail::HalfExpPoly::from_connected(table.egf(l)).pow(cnt);
  BigRational prob = make_rational(prod.scaled_egf_coeff(m), pow_ui(2, m) * pow_ui(n, 2 * m));
  return detail::assemble(part, m, prob);
}

/// Pr(f) for f made of n/g blocks of size g, g in {2, 3}, by the explicit finite sums.
inline BigRational prob_g_blocks_closed_form(unsigned g, unsigned long n, unsigned long m) {
  if (g != 2 && g != 3) throw UsageError("closed form exists for g = 2 or 3 only");
  if (n == 0 || n % g != 0) throw UsageError("g must divide n");
  const unsigned long b = n / g;
  // sums are over half-integer rates; work with doubled rates to stay integral
  BigInt acc;
  if (g == 2) {
    // (e^{2z} - e^{z})^{b}: rate l + n/2 for l = 0..b, sign (-1)^{b-l}
    for (unsigned long l = 0; l <= b; ++l) {
      BigInt term = binomial(b, l) * pow_ui(2 * l + n, m);
      if ((b - l) % 2) acc -= term;
      else acc += term;
    }
  } else {
    // (e^{9z/2} - 3e^{5z/2} + 2e^{3z/2})^{b}: rate n/2 + l + 2j
    for (unsigned long l = 0; l <= b; ++l) {
      for (unsigned long j = 0; j <= l; ++j) {
        BigInt term = binomial(b, l) * binomial(l, j) * pow_ui(n + 2 * l + 4 * j, m) * pow_ui(3, l - j) * pow_ui(2, b - l);
        if ((l - j) % 2) acc -= term;
        else acc += term;
      }
    }
  }
  return make_rational(acc, pow_ui(2, m) * pow_ui(n, 2 * m));
}

struct Distribution {
  std::size_t n = 0;
  unsigned long m = 0;
  std::vector<ClassProbability> classes;  // one per partition of n
  BigRational prob_false;
};

inline Distribution full_distribution(std::size_t n, unsigned long m) {
  if (n == 0) throw UsageError("full_distribution needs n >= 1");
  Distribution d;
  d.n = n;
  d.m = m;
  BigRational total;
  for (const auto& part : partitions_of(n)) {
    d.classes.push_back(prob_function_exact(part, m));
    total += d.classes.back().prob_class;
  }
  d.prob_false = BigRational(1) - total;
  return d;
}

}  // namespace twoxor
