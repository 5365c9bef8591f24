#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partition.hpp"
#include "rational.hpp"

namespace popgen {

// Below this sample size every closed-form quantity is computed in exact
// rational arithmetic; above it, log-space doubles (documented relative error
// around 1e-12 from lgamma).
constexpr uint32_t kExactThreshold = 100;

enum class Repr { ExactRational, LogSpace };

struct ExactProbability {
  Repr repr = Repr::ExactRational;
  Rational rational = 0;  // valid when repr == ExactRational
  double log_value = 0;   // natural log, valid when repr == LogSpace
  std::string formula_id;

  double value() const {
    return repr == Repr::ExactRational ? to_double(rational) : std::exp(log_value);
  }
};

// theta(theta+1)...(theta+n-1); the empty product is deliberately an error
// since every caller has n >= 1.
inline Rational rising_factorial(const Rational& theta, uint32_t n) {
  if (n == 0) throw std::domain_error("rising_factorial requires n >= 1");
  Rational acc = 1;
  for (uint32_t i = 0; i < n; ++i) acc *= theta + i;
  return acc;
}

inline double log_rising_factorial(double theta, uint32_t n) {
  if (n == 0) throw std::domain_error("rising_factorial requires n >= 1");
  return std::lgamma(theta + n) - std::lgamma(theta);
}

// Sampling distribution of the allelic partition of n genes under neutral
// infinitely-many-alleles sampling with scaled mutation rate theta.
inline ExactProbability esf_probability(const AllelicPartition& p, const Theta& theta) {
  uint32_t n = p.n(), k = p.k();
  ExactProbability out;
  out.formula_id = "esf";
  if (n <= kExactThreshold) {
    Rational num = Rational(factorial(n)) * rational_pow(theta.exact, k);
    Rational den = rising_factorial(theta.exact, n);
    for (uint32_t j = 1; j <= n; ++j) {
      uint32_t a = p.count(j);
      if (!a) continue;
      den *= Rational(int_pow(j, a) * factorial(a));
    }
    out.repr = Repr::ExactRational;
    out.rational = num / den;
  } else {
    double lp = std::lgamma(n + 1.0) + k * std::log(theta.value) -
                log_rising_factorial(theta.value, n);
    for (uint32_t j = 1; j <= n; ++j) {
      uint32_t a = p.count(j);
      if (!a) continue;
      lp -= a * std::log(static_cast<double>(j)) + std::lgamma(a + 1.0);
    }
    out.repr = Repr::LogSpace;
    out.log_value = lp;
  }
  return out;
}

// unsigned Stirling numbers of the first kind, row n: |S_n^k| for k = 0..n
inline std::vector<BigInt> stirling_first_row(uint32_t n) {
  std::vector<BigInt> row = {1};  // n = 0
  for (uint32_t m = 1; m <= n; ++m) {
    std::vector<BigInt> next(m + 1, 0);
    for (uint32_t k = 1; k <= m; ++k) {
      next[k] = row[k - 1];
      if (k < m) next[k] += (m - 1) * row[k];
    }
    row = std::move(next);
  }
  return row;
}

// Discrete law with support j_min..j_min+size-1. `exact` is populated in
// rational mode and mirrors `prob`.
struct DiscreteDistribution {
  int32_t j_min = 0;
  std::vector<double> prob;
  std::vector<Rational> exact;

  bool has_exact() const { return !exact.empty(); }
  uint32_t size() const { return static_cast<uint32_t>(prob.size()); }
  double p(int32_t j) const {
    int64_t i = static_cast<int64_t>(j) - j_min;
    return (i >= 0 && i < static_cast<int64_t>(prob.size())) ? prob[i] : 0.0;
  }
  double total() const {
    double s = 0;
    for (double v : prob) s += v;
    return s;
  }
  double mean() const {
    double s = 0;
    for (size_t i = 0; i < prob.size(); ++i) s += (j_min + static_cast<double>(i)) * prob[i];
    return s;
  }
  Rational exact_mean() const {
    Rational s = 0;
    for (size_t i = 0; i < exact.size(); ++i)
      s += Rational(j_min + static_cast<int64_t>(i)) * exact[i];
    return s;
  }
};

// P(K = k) = |S_n^k| theta^k / rising_factorial(theta, n), k = 1..n
inline DiscreteDistribution k_distribution(uint32_t n, const Theta& theta) {
  if (n == 0) throw std::domain_error("k_distribution requires n >= 1");
  DiscreteDistribution d;
  d.j_min = 1;
  if (n <= kExactThreshold) {
    auto stirling = stirling_first_row(n);
    Rational denom = rising_factorial(theta.exact, n);
    d.exact.resize(n);
    d.prob.resize(n);
    for (uint32_t k = 1; k <= n; ++k) {
      d.exact[k - 1] = Rational(stirling[k]) * rational_pow(theta.exact, k) / denom;
      d.prob[k - 1] = to_double(d.exact[k - 1]);
    }
  } else {
    // log-space Stirling row via the same triangular recurrence
    std::vector<double> row = {0.0};  // log |S_0^0|
    auto logadd = [](double a, double b) {
      if (a == -INFINITY) return b;
      if (b == -INFINITY) return a;
      double hi = std::max(a, b), lo = std::min(a, b);
      return hi + std::log1p(std::exp(lo - hi));
    };
    for (uint32_t m = 1; m <= n; ++m) {
      std::vector<double> next(m + 1, -INFINITY);
      for (uint32_t k = 1; k <= m; ++k) {
        next[k] = row[k - 1];
        if (k < m) next[k] = logadd(next[k], std::log(m - 1.0) + row[k]);
      }
      row = std::move(next);
    }
    double ldenom = log_rising_factorial(theta.value, n);
    double lth = std::log(theta.value);
    d.prob.resize(n);
    for (uint32_t k = 1; k <= n; ++k) d.prob[k - 1] = std::exp(row[k] + k * lth - ldenom);
  }
  return d;
}

// K is sufficient for theta: the partition law given K does not involve theta.
// Computed at two reference values and cross-checked.
inline ExactProbability conditional_partition_given_k(const AllelicPartition& p, uint32_t k) {
  if (p.k() != k) throw std::invalid_argument("partition has different number of types than k");
  uint32_t n = p.n();
  ExactProbability out;
  out.formula_id = "esf-conditional-k";
  if (n <= kExactThreshold) {
    auto cond_at = [&](const Theta& th) {
      Rational pk = k_distribution(n, th).exact[k - 1];
      return esf_probability(p, th).rational / pk;
    };
    Rational a = cond_at(Theta(Rational(1)));
    Rational b = cond_at(Theta(Rational(2)));
    if (a != b) throw std::logic_error("conditional law depended on theta");
    out.repr = Repr::ExactRational;
    out.rational = a;
  } else {
    Theta one(Rational(1));
    double lpk = std::log(k_distribution(n, one).prob[k - 1]);
    out.repr = Repr::LogSpace;
    out.log_value = esf_probability(p, one).log_value - lpk;
  }
  return out;
}

inline Rational expected_k_exact(uint32_t n, const Theta& theta) {
  return k_distribution(n, theta).exact_mean();
}

inline double expected_k(uint32_t n, const Theta& theta) {
  if (n <= kExactThreshold) return to_double(expected_k_exact(n, theta));
  double s = 0;
  for (uint32_t i = 1; i <= n; ++i) s += theta.value / (theta.value + i - 1);
  return s;
}

// E(K) = sum_i theta/(theta+i-1); used by the conditional-null tuner and as a
// cross-check on the Stirling route.
inline double expected_k_harmonic(uint32_t n, double theta) {
  double s = 0;
  for (uint32_t i = 1; i <= n; ++i) s += theta / (theta + i - 1);
  return s;
}

// whole sampling distribution over partitions of n, colexicographic order
inline std::vector<std::pair<AllelicPartition, Rational>> esf_distribution(uint32_t n,
                                                                           const Theta& theta) {
  std::vector<std::pair<AllelicPartition, Rational>> out;
  for (auto& p : all_partitions(n)) {
    Rational pr = esf_probability(p, theta).rational;
    out.emplace_back(p, pr);
  }
  return out;
}

inline std::map<std::vector<uint32_t>, Rational> esf_distribution_map(uint32_t n,
                                                                      const Theta& theta) {
  std::map<std::vector<uint32_t>, Rational> m;
  for (auto& [p, pr] : esf_distribution(n, theta)) m[p.counts()] = pr;
  return m;
}

struct CheckResult {
  bool pass = false;
  double max_residual = 0;
};

namespace detail {
inline double abs_to_double(const Rational& r) { return std::fabs(to_double(r)); }
inline double abs_to_double(double r) { return std::fabs(r); }
}  // namespace detail

// Verifies the sampling-consistency recursion linking the partition law of n
// genes to the law of n+1: removing a random gene from an (n+1)-sample must
// reproduce the n-sample law. Distributions are passed explicitly so that
// non-consistent families fail.
template <typename T>
inline CheckResult check_consistency_recursion(const std::map<std::vector<uint32_t>, T>& dist_n,
                                               const std::map<std::vector<uint32_t>, T>& dist_n1) {
  if (dist_n.empty() || dist_n1.empty()) throw std::invalid_argument("empty distribution");
  uint32_t n = static_cast<uint32_t>(dist_n.begin()->first.size());
  auto check_norm = [](const std::map<std::vector<uint32_t>, T>& d) {
    double tot = 0;
    for (auto& [c, p] : d) tot += static_cast<double>(p);
    if (std::fabs(tot - 1.0) > 1e-12) throw std::invalid_argument("distribution not normalized");
  };
  check_norm(dist_n);
  check_norm(dist_n1);

  auto lookup = [&](const std::vector<uint32_t>& c) -> T {
    auto it = dist_n1.find(c);
    return it == dist_n1.end() ? T(0) : it->second;
  };

  CheckResult res;
  for (auto& [a, pa] : dist_n) {
    if (a.size() != n) throw std::invalid_argument("mixed sample sizes in distribution");
    std::vector<uint32_t> base(a);
    base.resize(n + 1, 0);
    // a gene of a singleton type was removed
    std::vector<uint32_t> b = base;
    b[0] += 1;
    T rhs = T(b[0]) / T(n + 1) * lookup(b);
    // a gene of a type seen j times in the larger sample was removed
    for (uint32_t j = 2; j <= n + 1; ++j) {
      if (base[j - 2] == 0) continue;  // needs a_{j-1} >= 1
      b = base;
      b[j - 2] -= 1;
      b[j - 1] += 1;
      rhs += T(j) * T(b[j - 1]) / T(n + 1) * lookup(b);
    }
    T residual = pa - rhs;
    res.max_residual = std::max(res.max_residual, detail::abs_to_double(residual));
  }
  res.pass = res.max_residual <= 1e-10;
  return res;
}

// Non-interference: delete the whole allelic class of a randomly chosen gene;
// conditional on the class having size r, the remaining n-r genes must again
// follow the n-r law with the same theta. Exact over all r < n.
inline CheckResult check_noninterference(uint32_t n, const Theta& theta) {
  if (n < 2) throw std::invalid_argument("check_noninterference requires n >= 2");
  auto dist_n = esf_distribution(n, theta);
  CheckResult res;
  for (uint32_t r = 1; r < n; ++r) {
    std::map<std::vector<uint32_t>, Rational> joint;  // residual partition -> P(. and size r)
    Rational p_size_r = 0;
    for (auto& [a, pa] : dist_n) {
      uint32_t ar = a.count(r);
      if (!ar) continue;
      Rational w = pa * Rational(static_cast<int64_t>(r) * ar, n);
      p_size_r += w;
      std::vector<uint32_t> b(a.counts());
      b[r - 1] -= 1;
      b.resize(n - r, 0);
      joint[b] += w;
    }
    auto ref = esf_distribution_map(n - r, theta);
    Rational tv = 0;
    for (auto& [b, pref] : ref) {
      auto it = joint.find(b);
      Rational q = it == joint.end() ? Rational(0) : it->second / p_size_r;
      Rational diff = q - pref;
      tv += diff < 0 ? -diff : diff;
    }
    tv /= 2;
    res.max_residual = std::max(res.max_residual, to_double(tv));
  }
  res.pass = res.max_residual <= 1e-10;
  return res;
}

}  // namespace popgen
