#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "esf.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace popgen {

// Age-ordered residual-fraction representation: w_j = x_j * prod_{i<j}(1-x_i)
// with x_i iid of density theta*(1-x)^(theta-1). w_1 is the frequency of the
// oldest type, w_2 the next oldest, and so on.
struct StickWeights {
  std::vector<double> w;
  double residual = 0;
};

inline StickWeights sample_gem(double theta, double epsilon, CounterRng& rng) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  if (!(epsilon > 0 && epsilon <= 1e-6))
    throw std::invalid_argument("truncation epsilon must be in (0, 1e-6]");
  StickWeights s;
  double rem = 1.0;
  while (rem >= epsilon) {
    double x = rng.beta_one_theta(theta);
    s.w.push_back(x * rem);
    rem *= 1.0 - x;
  }
  s.residual = rem;
  return s;
}

inline StickWeights sample_gem(double theta, double epsilon, uint64_t seed) {
  CounterRng rng(seed, 0);
  return sample_gem(theta, epsilon, rng);
}

// E(w_j) = (1/(1+theta)) * (theta/(1+theta))^(j-1)
inline Rational mean_jth_oldest(uint32_t j, const Theta& theta) {
  if (j == 0) throw std::domain_error("age rank starts at 1");
  return Rational(1) / (1 + theta.exact) *
         rational_pow(theta.exact / (1 + theta.exact), j - 1);
}

namespace detail {
// C(n+theta-1, j) with real upper argument
inline Rational generalized_binomial_exact(const Rational& top, uint32_t j) {
  Rational acc = 1;
  for (uint32_t i = 0; i < j; ++i) acc *= top - i;
  return acc / Rational(factorial(j));
}
inline double log_generalized_binomial(double top, uint32_t j) {
  return std::lgamma(top + 1.0) - std::lgamma(j + 1.0) - std::lgamma(top - j + 1.0);
}
}  // namespace detail

// Number of representatives of the oldest type present in a sample of n:
// P(j) = (theta/n) C(n,j) / C(n+theta-1,j), j = 1..n.
inline DiscreteDistribution oldest_sample_count_distribution(uint32_t n, const Theta& theta) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  DiscreteDistribution d;
  d.j_min = 1;
  if (n <= kExactThreshold) {
    d.exact.resize(n);
    d.prob.resize(n);
    for (uint32_t j = 1; j <= n; ++j) {
      d.exact[j - 1] = theta.exact / n * Rational(binomial(n, j)) /
                       detail::generalized_binomial_exact(theta.exact + n - 1, j);
      d.prob[j - 1] = to_double(d.exact[j - 1]);
    }
  } else {
    d.prob.resize(n);
    double lbase = std::log(theta.value) - std::log(static_cast<double>(n));
    for (uint32_t j = 1; j <= n; ++j) {
      double lc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
      d.prob[j - 1] =
          std::exp(lbase + lc - detail::log_generalized_binomial(theta.value + n - 1, j));
    }
  }
  return d;
}

// Number of representatives in the sample of the population's oldest type,
// including j = 0 (oldest type absent): P(j) = (theta/(n+theta)) C(n,j) /
// C(n+theta-1,j).
inline DiscreteDistribution population_oldest_in_sample_distribution(uint32_t n,
                                                                     const Theta& theta) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  DiscreteDistribution d;
  d.j_min = 0;
  if (n <= kExactThreshold) {
    d.exact.resize(n + 1);
    d.prob.resize(n + 1);
    for (uint32_t j = 0; j <= n; ++j) {
      d.exact[j] = theta.exact / (theta.exact + n) * Rational(binomial(n, j)) /
                   detail::generalized_binomial_exact(theta.exact + n - 1, j);
      d.prob[j] = to_double(d.exact[j]);
    }
  } else {
    d.prob.resize(n + 1);
    double lbase = std::log(theta.value) - std::log(n + theta.value);
    for (uint32_t j = 0; j <= n; ++j) {
      double lc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
      d.prob[j] = std::exp(lbase + lc - detail::log_generalized_binomial(theta.value + n - 1, j));
    }
  }
  return d;
}

// conditioning the population-oldest law on presence in the sample recovers
// the sample-oldest law
inline DiscreteDistribution condition_on_presence(const DiscreteDistribution& pop) {
  if (pop.j_min != 0) throw std::invalid_argument("expected a law with a j=0 cell");
  DiscreteDistribution d;
  d.j_min = 1;
  if (pop.has_exact()) {
    Rational present = 1 - pop.exact[0];
    d.exact.assign(pop.exact.begin() + 1, pop.exact.end());
    d.prob.resize(d.exact.size());
    for (size_t i = 0; i < d.exact.size(); ++i) {
      d.exact[i] /= present;
      d.prob[i] = to_double(d.exact[i]);
    }
  } else {
    double present = 1 - pop.prob[0];
    d.prob.assign(pop.prob.begin() + 1, pop.prob.end());
    for (double& p : d.prob) p /= present;
  }
  return d;
}

// Probability of observing the age-ordered type counts (n_1, ..., n_k),
// oldest first: theta^k (n-1)! / (S_n(theta) * prod_{m=2..k} (n_m+...+n_k)).
inline ExactProbability age_ordered_sample_probability(const std::vector<uint32_t>& age_counts,
                                                       const Theta& theta) {
  if (age_counts.empty()) throw std::invalid_argument("empty age-ordered counts");
  uint64_t n = 0;
  for (uint32_t c : age_counts) {
    if (c == 0) throw std::invalid_argument("zero count in age-ordered counts");
    n += c;
  }
  uint32_t k = static_cast<uint32_t>(age_counts.size());
  ExactProbability out;
  out.formula_id = "age-ordered";
  if (n <= kExactThreshold) {
    Rational den = rising_factorial(theta.exact, static_cast<uint32_t>(n));
    uint64_t suffix = 0;
    for (uint32_t m = k; m >= 2; --m) {
      suffix += age_counts[m - 1];
      den *= suffix;
    }
    out.repr = Repr::ExactRational;
    out.rational =
        rational_pow(theta.exact, k) * Rational(factorial(static_cast<uint32_t>(n) - 1)) / den;
  } else {
    double lden = log_rising_factorial(theta.value, static_cast<uint32_t>(n));
    uint64_t suffix = 0;
    for (uint32_t m = k; m >= 2; --m) {
      suffix += age_counts[m - 1];
      lden += std::log(static_cast<double>(suffix));
    }
    out.repr = Repr::LogSpace;
    out.log_value = k * std::log(theta.value) + std::lgamma(static_cast<double>(n)) - lden;
  }
  return out;
}

struct SameTypeProbabilities {
  Rational as_oldest;   // sample monomorphic for the population's oldest type
  Rational any_type;    // sample monomorphic for some type
  Rational ratio;       // n/(n+theta)
};

inline SameTypeProbabilities all_same_type_probabilities(uint32_t n, const Theta& theta) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  SameTypeProbabilities s;
  Rational den_old = 1, den_any = 1;
  for (uint32_t i = 1; i <= n; ++i) den_old *= theta.exact + i;
  for (uint32_t i = 1; i < n; ++i) den_any *= theta.exact + i;
  s.as_oldest = Rational(factorial(n)) / den_old;
  s.any_type = Rational(factorial(n - 1)) / den_any;
  s.ratio = Rational(n) / (theta.exact + n);
  return s;
}

// Resamples the sequence in size-biased order: each position is drawn with
// probability proportional to its frequency among those not yet drawn.
inline std::vector<double> size_biased_permutation(const std::vector<double>& freqs,
                                                   CounterRng& rng) {
  double total = 0;
  for (double f : freqs) {
    if (!(f > 0)) throw std::invalid_argument("frequencies must be positive");
    total += f;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("frequencies must sum to 1");
  std::vector<double> pool(freqs), out;
  out.reserve(pool.size());
  double rem = total;
  while (!pool.empty()) {
    double u = rng.uniform01() * rem;
    size_t pick = pool.size() - 1;
    double acc = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
      acc += pool[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    out.push_back(pool[pick]);
    rem -= pool[pick];
    pool[pick] = pool.back();
    pool.pop_back();
  }
  return out;
}

inline std::vector<double> size_biased_permutation(const std::vector<double>& freqs,
                                                   uint64_t seed) {
  CounterRng rng(seed, 0);
  return size_biased_permutation(freqs, rng);
}

}  // namespace popgen
