#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "esf.hpp"
#include "gem.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace popgen {

// Scaled mutation rate of the overlapping-generations birth-death population
// of 2N genes with per-birth mutation probability u.
inline Theta moran_theta(uint32_t N, const Rational& u) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  if (!(u > 0 && u < 1)) throw std::domain_error("mutation probability must lie in (0,1)");
  return Theta(Rational(2 * static_cast<int64_t>(N)) * u / (1 - u));
}

inline Theta moran_theta(uint32_t N, double u) {
  return moran_theta(N, Rational(u));  // binary value of u, exactly
}

// Birth-death population of constant size 2N: per event one uniformly chosen
// gene dies and one uniformly chosen gene reproduces; the offspring carries a
// fresh allelic label with probability u. By default the dying and
// reproducing genes are chosen independently (they may coincide);
// exclude_self makes the reproducer a uniform choice among the others.
class MoranModel {
 public:
  MoranModel(uint32_t N, double u, bool exclude_self = false)
      : u_(u), exclude_self_(exclude_self) {
    if (N == 0) throw std::domain_error("population parameter N must be >= 1");
    if (!(u >= 0 && u < 1)) throw std::domain_error("mutation probability must lie in [0,1)");
    genes_.resize(2 * static_cast<size_t>(N));
    for (size_t i = 0; i < genes_.size(); ++i) genes_[i] = i;
    next_label_ = genes_.size();
  }

  uint32_t size() const { return static_cast<uint32_t>(genes_.size()); }
  const std::vector<uint64_t>& genes() const { return genes_; }

  void step(CounterRng& rng) {
    uint64_t dying = rng.uniform_int(genes_.size());
    uint64_t parent;
    if (exclude_self_) {
      parent = rng.uniform_int(genes_.size() - 1);
      if (parent >= dying) ++parent;
    } else {
      parent = rng.uniform_int(genes_.size());
    }
    uint64_t label = rng.bernoulli(u_) ? next_label_++ : genes_[parent];
    genes_[dying] = label;
  }

  AllelicPartition partition() const { return AllelicPartition::from_labels(genes_); }

  // P(two genes drawn without replacement carry the same label), computed
  // from the current configuration.
  double pair_identity() const {
    AllelicPartition p = partition();
    double s = 0, m = static_cast<double>(genes_.size());
    for (uint32_t j = 2; j <= p.n(); ++j)
      s += p.count(j) * static_cast<double>(j) * (j - 1);
    return s / (m * (m - 1));
  }

 private:
  std::vector<uint64_t> genes_;
  double u_;
  bool exclude_self_;
  uint64_t next_label_;
};

// Stationary-regime partition samples: burn in, then record every `thin`
// steps. Defaults follow the (2N)^2 mixing scale.
inline std::vector<AllelicPartition> moran_stationary_samples(uint32_t N, double u,
                                                              uint64_t num_samples,
                                                              uint64_t seed,
                                                              uint64_t burnin = 0,
                                                              uint64_t thin = 0,
                                                              bool exclude_self = false) {
  MoranModel model(N, u, exclude_self);
  uint64_t two_n = model.size();
  if (burnin == 0) burnin = 20 * two_n * two_n;
  if (thin == 0) thin = two_n * two_n;
  CounterRng rng(seed, 0);
  for (uint64_t s = 0; s < burnin; ++s) model.step(rng);
  std::vector<AllelicPartition> out;
  out.reserve(num_samples);
  for (uint64_t i = 0; i < num_samples; ++i) {
    for (uint64_t s = 0; s < thin; ++s) model.step(rng);
    out.push_back(model.partition());
  }
  return out;
}

// Age-ordered allele counts of the whole population of 2N genes via the
// sequential stick-breaking representation: the oldest allele's count is
// N_1 = 1 + Binomial(2N-1, x_1) with x_1 of density theta(1-x)^(theta-1),
// and each later allele takes 1 + Binomial(remaining-1, x_i) of the genes
// left after its predecessors.
inline std::vector<uint32_t> hoppe_age_counts(uint32_t N, const Theta& theta, CounterRng& rng) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  uint32_t remaining = 2 * N;
  std::vector<uint32_t> counts;
  while (remaining > 0) {
    if (remaining == 1) {
      counts.push_back(1);
      break;
    }
    double x = rng.beta_one_theta(theta.value);
    uint32_t c = 1 + rng.binomial(remaining - 1, x);
    counts.push_back(c);
    remaining -= c;
  }
  return counts;
}

inline std::vector<uint32_t> hoppe_age_counts(uint32_t N, const Theta& theta, uint64_t seed) {
  CounterRng rng(seed, 0);
  return hoppe_age_counts(N, theta, rng);
}

// P(oldest allele occupies the whole population) = (2N-1)! / prod_{i=1}^{2N-1}(i+theta)
inline Rational hoppe_monomorphism_probability(uint32_t N, const Theta& theta) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  uint32_t two_n = 2 * N;
  Rational den = 1;
  for (uint32_t i = 1; i < two_n; ++i) den *= theta.exact + i;
  return Rational(factorial(two_n - 1)) / den;
}

// Number of population genes carrying the oldest allele:
// P(j) = (theta/2N) C(2N,j) / C(2N+theta-1,j), the population version of the
// sample-oldest law.
inline DiscreteDistribution kelly_population_oldest_distribution(uint32_t N, const Theta& theta) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  return oldest_sample_count_distribution(2 * N, theta);
}

// Mean age (in generations) of the oldest allele: sum_{j=1}^{2N} 4N/(j(j+theta-1)).
inline Rational mean_age_oldest_exact(uint32_t N, const Theta& theta) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  Rational s = 0;
  for (uint32_t j = 1; j <= 2 * N; ++j)
    s += Rational(4 * static_cast<int64_t>(N)) / (j * (theta.exact + j - 1));
  return s;
}

inline double mean_age_oldest(uint32_t N, const Theta& theta) {
  return to_double(mean_age_oldest_exact(N, theta));
}

// Mean age of an allele observed at population frequency p:
// sum_{j=1}^{2N} 4N/(j(j+theta-1)) (1-(1-p)^j); reduces to mean_age_oldest
// at p = 1.
inline double mean_age_given_frequency(uint32_t N, const Theta& theta, double p) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  if (!(p > 0 && p <= 1)) throw std::domain_error("frequency must lie in (0,1]");
  double s = 0, th = theta.value;
  for (uint32_t j = 1; j <= 2 * N; ++j)
    s += 4.0 * N / (j * (th + j - 1)) * (1.0 - std::pow(1.0 - p, static_cast<double>(j)));
  return s;
}

// Mean age of the oldest allele among a sample of n of the 2N genes:
// 4N sum_{j=1}^{n} 1/(j(j+theta-1)); equals mean_age_oldest at n = 2N.
inline Rational mean_age_oldest_in_sample_exact(uint32_t N, uint32_t n, const Theta& theta) {
  if (N == 0) throw std::domain_error("population parameter N must be >= 1");
  if (n < 1 || n > 2 * N) throw std::domain_error("sample size must lie in [1, 2N]");
  Rational s = 0;
  for (uint32_t j = 1; j <= n; ++j)
    s += Rational(4 * static_cast<int64_t>(N)) / (j * (theta.exact + j - 1));
  return s;
}

inline double mean_age_oldest_in_sample(uint32_t N, uint32_t n, const Theta& theta) {
  return to_double(mean_age_oldest_in_sample_exact(N, n, theta));
}

// Population of 2N integer charges evolving by non-overlapping generations:
// each offspring copies a uniformly chosen parent's charge and then, with
// probability u, shifts it by +1 or -1 with equal chance.
class ChargeStateModel {
 public:
  ChargeStateModel(uint32_t N, double u) : u_(u) {
    if (N == 0) throw std::domain_error("population parameter N must be >= 1");
    if (!(u >= 0 && u < 1)) throw std::domain_error("mutation probability must lie in [0,1)");
    charges_.assign(2 * static_cast<size_t>(N), 0);
  }

  uint32_t size() const { return static_cast<uint32_t>(charges_.size()); }
  const std::vector<int64_t>& charges() const { return charges_; }

  void step(CounterRng& rng) {
    std::vector<int64_t> next(charges_.size());
    for (size_t i = 0; i < next.size(); ++i) {
      int64_t c = charges_[rng.uniform_int(charges_.size())];
      if (rng.bernoulli(u_)) c += rng.bernoulli(0.5) ? 1 : -1;
      next[i] = c;
    }
    charges_ = std::move(next);
  }

  int64_t range() const {
    auto [mn, mx] = std::minmax_element(charges_.begin(), charges_.end());
    return *mx - *mn;
  }

  uint32_t occupied_states() const {
    std::set<int64_t> s(charges_.begin(), charges_.end());
    return static_cast<uint32_t>(s.size());
  }

  AllelicPartition partition() const { return AllelicPartition::from_labels(charges_); }

 private:
  std::vector<int64_t> charges_;
  double u_;
};

namespace detail {
// natural log of a positive big integer via its top bits
inline double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log of non-positive integer");
  unsigned bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 62) return std::log(x.convert_to<double>());
  unsigned shift = bits - 62;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * 0.6931471805599453094;
}
constexpr double kGamma3 = 3814279.1047602085;  // e^(e^e)
}  // namespace detail

// Largest k with g_k < 2N, where g_0 = 1 and g_{k+1} = e^{g_k}. Integer
// comparisons settle every case below e^(e^e); above that the input's
// logarithm is compared against g_3 (no representable input reaches g_5).
inline uint32_t kesten_lambda(const BigInt& two_n) {
  if (two_n < 1) throw std::domain_error("population size must be >= 1");
  if (two_n <= 2) return 0;        // g_1 = e >= 2N
  if (two_n < 16) return 1;        // g_2 = 15.154... >= 2N
  if (two_n < 3814280) return 2;   // g_3 = 3814279.104... >= 2N
  return detail::log_big(two_n) > detail::kGamma3 ? 4 : 3;
}

inline uint32_t kesten_lambda(uint64_t two_n) { return kesten_lambda(BigInt(two_n)); }

// Same quantity for 2N = 10^exponent, far beyond native integers:
// g_3 < 2N  iff  exponent * ln 10 > g_3.
inline uint32_t kesten_lambda_pow10(uint64_t exponent) {
  if (exponent == 0) return 0;   // 2N = 1
  if (exponent == 1) return 1;   // 2N = 10
  if (exponent <= 6) return 2;   // 10^6 < g_3 < 10^7
  return exponent * 2.302585092994045684 > detail::kGamma3 ? 4 : 3;
}

}  // namespace popgen
