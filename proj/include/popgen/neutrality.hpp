#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "partition.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace popgen {

// F = sum_j a_j (j/n)^2, the chance that two genes drawn with replacement
// are of the same type.
inline double sample_homozygosity(const AllelicPartition& p) {
  double n = p.n(), s = 0;
  for (uint32_t j = 1; j <= p.n(); ++j) {
    double fj = j / n;
    s += p.count(j) * fj * fj;
  }
  return s;
}

// n^2 F as an integer, so equal statistics compare exactly
inline uint64_t homozygosity_numerator(const AllelicPartition& p) {
  uint64_t s = 0;
  for (uint32_t j = 1; j <= p.n(); ++j)
    s += static_cast<uint64_t>(p.count(j)) * j * j;
  return s;
}

// theta with E(K_n) = sum_{i=1}^n theta/(theta+i-1) closest to k, found by
// bisection; the conditional law given K is the same for every theta, so
// this only tunes rejection efficiency.
inline double tuned_theta_for_k(uint32_t n, uint32_t k) {
  if (k < 1 || k > n) throw std::domain_error("type count must lie in [1, n]");
  auto expected = [n](double th) {
    double e = 0;
    for (uint32_t i = 1; i <= n; ++i) e += th / (th + i - 1);
    return e;
  };
  double lo = 1e-9, hi = 1e9;
  for (int it = 0; it < 200; ++it) {
    double mid = std::sqrt(lo * hi);  // bisect on the log scale
    (expected(mid) < k ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

// Sequential-urn sample of the allelic partition: the i-th gene founds a new
// type with probability theta/(theta+i-1) and otherwise joins an existing
// type with probability proportional to its current count.
inline AllelicPartition crp_sample(uint32_t n, double theta, CounterRng& rng) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  std::vector<uint32_t> type_counts;
  for (uint32_t i = 1; i <= n; ++i) {
    double u = rng.uniform01() * (theta + i - 1);
    if (u < theta) {
      type_counts.push_back(1);
    } else {
      double v = u - theta;
      double acc = 0;
      size_t pick = type_counts.size() - 1;
      for (size_t t = 0; t < type_counts.size(); ++t) {
        acc += type_counts[t];
        if (v < acc) {
          pick = t;
          break;
        }
      }
      ++type_counts[pick];
    }
  }
  return AllelicPartition::from_parts(type_counts);
}

// Exact sample from the conditional partition law given K = k (theta-free):
// rejection from the urn scheme until the type count hits k. forced_theta
// overrides the tuned proposal theta (efficiency only, law unchanged).
inline AllelicPartition conditional_null_sample(uint32_t n, uint32_t k, CounterRng& rng,
                                                double forced_theta = 0) {
  if (k < 1 || k > n) throw std::domain_error("type count must lie in [1, n]");
  if (k == 1) {
    std::vector<uint32_t> parts = {n};
    return AllelicPartition::from_parts(parts);
  }
  if (k == n) {
    std::vector<uint32_t> c(n, 0);
    c[0] = n;
    return AllelicPartition(std::move(c));
  }
  double theta = forced_theta > 0 ? forced_theta : tuned_theta_for_k(n, k);
  for (;;) {
    AllelicPartition p = crp_sample(n, theta, rng);
    if (p.k() == k) return p;
  }
}

struct NeutralityReport {
  double statistic_f = 0;  // observed homozygosity
  uint32_t n = 0;
  uint32_t k = 0;
  double p_lower = 0;  // fraction of null replicates with F <= observed
  double p_upper = 0;  // fraction of null replicates with F >= observed
  uint64_t replicates = 0;
  uint64_t seed = 0;
};

// Homozygosity test against the neutral null, conditional on the observed
// number of types. Ties count toward both tails, so p_lower + p_upper >= 1.
inline NeutralityReport neutrality_test(const AllelicPartition& observed, uint64_t replicates,
                                        uint64_t seed, double forced_theta = 0) {
  if (replicates < 10000) throw std::invalid_argument("use at least 10000 replicates");
  NeutralityReport rep;
  rep.n = observed.n();
  rep.k = observed.k();
  rep.replicates = replicates;
  rep.seed = seed;
  uint64_t h_obs = homozygosity_numerator(observed);
  rep.statistic_f = static_cast<double>(h_obs) / (static_cast<double>(rep.n) * rep.n);
  uint64_t lower = 0, upper = 0;
  for (uint64_t r = 0; r < replicates; ++r) {
    CounterRng rng(seed, r);
    uint64_t h = homozygosity_numerator(conditional_null_sample(rep.n, rep.k, rng, forced_theta));
    if (h <= h_obs) ++lower;
    if (h >= h_obs) ++upper;
  }
  rep.p_lower = static_cast<double>(lower) / replicates;
  rep.p_upper = static_cast<double>(upper) / replicates;
  return rep;
}

}  // namespace popgen
