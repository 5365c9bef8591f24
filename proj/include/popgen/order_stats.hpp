#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gem.hpp"
#include "rng.hpp"

namespace popgen {

// The simplified joint density of the r largest population frequencies only
// holds where they provably dominate the unseen remainder; outside that
// region callers must fall back to Monte Carlo.
struct out_of_region_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Joint density of the r most frequent population fractions at the point
// x (decreasing), valid when x_1+...+x_{r-1}+2*x_r >= 1:
// theta^r (x_1...x_r)^{-1} (1-sum)^{theta-1}.
inline double top_density_simplified(const std::vector<double>& x, double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  if (x.empty()) throw std::invalid_argument("empty frequency vector");
  double sum = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) throw std::invalid_argument("frequencies must be positive");
    if (i > 0 && x[i] > x[i - 1]) throw std::invalid_argument("frequencies must be decreasing");
    sum += x[i];
  }
  if (sum > 1.0 + 1e-12) throw std::invalid_argument("frequencies exceed total mass");
  double partial = sum + x.back();  // x_1+...+x_{r-1}+2 x_r
  if (partial < 1.0)
    throw out_of_region_error("point outside the simplified-density region; use Monte Carlo");
  double dens = 1.0;
  for (double xi : x) dens *= theta / xi;
  double tail = std::max(1.0 - sum, 0.0);
  return dens * std::pow(tail, theta - 1.0);
}

// P(largest frequency > c) for c in [1/2, 1), where the one-dimensional
// simplified density theta x^{-1} (1-x)^{theta-1} applies. For theta < 1 the
// substitution u = (1-x)^theta removes the endpoint singularity; both
// integrands are smooth, and the requested absolute error is 1e-12.
inline double largest_tail_probability(double c, double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  if (!(c >= 0.5 && c < 1.0))
    throw out_of_region_error("tail threshold must lie in [1/2, 1)");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0;
  if (theta < 1.0) {
    double upper = std::pow(1.0 - c, theta);
    auto f = [theta](double u) { return 1.0 / (1.0 - std::pow(u, 1.0 / theta)); };
    return GK::integrate(f, 0.0, upper, 15, 1e-12, &err);
  }
  auto f = [theta](double x) { return theta / x * std::pow(1.0 - x, theta - 1.0); };
  return GK::integrate(f, c, 1.0, 15, 1e-12, &err);
}

inline double largest_exceeds_half_probability(double theta) {
  return largest_tail_probability(0.5, theta);
}

// 1 - (1-c)^theta, the conventional closed form for the probability that the
// population is effectively monomorphic at threshold c (c in (1/2, 1)). The
// exact tail integral is available as largest_tail_probability.
inline double monomorphism_probability(double threshold, double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  if (!(threshold > 0.5 && threshold < 1.0))
    throw out_of_region_error("monomorphism threshold must lie in (1/2, 1)");
  return 1.0 - std::pow(1.0 - threshold, theta);
}

struct MeanLargestBounds {
  double lower;  // (1/2)^theta
  double upper;  // 1 - theta(1-theta) log 2; informative only for theta in (0,1)
};

inline MeanLargestBounds mean_largest_bounds(double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  return {std::pow(0.5, theta), 1.0 - theta * (1.0 - theta) * std::log(2.0)};
}

// E(largest) ~ log(theta)/theta as theta grows
inline double mean_largest_asymptotic(double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  return std::log(theta) / theta;
}

struct OrderStatEstimate {
  double mean = 0;
  double std_error = 0;
  double sd = 0;
  uint64_t replicates = 0;
  uint64_t truncated = 0;  // replicates where the rank fell past the cutoff
};

// Monte Carlo mean of the rank-th largest population frequency. Each
// replicate draws a whole frequency vector (truncated at epsilon), sorts it
// by size, and reads off the rank-th entry; if the vector is shorter than
// rank the undistributed residual bounds the value and is used, flagged.
inline OrderStatEstimate estimate_mean_order_statistic(uint32_t rank, double theta,
                                                       uint64_t replicates, uint64_t seed,
                                                       double epsilon = 1e-12) {
  if (rank == 0) throw std::domain_error("rank starts at 1");
  if (replicates < 1000) throw std::invalid_argument("use at least 1000 replicates");
  OrderStatEstimate est;
  est.replicates = replicates;
  double sum = 0, sumsq = 0;
  std::vector<double> buf;
  for (uint64_t r = 0; r < replicates; ++r) {
    CounterRng rng(seed, r);
    StickWeights s = sample_gem(theta, epsilon, rng);
    double v;
    if (s.w.size() >= rank) {
      buf = s.w;
      std::nth_element(buf.begin(), buf.begin() + (rank - 1), buf.end(), std::greater<double>());
      v = buf[rank - 1];
    } else {
      v = s.residual;
      ++est.truncated;
    }
    sum += v;
    sumsq += v * v;
  }
  est.mean = sum / replicates;
  double var = (sumsq - sum * sum / replicates) / (replicates - 1);
  est.sd = std::sqrt(std::max(var, 0.0));
  est.std_error = est.sd / std::sqrt(static_cast<double>(replicates));
  return est;
}

}  // namespace popgen
