#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace popgen {

struct MeanSe {
  double mean = 0;
  double se = 0;
  double variance = 0;
  uint64_t n = 0;
};

inline MeanSe mean_and_se(const std::vector<double>& xs) {
  MeanSe r;
  r.n = xs.size();
  if (r.n == 0) return r;
  double s = 0;
  for (double x : xs) s += x;
  r.mean = s / r.n;
  double q = 0;
  for (double x : xs) q += (x - r.mean) * (x - r.mean);
  r.variance = r.n > 1 ? q / (r.n - 1) : 0;
  r.se = std::sqrt(r.variance / r.n);
  return r;
}

struct ChiSquareResult {
  double statistic = 0;
  uint32_t df = 0;
  double p_value = 1;
};

inline double chi_square_sf(double x, double df) {
  // upper tail of the chi-square CDF
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

// goodness of fit of observed counts against a fixed discrete law; callers
// keep expected counts comfortably above ~5 per cell
inline ChiSquareResult chi_square_gof(const std::vector<uint64_t>& observed,
                                      const std::vector<double>& expected_prob) {
  if (observed.size() != expected_prob.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_gof needs matching cells (>= 2)");
  uint64_t total = 0;
  for (uint64_t o : observed) total += o;
  ChiSquareResult r;
  r.df = static_cast<uint32_t>(observed.size()) - 1;
  for (size_t i = 0; i < observed.size(); ++i) {
    double e = expected_prob[i] * static_cast<double>(total);
    if (e <= 0) throw std::invalid_argument("zero expected cell");
    double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.p_value = chi_square_sf(r.statistic, r.df);
  return r;
}

// two-sample homogeneity test over shared cells
inline ChiSquareResult chi_square_homogeneity(const std::vector<uint64_t>& a,
                                              const std::vector<uint64_t>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("chi_square_homogeneity needs matching cells (>= 2)");
  double na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  ChiSquareResult r;
  r.df = static_cast<uint32_t>(a.size()) - 1;
  for (size_t i = 0; i < a.size(); ++i) {
    double tot = static_cast<double>(a[i] + b[i]);
    if (tot == 0) continue;
    double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
    r.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
  }
  r.p_value = chi_square_sf(r.statistic, r.df);
  return r;
}

// Kolmogorov-Smirnov statistic against a continuous CDF
inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  size_t i = 0, j = 0;
  double d = 0;
  while (i < xs.size() && j < ys.size()) {
    double x = xs[i], y = ys[j];
    if (x <= y) ++i;
    if (y <= x) ++j;
    double fx = static_cast<double>(i) / xs.size();
    double fy = static_cast<double>(j) / ys.size();
    d = std::max(d, std::fabs(fx - fy));
  }
  return d;
}

// asymptotic KS critical value; c(0.01) = 1.62762, c(0.05) = 1.35810
inline double ks_critical_one_sample(double c_alpha, uint64_t n) {
  return c_alpha / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(double c_alpha, uint64_t m, uint64_t n) {
  return c_alpha * std::sqrt(static_cast<double>(m + n) /
                             (static_cast<double>(m) * static_cast<double>(n)));
}

}  // namespace popgen
