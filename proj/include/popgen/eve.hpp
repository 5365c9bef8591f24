#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "esf.hpp"
#include "rational.hpp"

namespace popgen {

// Distribution q_n(j) of the number of sample genes carrying the allelic
// type of the sample's most recent common ancestor. Solved from the
// triangular recurrence
//   [n(n-1)+j theta] q_n(j) = n(j-1) q_{n-1}(j-1) + n(n-j-1) q_{n-1}(j)
//                             + (j+1) theta q_n(j+1)
// with q_1(1) = 1 and q_n(n) = prod_{k=2..n} (k-1)/(k+theta-1), descending in
// j so every right-hand term is already known.
inline DiscreteDistribution solve_eve_recurrence(uint32_t n, const Theta& theta) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  DiscreteDistribution d;
  d.j_min = 0;
  if (n <= kExactThreshold) {
    std::vector<std::vector<Rational>> q(n + 1);
    q[1] = {Rational(0), Rational(1)};
    for (uint32_t m = 2; m <= n; ++m) {
      q[m].assign(m + 1, Rational(0));
      q[m][m] = q[m - 1][m - 1] * (m - 1) / (theta.exact + m - 1);
      for (int32_t j = static_cast<int32_t>(m) - 1; j >= 0; --j) {
        Rational rhs = 0;
        if (j >= 1) rhs += Rational(static_cast<int64_t>(m) * (j - 1)) * q[m - 1][j - 1];
        rhs += Rational(static_cast<int64_t>(m) * (m - j - 1)) * q[m - 1][j];
        rhs += Rational(j + 1) * theta.exact * q[m][j + 1];
        q[m][j] = rhs / (Rational(static_cast<int64_t>(m) * (m - 1)) + j * theta.exact);
      }
    }
    d.exact = std::move(q[n]);
    d.prob.resize(d.exact.size());
    for (size_t i = 0; i < d.exact.size(); ++i) d.prob[i] = to_double(d.exact[i]);
  } else {
    double th = theta.value;
    std::vector<std::vector<double>> q(n + 1);
    q[1] = {0.0, 1.0};
    for (uint32_t m = 2; m <= n; ++m) {
      q[m].assign(m + 1, 0.0);
      q[m][m] = q[m - 1][m - 1] * (m - 1) / (th + m - 1);
      for (int32_t j = static_cast<int32_t>(m) - 1; j >= 0; --j) {
        double rhs = 0;
        if (j >= 1) rhs += static_cast<double>(m) * (j - 1) * q[m - 1][j - 1];
        rhs += static_cast<double>(m) * (m - j - 1) * q[m - 1][j];
        rhs += (j + 1) * th * q[m][j + 1];
        q[m][j] = rhs / (static_cast<double>(m) * (m - 1) + j * th);
      }
    }
    d.prob = std::move(q[n]);
  }
  return d;
}

// E(Y_n) = n prod_{j=2..n} j(j-1)/(j(j-1)+theta)
inline Rational expected_eve_count(uint32_t n, const Theta& theta) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  Rational e = n;
  for (uint32_t j = 2; j <= n; ++j) {
    Rational jj = Rational(static_cast<int64_t>(j) * (j - 1));
    e *= jj / (jj + theta.exact);
  }
  return e;
}

struct ExtinctionBounds {
  double lower;  // theta^2/((2+theta)(1+theta)); q_2(0) attains it
  double upper;  // (theta e^theta - theta)/(theta e^theta + 1)
};

// Bounds on the large-n probability that the ancestral type has died out of
// the sample.
inline ExtinctionBounds eve_extinction_bounds(double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  double et = theta * std::exp(theta);
  return {theta * theta / ((2 + theta) * (1 + theta)), (et - theta) / (et + 1)};
}

}  // namespace popgen
