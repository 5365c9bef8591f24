#include <catch_amalgamated.hpp>

#include <popgen/order_stats.hpp>
#include <popgen/stats.hpp>

#include <cmath>
#include <vector>

using popgen::CounterRng;

namespace {

// closed-form tail integrals of theta x^{-1} (1-x)^{theta-1} over [c,1]
double closed_tail(double c, double theta) {
  if (theta == 1.0) return -std::log(c);
  if (theta == 2.0) return -2.0 * std::log(c) - 2.0 * (1.0 - c);
  if (theta == 0.5) {
    double s = std::sqrt(1.0 - c);
    return 0.5 * std::log((1.0 + s) / (1.0 - s));
  }
  throw std::logic_error("no closed form");
}

// composite Simpson oracle on [c, 1] for theta > 1 (integrand vanishes at 1)
double simpson_tail(double c, double theta, int panels) {
  auto f = [theta](double x) { return theta / x * std::pow(1.0 - x, theta - 1.0); };
  double h = (1.0 - c) / (2 * panels), acc = f(c) + f(1.0);
  for (int i = 1; i < 2 * panels; ++i) acc += f(c + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("simplified joint density of the top frequencies", "[orderstats]") {
  std::vector<double> x1 = {0.5};
  CHECK(popgen::top_density_simplified(x1, 2.0) == Catch::Approx(2.0).epsilon(1e-12));
  std::vector<double> x2 = {0.55, 0.35};
  CHECK(popgen::top_density_simplified(x2, 1.0) == Catch::Approx(1.0 / 0.1925).epsilon(1e-12));
  // theta^r (x1 x2)^{-1} (1-sum)^{theta-1} at a generic admissible point
  std::vector<double> x3 = {0.5, 0.3};
  double theta = 0.75;
  double expect = theta * theta / (0.5 * 0.3) * std::pow(0.2, theta - 1.0);
  CHECK(popgen::top_density_simplified(x3, theta) == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("simplified density region and argument checks", "[orderstats]") {
  std::vector<double> outside = {0.45, 0.25};  // 0.45+0.25+0.25 < 1
  CHECK_THROWS_AS(popgen::top_density_simplified(outside, 1.0), popgen::out_of_region_error);
  std::vector<double> outside1 = {0.45};
  CHECK_THROWS_AS(popgen::top_density_simplified(outside1, 1.0), popgen::out_of_region_error);
  std::vector<double> increasing = {0.3, 0.4};
  CHECK_THROWS_AS(popgen::top_density_simplified(increasing, 1.0), std::invalid_argument);
  std::vector<double> overfull = {0.8, 0.4};
  CHECK_THROWS_AS(popgen::top_density_simplified(overfull, 1.0), std::invalid_argument);
  std::vector<double> ok = {0.6};
  CHECK_THROWS_AS(popgen::top_density_simplified(ok, 0.0), std::domain_error);
  std::vector<double> empty;
  CHECK_THROWS_AS(popgen::top_density_simplified(empty, 1.0), std::invalid_argument);
}

TEST_CASE("tail of the largest frequency against closed forms", "[orderstats]") {
  CHECK(popgen::largest_exceeds_half_probability(1.0) ==
        Catch::Approx(std::log(2.0)).margin(1e-10));
  CHECK(popgen::largest_exceeds_half_probability(0.5) ==
        Catch::Approx(std::log(1.0 + std::sqrt(2.0))).margin(1e-10));
  for (double theta : {0.5, 1.0, 2.0})
    for (double c : {0.5, 0.6, 0.75, 0.9, 0.99})
      CHECK(popgen::largest_tail_probability(c, theta) ==
            Catch::Approx(closed_tail(c, theta)).margin(1e-10));
}

TEST_CASE("tail quadrature against an independent Simpson rule", "[orderstats]") {
  CHECK(popgen::largest_tail_probability(0.6, 3.0) ==
        Catch::Approx(simpson_tail(0.6, 3.0, 20000)).margin(1e-9));
  CHECK(popgen::largest_tail_probability(0.55, 4.5) ==
        Catch::Approx(simpson_tail(0.55, 4.5, 20000)).margin(1e-9));
}

TEST_CASE("tail splits additively across the interval", "[orderstats]") {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (double theta : {0.7, 1.3}) {
    auto f = [theta](double x) { return theta / x * std::pow(1.0 - x, theta - 1.0); };
    double mid = GK::integrate(f, 0.5, 0.8, 15, 1e-13);
    CHECK(popgen::largest_tail_probability(0.5, theta) ==
          Catch::Approx(popgen::largest_tail_probability(0.8, theta) + mid).margin(1e-10));
  }
}

TEST_CASE("tail argument checks", "[orderstats]") {
  CHECK_THROWS_AS(popgen::largest_tail_probability(0.4, 1.0), popgen::out_of_region_error);
  CHECK_THROWS_AS(popgen::largest_tail_probability(1.0, 1.0), popgen::out_of_region_error);
  CHECK_THROWS_AS(popgen::largest_tail_probability(0.6, -1.0), std::domain_error);
}

TEST_CASE("near-monomorphism closed form", "[orderstats]") {
  CHECK(popgen::monomorphism_probability(0.99, 1.0) == Catch::Approx(0.99).epsilon(1e-12));
  CHECK(popgen::monomorphism_probability(0.99, 2.0) == Catch::Approx(0.9999).epsilon(1e-12));
  CHECK(popgen::monomorphism_probability(0.9, 0.5) ==
        Catch::Approx(1.0 - std::sqrt(0.1)).epsilon(1e-12));
  CHECK_THROWS_AS(popgen::monomorphism_probability(0.5, 1.0), popgen::out_of_region_error);
  CHECK_THROWS_AS(popgen::monomorphism_probability(1.0, 1.0), popgen::out_of_region_error);
  CHECK_THROWS_AS(popgen::monomorphism_probability(0.8, 0.0), std::domain_error);
}

TEST_CASE("Monte Carlo tail at one half agrees with quadrature", "[orderstats]") {
  const double theta = 0.8;
  const uint64_t reps = 20000;
  uint64_t hits = 0;
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(5150, r);
    auto s = popgen::sample_gem(theta, 1e-9, rng);
    double mx = 0;
    for (double w : s.w) mx = std::max(mx, w);
    if (mx > 0.5) ++hits;
  }
  double phat = static_cast<double>(hits) / reps;
  double p = popgen::largest_exceeds_half_probability(theta);
  double se = std::sqrt(p * (1 - p) / reps);
  CHECK(std::fabs(phat - p) < 3 * se);
}

TEST_CASE("mean of the largest frequency: bounds and Monte Carlo", "[orderstats]") {
  auto est = popgen::estimate_mean_order_statistic(1, 1.0, 20000, 31337);
  CHECK(est.truncated == 0);
  CHECK(std::fabs(est.mean - 0.624) < 0.01);  // reference value at theta = 1
  auto b = popgen::mean_largest_bounds(1.0);
  CHECK(b.lower < est.mean);

  auto b05 = popgen::mean_largest_bounds(0.5);
  auto est05 = popgen::estimate_mean_order_statistic(1, 0.5, 20000, 31337);
  CHECK(b05.lower < est05.mean);
  CHECK(est05.mean < b05.upper);
  CHECK(std::fabs(est05.mean - 0.758) < 0.01);  // reference value at theta = 0.5

  // ranked means decrease
  auto r2 = popgen::estimate_mean_order_statistic(2, 1.0, 20000, 31337);
  auto r3 = popgen::estimate_mean_order_statistic(3, 1.0, 20000, 31337);
  CHECK(est.mean > r2.mean);
  CHECK(r2.mean > r3.mean);

  CHECK_THROWS_AS(popgen::estimate_mean_order_statistic(0, 1.0, 20000, 1),
                  std::domain_error);
  CHECK_THROWS_AS(popgen::estimate_mean_order_statistic(1, 1.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("large-theta asymptotic form of the mean largest frequency", "[orderstats]") {
  CHECK(popgen::mean_largest_asymptotic(50.0) ==
        Catch::Approx(std::log(50.0) / 50.0).epsilon(1e-12));
  double prev = popgen::mean_largest_asymptotic(10.0);
  for (double th : {20.0, 40.0, 80.0}) {
    double cur = popgen::mean_largest_asymptotic(th);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(popgen::mean_largest_asymptotic(0.0), std::domain_error);
}
