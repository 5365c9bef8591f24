#include <catch_amalgamated.hpp>

#include <popgen/esf.hpp>
#include <popgen/neutrality.hpp>
#include <popgen/stats.hpp>

#include <cmath>
#include <map>
#include <vector>

using popgen::AllelicPartition;
using popgen::CounterRng;
using popgen::Rational;
using popgen::Theta;

namespace {
AllelicPartition parts(std::vector<uint32_t> p) { return AllelicPartition::from_parts(p); }
}  // namespace

TEST_CASE("homozygosity statistic", "[neutrality]") {
  std::vector<uint32_t> all_same = {0, 0, 0, 1};
  CHECK(popgen::sample_homozygosity(AllelicPartition(all_same)) == 1.0);
  std::vector<uint32_t> all_distinct = {4, 0, 0, 0};
  CHECK(popgen::sample_homozygosity(AllelicPartition(all_distinct)) == 0.25);
  std::vector<uint32_t> mixed = {2, 1, 0, 0};
  CHECK(popgen::sample_homozygosity(AllelicPartition(mixed)) == 0.375);
  CHECK(popgen::homozygosity_numerator(AllelicPartition(mixed)) == 6);
  CHECK(popgen::homozygosity_numerator(AllelicPartition(all_same)) == 16);

  // bounds over every partition: 1/k <= F <= 1 - (k-1)(2n-k)/n^2
  const uint32_t n = 8;
  for (const auto& p : popgen::all_partitions(n)) {
    double f = popgen::sample_homozygosity(p);
    double k = p.k();
    CHECK(f >= 1.0 / k - 1e-12);
    CHECK(f <= 1.0 - (k - 1) * (2.0 * n - k) / (static_cast<double>(n) * n) + 1e-12);
  }
}

TEST_CASE("proposal rate tuning hits the target type count", "[neutrality]") {
  for (auto [n, k] : std::vector<std::pair<uint32_t, uint32_t>>{{10, 3}, {50, 20}, {6, 2}}) {
    double th = popgen::tuned_theta_for_k(n, k);
    double e = 0;
    for (uint32_t i = 1; i <= n; ++i) e += th / (th + i - 1);
    CHECK(e == Catch::Approx(static_cast<double>(k)).margin(1e-6));
  }
  CHECK_THROWS_AS(popgen::tuned_theta_for_k(5, 0), std::domain_error);
  CHECK_THROWS_AS(popgen::tuned_theta_for_k(5, 6), std::domain_error);
}

TEST_CASE("sequential-urn sampler reproduces the partition law", "[neutrality]") {
  const uint32_t n = 5;
  const uint64_t reps = 40000;
  Theta th = Theta::parse("1/2");
  auto dist = popgen::esf_distribution(n, th);
  std::map<std::vector<uint32_t>, size_t> index;
  for (size_t i = 0; i < dist.size(); ++i) index[dist[i].first.counts()] = i;
  std::vector<uint64_t> observed(dist.size(), 0);
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(123, r);
    ++observed[index.at(popgen::crp_sample(n, 0.5, rng).counts())];
  }
  std::vector<double> expected;
  for (const auto& [p, q] : dist) expected.push_back(popgen::to_double(q));
  auto gof = popgen::chi_square_gof(observed, expected);
  CHECK(gof.p_value > 0.001);
}

TEST_CASE("conditional sampler: degenerate type counts", "[neutrality]") {
  CounterRng rng(9, 0);
  auto one_type = popgen::conditional_null_sample(7, 1, rng);
  CHECK(one_type.k() == 1);
  CHECK(one_type.count(7) == 1);
  auto all_types = popgen::conditional_null_sample(7, 7, rng);
  CHECK(all_types.k() == 7);
  CHECK(all_types.count(1) == 7);
  CHECK_THROWS_AS(popgen::conditional_null_sample(5, 0, rng), std::domain_error);
  CHECK_THROWS_AS(popgen::conditional_null_sample(5, 6, rng), std::domain_error);
}

TEST_CASE("conditional sampler matches the exact conditional law", "[neutrality]") {
  // n = 5, k = 2: the two shapes are 4+1 and 3+2
  const uint64_t reps = 30000;
  auto p41 = parts({4, 1});
  auto p32 = parts({3, 2});
  double q41 = popgen::conditional_partition_given_k(p41, 2).value();
  double q32 = popgen::conditional_partition_given_k(p32, 2).value();
  CHECK(q41 + q32 == Catch::Approx(1.0).margin(1e-12));
  uint64_t c41 = 0;
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(456, r);
    auto s = popgen::conditional_null_sample(5, 2, rng);
    REQUIRE(s.k() == 2);
    if (s == p41) ++c41;
  }
  double phat = static_cast<double>(c41) / reps;
  double se = std::sqrt(q41 * (1 - q41) / reps);
  CHECK(std::fabs(phat - q41) < 3 * se);
}

TEST_CASE("conditional law does not depend on the proposal rate", "[neutrality]") {
  const uint32_t n = 5;
  const uint64_t reps = 20000;
  for (uint32_t k = 2; k <= 4; ++k) {
    auto shapes = popgen::all_partitions(n);
    std::map<std::vector<uint32_t>, size_t> index;
    std::vector<std::vector<uint64_t>> counts(2);
    size_t cells = 0;
    for (const auto& p : shapes)
      if (p.k() == k) index[p.counts()] = cells++;
    counts[0].assign(cells, 0);
    counts[1].assign(cells, 0);
    for (uint64_t r = 0; r < reps; ++r) {
      CounterRng ra(1000 + k, r);
      CounterRng rb(2000 + k, r);
      ++counts[0][index.at(popgen::conditional_null_sample(n, k, ra, 0.5).counts())];
      ++counts[1][index.at(popgen::conditional_null_sample(n, k, rb, 3.0).counts())];
    }
    if (cells >= 2) {
      auto hom = popgen::chi_square_homogeneity(counts[0], counts[1]);
      CHECK(hom.p_value > 0.001);
    }
  }
}

TEST_CASE("homozygosity test: degenerate cases and determinism", "[neutrality]") {
  std::vector<uint32_t> all_same = {0, 0, 0, 1};
  auto rep1 = popgen::neutrality_test(AllelicPartition(all_same), 10000, 42);
  CHECK(rep1.k == 1);
  CHECK(rep1.statistic_f == 1.0);
  CHECK(rep1.p_lower == 1.0);
  CHECK(rep1.p_upper == 1.0);

  std::vector<uint32_t> all_distinct = {4, 0, 0, 0};
  auto rep2 = popgen::neutrality_test(AllelicPartition(all_distinct), 10000, 42);
  CHECK(rep2.p_lower == 1.0);
  CHECK(rep2.p_upper == 1.0);

  auto obs = parts({4, 3, 3});
  auto a = popgen::neutrality_test(obs, 20000, 7);
  auto b = popgen::neutrality_test(obs, 20000, 7);
  CHECK(a.p_lower == b.p_lower);
  CHECK(a.p_upper == b.p_upper);
  CHECK(a.p_lower + a.p_upper >= 1.0);
  CHECK(a.statistic_f == Catch::Approx(0.34).epsilon(1e-12));

  CHECK_THROWS_AS(popgen::neutrality_test(obs, 100, 7), std::invalid_argument);
}

TEST_CASE("homozygosity test orders even against skewed alternatives", "[neutrality]") {
  // same n and k: the flattest configuration sits in the lower tail, the
  // most skewed in the upper tail
  auto flat = popgen::neutrality_test(parts({4, 3, 3}), 20000, 11);
  auto skew = popgen::neutrality_test(parts({8, 1, 1}), 20000, 11);
  CHECK(flat.p_lower < skew.p_lower);
  CHECK(skew.p_upper < flat.p_upper);
  CHECK(flat.p_lower < 0.5);
  CHECK(skew.p_upper < 0.5);
}
