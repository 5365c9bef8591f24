#include <catch_amalgamated.hpp>

#include <popgen/coalescent.hpp>
#include <popgen/combinatorics.hpp>
#include <popgen/esf.hpp>
#include <popgen/eve.hpp>
#include <popgen/finite.hpp>
#include <popgen/gem.hpp>
#include <popgen/neutrality.hpp>
#include <popgen/order_stats.hpp>

#include <vector>

using popgen::AllelicPartition;
using popgen::Rational;
using popgen::Theta;

TEST_CASE("one closed form for monomorphism, five independent routes", "[props]") {
  // P(whole sample one type) surfaces in the sampling law, the monomorphic
  // closed forms, the oldest-type laws, the ancestral-type law, and the
  // stick-breaking population law; they must agree exactly.
  for (const char* ts : {"1/2", "1", "5/2"}) {
    Theta th = Theta::parse(ts);
    for (uint32_t n : {2u, 4u, 9u}) {
      std::vector<uint32_t> single = {n};
      Rational esf = popgen::esf_probability(AllelicPartition::from_parts(single), th).rational;
      Rational any = popgen::all_same_type_probabilities(n, th).any_type;
      Rational kelly = popgen::oldest_sample_count_distribution(n, th).exact[n - 1];
      Rational eve = popgen::solve_eve_recurrence(n, th).exact[n];
      CHECK(esf == any);
      CHECK(esf == kelly);
      CHECK(esf == eve);
      if (n % 2 == 0) {
        Rational hoppe = popgen::hoppe_monomorphism_probability(n / 2, th);
        CHECK(esf == hoppe);
      }
    }
  }
}

TEST_CASE("number-of-types law: three routes agree", "[props]") {
  for (const char* ts : {"1/2", "1", "5/2"}) {
    Theta th = Theta::parse(ts);
    for (uint32_t n = 1; n <= 9; ++n) {
      auto kd = popgen::k_distribution(n, th);
      // route 1: aggregate the partition law over partitions with k types
      std::vector<Rational> agg(n + 1, Rational(0));
      for (const auto& [p, q] : popgen::esf_distribution(n, th)) agg[p.k()] += q;
      for (uint32_t k = 1; k <= n; ++k) CHECK(kd.exact[k - 1] == agg[k]);
      // route 2: the mean from the law vs the harmonic-style closed form
      CHECK(kd.exact_mean() == popgen::expected_k_exact(n, th));
    }
  }
}

TEST_CASE("conditional partition law is free of the mutation rate", "[props]") {
  for (uint32_t n = 2; n <= 7; ++n) {
    for (const auto& p : popgen::all_partitions(n)) {
      auto c = popgen::conditional_partition_given_k(p, p.k());
      // aggregate over same-k partitions must give 1
      (void)c;
    }
    for (uint32_t k = 1; k <= n; ++k) {
      Rational total = 0;
      for (const auto& p : popgen::all_partitions(n))
        if (p.k() == k) total += popgen::conditional_partition_given_k(p, k).rational;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("sampling law marginals vs the oldest-type and age-ordered laws", "[props]") {
  // P(some type has j copies weighted by which is oldest) must marginalize
  // consistently: the oldest-type law's mean equals the mean frequency of
  // the age-rank-1 type scaled to samples, (n+theta)/(1+theta) over n genes
  for (const char* ts : {"1/2", "1", "5/2"}) {
    Theta th = Theta::parse(ts);
    for (uint32_t n : {2u, 6u, 14u}) {
      auto d = popgen::oldest_sample_count_distribution(n, th);
      CHECK(d.exact_mean() == (n + th.exact) / (1 + th.exact));
      auto pop = popgen::population_oldest_in_sample_distribution(n, th);
      // presence probability: n/(n+theta)
      CHECK(1 - pop.exact[0] == Rational(n) / (th.exact + n));
    }
  }
}

TEST_CASE("permutation bridge: series tail equals harmonic difference", "[props]") {
  // 1 - 1/2 + ... +- 1/n == H_n - H_floor(n/2)
  for (uint32_t n = 1; n <= 40; ++n) {
    Rational alt = popgen::longest_cycle_exact_tail(n);
    Rational harm = 0;
    for (uint32_t i = n / 2 + 1; i <= n; ++i) harm += Rational(1, i);
    CHECK(alt == harm);
  }
}

TEST_CASE("stick-breaking mean weights sum to the whole population", "[props]") {
  for (const char* ts : {"1/2", "1", "5/2"}) {
    Theta th = Theta::parse(ts);
    Rational acc = 0;
    for (uint32_t j = 1; j <= 60; ++j) acc += popgen::mean_jth_oldest(j, th);
    CHECK(popgen::to_double(acc) > 1.0 - 1e-6);
    CHECK(acc < 1);
  }
}

TEST_CASE("ancestral mean count vs the population oldest-type mean", "[props]") {
  // E(ancestral-type count) <= E(oldest-type count): the ancestral type is
  // oldest whenever it survives
  for (const char* ts : {"1/2", "1", "2"}) {
    Theta th = Theta::parse(ts);
    for (uint32_t n : {2u, 5u, 12u}) {
      Rational eve_mean = popgen::expected_eve_count(n, th);
      Rational oldest_mean = popgen::oldest_sample_count_distribution(n, th).exact_mean();
      CHECK(eve_mean <= oldest_mean);
    }
  }
}

TEST_CASE("defining-events law reduction at two genes", "[props]") {
  // n = 2: P(K=1) = 1/(1+theta) matches the pair-identity closed form
  for (const char* ts : {"1/2", "1", "5/2"}) {
    Theta th = Theta::parse(ts);
    auto kd = popgen::k_distribution(2, th);
    CHECK(kd.exact[0] == 1 / (1 + th.exact));
    CHECK(kd.exact[1] == th.exact / (1 + th.exact));
  }
}
