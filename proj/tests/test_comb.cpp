#include <catch_amalgamated.hpp>

#include <popgen/combinatorics.hpp>
#include <popgen/esf.hpp>
#include <popgen/stats.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

using popgen::AllelicPartition;
using popgen::BigInt;
using popgen::CounterRng;
using popgen::Rational;
using popgen::Theta;

namespace {

std::vector<uint32_t> cycle_type_of(const std::vector<uint32_t>& perm) {
  uint32_t n = static_cast<uint32_t>(perm.size());
  std::vector<uint32_t> counts(n, 0);
  std::vector<bool> seen(n, false);
  for (uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    uint32_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    ++counts[len - 1];
  }
  return counts;
}

// component sizes of the functional graph of f via union-find (independent of
// the library's path-chasing extraction)
std::vector<uint32_t> component_type_union_find(const std::vector<uint32_t>& f) {
  uint32_t n = static_cast<uint32_t>(f.size());
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t a = find(i), b = find(f[i]);
    if (a != b) parent[a] = b;
  }
  std::map<uint32_t, uint32_t> size;
  for (uint32_t i = 0; i < n; ++i) ++size[find(i)];
  std::vector<uint32_t> counts(n, 0);
  for (const auto& [root, s] : size) ++counts[s - 1];
  return counts;
}

}  // namespace

TEST_CASE("cycle type of a uniform permutation follows the theta = 1 sampling law",
          "[comb]") {
  Theta one = Theta::parse("1");
  for (uint32_t n = 1; n <= 6; ++n) {
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::map<std::vector<uint32_t>, uint64_t> tally;
    uint64_t total = 0;
    do {
      ++tally[cycle_type_of(perm)];
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(total == popgen::factorial(n).convert_to<uint64_t>());
    for (const auto& [counts, cnt] : tally) {
      auto p = AllelicPartition(std::vector<uint32_t>(counts));
      CHECK(Rational(BigInt(cnt), popgen::factorial(n)) ==
            popgen::esf_probability(p, one).rational);
    }
  }
}

TEST_CASE("permutation sampler matches the exact class law", "[comb]") {
  auto single = popgen::random_permutation_cycle_type(1, uint64_t(5));
  CHECK(single.n() == 1);
  CHECK(single.k() == 1);

  const uint32_t n = 4;
  const uint64_t reps = 30000;
  Theta one = Theta::parse("1");
  auto dist = popgen::esf_distribution(n, one);
  std::map<std::vector<uint32_t>, size_t> index;
  for (size_t i = 0; i < dist.size(); ++i) index[dist[i].first.counts()] = i;
  std::vector<uint64_t> observed(dist.size(), 0);
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(606, r);
    ++observed[index.at(popgen::random_permutation_cycle_type(n, rng).counts())];
  }
  std::vector<double> expected;
  for (const auto& [p, q] : dist) expected.push_back(popgen::to_double(q));
  auto gof = popgen::chi_square_gof(observed, expected);
  CHECK(gof.p_value > 0.001);
}

TEST_CASE("long-cycle tail: exact series vs exhaustive counting", "[comb]") {
  CHECK(popgen::longest_cycle_exact_tail(1) == 1);
  CHECK(popgen::longest_cycle_exact_tail(2) == Rational(1, 2));
  CHECK(popgen::longest_cycle_exact_tail(4) == Rational(7, 12));
  CHECK(std::fabs(popgen::to_double(popgen::longest_cycle_exact_tail(1000)) - std::log(2.0)) <
        5.1e-4);
  for (uint32_t n = 1; n <= 8; ++n) {
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    uint64_t hits = 0, total = 0;
    do {
      auto counts = cycle_type_of(perm);
      uint32_t longest = 0;
      for (uint32_t j = n; j >= 1; --j)
        if (counts[j - 1]) {
          longest = j;
          break;
        }
      if (2 * longest > n) ++hits;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(Rational(BigInt(hits), BigInt(total)) == popgen::longest_cycle_exact_tail(n));
  }
  CHECK_THROWS_AS(popgen::longest_cycle_exact_tail(0), std::domain_error);
}

TEST_CASE("largest part helper", "[comb]") {
  std::vector<uint32_t> parts = {3, 2, 2, 1};
  CHECK(popgen::largest_part(AllelicPartition::from_parts(parts)) == 3);
  std::vector<uint32_t> ones = {1, 1};
  CHECK(popgen::largest_part(AllelicPartition::from_parts(ones)) == 1);
}

TEST_CASE("mapping components match exhaustive enumeration in law", "[comb]") {
  auto single = popgen::random_mapping_component_sizes(1, uint64_t(5));
  CHECK(single.n() == 1);
  CHECK(single.k() == 1);

  // exact law at n = 4 from all 256 maps, via an independent union-find
  const uint32_t n = 4;
  std::map<std::vector<uint32_t>, uint64_t> law;
  std::vector<uint32_t> f(n, 0);
  uint64_t total = 0;
  for (;;) {
    ++law[component_type_union_find(f)];
    ++total;
    uint32_t i = 0;
    while (i < n && f[i] == n - 1) f[i++] = 0;
    if (i == n) break;
    ++f[i];
  }
  REQUIRE(total == 256);

  const uint64_t reps = 30000;
  std::map<std::vector<uint32_t>, uint64_t> tally;
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(7007, r);
    ++tally[popgen::random_mapping_component_sizes(n, rng).counts()];
  }
  std::vector<uint64_t> observed;
  std::vector<double> expected;
  for (const auto& [counts, cnt] : law) {
    observed.push_back(tally.count(counts) ? tally[counts] : 0);
    expected.push_back(static_cast<double>(cnt) / 256.0);
  }
  uint64_t covered = 0;
  for (auto o : observed) covered += o;
  REQUIRE(covered == reps);
  auto gof = popgen::chi_square_gof(observed, expected);
  CHECK(gof.p_value > 0.001);
}

TEST_CASE("large random mappings behave like theta = 1/2 sampling", "[comb]") {
  const uint32_t n = 1000;
  const uint64_t reps = 4000;
  uint64_t tail_hits = 0;
  std::vector<double> largest;
  for (uint64_t r = 0; r < reps; ++r) {
    CounterRng rng(31415, r);
    auto p = popgen::random_mapping_component_sizes(n, rng);
    uint32_t big = popgen::largest_part(p);
    largest.push_back(static_cast<double>(big) / n);
    if (2 * big > n) ++tail_hits;
  }
  auto m = popgen::mean_and_se(largest);
  CHECK(std::fabs(m.mean - 0.758) < 0.02);
  double phat = static_cast<double>(tail_hits) / reps;
  CHECK(std::fabs(phat - 0.8814) < 0.025);
}
