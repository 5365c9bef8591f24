#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "partition.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace popgen {

// Cycle type of a uniform permutation of {1..n}: counts[j-1] = number of
// cycles of length j.
inline AllelicPartition random_permutation_cycle_type(uint32_t n, CounterRng& rng) {
  if (n == 0) throw std::domain_error("permutation size must be >= 1");
  std::vector<uint32_t> perm(n);
  for (uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (uint32_t i = n - 1; i >= 1; --i) {
    uint32_t j = static_cast<uint32_t>(rng.uniform_int(i + 1));
    std::swap(perm[i], perm[j]);
  }
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
  return AllelicPartition(std::move(counts));
}

inline AllelicPartition random_permutation_cycle_type(uint32_t n, uint64_t seed) {
  CounterRng rng(seed, 0);
  return random_permutation_cycle_type(n, rng);
}

// P(longest cycle of a uniform permutation of {1..n} exceeds n/2), exactly:
// 1 - 1/2 + 1/3 - ... +- 1/n.
inline Rational longest_cycle_exact_tail(uint32_t n) {
  if (n == 0) throw std::domain_error("permutation size must be >= 1");
  Rational s = 0;
  for (uint32_t i = 1; i <= n; ++i) {
    Rational term = Rational(1, i);
    s += (i % 2 == 1) ? term : -term;
  }
  return s;
}

// size of the largest part
inline uint32_t largest_part(const AllelicPartition& p) {
  const auto& c = p.counts();
  for (size_t j = c.size(); j > 0; --j)
    if (c[j - 1]) return static_cast<uint32_t>(j);
  return 0;
}

// Component-size type of the functional graph of a uniform map
// {1..n} -> {1..n}: counts[j-1] = number of weakly connected components of
// size j. Each node is visited a bounded number of times: paths are chased
// with an in-progress mark until they hit a node whose component is known
// (or the path itself, closing a new cycle).
inline AllelicPartition random_mapping_component_sizes(uint32_t n, CounterRng& rng) {
  if (n == 0) throw std::domain_error("mapping size must be >= 1");
  std::vector<uint32_t> f(n);
  for (uint32_t i = 0; i < n; ++i) f[i] = static_cast<uint32_t>(rng.uniform_int(n));
  constexpr uint32_t kInProgress = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> comp(n, 0);  // 0 = unvisited, otherwise component id
  std::vector<uint32_t> path;
  std::vector<uint64_t> comp_size = {0};  // index by id, id 0 unused
  for (uint32_t i = 0; i < n; ++i) {
    if (comp[i] != 0) continue;
    path.clear();
    uint32_t j = i;
    while (comp[j] == 0) {
      comp[j] = kInProgress;
      path.push_back(j);
      j = f[j];
    }
    uint32_t id;
    if (comp[j] == kInProgress) {
      comp_size.push_back(0);
      id = static_cast<uint32_t>(comp_size.size() - 1);
    } else {
      id = comp[j];
    }
    for (uint32_t v : path) comp[v] = id;
    comp_size[id] += path.size();
  }
  std::vector<uint32_t> counts(n, 0);
  for (size_t id = 1; id < comp_size.size(); ++id) ++counts[comp_size[id] - 1];
  return AllelicPartition(std::move(counts));
}

inline AllelicPartition random_mapping_component_sizes(uint32_t n, uint64_t seed) {
  CounterRng rng(seed, 0);
  return random_mapping_component_sizes(n, rng);
}

}  // namespace popgen
