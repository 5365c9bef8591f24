#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "partition.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace popgen {

// Holding times of the ancestral line-counting process: level j persists for
// an Exp(j(j-1)/2) time, independently across levels.
struct TreeTimes {
  std::vector<double> holding_times;  // holding_times[i] is the time at level n-i
  double t_mrcas = 0.0;               // total time back to the common ancestor
};

inline TreeTimes simulate_tree(uint32_t n, CounterRng& rng) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  TreeTimes t;
  t.holding_times.reserve(n >= 2 ? n - 1 : 0);
  for (uint32_t j = n; j >= 2; --j) {
    double h = rng.exponential(0.5 * j * (j - 1));
    t.holding_times.push_back(h);
    t.t_mrcas += h;
  }
  return t;
}

struct TMrcasStatistics {
  double mean;         // 2(1 - 1/n)
  double variance;     // sum_{j=2..n} 4 / (j^2 (j-1)^2)
  Rational mean_exact;
  Rational variance_exact;
};

inline TMrcasStatistics t_mrcas_statistics(uint32_t n) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  TMrcasStatistics s;
  s.mean_exact = n >= 2 ? Rational(2 * (static_cast<int64_t>(n) - 1), n) : Rational(0);
  s.variance_exact = 0;
  for (uint32_t j = 2; j <= n; ++j) {
    BigInt d = BigInt(j) * j * (j - 1) * (j - 1);
    s.variance_exact += Rational(4) / Rational(d);
  }
  s.mean = to_double(s.mean_exact);
  s.variance = to_double(s.variance_exact);
  return s;
}

// One replicate of the ancestral process with infinitely-many-alleles
// mutation. Walking from the sample back to its common ancestor, each event
// is a mutation with probability theta/(j + theta - 1) (a uniformly chosen
// line's still-untyped leaves receive a fresh type; the line remains) and
// otherwise a coalescence of a uniform pair. Types created later in the walk
// are older; leaves still untyped at the root carry the ancestral type, which
// is older than every mutant type.
struct CoalescentReplicate {
  AllelicPartition partition;           // allelic partition of the sample
  uint32_t k = 0;                       // number of types
  double t_mrcas = 0.0;                 // time back to the common ancestor
  uint32_t x_n = 0;                     // count of the oldest type in the sample
  uint32_t y_n = 0;                     // leaves carrying the ancestral type
  std::vector<uint32_t> age_ordered;    // type counts, oldest first
  uint32_t mutation_events = 0;         // mutations along the walk (incl. ones typing no leaf)
  uint64_t seed = 0;
  uint64_t replicate_index = 0;

  explicit CoalescentReplicate(AllelicPartition p) : partition(std::move(p)) {}
};

inline CoalescentReplicate run_ima_replicate(uint32_t n, const Theta& theta, CounterRng& rng) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  double th = theta.value;
  std::vector<uint32_t> untyped(n, 1);  // per-line count of still-untyped leaves
  std::vector<uint32_t> mutant_counts;  // in creation order (later = older)
  uint32_t mutation_events = 0;

  for (uint32_t j = n; j >= 2;) {
    if (rng.bernoulli(th / (j + th - 1))) {
      ++mutation_events;
      uint32_t i = static_cast<uint32_t>(rng.uniform_int(j));
      if (untyped[i] > 0) {
        mutant_counts.push_back(untyped[i]);
        untyped[i] = 0;
      }
    } else {
      uint32_t a = static_cast<uint32_t>(rng.uniform_int(j));
      uint32_t b = static_cast<uint32_t>(rng.uniform_int(j - 1));
      if (b >= a) ++b;
      untyped[a] += untyped[b];
      untyped[b] = untyped[j - 1];
      untyped.pop_back();
      --j;
    }
  }

  std::vector<uint32_t> age_ordered;
  if (untyped[0] > 0) age_ordered.push_back(untyped[0]);
  for (auto it = mutant_counts.rbegin(); it != mutant_counts.rend(); ++it)
    age_ordered.push_back(*it);

  CoalescentReplicate rep(AllelicPartition::from_parts(age_ordered));
  rep.mutation_events = mutation_events;
  rep.y_n = untyped[0];
  rep.x_n = age_ordered.front();
  rep.age_ordered = std::move(age_ordered);
  rep.k = rep.partition.k();

  // Independent overlay: level j lasts an Exp(j(j-1)/2) time regardless of
  // how many mutations fall inside it.
  for (uint32_t j = n; j >= 2; --j) rep.t_mrcas += rng.exponential(0.5 * j * (j - 1));
  return rep;
}

inline CoalescentReplicate run_ima_replicate(uint32_t n, const Theta& theta, uint64_t seed,
                                             uint64_t replicate_index) {
  CounterRng rng(seed, replicate_index);
  CoalescentReplicate rep = run_ima_replicate(n, theta, rng);
  rep.seed = seed;
  rep.replicate_index = replicate_index;
  return rep;
}

// The number of types has the same law as a sum of independent indicators:
// walking the defining events, event j contributes a fresh type with
// probability theta/(theta + j - 1), j = 1..n (the j = 1 event always does).
inline uint32_t k_from_defining_events(uint32_t n, const Theta& theta, CounterRng& rng) {
  if (n == 0) throw std::domain_error("sample size must be >= 1");
  double th = theta.value;
  uint32_t k = 1;
  for (uint32_t j = 2; j <= n; ++j)
    if (rng.bernoulli(th / (th + j - 1))) ++k;
  return k;
}

}  // namespace popgen
