#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace popgen {

// Philox4x32-10 (Salmon et al. 2011). Counter-based: every (key, stream,
// block) maps to 128 output bits through a fixed bijection, so replicate r of
// seed s can be generated independently and in any order. Used instead of the
// standard-library engines/distributions because their algorithms are
// implementation-defined and the tool output must be byte-identical across
// platforms.
class CounterRng {
 public:
  CounterRng(uint64_t key, uint64_t stream)
      : k0_(static_cast<uint32_t>(key)),
        k1_(static_cast<uint32_t>(key >> 32)),
        c2_(static_cast<uint32_t>(stream)),
        c3_(static_cast<uint32_t>(stream >> 32)),
        block_(0),
        idx_(4) {}

  uint32_t next_u32() {
    if (idx_ == 4) fill();
    return out_[idx_++];
  }

  uint64_t next_u64() {
    uint64_t lo = next_u32();
    uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // uniform on [0,1), 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // unbiased uniform on {0,...,n-1}
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw std::domain_error("uniform_int(0)");
    uint64_t m = (~uint64_t(0) % n) + 1;  // 2^64 mod n (0 if n divides 2^64)
    if (m == n) m = 0;
    uint64_t bound = ~uint64_t(0) - m;
    uint64_t x;
    do {
      x = next_u64();
    } while (x > bound);
    return x % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  // density theta*(1-x)^(theta-1) on (0,1): inverse CDF of Beta(1, theta)
  double beta_one_theta(double theta) {
    double x = 1.0 - std::pow(uniform01(), 1.0 / theta);
    return x > 0.0 ? x : 0x1.0p-60;
  }

  uint32_t binomial(uint32_t trials, double p) {
    uint32_t c = 0;
    for (uint32_t i = 0; i < trials; ++i)
      if (uniform01() < p) ++c;
    return c;
  }

 private:
  static void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t prod = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(prod >> 32);
    lo = static_cast<uint32_t>(prod);
  }

  void fill() {
    uint32_t c0 = static_cast<uint32_t>(block_);
    uint32_t c1 = static_cast<uint32_t>(block_ >> 32);
    uint32_t c2 = c2_, c3 = c3_;
    uint32_t k0 = k0_, k1 = k1_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
      }
      uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
    ++block_;
    idx_ = 0;
  }

  uint32_t k0_, k1_, c2_, c3_;
  uint64_t block_;
  uint32_t out_[4];
  int idx_;
};

}  // namespace popgen
