#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace popgen {

// Allelic partition of a sample of n genes in multiplicity form:
// counts[j-1] = number of allelic types represented j times, so
// n = sum j*counts[j-1]. Canonical storage is length n (trailing zeros kept).
class AllelicPartition {
 public:
  explicit AllelicPartition(std::vector<uint32_t> counts) {
    uint64_t n = 0;
    for (size_t j = 0; j < counts.size(); ++j)
      n += static_cast<uint64_t>(j + 1) * counts[j];
    if (n == 0) throw std::invalid_argument("empty allelic partition");
    if (counts.size() > n)
      for (size_t j = n; j < counts.size(); ++j)
        if (counts[j]) throw std::invalid_argument("allele size exceeds sample size");
    counts.resize(static_cast<size_t>(n), 0);
    counts_ = std::move(counts);
  }

  static AllelicPartition from_parts(const std::vector<uint32_t>& parts) {
    uint32_t n = std::accumulate(parts.begin(), parts.end(), 0u);
    std::vector<uint32_t> c(n, 0);
    for (uint32_t p : parts) {
      if (p == 0) throw std::invalid_argument("zero part");
      ++c[p - 1];
    }
    return AllelicPartition(std::move(c));
  }

  // counts per label -> multiplicity form
  template <typename Label>
  static AllelicPartition from_labels(const std::vector<Label>& labels) {
    std::map<Label, uint32_t> tally;
    for (const Label& l : labels) ++tally[l];
    std::vector<uint32_t> c(labels.size(), 0);
    for (auto& [l, cnt] : tally) ++c[cnt - 1];
    return AllelicPartition(std::move(c));
  }

  uint32_t n() const { return static_cast<uint32_t>(counts_.size()); }
  uint32_t k() const { return std::accumulate(counts_.begin(), counts_.end(), 0u); }
  const std::vector<uint32_t>& counts() const { return counts_; }
  uint32_t count(uint32_t part_size) const {
    return (part_size >= 1 && part_size <= counts_.size()) ? counts_[part_size - 1] : 0;
  }

  std::vector<uint32_t> parts_descending() const {
    std::vector<uint32_t> parts;
    for (size_t j = counts_.size(); j > 0; --j)
      for (uint32_t i = 0; i < counts_[j - 1]; ++i) parts.push_back(static_cast<uint32_t>(j));
    return parts;
  }

  friend bool operator==(const AllelicPartition& a, const AllelicPartition& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<uint32_t> counts_;
};

// colexicographic order on (a_n, ..., a_1)
inline bool colex_less(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

namespace detail {
inline void emit_partitions(uint32_t remaining, uint32_t max_part, std::vector<uint32_t>& parts,
                            std::vector<std::vector<uint32_t>>& out, uint32_t n) {
  if (remaining == 0) {
    std::vector<uint32_t> c(n, 0);
    for (uint32_t p : parts) ++c[p - 1];
    out.push_back(std::move(c));
    return;
  }
  for (uint32_t p = std::min(max_part, remaining); p >= 1; --p) {
    parts.push_back(p);
    emit_partitions(remaining - p, p, parts, out, n);
    parts.pop_back();
  }
}
}  // namespace detail

// all partitions of n in colexicographic order of the multiplicity vector
inline std::vector<AllelicPartition> all_partitions(uint32_t n) {
  if (n == 0) throw std::invalid_argument("all_partitions(0)");
  std::vector<std::vector<uint32_t>> raw;
  std::vector<uint32_t> parts;
  detail::emit_partitions(n, n, parts, raw, n);
  std::sort(raw.begin(), raw.end(), colex_less);
  std::vector<AllelicPartition> out;
  out.reserve(raw.size());
  for (auto& c : raw) out.emplace_back(std::move(c));
  return out;
}

}  // namespace popgen
