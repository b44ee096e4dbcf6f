#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace ccheck {

// Dense n x n bit matrix for binary relations over operation indices.
// Row i holds the successors of i. Sized for histories of a few thousand
// operations; the transitive closure is the O(n^3 / 64) word-parallel
// Warshall sweep.
class BitRel {
 public:
  BitRel() = default;
  explicit BitRel(size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  size_t size() const { return n_; }

  bool at(size_t i, size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
  }
  void set(size_t i, size_t j) { bits_[i * words_ + j / 64] |= uint64_t{1} << (j % 64); }
  void clear(size_t i, size_t j) { bits_[i * words_ + j / 64] &= ~(uint64_t{1} << (j % 64)); }

  // rows[i] |= rows[k] for every i with at(i, k); repeated over all k this
  // yields reachability. Call transitive_close() rather than hand-rolling.
  void transitive_close() {
    for (size_t k = 0; k < n_; ++k) {
      const uint64_t* rk = row(k);
      for (size_t i = 0; i < n_; ++i) {
        if (!at(i, k)) continue;
        uint64_t* ri = mutable_row(i);
        for (size_t w = 0; w < words_; ++w) ri[w] |= rk[w];
      }
    }
  }

  bool has_reflexive_pair() const {
    for (size_t i = 0; i < n_; ++i)
      if (at(i, i)) return true;
    return false;
  }

  BitRel operator|(const BitRel& o) const {
    BitRel r = *this;
    for (size_t w = 0; w < bits_.size(); ++w) r.bits_[w] |= o.bits_[w];
    return r;
  }

  bool operator==(const BitRel& o) const { return n_ == o.n_ && bits_ == o.bits_; }

  // True when this relation is a subset of o.
  bool subset_of(const BitRel& o) const {
    for (size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w] & ~o.bits_[w]) return false;
    return true;
  }

  std::vector<std::pair<uint32_t, uint32_t>> pairs() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j)
        if (at(i, j)) out.emplace_back(i, j);
    return out;
  }

  const uint64_t* row(size_t i) const { return bits_.data() + i * words_; }
  uint64_t* mutable_row(size_t i) { return bits_.data() + i * words_; }
  size_t words_per_row() const { return words_; }

 private:
  size_t n_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

// Deterministic cycle search over the edge relation: depth-first from the
// lowest index, visiting successors in ascending order. Returns the node
// sequence of the first cycle found (entry node first), or nullopt for a
// DAG. Self-loops yield a singleton cycle.
std::optional<std::vector<uint32_t>> find_cycle(const BitRel& edges);

}  // namespace ccheck
