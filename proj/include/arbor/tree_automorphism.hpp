#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/tree_word.hpp"

namespace arbor {

// An automorphism of the depth-n binary rooted tree T_n, stored as one parity
// bit per node of levels 0..n-1 in heap order. Any bit assignment is valid.
class TreeAutomorphism {
 public:
  static constexpr unsigned kMaxDepth = 24;
  // Depths whose parity vector fits in one 64-bit key.
  static constexpr unsigned kMaxPackedDepth = 6;

  static TreeAutomorphism identity(unsigned depth);
  static TreeAutomorphism root_swap(unsigned depth);
  static TreeAutomorphism from_support(unsigned depth,
                                       std::span<const TreeWord> support);
  static TreeAutomorphism from_key(unsigned depth, std::uint64_t key);
  static TreeAutomorphism from_bits(unsigned depth,
                                    std::vector<std::uint64_t> words);

  unsigned depth() const noexcept { return depth_; }
  std::uint64_t node_count() const noexcept {
    return (std::uint64_t{1} << depth_) - 1;
  }

  bool par(const TreeWord& w) const;
  bool par_at(std::uint64_t index) const noexcept {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  int sgn(const TreeWord& w) const { return par(w) ? -1 : 1; }

  TreeWord apply(const TreeWord& w) const;
  // Heap index of the image of the node at `index` (any level <= depth).
  std::uint64_t apply_index(std::uint64_t index) const;
  // Images of all nodes of levels 0..depth, indexed by heap position.
  std::vector<std::uint64_t> node_images() const;

  std::uint64_t key() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  bool is_identity() const noexcept;
  // Words of all nodes with parity 1, in heap order.
  std::vector<TreeWord> support() const;

  // Parity count over the contiguous heap range [first, first + count).
  unsigned parity_of_range(std::uint64_t first, std::uint64_t count) const;

  friend bool operator==(const TreeAutomorphism&,
                         const TreeAutomorphism&) = default;

 private:
  TreeAutomorphism(unsigned depth, std::vector<std::uint64_t> words);

  unsigned depth_ = 0;
  std::vector<std::uint64_t> words_;
};

TreeAutomorphism compose(const TreeAutomorphism& sigma,
                         const TreeAutomorphism& tau);
TreeAutomorphism invert(const TreeAutomorphism& sigma);
TreeAutomorphism restrict_to(const TreeAutomorphism& sigma, unsigned depth);
TreeAutomorphism graft(const TreeAutomorphism& left,
                       const TreeAutomorphism& right);

// Text form "ATn:<depth>:<hex>"; bit j of byte k is node 8k + j.
std::string encode(const TreeAutomorphism& sigma);
TreeAutomorphism decode(std::string_view text);

// Packed-key arithmetic for depth <= kMaxPackedDepth. Same semantics as
// compose()/invert() on TreeAutomorphism; used on hot paths.
namespace packed {

inline std::uint64_t compose(unsigned depth, std::uint64_t sigma,
                             std::uint64_t tau) {
  std::uint64_t image[64];
  std::uint64_t out = 0;
  image[0] = 0;
  const std::uint64_t internal = (std::uint64_t{1} << (depth - 1)) - 1;
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  for (std::uint64_t i = 0; i < nodes; ++i) {
    const std::uint64_t t = (tau >> i) & 1u;
    const std::uint64_t img = image[i];
    out |= (((sigma >> img) & 1u) ^ t) << i;
    if (i < internal) {
      image[2 * i + 1] = 2 * img + 1 + t;
      image[2 * i + 2] = 2 * img + 2 - t;
    }
  }
  return out;
}

inline std::uint64_t invert(unsigned depth, std::uint64_t sigma) {
  std::uint64_t image[64];
  std::uint64_t out = 0;
  image[0] = 0;
  const std::uint64_t internal = (std::uint64_t{1} << (depth - 1)) - 1;
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  for (std::uint64_t i = 0; i < nodes; ++i) {
    const std::uint64_t t = (sigma >> i) & 1u;
    out |= t << image[i];
    if (i < internal) {
      image[2 * i + 1] = 2 * image[i] + 1 + t;
      image[2 * i + 2] = 2 * image[i] + 2 - t;
    }
  }
  return out;
}

}  // namespace packed

}  // namespace arbor
