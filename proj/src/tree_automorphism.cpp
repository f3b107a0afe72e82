#include "arbor/tree_automorphism.hpp"

#include <bit>
#include <cstdio>

#include "arbor/error.hpp"

namespace arbor {
namespace {

std::size_t word_count(unsigned depth) {
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  return static_cast<std::size_t>((nodes + 63) / 64);
}

void check_depth(unsigned depth) {
  if (depth == 0) {
    throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  }
  if (depth > TreeAutomorphism::kMaxDepth) {
    throw Error(ErrorCode::InvalidArgument, "depth exceeds supported maximum");
  }
}

void set_bit(std::vector<std::uint64_t>& words, std::uint64_t index) {
  words[index >> 6] |= std::uint64_t{1} << (index & 63);
}

}  // namespace

TreeAutomorphism::TreeAutomorphism(unsigned depth,
                                   std::vector<std::uint64_t> words)
    : depth_(depth), words_(std::move(words)) {}

TreeAutomorphism TreeAutomorphism::identity(unsigned depth) {
  check_depth(depth);
  return TreeAutomorphism(depth, std::vector<std::uint64_t>(word_count(depth)));
}

TreeAutomorphism TreeAutomorphism::root_swap(unsigned depth) {
  check_depth(depth);
  std::vector<std::uint64_t> words(word_count(depth));
  words[0] = 1;
  return TreeAutomorphism(depth, std::move(words));
}

TreeAutomorphism TreeAutomorphism::from_support(
    unsigned depth, std::span<const TreeWord> support) {
  check_depth(depth);
  std::vector<std::uint64_t> words(word_count(depth));
  for (const TreeWord& w : support) {
    if (w.length() >= depth) {
      throw Error(ErrorCode::LevelOutOfRange,
                  "support word '" + w.str() + "' not an internal node");
    }
    set_bit(words, w.index());
  }
  return TreeAutomorphism(depth, std::move(words));
}

TreeAutomorphism TreeAutomorphism::from_key(unsigned depth, std::uint64_t key) {
  check_depth(depth);
  if (depth > kMaxPackedDepth) {
    throw Error(ErrorCode::InvalidArgument, "depth too large for packed key");
  }
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  if (nodes < 64 && (key >> nodes) != 0) {
    throw Error(ErrorCode::InvalidArgument, "packed key has bits past depth");
  }
  return TreeAutomorphism(depth, {key});
}

TreeAutomorphism TreeAutomorphism::from_bits(unsigned depth,
                                             std::vector<std::uint64_t> words) {
  check_depth(depth);
  if (words.size() != word_count(depth)) {
    throw Error(ErrorCode::InvalidArgument, "wrong parity vector length");
  }
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  const unsigned tail = static_cast<unsigned>(nodes & 63);
  if (tail != 0 && (words.back() >> tail) != 0) {
    throw Error(ErrorCode::InvalidArgument, "parity bits past depth");
  }
  return TreeAutomorphism(depth, std::move(words));
}

bool TreeAutomorphism::par(const TreeWord& w) const {
  if (w.length() >= depth_) {
    throw Error(ErrorCode::LevelOutOfRange,
                "parity undefined at level " + std::to_string(w.length()) +
                    " for depth " + std::to_string(depth_));
  }
  return par_at(w.index());
}

TreeWord TreeAutomorphism::apply(const TreeWord& w) const {
  if (w.length() > depth_) {
    throw Error(ErrorCode::LevelOutOfRange, "word too long for depth");
  }
  return TreeWord::from_index(apply_index(w.index()));
}

std::uint64_t TreeAutomorphism::apply_index(std::uint64_t index) const {
  const unsigned level = level_of_index(index);
  if (level > depth_) {
    throw Error(ErrorCode::LevelOutOfRange, "node beyond depth");
  }
  const std::uint64_t value = index - first_index_at_level(level);
  std::uint64_t src = 0;
  std::uint64_t img = 0;
  for (unsigned k = 0; k < level; ++k) {
    const std::uint64_t t = (value >> (level - 1 - k)) & 1u;
    const std::uint64_t flip = par_at(src) ? 1u : 0u;
    src = 2 * src + 1 + t;
    img = 2 * img + 1 + (t ^ flip);
  }
  return img;
}

std::vector<std::uint64_t> TreeAutomorphism::node_images() const {
  const std::uint64_t total = (std::uint64_t{1} << (depth_ + 1)) - 1;
  const std::uint64_t internal = node_count();
  std::vector<std::uint64_t> image(total);
  image[0] = 0;
  for (std::uint64_t i = 0; i < internal; ++i) {
    const std::uint64_t flip = par_at(i) ? 1u : 0u;
    image[2 * i + 1] = 2 * image[i] + 1 + flip;
    image[2 * i + 2] = 2 * image[i] + 2 - flip;
  }
  return image;
}

std::uint64_t TreeAutomorphism::key() const {
  if (depth_ > kMaxPackedDepth) {
    throw Error(ErrorCode::InvalidArgument, "depth too large for packed key");
  }
  return words_[0];
}

bool TreeAutomorphism::is_identity() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<TreeWord> TreeAutomorphism::support() const {
  std::vector<TreeWord> out;
  for (std::uint64_t i = 0; i < node_count(); ++i) {
    if (par_at(i)) out.push_back(TreeWord::from_index(i));
  }
  return out;
}

unsigned TreeAutomorphism::parity_of_range(std::uint64_t first,
                                           std::uint64_t count) const {
  unsigned acc = 0;
  std::uint64_t i = first;
  const std::uint64_t end = first + count;
  while (i < end) {
    const unsigned offset = static_cast<unsigned>(i & 63);
    const std::uint64_t span = std::min<std::uint64_t>(64 - offset, end - i);
    std::uint64_t chunk = words_[i >> 6] >> offset;
    if (span < 64) chunk &= (std::uint64_t{1} << span) - 1;
    acc ^= static_cast<unsigned>(std::popcount(chunk)) & 1u;
    i += span;
  }
  return acc;
}

TreeAutomorphism compose(const TreeAutomorphism& sigma,
                         const TreeAutomorphism& tau) {
  if (sigma.depth() != tau.depth()) {
    throw Error(ErrorCode::DepthMismatch, "compose: depth mismatch");
  }
  // Par(st, x) = Par(s, t(x)) + Par(t, x), with t(x) built level by level.
  const std::vector<std::uint64_t> image = tau.node_images();
  std::vector<std::uint64_t> words(tau.words().size());
  for (std::uint64_t i = 0; i < tau.node_count(); ++i) {
    if (sigma.par_at(image[i]) != tau.par_at(i)) {
      set_bit(words, i);
    }
  }
  return TreeAutomorphism::from_bits(tau.depth(), std::move(words));
}

TreeAutomorphism invert(const TreeAutomorphism& sigma) {
  const std::vector<std::uint64_t> image = sigma.node_images();
  std::vector<std::uint64_t> words(sigma.words().size());
  for (std::uint64_t i = 0; i < sigma.node_count(); ++i) {
    if (sigma.par_at(i)) set_bit(words, image[i]);
  }
  return TreeAutomorphism::from_bits(sigma.depth(), std::move(words));
}

TreeAutomorphism restrict_to(const TreeAutomorphism& sigma, unsigned depth) {
  if (depth == 0 || depth > sigma.depth()) {
    throw Error(ErrorCode::LevelOutOfRange, "restrict: depth out of range");
  }
  std::vector<std::uint64_t> words(word_count(depth));
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  for (std::uint64_t i = 0; i < nodes; ++i) {
    if (sigma.par_at(i)) set_bit(words, i);
  }
  return TreeAutomorphism::from_bits(depth, std::move(words));
}

TreeAutomorphism graft(const TreeAutomorphism& left,
                       const TreeAutomorphism& right) {
  if (left.depth() != right.depth()) {
    throw Error(ErrorCode::DepthMismatch, "graft: depth mismatch");
  }
  const unsigned depth = left.depth() + 1;
  if (depth > TreeAutomorphism::kMaxDepth) {
    throw Error(ErrorCode::InvalidArgument, "graft: depth too large");
  }
  std::vector<std::uint64_t> words(word_count(depth));
  for (unsigned level = 0; level < left.depth(); ++level) {
    const std::uint64_t width = std::uint64_t{1} << level;
    const std::uint64_t src = first_index_at_level(level);
    const std::uint64_t dst = first_index_at_level(level + 1);
    for (std::uint64_t v = 0; v < width; ++v) {
      if (left.par_at(src + v)) set_bit(words, dst + v);
      if (right.par_at(src + v)) set_bit(words, dst + width + v);
    }
  }
  return TreeAutomorphism::from_bits(depth, std::move(words));
}

std::string encode(const TreeAutomorphism& sigma) {
  static constexpr char kHex[] = "0123456789abcdef";
  const std::uint64_t bytes = (sigma.node_count() + 7) / 8;
  std::string out = "ATn:" + std::to_string(sigma.depth()) + ":";
  out.reserve(out.size() + 2 * bytes);
  for (std::uint64_t k = 0; k < bytes; ++k) {
    const unsigned byte =
        static_cast<unsigned>((sigma.words()[k / 8] >> (8 * (k % 8))) & 0xffu);
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xf]);
  }
  return out;
}

TreeAutomorphism decode(std::string_view text) {
  constexpr std::string_view kTag = "ATn:";
  if (text.substr(0, kTag.size()) != kTag) {
    throw Error(ErrorCode::MalformedEncoding, "missing 'ATn:' header");
  }
  text.remove_prefix(kTag.size());
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2) {
    throw Error(ErrorCode::MalformedEncoding, "malformed depth field");
  }
  unsigned depth = 0;
  for (char ch : text.substr(0, colon)) {
    if (ch < '0' || ch > '9') {
      throw Error(ErrorCode::MalformedEncoding, "malformed depth field");
    }
    depth = 10 * depth + static_cast<unsigned>(ch - '0');
  }
  if (depth == 0 || depth > TreeAutomorphism::kMaxDepth ||
      (colon == 2 && text[0] == '0')) {
    throw Error(ErrorCode::MalformedEncoding, "depth out of range");
  }
  const std::string_view hex = text.substr(colon + 1);
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  const std::uint64_t bytes = (nodes + 7) / 8;
  if (hex.size() != 2 * bytes) {
    throw Error(ErrorCode::MalformedEncoding,
                "expected " + std::to_string(2 * bytes) + " hex digits, got " +
                    std::to_string(hex.size()));
  }
  auto nibble = [](char ch) -> unsigned {
    if (ch >= '0' && ch <= '9') return static_cast<unsigned>(ch - '0');
    if (ch >= 'a' && ch <= 'f') return static_cast<unsigned>(ch - 'a' + 10);
    throw Error(ErrorCode::MalformedEncoding, "non-hex character in payload");
  };
  std::vector<std::uint64_t> words((nodes + 63) / 64);
  for (std::uint64_t k = 0; k < bytes; ++k) {
    const std::uint64_t byte = (nibble(hex[2 * k]) << 4) | nibble(hex[2 * k + 1]);
    words[k / 8] |= byte << (8 * (k % 8));
  }
  const unsigned tail = static_cast<unsigned>(nodes & 63);
  if (tail != 0 && (words.back() >> tail) != 0) {
    throw Error(ErrorCode::MalformedEncoding, "nonzero pad bits");
  }
  return TreeAutomorphism::from_bits(depth, std::move(words));
}

}  // namespace arbor
