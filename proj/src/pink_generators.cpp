#include "arbor/pink_generators.hpp"

#include <absl/container/flat_hash_set.h>

#include <bit>
#include <chrono>

#include "arbor/error.hpp"

namespace arbor {
namespace {

TreeWord repeat(const TreeWord& unit, unsigned times) {
  TreeWord out;
  for (unsigned k = 0; k < times; ++k) out = out.concat(unit);
  return out;
}

TreeWord a_power(unsigned k) { return TreeWord::from_bits(k, 0); }

void check_index(unsigned i, const PortraitParams& params) {
  if (i < 1 || i > params.r) {
    throw Error(ErrorCode::InvalidArgument,
                "generator index must lie in 1.." + std::to_string(params.r));
  }
}

}  // namespace

std::vector<TreeWord> pink_support(unsigned i, const PortraitParams& params,
                                   unsigned depth) {
  check_index(i, params);
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  std::vector<TreeWord> out;
  if (i <= params.s) {
    if (i - 1 < depth) out.push_back(a_power(i - 1));
    return out;
  }
  const unsigned ell = params.r - params.s;
  const TreeWord unit = TreeWord::parse("b").concat(a_power(ell - 1));
  const TreeWord head = a_power(i - params.s - 1);
  const TreeWord tail = a_power(params.s);
  for (unsigned k = 0;; ++k) {
    const unsigned len = i - 1 + k * ell;
    if (len >= depth) break;
    out.push_back(head.concat(repeat(unit, k)).concat(tail));
  }
  return out;
}

TreeAutomorphism pink_generator(unsigned i, const PortraitParams& params,
                                unsigned depth) {
  const std::vector<TreeWord> support = pink_support(i, params, depth);
  return TreeAutomorphism::from_support(depth, support);
}

std::vector<TreeAutomorphism> pink_generators(const PortraitParams& params,
                                              unsigned depth) {
  std::vector<TreeAutomorphism> out;
  for (unsigned i = 1; i <= params.r; ++i) {
    out.push_back(pink_generator(i, params, depth));
  }
  return out;
}

std::vector<TreeAutomorphism> pink_generators_recursive(
    const PortraitParams& params, unsigned depth) {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  std::vector<TreeAutomorphism> gens;
  gens.push_back(TreeAutomorphism::root_swap(1));
  for (unsigned i = 2; i <= params.r; ++i) {
    gens.push_back(TreeAutomorphism::identity(1));
  }
  for (unsigned n = 2; n <= depth; ++n) {
    std::vector<TreeAutomorphism> next;
    const TreeAutomorphism e = TreeAutomorphism::identity(n - 1);
    next.push_back(TreeAutomorphism::root_swap(n));
    for (unsigned i = 2; i <= params.r; ++i) {
      if (i == params.s + 1) {
        next.push_back(graft(gens[params.s - 1], gens[params.r - 1]));
      } else {
        next.push_back(graft(gens[i - 2], e));
      }
    }
    gens = std::move(next);
  }
  return gens;
}

unsigned pink_log2_order(unsigned r, unsigned s, unsigned n) {
  if (s < 1 || r <= s) throw Error(ErrorCode::InvalidArgument, "need r > s >= 1");
  if (n == 0 || n > 60) throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= 60");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  if (n <= r) return static_cast<unsigned>(full);
  if (r == 2 && s == 1) return n + 1;
  const std::uint64_t pow_n = std::uint64_t{1} << n;
  if (s == 1) return static_cast<unsigned>(pow_n - 3 * (pow_n >> r) + 2);
  if (r == 3 && s == 2) return static_cast<unsigned>(pow_n - 5 * (pow_n >> 4) + 2);
  return static_cast<unsigned>(pow_n - (pow_n >> (r - 1)) + 1);
}

std::optional<unsigned> exact_log2(std::uint64_t value) noexcept {
  if (value == 0 || !std::has_single_bit(value)) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(value));
}

namespace {

unsigned common_depth(std::span<const TreeAutomorphism> gens) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "no generators");
  const unsigned depth = gens[0].depth();
  for (const TreeAutomorphism& g : gens) {
    if (g.depth() != depth) throw Error(ErrorCode::DepthMismatch, "generator depths differ");
  }
  if (depth > TreeAutomorphism::kMaxPackedDepth) {
    throw Error(ErrorCode::InvalidArgument, "closure supports depth <= 6");
  }
  return depth;
}

// Breadth-first search from the identity, multiplying on the left by each
// generator. In a finite group this reaches the whole generated subgroup.
bool run_closure(std::span<const TreeAutomorphism> gens, std::uint64_t budget,
                 std::vector<std::uint64_t>& order_list) {
  const unsigned depth = common_depth(gens);
  std::vector<std::uint64_t> keys;
  for (const TreeAutomorphism& g : gens) keys.push_back(g.key());
  absl::flat_hash_set<std::uint64_t> seen;
  seen.insert(0);
  order_list.assign(1, 0);
  for (std::size_t head = 0; head < order_list.size(); ++head) {
    const std::uint64_t cur = order_list[head];
    for (std::uint64_t g : keys) {
      const std::uint64_t next = packed::compose(depth, g, cur);
      if (seen.insert(next).second) {
        if (order_list.size() >= budget) return false;
        order_list.push_back(next);
      }
    }
  }
  return true;
}

}  // namespace

ClosureResult closure(std::span<const TreeAutomorphism> gens,
                      std::uint64_t budget) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> elements;
  ClosureResult out;
  out.complete = run_closure(gens, budget, elements);
  out.order = elements.size();
  if (out.complete) out.log2 = exact_log2(out.order);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<std::uint64_t> closure_elements(
    std::span<const TreeAutomorphism> gens, std::uint64_t budget) {
  std::vector<std::uint64_t> elements;
  if (!run_closure(gens, budget, elements)) {
    throw Error(ErrorCode::BudgetExceeded,
                "closure exceeded budget of " + std::to_string(budget));
  }
  return elements;
}

}  // namespace arbor
