#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arbor/parity_functionals.hpp"
#include "arbor/tree_automorphism.hpp"

namespace arbor {

// Words carrying parity 1 in generator i (1-based), up to level depth - 1.
std::vector<TreeWord> pink_support(unsigned i, const PortraitParams& params,
                                   unsigned depth);

TreeAutomorphism pink_generator(unsigned i, const PortraitParams& params,
                                unsigned depth);

// All r generators at the given depth.
std::vector<TreeAutomorphism> pink_generators(const PortraitParams& params,
                                              unsigned depth);

// Same generators built from the graft recursion instead of the closed form.
std::vector<TreeAutomorphism> pink_generators_recursive(
    const PortraitParams& params, unsigned depth);

// log2 of the order of the depth-n Pink group. Accepts (2,1).
unsigned pink_log2_order(unsigned r, unsigned s, unsigned n);

struct ClosureResult {
  std::uint64_t order = 0;
  // False when the budget stopped the search; order is then a lower bound.
  bool complete = false;
  std::optional<unsigned> log2;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultClosureBudget = std::uint64_t{1} << 25;

// Order of the subgroup generated by `gens` (packed depths only).
ClosureResult closure(std::span<const TreeAutomorphism> gens,
                      std::uint64_t budget = kDefaultClosureBudget);

// Every element of the generated subgroup, as packed keys in discovery order.
std::vector<std::uint64_t> closure_elements(
    std::span<const TreeAutomorphism> gens,
    std::uint64_t budget = kDefaultClosureBudget);

std::optional<unsigned> exact_log2(std::uint64_t value) noexcept;

}  // namespace arbor
