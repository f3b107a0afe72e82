#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/parity_functionals.hpp"

namespace arbor {

struct CountReport {
  PortraitParams params;
  unsigned n = 0;
  GroupVariant variant = GroupVariant::tBp;
  std::uint64_t count = 0;
  std::optional<unsigned> log2;
  std::string method;
  unsigned workers = 1;
  double seconds = 0.0;
};

// Largest depth counted by full enumeration of Aut(T_n).
inline constexpr unsigned kMaxExhaustiveDepth = 5;

// Number of sigma in Aut(T_n) satisfying the variant's predicate. One worker
// runs a single pass; more workers split the range by the top 8 key bits.
CountReport count_predicate(const PortraitParams& params, unsigned n,
                            GroupVariant variant, unsigned workers = 1);

struct KernelReport {
  PortraitParams params;
  unsigned n = 0;
  GroupVariant variant = GroupVariant::tBp;
  // Elements of the predicate group supported on level n-1 only.
  std::optional<std::uint64_t> count_direct;
  std::uint64_t count_block = 0;
  std::optional<unsigned> log2;
  // Closed form for the kernel size where one is known.
  std::optional<unsigned> log2_formula;
  std::size_t blocks = 0;
  double seconds = 0.0;
};

// Kernel of restriction from depth n to n-1 inside the predicate group.
// Direct enumeration runs for n <= 5; the block product runs for n <= 6.
KernelReport kernel_count(const PortraitParams& params, unsigned n,
                          GroupVariant variant = GroupVariant::tBp);

// 2^{n-1} - 2^{n-r}, 2^{n-1} - 5*2^{n-5} or 2^{n-1} - 3*2^{n-r-1} by case,
// when n is in the range those formulas cover.
std::optional<unsigned> kernel_log2_formula(const PortraitParams& params,
                                            unsigned n);

struct OrderRow {
  unsigned r = 0;
  unsigned s = 0;
  unsigned n = 0;
  unsigned log2_formula = 0;
  std::optional<unsigned> log2_closure;
  std::optional<unsigned> log2_predicate;
  std::optional<unsigned> log2_kernel;
  // log2 of the previous depth's group plus log2 of this depth's kernel.
  std::optional<unsigned> log2_recursion;
  bool closure_partial = false;
  bool agree = false;
  double closure_seconds = 0.0;
  double predicate_seconds = 0.0;
};

struct OrderTableOptions {
  std::uint64_t closure_budget = std::uint64_t{1} << 25;
  unsigned predicate_max_n = kMaxExhaustiveDepth;
  unsigned workers = 1;
};

std::vector<OrderRow> verify_order_table(const PortraitParams& params,
                                         unsigned n_max,
                                         const OrderTableOptions& options = {});

}  // namespace arbor
