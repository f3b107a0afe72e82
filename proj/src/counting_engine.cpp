#include "arbor/counting_engine.hpp"

#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "arbor/error.hpp"
#include "arbor/pink_generators.hpp"

namespace arbor {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Predicate flattened into one array for the hot loop. Mode 0: form must
// vanish; mode 1: form must equal the current reference; mode 2: form sets
// the reference for its block.
struct FlatPredicate {
  std::vector<ParityForm> forms;
  std::vector<unsigned char> modes;

  explicit FlatPredicate(const CompiledPredicate& pred) {
    for (const FormBlock& block : pred.blocks) {
      for (std::size_t i = 0; i < block.forms.size(); ++i) {
        forms.push_back(block.forms[i]);
        modes.push_back(block.zero ? 0 : (i == 0 ? 2 : 1));
      }
    }
  }

  bool operator()(std::uint64_t v) const noexcept {
    unsigned ref = 0;
    const std::size_t count = forms.size();
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned val = forms[i].eval(v);
      const unsigned char mode = modes[i];
      if (mode == 2) {
        ref = val;
      } else if (val != (mode == 0 ? 0u : ref)) {
        return false;
      }
    }
    return true;
  }
};

std::uint64_t count_range(const FlatPredicate& pred, std::uint64_t begin,
                          std::uint64_t end) {
  std::uint64_t count = 0;
  for (std::uint64_t v = begin; v < end; ++v) count += pred(v) ? 1 : 0;
  return count;
}

}  // namespace

CountReport count_predicate(const PortraitParams& params, unsigned n,
                            GroupVariant variant, unsigned workers) {
  if (n == 0 || n > kMaxExhaustiveDepth) {
    throw Error(ErrorCode::InvalidArgument,
                "exhaustive counting supports 1 <= n <= " +
                    std::to_string(kMaxExhaustiveDepth));
  }
  if (workers == 0) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
  const auto start = Clock::now();
  const FlatPredicate pred(compile_predicate(params, n, variant));
  const unsigned bits = (1u << n) - 1;
  const std::uint64_t total = std::uint64_t{1} << bits;

  CountReport rep;
  rep.params = params;
  rep.n = n;
  rep.variant = variant;
  rep.workers = workers;
  if (workers == 1) {
    rep.count = count_range(pred, 0, total);
    rep.method = "exhaustive";
  } else {
    const unsigned shard_bits = std::min(8u, bits);
    const std::uint64_t shards = std::uint64_t{1} << shard_bits;
    const std::uint64_t shard_size = total >> shard_bits;
    std::vector<std::uint64_t> per_shard(shards, 0);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t k = next++; k < shards; k = next++) {
          // Shard k holds the keys whose top shard_bits bits equal k.
          per_shard[k] = count_range(pred, k * shard_size, (k + 1) * shard_size);
        }
      });
    }
    for (auto& t : pool) t.join();
    rep.count = std::accumulate(per_shard.begin(), per_shard.end(), std::uint64_t{0});
    rep.method = "sharded";
  }
  rep.log2 = exact_log2(rep.count);
  rep.seconds = since(start);
  return rep;
}

std::optional<unsigned> kernel_log2_formula(const PortraitParams& params,
                                            unsigned n) {
  if (n <= params.r) return std::nullopt;
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  switch (params.kind) {
    case PortraitCase::LongTail:
      return static_cast<unsigned>(half - (std::uint64_t{1} << (n - params.r)));
    case PortraitCase::SpecialLongTail:
      if (n < 5) return std::nullopt;
      return static_cast<unsigned>(half - 5 * (std::uint64_t{1} << (n - 5)));
    case PortraitCase::ShortTail:
      return static_cast<unsigned>(half - 3 * (std::uint64_t{1} << (n - params.r - 1)));
  }
  return std::nullopt;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::uint64_t spread(std::uint64_t pattern, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    if (pattern & 1u) out |= m & (~m + 1);
    pattern >>= 1;
  }
  return out;
}

// Kernel count as a product over independent blocks of forms. Constant
// blocks couple all components through their shared value, so the product is
// taken separately for each assignment of those values and summed.
std::uint64_t block_product(const CompiledPredicate& pred, std::uint64_t kernel_mask,
                            std::size_t& component_count) {
  struct Item {
    ParityForm form;
    std::size_t block;
    std::uint64_t support;
  };
  std::vector<Item> items;
  std::vector<std::size_t> const_blocks;
  for (std::size_t b = 0; b < pred.blocks.size(); ++b) {
    const FormBlock& block = pred.blocks[b];
    if (block.forms.empty()) continue;
    if (!block.zero) const_blocks.push_back(b);
    for (const ParityForm& f : block.forms) {
      items.push_back({f, b, (f.lin | f.q1 | f.q2) & kernel_mask});
    }
  }
  UnionFind uf(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].support & items[j].support) uf.unite(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> comp_of_root(items.size(), SIZE_MAX);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (comp_of_root[root] == SIZE_MAX) {
      comp_of_root[root] = comps.size();
      comps.emplace_back();
    }
    comps[comp_of_root[root]].push_back(i);
  }
  component_count = comps.size();

  std::uint64_t total = 0;
  const std::size_t combos = std::size_t{1} << const_blocks.size();
  for (std::size_t combo = 0; combo < combos; ++combo) {
    std::vector<unsigned> target(pred.blocks.size(), 0);
    for (std::size_t k = 0; k < const_blocks.size(); ++k) {
      target[const_blocks[k]] = (combo >> k) & 1u;
    }
    std::uint64_t product = 1;
    for (const auto& comp : comps) {
      std::uint64_t mask = 0;
      for (std::size_t i : comp) mask |= items[i].support;
      const unsigned width = static_cast<unsigned>(__builtin_popcountll(mask));
      if (width > 24) {
        throw Error(ErrorCode::BudgetExceeded, "kernel block too wide to enumerate");
      }
      std::uint64_t solutions = 0;
      for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << width); ++pat) {
        const std::uint64_t v = spread(pat, mask);
        bool ok = true;
        for (std::size_t i : comp) {
          if (items[i].form.eval(v) != target[items[i].block]) {
            ok = false;
            break;
          }
        }
        solutions += ok ? 1 : 0;
      }
      product *= solutions;
      if (product == 0) break;
    }
    // Kernel bits no form touches are free.
    std::uint64_t touched = 0;
    for (const Item& it : items) touched |= it.support;
    const unsigned free_bits =
        static_cast<unsigned>(__builtin_popcountll(kernel_mask & ~touched));
    total += product << free_bits;
  }
  return total;
}

}  // namespace

KernelReport kernel_count(const PortraitParams& params, unsigned n,
                          GroupVariant variant) {
  if (n < 2 || n > TreeAutomorphism::kMaxPackedDepth) {
    throw Error(ErrorCode::InvalidArgument, "kernel counts need 2 <= n <= 6");
  }
  const auto start = Clock::now();
  const CompiledPredicate pred = compile_predicate(params, n, variant);
  const unsigned level = n - 1;
  const std::uint64_t first = first_index_at_level(level);
  const std::uint64_t width = std::uint64_t{1} << level;
  const std::uint64_t kernel_mask =
      width == 64 ? ~std::uint64_t{0} : (((std::uint64_t{1} << width) - 1) << first);

  KernelReport rep;
  rep.params = params;
  rep.n = n;
  rep.variant = variant;
  if (n <= 5) {
    std::uint64_t count = 0;
    for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << width); ++pat) {
      count += pred(pat << first) ? 1 : 0;
    }
    rep.count_direct = count;
  }
  rep.count_block = block_product(pred, kernel_mask, rep.blocks);
  rep.log2 = exact_log2(rep.count_block);
  rep.log2_formula = kernel_log2_formula(params, n);
  rep.seconds = since(start);
  return rep;
}

std::vector<OrderRow> verify_order_table(const PortraitParams& params,
                                         unsigned n_max,
                                         const OrderTableOptions& options) {
  std::vector<OrderRow> rows;
  std::optional<unsigned> prev_known;
  for (unsigned n = 1; n <= n_max; ++n) {
    OrderRow row;
    row.r = params.r;
    row.s = params.s;
    row.n = n;
    row.log2_formula = pink_log2_order(params.r, params.s, n);
    if (n <= TreeAutomorphism::kMaxPackedDepth &&
        (row.log2_formula >= 63 ||
         (std::uint64_t{1} << row.log2_formula) <= options.closure_budget)) {
      const ClosureResult c = closure(pink_generators(params, n), options.closure_budget);
      row.closure_partial = !c.complete;
      row.log2_closure = c.complete ? c.log2 : std::nullopt;
      row.closure_seconds = c.seconds;
    }
    if (n <= options.predicate_max_n) {
      const CountReport c = count_predicate(params, n, GroupVariant::tBp, options.workers);
      row.log2_predicate = c.log2;
      row.predicate_seconds = c.seconds;
    }
    if (n >= 2 && n <= TreeAutomorphism::kMaxPackedDepth) {
      row.log2_kernel = kernel_count(params, n, GroupVariant::tBp).log2;
      if (prev_known && row.log2_kernel) row.log2_recursion = *prev_known + *row.log2_kernel;
    } else if (n == 1) {
      row.log2_recursion = 1;
    }
    bool agree = true;
    bool any = false;
    for (const auto& v : {row.log2_closure, row.log2_predicate, row.log2_recursion}) {
      if (v) {
        any = true;
        agree = agree && *v == row.log2_formula;
      }
    }
    row.agree = any && agree && !row.closure_partial;
    // Chain the recursion on measured values only.
    if (row.log2_closure) {
      prev_known = row.log2_closure;
    } else if (row.log2_predicate) {
      prev_known = row.log2_predicate;
    } else {
      prev_known = row.log2_recursion;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace arbor
