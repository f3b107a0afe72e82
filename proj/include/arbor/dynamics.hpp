#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "arbor/finite_field.hpp"
#include "arbor/parity_functionals.hpp"
#include "arbor/tree_word.hpp"

namespace arbor {

// Critical orbit of f(z) = z^2 + c: 0 -> f(0) -> f^2(0) -> ...
struct OrbitPortrait {
  FieldElement c;
  unsigned r = 0;
  unsigned s = 0;
  // Tail length s + 1 and cycle length r - s of the critical orbit.
  unsigned tail = 0;
  unsigned cycle = 0;
  // f^0(0), ..., f^{r+1}(0); f^{r+1}(0) = f^{s+1}(0).
  std::vector<FieldElement> orbit;
  // f(0), ..., f^r(0) pairwise distinct.
  bool distinct = false;
};

// Minimal (r, s) with f^r(0) = -f^s(0). Absent when 0 is periodic (s = 0)
// or for the Chebyshev parameter (r, s) = (2, 1). c must lie in F_p.
std::optional<OrbitPortrait> orbit_portrait(const FieldCtx& ctx, const FieldElement& c);
std::optional<OrbitPortrait> orbit_portrait(std::uint64_t p, std::uint64_t c);

// Integer polynomials, coefficient of x^i at index i.
using IntPoly = std::vector<mpz_class>;

// f_x^n(0) in Z[x].
IntPoly critical_iterate(unsigned n);
// F_{r,s}(x) = f_x^r(0) + f_x^s(0).
IntPoly misiurewicz_poly(unsigned r, unsigned s);

struct PcfParam {
  std::uint64_t p = 0;
  std::uint64_t c = 0;
  friend bool operator==(const PcfParam&, const PcfParam&) = default;
};

// All (p, c) with p <= p_max an odd prime and c in F_p a root of F_{r,s}
// whose critical portrait is exactly (r, s). Sorted by (p, c).
std::vector<PcfParam> find_pcf_params(unsigned r, unsigned s, std::uint64_t p_max);

// Polynomials over F_2 as coefficient bytes.
using Gf2Poly = std::vector<std::uint8_t>;

// f_x^n(0) mod 2 by exact squaring over F_2.
Gf2Poly critical_iterate_mod2(unsigned n);
// f_x^n(0) = sum_{i<n} x^{2^i} mod 2 for every n <= n_max.
bool mod2_iterate_check(unsigned n_max);
// F_{r,s} mod 2 = g(x)^{2^s} with g = sum_{i<r-s} x^{2^i}.
bool misiurewicz_mod2_check(unsigned r, unsigned s);

// Preimage tree of x0 under f, node values in heap order: node w of length k
// holds [w] with f([wt]) = [w].
class LabeledTree {
 public:
  static constexpr unsigned kMaxDepth = 12;

  const std::shared_ptr<const FieldCtx>& ctx() const noexcept { return ctx_; }
  const FieldElement& c() const noexcept { return c_; }
  const FieldElement& x0() const noexcept { return x0_; }
  unsigned depth() const noexcept { return depth_; }
  const PortraitParams& params() const noexcept { return params_; }
  std::size_t node_count() const noexcept { return values_.size(); }

  const FieldElement& at(const TreeWord& w) const;
  const FieldElement& at_index(std::size_t index) const { return values_.at(index); }
  const std::vector<FieldElement>& values() const noexcept { return values_; }

  // Exchanges the labels of the two children of w, carrying their subtrees.
  void swap_children(const TreeWord& w);

  // Heap index of the node at `level` carrying `value`, if any.
  std::optional<std::size_t> find(unsigned level, const FieldElement& value) const;

  // FNV-1a over every node value; ties reports to one tree instance.
  std::uint64_t checksum() const;

 private:
  friend LabeledTree preimage_tree(std::shared_ptr<const FieldCtx>, const FieldElement&,
                                   const FieldElement&, unsigned,
                                   const std::optional<PortraitParams>&);
  std::shared_ptr<const FieldCtx> ctx_;
  FieldElement c_;
  FieldElement x0_;
  unsigned depth_ = 0;
  PortraitParams params_;
  std::vector<FieldElement> values_;
};

// Builds the tree to `depth` with the canonically smaller sibling labeled a.
// Rejects a periodic or postcritical x0 and a c whose portrait is absent or
// differs from `expected`.
LabeledTree preimage_tree(std::shared_ptr<const FieldCtx> ctx, const FieldElement& c,
                          const FieldElement& x0, unsigned depth,
                          const std::optional<PortraitParams>& expected = std::nullopt);

// Whether x0 in F_p is periodic under z^2 + c.
bool is_periodic_point(std::uint64_t p, std::uint64_t c, std::uint64_t x0);

// Base points in F_p that are neither periodic nor postcritical, ascending.
std::vector<std::uint64_t> valid_base_points(std::uint64_t p, std::uint64_t c);

}  // namespace arbor
