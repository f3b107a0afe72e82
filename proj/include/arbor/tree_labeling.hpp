#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/dynamics.hpp"
#include "arbor/finite_field.hpp"

namespace arbor {

// Canonically smaller square roots of -1 and 2 in the tree's field.
FieldElement canonical_zeta4(const FieldCtx& ctx);
FieldElement canonical_sqrt2(const FieldCtx& ctx);

struct LabelSwap {
  // Node whose two children (with their subtrees) were exchanged.
  TreeWord node;
  std::string rule;
};

struct IdentityCheck {
  TreeWord node;
  std::string id;
  bool ok = false;
  FieldElement lhs;
  FieldElement rhs;
};

struct LabelingReport {
  PortraitCase kind = PortraitCase::LongTail;
  std::optional<FieldElement> zeta4;
  std::optional<FieldElement> sqrt2;
  std::vector<LabelSwap> swaps;
  std::vector<IdentityCheck> checks;
  // No node is deep enough for the case's identities.
  bool vacuous = false;
  // Two readings of the four-gamma product square, (3,2) only: the right
  // side with (2 + U_b) and with (2 + c U_b). Counts of anchors where each holds.
  std::size_t gammaprod_anchors = 0;
  std::size_t gammaprod_consistent_holds = 0;
  std::size_t gammaprod_printed_holds = 0;
  std::uint64_t tree_checksum = 0;

  std::size_t failures() const;
  bool all_ok() const { return failures() == 0; }
};

// Labeling normalizations. Each walks levels upward from the root and
// returns the swaps it made; a second call on the result makes none.
std::vector<LabelSwap> label_longtail(LabeledTree& tree, const FieldElement& zeta4);
std::vector<LabelSwap> label_special(LabeledTree& tree, const FieldElement& zeta4,
                                     const FieldElement& sqrt2);
std::vector<LabelSwap> label_shorttail(LabeledTree& tree, const FieldElement& sqrt2);

struct SpecialQuantities {
  // Indexed by w = aa, ab, ba, bb.
  std::array<FieldElement, 4> gamma;
  std::array<FieldElement, 4> gamma_prime;
  // u_1..u_4 = [xaaa], [xaba], [xbaa], [xbba].
  std::array<FieldElement, 4> u;
  FieldElement ua;
  FieldElement ub;
  // Absent when 4(c^2 + c + 1)(2 + U_a + U_b) vanishes.
  std::optional<FieldElement> delta;
};

// Quantities anchored at x for (3,2); needs |x| <= depth - 5.
SpecialQuantities special_quantities(const LabeledTree& tree, const TreeWord& x);

// Checks every identity of the tree's case at every node where it is
// defined. Failures are recorded, never thrown.
LabelingReport verify_identities(const LabeledTree& tree);

// Runs the normalization for the tree's case, then verifies.
LabelingReport label_tree(LabeledTree& tree);

}  // namespace arbor
