#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/tree_automorphism.hpp"
#include "arbor/tree_word.hpp"

namespace arbor {

enum class PortraitCase { LongTail, SpecialLongTail, ShortTail };

const char* case_name(PortraitCase kind) noexcept;

// Critical-orbit shape f^r(0) = -f^s(0) with r > s >= 1, r >= 3.
struct PortraitParams {
  unsigned r = 0;
  unsigned s = 0;
  PortraitCase kind = PortraitCase::LongTail;
  // Exponent in the degree 2^(r+e) of the constant-field extension.
  unsigned e = 1;

  static PortraitParams make(unsigned r, unsigned s);

  friend bool operator==(const PortraitParams&, const PortraitParams&) = default;
};

// P^a, P^b: sums of parities r levels above one child of x and s levels
// above the other. Need |x| <= depth - 1 - r.
unsigned p_a(const TreeAutomorphism& sigma, const TreeWord& x,
             const PortraitParams& params);
unsigned p_b(const TreeAutomorphism& sigma, const TreeWord& x,
             const PortraitParams& params);

// Parities one and two levels above y. Needs |y| <= depth - 3.
unsigned v32(const TreeAutomorphism& sigma, const TreeWord& y);

// Sixteen linear terms plus one quadratic cross term. Needs |x| <= depth - 5.
unsigned r32(const TreeAutomorphism& sigma, const TreeWord& x);

// Par(xa)Par(xb) plus parities r levels above x through xab and xbb.
// Needs |x| <= depth - 1 - r.
unsigned r_r1(const TreeAutomorphism& sigma, const TreeWord& x, unsigned r);

// Highest anchor level for the P and R conditions at this depth, or nullopt
// when the condition is vacuous.
std::optional<unsigned> p_anchor_max(const PortraitParams& params,
                                     unsigned depth);
std::optional<unsigned> r_anchor_max(const PortraitParams& params,
                                     unsigned depth);

struct MembershipViolation {
  TreeWord node;
  std::string kind;
};

// Finite-depth membership in the groups cut out by the parity functionals.
// in_group is membership in the case's M~' group; h_value is P, (P, R) or R
// according to the case, each entry absent when its condition is vacuous.
struct MembershipReport {
  PortraitParams params;
  unsigned depth = 0;
  bool in_group = false;
  bool in_m = false;
  bool in_b = false;
  bool in_tm = false;
  bool in_tb = false;
  bool p_nonvacuous = false;
  bool r_nonvacuous = false;
  std::optional<unsigned> p_value;
  std::optional<unsigned> r_value;
  std::vector<std::optional<unsigned>> h_value;
  std::vector<MembershipViolation> violations;
};

MembershipReport membership(const TreeAutomorphism& sigma,
                            const PortraitParams& params);

// Common value of P (requires M') and of R (requires M~').
unsigned p_value(const TreeAutomorphism& sigma, const PortraitParams& params);
unsigned r_value(const TreeAutomorphism& sigma, const PortraitParams& params);

enum class GroupVariant { Mp, Bp, tMp, tBp };

const char* variant_name(GroupVariant variant) noexcept;
GroupVariant parse_variant(const std::string& text);

bool in_variant(const MembershipReport& report, GroupVariant variant) noexcept;

// A functional compiled against a packed parity key:
// value = parity(v & lin) ^ (parity(v & q1) & parity(v & q2)).
struct ParityForm {
  std::uint64_t lin = 0;
  std::uint64_t q1 = 0;
  std::uint64_t q2 = 0;

  unsigned eval(std::uint64_t v) const noexcept {
    const unsigned l = static_cast<unsigned>(__builtin_parityll(v & lin));
    const unsigned a = static_cast<unsigned>(__builtin_parityll(v & q1));
    const unsigned b = static_cast<unsigned>(__builtin_parityll(v & q2));
    return l ^ (a & b);
  }
};

// All forms of a block either vanish (zero) or share one value.
struct FormBlock {
  std::vector<ParityForm> forms;
  bool zero = false;
  std::string label;
};

// Membership predicate for one variant at packed depth, as blocks of forms.
struct CompiledPredicate {
  unsigned depth = 0;
  std::vector<FormBlock> blocks;

  bool operator()(std::uint64_t v) const noexcept {
    for (const FormBlock& block : blocks) {
      if (block.forms.empty()) continue;
      const unsigned first = block.zero ? 0u : block.forms[0].eval(v);
      for (const ParityForm& form : block.forms) {
        if (form.eval(v) != first) return false;
      }
    }
    return true;
  }
};

CompiledPredicate compile_predicate(const PortraitParams& params,
                                    unsigned depth, GroupVariant variant);

}  // namespace arbor
