#include "arbor/parity_functionals.hpp"

#include "arbor/error.hpp"

namespace arbor {
namespace {

std::uint64_t idx_of(const TreeWord& x, unsigned sym1) {
  return x.index() * 2 + 1 + sym1;
}

std::uint64_t idx_of(const TreeWord& x, unsigned sym1, unsigned sym2) {
  return idx_of(x, sym1) * 2 + 1 + sym2;
}

// Parity sum over all nodes exactly `up` levels above `node`.
unsigned level_sum(const TreeAutomorphism& sigma, std::uint64_t node,
                   unsigned up) {
  return sigma.parity_of_range(first_descendant(node, up),
                               std::uint64_t{1} << up);
}

void require_level(const TreeAutomorphism& sigma, const TreeWord& x,
                   unsigned above, const char* what) {
  if (x.length() + above > sigma.depth()) {
    throw Error(ErrorCode::LevelOutOfRange,
                std::string(what) + ": anchor '" + x.str() +
                    "' too high for depth " + std::to_string(sigma.depth()));
  }
}

unsigned p_side(const TreeAutomorphism& sigma, const TreeWord& x,
                const PortraitParams& params, unsigned long_sym) {
  require_level(sigma, x, params.r + 1, "P functional");
  const std::uint64_t long_child = idx_of(x, long_sym);
  const std::uint64_t short_child = idx_of(x, 1 - long_sym);
  return level_sum(sigma, long_child, params.r - 1) ^
         level_sum(sigma, short_child, params.s - 1);
}

}  // namespace

const char* case_name(PortraitCase kind) noexcept {
  switch (kind) {
    case PortraitCase::LongTail: return "long";
    case PortraitCase::SpecialLongTail: return "special";
    case PortraitCase::ShortTail: return "short";
  }
  return "unknown";
}

PortraitParams PortraitParams::make(unsigned r, unsigned s) {
  if (s < 1 || r <= s) {
    throw Error(ErrorCode::InvalidArgument, "need r > s >= 1");
  }
  if (r < 3) {
    throw Error(ErrorCode::InvalidArgument,
                "(r,s) = (2,1) is the Chebyshev case and is not supported");
  }
  PortraitParams out;
  out.r = r;
  out.s = s;
  if (r == 3 && s == 2) {
    out.kind = PortraitCase::SpecialLongTail;
    out.e = 2;
  } else if (s == 1) {
    out.kind = PortraitCase::ShortTail;
  } else {
    out.kind = PortraitCase::LongTail;
  }
  return out;
}

unsigned p_a(const TreeAutomorphism& sigma, const TreeWord& x,
             const PortraitParams& params) {
  return p_side(sigma, x, params, 0);
}

unsigned p_b(const TreeAutomorphism& sigma, const TreeWord& x,
             const PortraitParams& params) {
  return p_side(sigma, x, params, 1);
}

unsigned v32(const TreeAutomorphism& sigma, const TreeWord& y) {
  require_level(sigma, y, 3, "V functional");
  return level_sum(sigma, y.index(), 2) ^ level_sum(sigma, y.index(), 1);
}

unsigned r32(const TreeAutomorphism& sigma, const TreeWord& x) {
  require_level(sigma, x, 5, "R functional");
  unsigned acc = level_sum(sigma, x.index(), 2);
  for (unsigned w1 = 0; w1 < 2; ++w1) {
    for (unsigned w2 = 0; w2 < 2; ++w2) {
      const std::uint64_t xw = idx_of(x, w1, w2);
      const std::uint64_t xwa = 2 * xw + 1;
      acc ^= sigma.par_at(2 * xw + 2);
      acc ^= sigma.par_at(2 * xwa + 1) ^ sigma.par_at(2 * xwa + 2);
    }
  }
  const unsigned left = sigma.par_at(idx_of(x, 0, 0)) ^ sigma.par_at(idx_of(x, 0, 1));
  const unsigned right = sigma.par_at(idx_of(x, 1, 0)) ^ sigma.par_at(idx_of(x, 1, 1));
  return acc ^ (left & right);
}

unsigned r_r1(const TreeAutomorphism& sigma, const TreeWord& x, unsigned r) {
  if (r < 3) throw Error(ErrorCode::InvalidArgument, "R_{r,1} needs r >= 3");
  require_level(sigma, x, r + 1, "R functional");
  const unsigned quad = sigma.par_at(idx_of(x, 0)) & sigma.par_at(idx_of(x, 1));
  return quad ^ level_sum(sigma, idx_of(x, 0, 1), r - 2) ^
         level_sum(sigma, idx_of(x, 1, 1), r - 2);
}

std::optional<unsigned> p_anchor_max(const PortraitParams& params,
                                     unsigned depth) {
  if (depth < params.r + 1) return std::nullopt;
  return depth - 1 - params.r;
}

std::optional<unsigned> r_anchor_max(const PortraitParams& params,
                                     unsigned depth) {
  switch (params.kind) {
    case PortraitCase::LongTail: return std::nullopt;
    case PortraitCase::SpecialLongTail:
      if (depth < 5) return std::nullopt;
      return depth - 5;
    case PortraitCase::ShortTail: return p_anchor_max(params, depth);
  }
  return std::nullopt;
}

MembershipReport membership(const TreeAutomorphism& sigma,
                            const PortraitParams& params) {
  MembershipReport rep;
  rep.params = params;
  rep.depth = sigma.depth();
  const auto p_max = p_anchor_max(params, sigma.depth());
  const auto r_max = r_anchor_max(params, sigma.depth());
  rep.p_nonvacuous = p_max.has_value();
  rep.r_nonvacuous = r_max.has_value();

  std::vector<MembershipViolation> p_const_viol;
  std::vector<MembershipViolation> p_zero_viol;
  bool p_equal = true;
  bool p_zero = true;
  std::optional<unsigned> p_common;
  if (p_max) {
    const std::uint64_t end = first_index_at_level(*p_max + 1);
    for (std::uint64_t i = 0; i < end; ++i) {
      const TreeWord x = TreeWord::from_index(i);
      const unsigned va = p_a(sigma, x, params);
      const unsigned vb = p_b(sigma, x, params);
      if (!p_common) p_common = va;
      if (va != vb) {
        p_equal = false;
        p_const_viol.push_back({x, "pa_ne_pb"});
      } else if (va != *p_common) {
        p_equal = false;
        p_const_viol.push_back({x, "p_not_constant"});
      }
      if (va != 0 || vb != 0) {
        p_zero = false;
        p_zero_viol.push_back({x, "p_nonzero"});
      }
    }
  }
  rep.in_m = p_equal;
  rep.in_b = p_equal && p_zero;
  if (rep.in_m && rep.p_nonvacuous) rep.p_value = *p_common;

  std::vector<MembershipViolation> r_viol;
  bool r_const = true;
  std::optional<unsigned> r_common;
  if (r_max) {
    const std::uint64_t end = first_index_at_level(*r_max + 1);
    for (std::uint64_t i = 0; i < end; ++i) {
      const TreeWord x = TreeWord::from_index(i);
      const unsigned v = params.kind == PortraitCase::SpecialLongTail
                             ? r32(sigma, x)
                             : r_r1(sigma, x, params.r);
      if (!r_common) r_common = v;
      if (v != *r_common) {
        r_const = false;
        r_viol.push_back({x, "r_not_constant"});
      }
    }
  }
  const bool r_zero = !r_common || *r_common == 0;

  switch (params.kind) {
    case PortraitCase::LongTail:
      rep.in_tm = rep.in_m;
      rep.in_tb = rep.in_b;
      rep.violations = p_const_viol;
      if (rep.in_tm) rep.h_value = {rep.p_value};
      break;
    case PortraitCase::SpecialLongTail:
      rep.in_tm = rep.in_m && r_const;
      rep.in_tb = rep.in_b && r_const && r_zero;
      rep.violations = p_const_viol;
      rep.violations.insert(rep.violations.end(), r_viol.begin(), r_viol.end());
      if (rep.in_tm && rep.r_nonvacuous) rep.r_value = *r_common;
      if (rep.in_tm) rep.h_value = {rep.p_value, rep.r_value};
      break;
    case PortraitCase::ShortTail:
      rep.in_tm = rep.in_b && r_const;
      rep.in_tb = rep.in_tm && r_zero;
      rep.violations = p_const_viol;
      if (rep.in_m) {
        rep.violations.insert(rep.violations.end(), p_zero_viol.begin(),
                              p_zero_viol.end());
      }
      rep.violations.insert(rep.violations.end(), r_viol.begin(), r_viol.end());
      if (rep.in_tm && rep.r_nonvacuous) rep.r_value = *r_common;
      if (rep.in_tm) rep.h_value = {rep.r_value};
      break;
  }
  rep.in_group = rep.in_tm;
  return rep;
}

unsigned p_value(const TreeAutomorphism& sigma, const PortraitParams& params) {
  const MembershipReport rep = membership(sigma, params);
  if (!rep.p_nonvacuous) {
    throw Error(ErrorCode::VacuousDepth, "P conditions vacuous at this depth");
  }
  if (!rep.in_m) throw Error(ErrorCode::NotAMember, "not in M'");
  return *rep.p_value;
}

unsigned r_value(const TreeAutomorphism& sigma, const PortraitParams& params) {
  if (params.kind == PortraitCase::LongTail) {
    throw Error(ErrorCode::InvalidArgument, "no R functional in the long-tail case");
  }
  const MembershipReport rep = membership(sigma, params);
  if (!rep.r_nonvacuous) {
    throw Error(ErrorCode::VacuousDepth, "R conditions vacuous at this depth");
  }
  if (!rep.in_tm) throw Error(ErrorCode::NotAMember, "not in M~'");
  return *rep.r_value;
}

const char* variant_name(GroupVariant variant) noexcept {
  switch (variant) {
    case GroupVariant::Mp: return "Mp";
    case GroupVariant::Bp: return "Bp";
    case GroupVariant::tMp: return "tMp";
    case GroupVariant::tBp: return "tBp";
  }
  return "unknown";
}

GroupVariant parse_variant(const std::string& text) {
  if (text == "Mp" || text == "M") return GroupVariant::Mp;
  if (text == "Bp" || text == "B") return GroupVariant::Bp;
  if (text == "tMp" || text == "tM") return GroupVariant::tMp;
  if (text == "tBp" || text == "tB") return GroupVariant::tBp;
  throw Error(ErrorCode::InvalidArgument, "unknown group variant '" + text + "'");
}

bool in_variant(const MembershipReport& report, GroupVariant variant) noexcept {
  switch (variant) {
    case GroupVariant::Mp: return report.in_m;
    case GroupVariant::Bp: return report.in_b;
    case GroupVariant::tMp: return report.in_tm;
    case GroupVariant::tBp: return report.in_tb;
  }
  return false;
}

namespace {

std::uint64_t range_mask(std::uint64_t first, std::uint64_t count) {
  std::uint64_t mask = 0;
  for (std::uint64_t i = 0; i < count; ++i) mask |= std::uint64_t{1} << (first + i);
  return mask;
}

std::uint64_t bit(std::uint64_t node) { return std::uint64_t{1} << node; }

std::uint64_t child(std::uint64_t node, unsigned sym) {
  return 2 * node + 1 + sym;
}

ParityForm p_form(std::uint64_t x, const PortraitParams& params,
                  unsigned long_sym) {
  ParityForm f;
  f.lin = range_mask(first_descendant(child(x, long_sym), params.r - 1),
                     std::uint64_t{1} << (params.r - 1)) ^
          range_mask(first_descendant(child(x, 1 - long_sym), params.s - 1),
                     std::uint64_t{1} << (params.s - 1));
  return f;
}

ParityForm r32_form(std::uint64_t x) {
  ParityForm f;
  f.lin = range_mask(first_descendant(x, 2), 4);
  for (unsigned w = 0; w < 4; ++w) {
    const std::uint64_t xw = first_descendant(x, 2) + w;
    f.lin ^= bit(child(xw, 1));
    f.lin ^= bit(child(child(xw, 0), 0)) ^ bit(child(child(xw, 0), 1));
  }
  f.q1 = bit(child(child(x, 0), 0)) | bit(child(child(x, 0), 1));
  f.q2 = bit(child(child(x, 1), 0)) | bit(child(child(x, 1), 1));
  return f;
}

ParityForm rr1_form(std::uint64_t x, unsigned r) {
  ParityForm f;
  const std::uint64_t count = std::uint64_t{1} << (r - 2);
  f.lin = range_mask(first_descendant(child(child(x, 0), 1), r - 2), count) ^
          range_mask(first_descendant(child(child(x, 1), 1), r - 2), count);
  f.q1 = bit(child(x, 0));
  f.q2 = bit(child(x, 1));
  return f;
}

}  // namespace

CompiledPredicate compile_predicate(const PortraitParams& params,
                                    unsigned depth, GroupVariant variant) {
  if (depth == 0 || depth > TreeAutomorphism::kMaxPackedDepth) {
    throw Error(ErrorCode::InvalidArgument, "compiled predicates need depth 1..6");
  }
  CompiledPredicate pred;
  pred.depth = depth;

  FormBlock p_block;
  p_block.label = "P";
  if (const auto p_max = p_anchor_max(params, depth)) {
    for (std::uint64_t x = 0; x < first_index_at_level(*p_max + 1); ++x) {
      p_block.forms.push_back(p_form(x, params, 0));
      p_block.forms.push_back(p_form(x, params, 1));
    }
  }
  FormBlock r_block;
  r_block.label = "R";
  if (const auto r_max = r_anchor_max(params, depth)) {
    for (std::uint64_t x = 0; x < first_index_at_level(*r_max + 1); ++x) {
      r_block.forms.push_back(params.kind == PortraitCase::SpecialLongTail
                                  ? r32_form(x)
                                  : rr1_form(x, params.r));
    }
  }

  const bool short_tail = params.kind == PortraitCase::ShortTail;
  const bool with_r = params.kind != PortraitCase::LongTail &&
                      (variant == GroupVariant::tMp || variant == GroupVariant::tBp);
  p_block.zero = variant == GroupVariant::Bp || variant == GroupVariant::tBp ||
                 (short_tail && variant == GroupVariant::tMp);
  r_block.zero = variant == GroupVariant::tBp;
  pred.blocks.push_back(std::move(p_block));
  if (with_r) pred.blocks.push_back(std::move(r_block));
  return pred;
}

}  // namespace arbor
