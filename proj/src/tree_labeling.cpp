#include "arbor/tree_labeling.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor {
namespace {

TreeWord ext(const TreeWord& x, std::string_view tail) {
  return x.concat(TreeWord::parse(tail));
}

TreeWord ext_a(const TreeWord& x, unsigned k) { return x.concat(TreeWord::from_bits(k, 0)); }

// Product of [y w a] over all words w of length k.
FieldElement a_product(const LabeledTree& t, const TreeWord& y, unsigned k) {
  FieldElement prod = t.ctx()->one();
  const std::uint64_t first = first_descendant(y.index(), k);
  for (std::uint64_t i = first; i < first + (std::uint64_t{1} << k); ++i) {
    prod *= t.at_index(2 * i + 1);
  }
  return prod;
}

std::vector<TreeWord> level_words(unsigned level) {
  std::vector<TreeWord> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
    out.push_back(TreeWord::from_bits(level, v));
  }
  return out;
}

// Ratios of the fourth-root-of-unity identity anchored at x.
std::pair<FieldElement, FieldElement> fourprod_ratios(const LabeledTree& t, const TreeWord& x) {
  const unsigned r = t.params().r;
  const unsigned s = t.params().s;
  const FieldElement g1 = a_product(t, x.a(), r - 1) * a_product(t, x.b(), s - 1).inverse();
  const FieldElement g2 = a_product(t, x.b(), r - 1) * a_product(t, x.a(), s - 1).inverse();
  return {g1, g2};
}

struct ShortTail {
  FieldElement e_aa, e_ab, e_ba, e_bb;
};

ShortTail short_products(const LabeledTree& t, const TreeWord& x) {
  const unsigned k = t.params().r - 2;
  return {a_product(t, ext(x, "aa"), k), a_product(t, ext(x, "ab"), k),
          a_product(t, ext(x, "ba"), k), a_product(t, ext(x, "bb"), k)};
}

std::array<FieldElement, 4> short_ratios(const ShortTail& e) {
  return {(e.e_aa + e.e_ab) * e.e_bb.inverse(), (e.e_ab - e.e_aa) * e.e_ba.inverse(),
          (e.e_ba + e.e_bb) * e.e_ab.inverse(), (e.e_bb - e.e_ba) * e.e_aa.inverse()};
}

void require_case(const LabeledTree& t, bool ok, const char* what) {
  if (!ok) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " does not apply to portrait case " + case_name(t.params().kind));
  }
}

std::string word_str(const TreeWord& w) { return w.empty() ? "root" : w.str(); }

}  // namespace

FieldElement canonical_zeta4(const FieldCtx& ctx) {
  const auto r = ctx.sqrt(-ctx.one());
  if (!r) throw Error(ErrorCode::MissingSquareRoot, "-1 has no square root in this field");
  return r->first;
}

FieldElement canonical_sqrt2(const FieldCtx& ctx) {
  const auto r = ctx.sqrt(ctx.from_int(2));
  if (!r) throw Error(ErrorCode::MissingSquareRoot, "2 has no square root in this field");
  return r->first;
}

std::size_t LabelingReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.ok; }));
}

std::vector<LabelSwap> label_longtail(LabeledTree& tree, const FieldElement& zeta4) {
  require_case(tree, tree.params().kind != PortraitCase::ShortTail, "long-tail labeling");
  const unsigned r = tree.params().r;
  std::vector<LabelSwap> swaps;
  for (unsigned n = r + 1; n <= tree.depth(); ++n) {
    for (const TreeWord& x : level_words(n - r - 1)) {
      // Each swap below flips exactly one factor of one ratio.
      const auto [g1, g2] = fourprod_ratios(tree, x);
      for (int which = 0; which < 2; ++which) {
        const FieldElement& g = which == 0 ? g1 : g2;
        if (g == zeta4) continue;
        if (!(g == -zeta4)) {
          throw Error(ErrorCode::InvariantViolation,
                      "fourth-root ratio does not square to -1 at " + word_str(x));
        }
        const TreeWord target = which == 0 ? ext_a(x, r) : ext_a(x.b(), r - 1);
        tree.swap_children(target);
        swaps.push_back({target, which == 0 ? "fourprod_1" : "fourprod_2"});
      }
    }
  }
  return swaps;
}

SpecialQuantities special_quantities(const LabeledTree& tree, const TreeWord& x) {
  require_case(tree, tree.params().kind == PortraitCase::SpecialLongTail, "special quantities");
  if (x.length() + 5 > tree.depth()) {
    throw Error(ErrorCode::LevelOutOfRange, "special quantities need |x| <= depth - 5");
  }
  const FieldCtx& ctx = *tree.ctx();
  const FieldElement& c = tree.c();
  SpecialQuantities q;
  static constexpr const char* kWords[4] = {"aa", "ab", "ba", "bb"};
  for (int i = 0; i < 4; ++i) {
    const TreeWord xw = ext(x, kWords[i]);
    const FieldElement left = tree.at(ext(xw, "aaa")) * tree.at(ext(xw, "aba")) * tree.at(ext(xw, "ba"));
    const FieldElement right = tree.at(ext(xw, "baa")) * tree.at(ext(xw, "bba")) * tree.at(ext(xw, "aa"));
    q.gamma[i] = left + right;
    q.gamma_prime[i] = left - right;
    q.u[i] = tree.at(ext(xw, "a"));
  }
  q.ua = c * q.u[0] * q.u[1];
  q.ub = c * q.u[2] * q.u[3];
  const FieldElement two = ctx.from_int(2);
  const FieldElement denom =
      ctx.from_int(4) * (c * c + c + ctx.one()) * (two + q.ua + q.ub);
  if (!denom.is_zero()) {
    q.delta = q.gamma[0] * q.gamma[1] * q.gamma[2] * q.gamma[3] * denom.inverse();
  }
  return q;
}

std::vector<LabelSwap> label_special(LabeledTree& tree, const FieldElement& zeta4,
                                     const FieldElement& sqrt2) {
  require_case(tree, tree.params().kind == PortraitCase::SpecialLongTail, "special labeling");
  (void)zeta4;
  std::vector<LabelSwap> swaps;
  if (tree.depth() < 5) return swaps;
  const FieldElement two = tree.ctx()->from_int(2);
  for (unsigned level = 0; level + 5 <= tree.depth(); ++level) {
    for (const TreeWord& x : level_words(level)) {
      const SpecialQuantities q = special_quantities(tree, x);
      if (!q.delta) {
        throw Error(ErrorCode::InvariantViolation, "U_a or U_b equals -2 at " + word_str(x));
      }
      if (!(*q.delta * *q.delta == two)) {
        throw Error(ErrorCode::InvariantViolation, "delta does not square to 2 at " + word_str(x));
      }
      if (*q.delta == sqrt2) continue;
      // Flips the sign of gamma_aa only; the four-products keep their value.
      for (const char* tail : {"aaa", "aab"}) {
        const TreeWord target = ext(x, tail);
        tree.swap_children(target);
        swaps.push_back({target, "deltaprod"});
      }
    }
  }
  return swaps;
}

std::vector<LabelSwap> label_shorttail(LabeledTree& tree, const FieldElement& sqrt2) {
  require_case(tree, tree.params().kind == PortraitCase::ShortTail, "short-tail labeling");
  const unsigned r = tree.params().r;
  const FieldElement two = tree.ctx()->from_int(2);
  std::vector<LabelSwap> swaps;
  for (unsigned n = r + 1; n <= tree.depth(); ++n) {
    for (const TreeWord& x : level_words(n - r - 1)) {
      ShortTail e = short_products(tree, x);
      const FieldElement& xaa = tree.at(ext(x, "aa"));
      const FieldElement& xba = tree.at(ext(x, "ba"));
      struct Lock {
        FieldElement prod;
        const FieldElement& target;
        TreeWord node;
        const char* rule;
      };
      const Lock locks[2] = {{e.e_aa * e.e_ab, xba, ext_a(x, r), "shorttaillock_1"},
                             {e.e_ba * e.e_bb, xaa, ext_a(x.b(), r - 1), "shorttaillock_2"}};
      for (const Lock& lock : locks) {
        if (lock.prod == lock.target) continue;
        if (!(lock.prod == -lock.target)) {
          throw Error(ErrorCode::InvariantViolation,
                      "short-tail product is not +-[x..] at " + word_str(x));
        }
        tree.swap_children(lock.node);
        swaps.push_back({lock.node, lock.rule});
      }
      e = short_products(tree, x);
      const FieldElement a1 = short_ratios(e)[0];
      if (!(a1 * a1 == two)) {
        throw Error(ErrorCode::InvariantViolation, "ratio does not square to 2 at " + word_str(x));
      }
      if (a1 == sqrt2) continue;
      // Negates E_xaa and E_xab together.
      for (const char* head : {"aa", "ab"}) {
        const TreeWord target = ext_a(ext(x, head), r - 2);
        tree.swap_children(target);
        swaps.push_back({target, "root2prod"});
      }
    }
  }
  return swaps;
}

LabelingReport verify_identities(const LabeledTree& tree) {
  const FieldCtx& ctx = *tree.ctx();
  const PortraitParams& params = tree.params();
  const unsigned depth = tree.depth();
  const FieldElement& c = tree.c();
  const FieldElement one = ctx.one();
  const FieldElement two = ctx.from_int(2);

  LabelingReport rep;
  rep.kind = params.kind;
  rep.tree_checksum = tree.checksum();
  const bool long_like = params.kind != PortraitCase::ShortTail;
  if (long_like) rep.zeta4 = canonical_zeta4(ctx);
  if (params.kind != PortraitCase::LongTail) rep.sqrt2 = canonical_sqrt2(ctx);
  rep.vacuous = depth < params.r + 1;

  auto check = [&rep](const TreeWord& x, const char* id, const FieldElement& lhs,
                      const FieldElement& rhs) {
    rep.checks.push_back({x, id, lhs == rhs, lhs, rhs});
  };

  // f^m(0) for m = 0..depth.
  std::vector<FieldElement> crit{ctx.zero()};
  for (unsigned m = 1; m <= depth; ++m) crit.push_back(crit.back() * crit.back() + c);

  for (unsigned level = 0; level < depth; ++level) {
    for (const TreeWord& y : level_words(level)) {
      for (unsigned m = 1; level + m <= depth; ++m) {
        const FieldElement half = a_product(tree, y, m - 1);
        const FieldElement rhs = m == 1 ? tree.at(y) - c : crit[m] - tree.at(y);
        check(y, "prop21", half * half, rhs);
      }
    }
  }

  if (long_like) {
    for (unsigned level = 0; level + params.r + 1 <= depth; ++level) {
      for (const TreeWord& x : level_words(level)) {
        const auto [g1, g2] = fourprod_ratios(tree, x);
        check(x, "iroot_1", g1 * g1, -one);
        check(x, "iroot_2", g2 * g2, -one);
        check(x, "fourprod_1", g1, *rep.zeta4);
        check(x, "fourprod_2", g2, *rep.zeta4);
      }
    }
  }

  if (params.kind == PortraitCase::SpecialLongTail) {
    const FieldElement k1 = c * c + c + one;
    const FieldElement k2 = c * c + c + two;
    for (unsigned level = 0; level + 5 <= depth; ++level) {
      for (const TreeWord& x : level_words(level)) {
        const SpecialQuantities q = special_quantities(tree, x);
        const auto& g = q.gamma;
        const auto& gp = q.gamma_prime;
        const FieldElement u12 = q.u[0] * q.u[1];
        const FieldElement u34 = q.u[2] * q.u[3];
        check(x, "gamma1square", g[0] * g[0], two * (tree.at(ext(x, "aa")) + k2 - u34));
        check(x, "gamma2square", g[1] * g[1], two * (tree.at(ext(x, "ab")) + k2 - u34));
        check(x, "gamma3square", g[2] * g[2], two * (tree.at(ext(x, "ba")) + k2 - u12));
        check(x, "gamma4square", g[3] * g[3], two * (tree.at(ext(x, "bb")) + k2 - u12));
        const FieldElement p12 = g[0] * g[1];
        const FieldElement p34 = g[2] * g[3];
        const FieldElement eight = ctx.from_int(8);
        check(x, "g1g2", p12 * p12, eight * k1 * (two + q.ub));
        check(x, "g3g4", p34 * p34, eight * k1 * (two + q.ua));
        const FieldElement prod = p12 * p34;
        const FieldElement lhs = prod * prod;
        const FieldElement base = ctx.from_int(64) * k1 * k1 * (two + q.ua);
        const FieldElement consistent = base * (two + q.ub);
        const FieldElement printed = base * (two + c * q.ub);
        ++rep.gammaprod_anchors;
        if (lhs == consistent) ++rep.gammaprod_consistent_holds;
        if (lhs == printed) ++rep.gammaprod_printed_holds;
        check(x, "gammaprod", lhs, consistent);
        const FieldElement big = two + q.ua + q.ub;
        check(x, "bigdenom", big * big, two * (two + q.ua) * (two + q.ub));
        if (q.delta) {
          check(x, "delta2", *q.delta * *q.delta, two);
          check(x, "deltaprod", *q.delta, *rep.sqrt2);
        } else {
          rep.checks.push_back({x, "delta2", false, ctx.zero(), two});
        }
        check(x, "step1_a", gp[0] * gp[1] * (two + q.ub), -q.ua * p12);
        check(x, "step1_b", gp[2] * gp[3] * (two + q.ua), -q.ub * p34);
        check(x, "step1_c", big * q.ua * q.ub, -(two + q.ua) * (two + q.ub) * (two - q.ua - q.ub));
        check(x, "step1_d", big * q.ua, (two + q.ub) * (two + q.ua - q.ub));
        check(x, "step1_e", big * q.ub, (two + q.ua) * (two - q.ua + q.ub));
      }
    }
  }

  if (params.kind == PortraitCase::ShortTail) {
    for (unsigned level = 0; level + params.r + 1 <= depth; ++level) {
      for (const TreeWord& x : level_words(level)) {
        const ShortTail e = short_products(tree, x);
        const FieldElement& xaa = tree.at(ext(x, "aa"));
        const FieldElement& xba = tree.at(ext(x, "ba"));
        const FieldElement lock1 = e.e_aa * e.e_ab;
        const FieldElement lock2 = e.e_ba * e.e_bb;
        check(x, "prodshorttail_1", lock1 * lock1, xba * xba);
        check(x, "prodshorttail_2", lock2 * lock2, xaa * xaa);
        check(x, "shorttaillock_1", lock1, xba);
        check(x, "shorttaillock_2", lock2, xaa);
        const auto ratios = short_ratios(e);
        check(x, "root2_square", ratios[0] * ratios[0], two);
        check(x, "a1a2", ratios[0] * ratios[1], two);
        static constexpr const char* kIds[4] = {"root2prod_1", "root2prod_2", "root2prod_3",
                                                "root2prod_4"};
        for (int i = 0; i < 4; ++i) check(x, kIds[i], ratios[i], *rep.sqrt2);
      }
    }
  }
  return rep;
}

LabelingReport label_tree(LabeledTree& tree) {
  std::vector<LabelSwap> swaps;
  switch (tree.params().kind) {
    case PortraitCase::LongTail:
      swaps = label_longtail(tree, canonical_zeta4(*tree.ctx()));
      break;
    case PortraitCase::SpecialLongTail: {
      const FieldElement z = canonical_zeta4(*tree.ctx());
      const FieldElement s2 = canonical_sqrt2(*tree.ctx());
      swaps = label_longtail(tree, z);
      auto more = label_special(tree, z, s2);
      swaps.insert(swaps.end(), more.begin(), more.end());
      break;
    }
    case PortraitCase::ShortTail:
      swaps = label_shorttail(tree, canonical_sqrt2(*tree.ctx()));
      break;
  }
  LabelingReport rep = verify_identities(tree);
  rep.swaps = std::move(swaps);
  return rep;
}

}  // namespace arbor
