#include "arbor/galois_probe.hpp"

#include <map>

#include "arbor/error.hpp"

namespace arbor {
namespace {

unsigned galois_sign(const FieldCtx& ctx, const FieldElement& g, unsigned k) {
  const FieldElement image = ctx.frobenius(g, k);
  if (image == g) return 0;
  if (image == -g) return 1;
  throw Error(ErrorCode::InvariantViolation, "Frobenius does not map the constant to +-itself");
}

void require_same_tree(std::uint64_t checksum, const LabeledTree& tree, const char* what) {
  if (checksum != tree.checksum()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " belongs to a different tree");
  }
}

}  // namespace

FrobeniusProbe frobenius_automorphism(const LabeledTree& tree, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "Frobenius exponent must be >= 1");
  const FieldCtx& ctx = *tree.ctx();
  const unsigned depth = tree.depth();
  FrobeniusProbe probe;
  probe.p = ctx.p();
  probe.k = k;
  mpz_ui_pow_ui(probe.q0.get_mpz_t(), ctx.p(), k);
  probe.tree_checksum = tree.checksum();

  // Value -> heap index, one table per level.
  std::vector<std::map<std::vector<std::uint64_t>, std::uint64_t>> lookup(depth + 1);
  for (std::uint64_t i = 0; i < tree.node_count(); ++i) {
    lookup[level_of_index(i)].emplace(tree.at_index(i).coeffs(), i);
  }
  auto image_of = [&](std::uint64_t i) {
    const FieldElement v = ctx.frobenius(tree.at_index(i), k);
    const auto& table = lookup[level_of_index(i)];
    const auto it = table.find(v.coeffs());
    if (it == table.end()) {
      throw Error(ErrorCode::InvariantViolation, "power map leaves the preimage tree");
    }
    return it->second;
  };

  probe.images.assign(tree.node_count(), 0);
  if (image_of(0) != 0) throw Error(ErrorCode::InvariantViolation, "root is not fixed");
  std::vector<TreeWord> support;
  const std::uint64_t internal = (std::uint64_t{1} << depth) - 1;
  for (std::uint64_t i = 0; i < internal; ++i) {
    const std::uint64_t j = image_of(2 * i + 1);
    const std::uint64_t img = probe.images[i];
    if (j != 2 * img + 1 && j != 2 * img + 2) {
      throw Error(ErrorCode::InvariantViolation, "power map does not commute with f");
    }
    const bool swapped = j == 2 * img + 2;
    probe.images[2 * i + 1] = j;
    probe.images[2 * i + 2] = swapped ? j - 1 : j + 1;
    if (swapped) support.push_back(TreeWord::from_index(i));
  }
  probe.sigma = TreeAutomorphism::from_support(depth, support);
  return probe;
}

EmbeddingReport check_embedding(const FrobeniusProbe& probe, const LabeledTree& tree,
                                const LabelingReport& labeling) {
  require_same_tree(probe.tree_checksum, tree, "Frobenius probe");
  require_same_tree(labeling.tree_checksum, tree, "labeling report");
  const FieldCtx& ctx = *tree.ctx();
  const PortraitParams& params = tree.params();
  const TreeAutomorphism& sigma = probe.sigma;

  EmbeddingReport rep;
  rep.membership = membership(sigma, params);
  if (params.kind != PortraitCase::ShortTail) {
    rep.zeta4_sign = galois_sign(ctx, canonical_zeta4(ctx), probe.k);
  }
  if (params.kind != PortraitCase::LongTail) {
    rep.sqrt2_sign = galois_sign(ctx, canonical_sqrt2(ctx), probe.k);
  }

  auto add = [&rep](const TreeWord& x, const char* name, unsigned value, unsigned sign) {
    rep.signs.push_back({x, name, value, sign, value == sign});
  };
  if (const auto pmax = p_anchor_max(params, tree.depth())) {
    // Short tail: the P functionals must vanish, i.e. match sign 0.
    const unsigned expected = rep.zeta4_sign.value_or(0);
    for (unsigned level = 0; level <= *pmax; ++level) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
        const TreeWord x = TreeWord::from_bits(level, v);
        add(x, "pa", p_a(sigma, x, params), expected);
        add(x, "pb", p_b(sigma, x, params), expected);
      }
    }
  }
  if (rep.sqrt2_sign) {
    if (const auto rmax = r_anchor_max(params, tree.depth())) {
      for (unsigned level = 0; level <= *rmax; ++level) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
          const TreeWord x = TreeWord::from_bits(level, v);
          if (params.kind == PortraitCase::SpecialLongTail) {
            add(x, "r32", r32(sigma, x), *rep.sqrt2_sign);
          } else {
            add(x, "rr1", r_r1(sigma, x, params.r), *rep.sqrt2_sign);
          }
        }
      }
    }
  }
  rep.signs_ok = true;
  bool p_zero = true;
  for (const SignCheck& s : rep.signs) {
    rep.signs_ok = rep.signs_ok && s.ok;
    if (s.functional == "pa" || s.functional == "pb") p_zero = p_zero && s.value == 0;
  }
  if (params.kind == PortraitCase::ShortTail) rep.p_zero = p_zero;
  rep.ok = rep.membership.in_group && rep.signs_ok && rep.p_zero.value_or(true);
  return rep;
}

FieldElement discriminant_d(const LabeledTree& tree, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "D_n needs n >= 1");
  if (n == 1) return tree.x0() - tree.c();
  FieldElement z = tree.ctx()->zero();
  for (unsigned i = 0; i < n; ++i) z = z * z + tree.c();
  return z - tree.x0();
}

LevelCheck level_product_character(const LabeledTree& tree, const FrobeniusProbe& probe,
                                   unsigned n) {
  require_same_tree(probe.tree_checksum, tree, "Frobenius probe");
  if (n < 1 || n > tree.depth()) {
    throw Error(ErrorCode::LevelOutOfRange, "level must satisfy 1 <= n <= depth");
  }
  LevelCheck out;
  out.n = n;
  out.d = discriminant_d(tree, n);
  if (out.d.is_zero()) throw Error(ErrorCode::PostcriticalBase, "D_n vanishes");
  const FieldCtx& ctx = *tree.ctx();
  const FieldElement power = out.d.pow((probe.q0 - 1) / 2);
  if (power == ctx.one()) {
    out.chi = 1;
  } else if (power == -ctx.one()) {
    out.chi = -1;
  } else {
    throw Error(ErrorCode::InvariantViolation, "D_n does not lie in F_q0");
  }
  const std::uint64_t first = first_index_at_level(n - 1);
  out.parity_xor = probe.sigma.parity_of_range(first, std::uint64_t{1} << (n - 1)) & 1u;
  out.ok = out.parity_xor == (out.chi == -1 ? 1u : 0u);
  return out;
}

KummerReport kummer_rank(std::uint64_t p, std::uint64_t c, std::uint64_t x0,
                         const PortraitParams& params, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const auto ctx = FieldCtx::build(p, 0);
  c %= p;
  x0 %= p;
  const auto portrait = orbit_portrait(p, c);
  if (!portrait || portrait->r != params.r || portrait->s != params.s) {
    throw Error(ErrorCode::WrongPortrait, "c does not have the requested portrait");
  }
  for (std::size_t i = 1; i < portrait->orbit.size(); ++i) {
    if (portrait->orbit[i].base_value() == x0) {
      throw Error(ErrorCode::PostcriticalBase, "x0 lies in the forward orbit of 0");
    }
  }
  if (is_periodic_point(p, c, x0)) throw Error(ErrorCode::PeriodicBase, "x0 is periodic");

  KummerReport rep;
  rep.p = p;
  rep.k = k;
  rep.c = c;
  rep.x0 = x0;
  rep.params = params;
  // For a in F_p, a^((p^k - 1)/2) = legendre(a)^k.
  auto chi = [&](std::uint64_t a) {
    const FieldElement e = ctx->from_int(static_cast<std::int64_t>(a));
    const bool square = ctx->is_square(e);
    return (square || k % 2 == 0) ? 1 : -1;
  };
  std::uint64_t z = 0;
  for (unsigned i = 1; i <= params.r; ++i) {
    z = (z * z + c) % p;
    const std::uint64_t d = i == 1 ? (x0 + p - c) % p : (z + p - x0) % p;
    if (d == 0) throw Error(ErrorCode::PostcriticalBase, "D_i vanishes");
    rep.d.push_back(d);
    rep.classes.push_back({"D" + std::to_string(i), d, chi(d)});
  }
  if (params.kind != PortraitCase::ShortTail) rep.classes.push_back({"-1", p - 1, chi(p - 1)});
  if (params.kind != PortraitCase::LongTail) rep.classes.push_back({"2", 2 % p, chi(2 % p)});
  // F_q^* / squares has order 2, so the span has dimension 0 or 1.
  for (const KummerClass& cls : rep.classes) {
    if (cls.chi == -1) rep.rank = 1;
  }
  rep.degree = std::uint64_t{1} << rep.rank;
  rep.target_log2 = params.r + params.e;
  rep.condition1 = rep.degree == (std::uint64_t{1} << rep.target_log2);
  rep.explanation =
      "over a finite field the quadratic classes span at most one dimension, so the degree is "
      "at most 2 while condition (1) asks for 2^" +
      std::to_string(rep.target_log2);
  return rep;
}

}  // namespace arbor
