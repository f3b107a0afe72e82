#include "arbor/dynamics.hpp"

#include <algorithm>
#include <unordered_map>

#include "arbor/error.hpp"

namespace arbor {
namespace {

constexpr unsigned kMaxIterate = 12;

std::uint64_t f_mod(std::uint64_t z, std::uint64_t c, std::uint64_t p) {
  return (z * z + c) % p;
}

Gf2Poly gf2_mul(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.empty() || b.empty()) return {};
  Gf2Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

void gf2_add_monomial(Gf2Poly& a, std::size_t degree) {
  if (a.size() <= degree) a.resize(degree + 1, 0);
  a[degree] ^= 1;
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Gf2Poly reduce_mod2(const IntPoly& a) {
  Gf2Poly out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mpz_odd_p(a[i].get_mpz_t()) ? 1 : 0;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

std::optional<OrbitPortrait> orbit_portrait(const FieldCtx& ctx, const FieldElement& c) {
  if (!c.in_base_field()) {
    throw Error(ErrorCode::InvalidArgument, "portraits are computed for c in F_p");
  }
  const std::uint64_t p = ctx.p();
  const std::uint64_t cv = c.base_value();
  std::unordered_map<std::uint64_t, unsigned> seen;
  std::vector<std::uint64_t> orbit;
  std::uint64_t z = 0;
  for (unsigned k = 0;; ++k) {
    const auto [it, fresh] = seen.emplace(z, k);
    if (!fresh) {
      const unsigned i = it->second;
      // 0 periodic (i = 0) or the Chebyshev relation are out of scope.
      if (i == 0) return std::nullopt;
      OrbitPortrait out;
      out.r = k - 1;
      out.s = i - 1;
      if (out.s == 0 || (out.r == 2 && out.s == 1)) return std::nullopt;
      out.c = c;
      out.tail = out.s + 1;
      out.cycle = out.r - out.s;
      orbit.push_back(z);
      for (std::uint64_t v : orbit) out.orbit.push_back(ctx.from_int(static_cast<std::int64_t>(v)));
      out.distinct = true;
      return out;
    }
    orbit.push_back(z);
    z = f_mod(z, cv, p);
  }
}

std::optional<OrbitPortrait> orbit_portrait(std::uint64_t p, std::uint64_t c) {
  const auto ctx = FieldCtx::build(p, 0);
  return orbit_portrait(*ctx, ctx->from_int(static_cast<std::int64_t>(c % p)));
}

IntPoly critical_iterate(unsigned n) {
  if (n > kMaxIterate) throw Error(ErrorCode::InvalidArgument, "iterate index too large");
  IntPoly cur;  // f^0(0) = 0
  for (unsigned k = 0; k < n; ++k) {
    IntPoly next(cur.empty() ? 2 : 2 * cur.size() - 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == 0) continue;
      for (std::size_t j = 0; j < cur.size(); ++j) next[i + j] += cur[i] * cur[j];
    }
    next[1] += 1;
    cur = std::move(next);
  }
  return cur;
}

IntPoly misiurewicz_poly(unsigned r, unsigned s) {
  if (s < 1 || r <= s) throw Error(ErrorCode::InvalidArgument, "need r > s >= 1");
  IntPoly out = critical_iterate(r);
  const IntPoly low = critical_iterate(s);
  for (std::size_t i = 0; i < low.size(); ++i) out[i] += low[i];
  return out;
}

std::vector<PcfParam> find_pcf_params(unsigned r, unsigned s, std::uint64_t p_max) {
  const IntPoly poly = misiurewicz_poly(r, s);
  std::vector<PcfParam> out;
  for (std::uint64_t p = 3; p <= p_max; p += 2) {
    if (!is_prime(p)) continue;
    std::vector<std::uint64_t> coeffs(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      mpz_class m = poly[i] % static_cast<unsigned long>(p);
      if (m < 0) m += static_cast<unsigned long>(p);
      coeffs[i] = m.get_ui();
    }
    for (std::uint64_t c = 0; c < p; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc * c + coeffs[i]) % p;
      if (acc != 0) continue;
      const auto portrait = orbit_portrait(p, c);
      if (portrait && portrait->r == r && portrait->s == s && portrait->distinct) {
        out.push_back({p, c});
      }
    }
  }
  return out;
}

Gf2Poly critical_iterate_mod2(unsigned n) {
  Gf2Poly cur;
  for (unsigned k = 0; k < n; ++k) {
    cur = gf2_mul(cur, cur);
    gf2_add_monomial(cur, 1);
  }
  return cur;
}

bool mod2_iterate_check(unsigned n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  Gf2Poly cur;
  for (unsigned n = 1; n <= n_max; ++n) {
    cur = gf2_mul(cur, cur);
    gf2_add_monomial(cur, 1);
    Gf2Poly expected;
    for (unsigned i = 0; i < n; ++i) gf2_add_monomial(expected, std::size_t{1} << i);
    if (cur != expected) return false;
  }
  return true;
}

bool misiurewicz_mod2_check(unsigned r, unsigned s) {
  const Gf2Poly lhs = reduce_mod2(misiurewicz_poly(r, s));
  Gf2Poly g;
  for (unsigned i = 0; i < r - s; ++i) gf2_add_monomial(g, std::size_t{1} << i);
  for (unsigned k = 0; k < s; ++k) g = gf2_mul(g, g);
  return lhs == g;
}

const FieldElement& LabeledTree::at(const TreeWord& w) const {
  if (w.length() > depth_) throw Error(ErrorCode::LevelOutOfRange, "node beyond tree depth");
  return values_[w.index()];
}

void LabeledTree::swap_children(const TreeWord& w) {
  if (w.length() >= depth_) {
    throw Error(ErrorCode::LevelOutOfRange, "node has no children in this tree");
  }
  const std::uint64_t left = 2 * w.index() + 1;
  const std::uint64_t right = left + 1;
  for (unsigned k = 0; k < depth_ - w.length(); ++k) {
    const std::uint64_t a = first_descendant(left, k);
    const std::uint64_t b = first_descendant(right, k);
    std::swap_ranges(values_.begin() + a, values_.begin() + a + (std::uint64_t{1} << k),
                     values_.begin() + b);
  }
}

std::optional<std::size_t> LabeledTree::find(unsigned level, const FieldElement& value) const {
  if (level > depth_) return std::nullopt;
  const std::uint64_t first = first_index_at_level(level);
  for (std::uint64_t i = first; i < first + (std::uint64_t{1} << level); ++i) {
    if (values_[i] == value) return i;
  }
  return std::nullopt;
}

std::uint64_t LabeledTree::checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(ctx_->p());
  mix(ctx_->m());
  mix(depth_);
  for (const FieldElement& v : values_) {
    for (std::uint64_t x : v.coeffs()) mix(x);
  }
  return h;
}

bool is_periodic_point(std::uint64_t p, std::uint64_t c, std::uint64_t x0) {
  std::uint64_t z = x0 % p;
  for (std::uint64_t k = 0; k < p; ++k) {
    z = f_mod(z, c, p);
    if (z == x0 % p) return true;
  }
  return false;
}

std::vector<std::uint64_t> valid_base_points(std::uint64_t p, std::uint64_t c) {
  // Periodic points are the points on cycles of the functional graph.
  std::vector<std::uint8_t> state(p, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::uint8_t> periodic(p, 0);
  std::vector<std::uint64_t> path;
  for (std::uint64_t start = 0; start < p; ++start) {
    if (state[start]) continue;
    path.clear();
    std::uint64_t z = start;
    while (state[z] == 0) {
      state[z] = 1;
      path.push_back(z);
      z = f_mod(z, c, p);
    }
    if (state[z] == 1) {
      for (std::uint64_t w = z;;) {
        periodic[w] = 1;
        w = f_mod(w, c, p);
        if (w == z) break;
      }
    }
    for (std::uint64_t v : path) state[v] = 2;
  }
  std::vector<std::uint8_t> post(p, 0);
  std::uint64_t z = c % p;
  for (std::uint64_t k = 0; k <= p && !post[z]; ++k) {
    post[z] = 1;
    z = f_mod(z, c, p);
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (!periodic[x] && !post[x]) out.push_back(x);
  }
  return out;
}

LabeledTree preimage_tree(std::shared_ptr<const FieldCtx> ctx, const FieldElement& c,
                          const FieldElement& x0, unsigned depth,
                          const std::optional<PortraitParams>& expected) {
  if (!c.in_base_field() || !x0.in_base_field()) {
    throw Error(ErrorCode::InvalidArgument, "c and x0 must lie in F_p");
  }
  if (depth > LabeledTree::kMaxDepth) {
    throw Error(ErrorCode::InvalidArgument, "tree depth must be <= 12");
  }
  const auto portrait = orbit_portrait(*ctx, c);
  if (!portrait) {
    throw Error(ErrorCode::WrongPortrait, "critical orbit of c has no admissible portrait");
  }
  const PortraitParams params = PortraitParams::make(portrait->r, portrait->s);
  if (expected && !(expected->r == params.r && expected->s == params.s)) {
    throw Error(ErrorCode::WrongPortrait,
                "c has portrait (" + std::to_string(params.r) + "," +
                    std::to_string(params.s) + "), expected (" + std::to_string(expected->r) +
                    "," + std::to_string(expected->s) + ")");
  }
  for (std::size_t i = 1; i < portrait->orbit.size(); ++i) {
    if (portrait->orbit[i] == x0) {
      throw Error(ErrorCode::PostcriticalBase, "x0 lies in the forward orbit of 0");
    }
  }
  if (is_periodic_point(ctx->p(), c.base_value(), x0.base_value())) {
    throw Error(ErrorCode::PeriodicBase, "x0 is periodic");
  }
  LabeledTree tree;
  tree.ctx_ = ctx;
  tree.c_ = c;
  tree.x0_ = x0;
  tree.depth_ = depth;
  tree.params_ = params;
  const std::size_t nodes = (std::size_t{1} << (depth + 1)) - 1;
  const std::size_t internal = (std::size_t{1} << depth) - 1;
  tree.values_.resize(nodes);
  tree.values_[0] = x0;
  for (std::size_t i = 0; i < internal; ++i) {
    const auto roots = ctx->sqrt(tree.values_[i] - c);
    if (!roots) {
      throw Error(ErrorCode::MissingSquareRoot,
                  "square root missing at node " + TreeWord::from_index(i).str());
    }
    if (roots->degenerate) {
      throw Error(ErrorCode::InvariantViolation, "critical value inside the tree");
    }
    tree.values_[2 * i + 1] = roots->first;
    tree.values_[2 * i + 2] = roots->second;
  }
  return tree;
}

}  // namespace arbor
