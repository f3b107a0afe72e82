#include "arbor/property_suites.hpp"

#include <chrono>
#include <functional>

#include "arbor/error.hpp"

namespace arbor {
namespace {

std::uint64_t key_mask(unsigned depth) {
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  return nodes >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nodes) - 1;
}

void require_packed(unsigned depth) {
  if (depth < 1 || depth > 6) throw Error(ErrorCode::InvalidArgument, "depth must be in 1..6");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

std::vector<TreeWord> anchors_up_to(std::optional<unsigned> level_max) {
  std::vector<TreeWord> out;
  if (!level_max) return out;
  for (unsigned level = 0; level <= *level_max; ++level) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
      out.push_back(TreeWord::from_bits(level, v));
    }
  }
  return out;
}

std::string params_str(const PortraitParams& p) {
  return "(" + std::to_string(p.r) + "," + std::to_string(p.s) + ")";
}

TreeWord ext(const TreeWord& x, std::string_view tail) {
  TreeWord w = x;
  for (char ch : tail) w = ch == 'a' ? w.a() : w.b();
  return w;
}

// Par(sigma tau, x) from the action alone: does sigma(tau(xa)) land on the
// b-child of sigma(tau(x))?
unsigned composed_par_oracle(const TreeAutomorphism& sigma, const TreeAutomorphism& tau,
                             std::uint64_t x) {
  const std::uint64_t img = sigma.apply_index(tau.apply_index(x));
  const std::uint64_t child = sigma.apply_index(tau.apply_index(2 * x + 1));
  return child == 2 * img + 2 ? 1u : 0u;
}

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}
  void expect(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (!r_.first_failure) r_.first_failure = what();
  }

 private:
  SuiteResult& r_;
};

std::string pair_str(const TreeAutomorphism& s, const TreeAutomorphism& t, const TreeWord& x) {
  return "sigma=" + encode(s) + " tau=" + encode(t) + " x=" + (x.empty() ? "root" : x.str());
}

}  // namespace

TreeAutomorphism random_automorphism(unsigned depth, std::mt19937_64& rng) {
  require_packed(depth);
  return TreeAutomorphism::from_key(depth, rng() & key_mask(depth));
}

MemberSampler::MemberSampler(const PortraitParams& params, unsigned depth, GroupVariant variant,
                             std::uint64_t seed, std::uint64_t max_attempts)
    : pred_((require_packed(depth), compile_predicate(params, depth, variant))),
      depth_(depth),
      mask_(key_mask(depth)),
      max_attempts_(max_attempts),
      rng_(seed) {}

TreeAutomorphism MemberSampler::next() {
  for (std::uint64_t miss = 0; miss < max_attempts_; ++miss) {
    ++attempts_;
    const std::uint64_t key = rng_() & mask_;
    if (pred_(key)) {
      ++accepted_;
      return TreeAutomorphism::from_key(depth_, key);
    }
  }
  throw Error(ErrorCode::BudgetExceeded, "rejection sampler exhausted its attempts");
}

bool HomtestReport::ok() const noexcept {
  if (suites.empty()) return false;
  for (const SuiteResult& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

SuiteResult sgn22_exhaustive(unsigned max_depth) {
  if (max_depth < 1 || max_depth > 3) {
    throw Error(ErrorCode::InvalidArgument, "exhaustive depth must be in 1..3");
  }
  SuiteResult res;
  res.name = "sgn22_exhaustive";
  res.params = "-";
  res.depth = max_depth;
  Tally tally(res);
  for (unsigned d = 1; d <= max_depth; ++d) {
    const std::uint64_t count = std::uint64_t{1} << ((std::uint64_t{1} << d) - 1);
    const std::uint64_t internal = (std::uint64_t{1} << d) - 1;
    for (std::uint64_t a = 0; a < count; ++a) {
      const TreeAutomorphism s = TreeAutomorphism::from_key(d, a);
      for (std::uint64_t b = 0; b < count; ++b) {
        const TreeAutomorphism t = TreeAutomorphism::from_key(d, b);
        const TreeAutomorphism st = compose(s, t);
        ++res.instances;
        for (std::uint64_t x = 0; x < internal; ++x) {
          const unsigned oracle = composed_par_oracle(s, t, x);
          const unsigned rule = (s.par_at(t.apply_index(x)) ? 1u : 0u) ^ (t.par_at(x) ? 1u : 0u);
          tally.expect(st.par_at(x) == (oracle == 1) && rule == oracle,
                       [&] { return pair_str(s, t, TreeWord::from_index(x)); });
        }
      }
    }
  }
  return res;
}

HomtestReport run_homtests(std::uint64_t seed, std::uint64_t trials, unsigned depth,
                           const std::optional<PortraitParams>& filter) {
  require_packed(depth);
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  HomtestReport rep;
  rep.seed = seed;
  rep.depth = depth;
  rep.trials = trials;

  const std::vector<PortraitParams> all = {PortraitParams::make(3, 1), PortraitParams::make(3, 2),
                                           PortraitParams::make(4, 2)};
  std::vector<PortraitParams> params;
  for (const PortraitParams& p : all) {
    if (!filter || (filter->r == p.r && filter->s == p.s)) params.push_back(p);
  }
  if (filter && params.empty()) params.push_back(*filter);

  std::uint64_t stream = 0;
  auto begin = [&](const std::string& name, const std::string& ps) -> SuiteResult& {
    SuiteResult res;
    res.name = name;
    res.params = ps;
    res.depth = depth;
    rep.suites.push_back(std::move(res));
    return rep.suites.back();
  };

  if (!filter) {
    SuiteResult& res = begin("sgn22", "-");
    Tally tally(res);
    std::mt19937_64 rng(stream_seed(seed, stream++));
    const std::uint64_t internal = (std::uint64_t{1} << depth) - 1;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const TreeAutomorphism s = random_automorphism(depth, rng);
      const TreeAutomorphism t = random_automorphism(depth, rng);
      const TreeAutomorphism st = compose(s, t);
      ++res.instances;
      for (std::uint64_t x = 0; x < internal; ++x) {
        const unsigned rule = (s.par_at(t.apply_index(x)) ? 1u : 0u) ^ (t.par_at(x) ? 1u : 0u);
        tally.expect(st.par_at(x) == (rule == 1) && composed_par_oracle(s, t, x) == rule,
                     [&] { return pair_str(s, t, TreeWord::from_index(x)); });
      }
    }
  }

  for (const PortraitParams& pp : params) {
    const auto p_anchors = anchors_up_to(p_anchor_max(pp, depth));
    const auto r_anchors = anchors_up_to(r_anchor_max(pp, depth));

    // P^a and P^b shift by P(sigma) under left multiplication by a member.
    {
      SuiteResult& res = begin("prs_ident", params_str(pp));
      Tally tally(res);
      MemberSampler sampler(pp, depth, GroupVariant::Mp, stream_seed(seed, stream++));
      for (std::uint64_t i = 0; i < trials && !p_anchors.empty(); ++i) {
        const TreeAutomorphism s = sampler.next();
        const TreeAutomorphism t = random_automorphism(depth, sampler.rng());
        const TreeAutomorphism st = compose(s, t);
        const unsigned ps = p_value(s, pp);
        ++res.instances;
        for (const TreeWord& x : p_anchors) {
          tally.expect(p_a(st, x, pp) == (ps ^ p_a(t, x, pp)) &&
                           p_b(st, x, pp) == (ps ^ p_b(t, x, pp)),
                       [&] { return pair_str(s, t, x); });
        }
      }
    }

    // P is additive on M', and M' is closed.
    {
      SuiteResult& res = begin("p_hom", params_str(pp));
      Tally tally(res);
      MemberSampler sampler(pp, depth, GroupVariant::Mp, stream_seed(seed, stream++));
      for (std::uint64_t i = 0; i < trials && !p_anchors.empty(); ++i) {
        const TreeAutomorphism s = sampler.next();
        const TreeAutomorphism t = sampler.next();
        const TreeAutomorphism st = compose(s, t);
        const MembershipReport m = membership(st, pp);
        const MembershipReport inv = membership(invert(s), pp);
        ++res.instances;
        tally.expect(m.in_m && inv.in_m && m.p_value == (p_value(s, pp) ^ p_value(t, pp)) &&
                         inv.p_value == p_value(s, pp),
                     [&] { return pair_str(s, t, TreeWord{}); });
      }
    }

    // The kernel of h on M~' is B~'.
    {
      SuiteResult& res = begin("kernel", params_str(pp));
      Tally tally(res);
      MemberSampler sampler(pp, depth, GroupVariant::tMp, stream_seed(seed, stream++));
      for (std::uint64_t i = 0; i < trials; ++i) {
        const TreeAutomorphism s = sampler.next();
        const MembershipReport m = membership(s, pp);
        bool h_zero = true;
        for (const auto& h : m.h_value) h_zero = h_zero && h.value_or(0) == 0;
        ++res.instances;
        tally.expect(m.in_tm && m.in_tb == h_zero, [&] { return "sigma=" + encode(s); });
      }
    }

    if (pp.kind == PortraitCase::LongTail) continue;

    // R is additive on M~', and M~' is closed.
    {
      SuiteResult& res = begin("r_hom", params_str(pp));
      Tally tally(res);
      MemberSampler sampler(pp, depth, GroupVariant::tMp, stream_seed(seed, stream++));
      for (std::uint64_t i = 0; i < trials && !r_anchors.empty(); ++i) {
        const TreeAutomorphism s = sampler.next();
        const TreeAutomorphism t = sampler.next();
        const MembershipReport ms = membership(s, pp);
        const MembershipReport mt = membership(t, pp);
        const MembershipReport m = membership(compose(s, t), pp);
        const MembershipReport inv = membership(invert(s), pp);
        ++res.instances;
        tally.expect(m.in_tm && inv.in_tm && m.r_value && ms.r_value && mt.r_value &&
                         *m.r_value == (*ms.r_value ^ *mt.r_value) && inv.r_value == ms.r_value,
                     [&] { return pair_str(s, t, TreeWord{}); });
      }
    }

    if (pp.kind == PortraitCase::SpecialLongTail) {
      // R_{3,2}(sigma tau, x) = R_{3,2}(sigma, tau(x)) + R_{3,2}(tau, x).
      {
        SuiteResult& res = begin("rident", params_str(pp));
        Tally tally(res);
        MemberSampler sampler(pp, depth, GroupVariant::tMp, stream_seed(seed, stream++));
        for (std::uint64_t i = 0; i < trials && !r_anchors.empty(); ++i) {
          const TreeAutomorphism s = sampler.next();
          const TreeAutomorphism t = random_automorphism(depth, sampler.rng());
          const TreeAutomorphism st = compose(s, t);
          ++res.instances;
          for (const TreeWord& x : r_anchors) {
            tally.expect(r32(st, x) == (r32(s, t.apply(x)) ^ r32(t, x)),
                         [&] { return pair_str(s, t, x); });
          }
        }
      }
      // V_{3,2}(sigma, xaa) = V_{3,2}(sigma, xab) = Par(xba) + Par(xbb), and mirrored.
      {
        SuiteResult& res = begin("v_identity", params_str(pp));
        Tally tally(res);
        MemberSampler sampler(pp, depth, GroupVariant::Mp, stream_seed(seed, stream++));
        const auto v_anchors =
            depth >= 5 ? anchors_up_to(depth - 5) : std::vector<TreeWord>{};
        for (std::uint64_t i = 0; i < trials && !v_anchors.empty(); ++i) {
          const TreeAutomorphism s = sampler.next();
          ++res.instances;
          for (const TreeWord& x : v_anchors) {
            const unsigned pa = s.par(ext(x, "aa")) ^ s.par(ext(x, "ab"));
            const unsigned pb = s.par(ext(x, "ba")) ^ s.par(ext(x, "bb"));
            const unsigned v1 = v32(s, ext(x, "aa"));
            const unsigned v2 = v32(s, ext(x, "ab"));
            const unsigned v3 = v32(s, ext(x, "ba"));
            const unsigned v4 = v32(s, ext(x, "bb"));
            tally.expect(v1 == v2 && v2 == pb && v3 == v4 && v4 == pa,
                         [&] { return "sigma=" + encode(s) + " x=" + x.str(); });
          }
        }
      }
    } else {
      // R_{r,1}(sigma tau, x) = R_{r,1}(sigma) + R_{r,1}(tau, x).
      SuiteResult& res = begin("pr1ident", params_str(pp));
      Tally tally(res);
      MemberSampler sampler(pp, depth, GroupVariant::tMp, stream_seed(seed, stream++));
      for (std::uint64_t i = 0; i < trials && !r_anchors.empty(); ++i) {
        const TreeAutomorphism s = sampler.next();
        const TreeAutomorphism t = random_automorphism(depth, sampler.rng());
        const TreeAutomorphism st = compose(s, t);
        const unsigned rs = r_value(s, pp);
        ++res.instances;
        for (const TreeWord& x : r_anchors) {
          tally.expect(r_r1(st, x, pp.r) == (rs ^ r_r1(t, x, pp.r)),
                       [&] { return pair_str(s, t, x); });
        }
      }
    }
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace arbor
