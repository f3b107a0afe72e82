#include <cmath>
#include <set>

#include "arbor/counting_engine.hpp"
#include "arbor/error.hpp"
#include "arbor/property_suites.hpp"
#include "doctest.h"

using namespace arbor;

TEST_CASE("sampled elements are members") {
  for (auto [r, s] : {std::pair{3u, 1u}, {3u, 2u}, {4u, 2u}}) {
    const PortraitParams pp = PortraitParams::make(r, s);
    for (GroupVariant v : {GroupVariant::Mp, GroupVariant::Bp, GroupVariant::tMp, GroupVariant::tBp}) {
      MemberSampler sampler(pp, 5, v, 7);
      for (int i = 0; i < 50; ++i) CHECK(in_variant(membership(sampler.next(), pp), v));
    }
  }
}

TEST_CASE("sampler acceptance rate matches the group order") {
  const PortraitParams pp = PortraitParams::make(3, 2);
  MemberSampler sampler(pp, 4, GroupVariant::tBp, 11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 4000; ++i) seen.insert(sampler.next().key());
  // |B~'_{3,2,4}| = 2^13 inside 2^15 keys.
  const double rate = static_cast<double>(sampler.accepted()) / sampler.attempts();
  const double sd = std::sqrt(0.25 * 0.75 / sampler.attempts());
  CHECK(std::abs(rate - 0.25) < 6 * sd);
  // Distinct draws from 8192 elements: expected about 3116.
  CHECK(seen.size() > 2900);
  CHECK(seen.size() < 3300);
}

TEST_CASE("sampler budget") {
  // At depth 6 about one key in 2^21 is accepted; four attempts cannot keep up.
  const PortraitParams pp = PortraitParams::make(3, 2);
  MemberSampler sampler(pp, 6, GroupVariant::tBp, 3, 4);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 100; ++i) sampler.next();
      }(),
      Error);
  CHECK_THROWS_AS(MemberSampler(pp, 7, GroupVariant::Mp, 1), Error);
}

TEST_CASE("exhaustive composition rule") {
  const SuiteResult res = sgn22_exhaustive(3);
  CHECK(res.instances == 4 + 64 + 16384);
  CHECK(res.failures == 0);
  CHECK(res.ok());
  CHECK_THROWS_AS(sgn22_exhaustive(4), Error);
}

TEST_CASE("random suites at depth 5") {
  const HomtestReport rep = run_homtests(42, 1000, 5);
  CHECK(rep.ok());
  std::set<std::string> names;
  for (const SuiteResult& s : rep.suites) {
    names.insert(s.name);
    CHECK(s.instances >= 1000);
    CHECK(s.failures == 0);
  }
  for (const char* n : {"sgn22", "prs_ident", "p_hom", "kernel", "r_hom", "rident", "v_identity",
                        "pr1ident"}) {
    CHECK(names.count(n) == 1);
  }
}

TEST_CASE("suites are deterministic in the seed") {
  const HomtestReport a = run_homtests(5, 50, 5, PortraitParams::make(3, 2));
  const HomtestReport b = run_homtests(5, 50, 5, PortraitParams::make(3, 2));
  REQUIRE(a.suites.size() == b.suites.size());
  for (std::size_t i = 0; i < a.suites.size(); ++i) {
    CHECK(a.suites[i].name == b.suites[i].name);
    CHECK(a.suites[i].checks == b.suites[i].checks);
  }
  MemberSampler s1(PortraitParams::make(3, 2), 5, GroupVariant::tMp, 9);
  MemberSampler s2(PortraitParams::make(3, 2), 5, GroupVariant::tMp, 9);
  for (int i = 0; i < 20; ++i) CHECK(s1.next() == s2.next());
}

TEST_CASE("cocycle rule fails off the group") {
  // Outside M' the shift P^a(sigma tau, x) - P^a(tau, x) depends on x.
  const PortraitParams pp = PortraitParams::make(3, 1);
  std::mt19937_64 rng(1);
  bool varied = false;
  for (int i = 0; i < 200 && !varied; ++i) {
    const TreeAutomorphism s = random_automorphism(5, rng);
    if (membership(s, pp).in_m) continue;
    const TreeAutomorphism t = random_automorphism(5, rng);
    const TreeAutomorphism st = compose(s, t);
    std::set<unsigned> shifts;
    for (unsigned level = 0; level <= 1; ++level) {
      for (std::uint64_t v = 0; v < (1u << level); ++v) {
        const TreeWord x = TreeWord::from_bits(level, v);
        shifts.insert(p_a(st, x, pp) ^ p_a(t, x, pp));
        shifts.insert(p_b(st, x, pp) ^ p_b(t, x, pp));
      }
    }
    varied = shifts.size() == 2;
  }
  CHECK(varied);
}
