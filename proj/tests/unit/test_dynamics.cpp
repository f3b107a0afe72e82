#include <set>

#include "arbor/dynamics.hpp"
#include "arbor/error.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

mpz_class eval_int(const IntPoly& f, long x) {
  mpz_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("orbit portraits") {
  const auto a = orbit_portrait(7, 1);
  REQUIRE(a);
  CHECK(a->r == 3);
  CHECK(a->s == 2);
  CHECK(a->tail == 3);
  CHECK(a->cycle == 1);
  const auto b = orbit_portrait(5, 2);
  REQUIRE(b);
  CHECK(b->r == 3);
  CHECK(b->s == 1);
  CHECK_FALSE(orbit_portrait(7, 0));
  // c = -2 is the Chebyshev parameter: 0 -> -2 -> 2 -> 2.
  CHECK_FALSE(orbit_portrait(11, 9));
  // Periodic critical point: c = -1 gives 0 -> -1 -> 0.
  CHECK_FALSE(orbit_portrait(13, 12));
}

TEST_CASE("portrait relation holds for every parameter of small primes") {
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19}) {
    for (std::uint64_t c = 0; c < p; ++c) {
      const auto o = orbit_portrait(p, c);
      if (!o) continue;
      const auto& v = o->orbit;
      CHECK((v[o->r] + v[o->s]).is_zero());
      CHECK(v[o->r + 1] == v[o->s + 1]);
      CHECK(o->r > o->s);
      std::set<std::vector<std::uint64_t>> seen;
      for (unsigned i = 1; i <= o->r; ++i) seen.insert(v[i].coeffs());
      CHECK(seen.size() == o->r);
    }
  }
}

TEST_CASE("misiurewicz polynomials") {
  const IntPoly f32 = misiurewicz_poly(3, 2);
  CHECK(f32 == IntPoly{0, 2, 2, 2, 1});
  CHECK(misiurewicz_poly(2, 1) == IntPoly{0, 2, 1});
  // Integer evaluation against direct iteration of z^2 + x.
  for (unsigned n = 1; n <= 6; ++n) {
    const IntPoly f = critical_iterate(n);
    for (long x = -3; x <= 3; ++x) {
      mpz_class z = 0;
      for (unsigned k = 0; k < n; ++k) z = z * z + x;
      CHECK(eval_int(f, x) == z);
    }
  }
  for (unsigned n = 1; n <= 8; ++n) {
    const IntPoly f = critical_iterate(n);
    Gf2Poly reduced(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) reduced[i] = mpz_odd_p(f[i].get_mpz_t()) ? 1 : 0;
    while (!reduced.empty() && reduced.back() == 0) reduced.pop_back();
    CHECK(reduced == critical_iterate_mod2(n));
  }
  CHECK_THROWS_AS(misiurewicz_poly(2, 2), Error);
}

TEST_CASE("mod 2 congruences") {
  CHECK(mod2_iterate_check(12));
  for (auto [r, s] : {std::pair{3u, 1u}, {3u, 2u}, {4u, 2u}, {5u, 3u}}) {
    CHECK(misiurewicz_mod2_check(r, s));
  }
}

TEST_CASE("parameter search matches a brute-force portrait scan") {
  for (auto [r, s] : {std::pair{3u, 2u}, {3u, 1u}, {4u, 2u}}) {
    std::vector<PcfParam> brute;
    for (std::uint64_t p = 3; p <= 60; ++p) {
      if (!is_prime(p)) continue;
      for (std::uint64_t c = 0; c < p; ++c) {
        const auto o = orbit_portrait(p, c);
        if (o && o->r == r && o->s == s) brute.push_back({p, c});
      }
    }
    CHECK(find_pcf_params(r, s, 60) == brute);
  }
  const auto found = find_pcf_params(3, 2, 7);
  CHECK(std::find(found.begin(), found.end(), PcfParam{7, 1}) != found.end());
  const auto found31 = find_pcf_params(3, 1, 5);
  CHECK(std::find(found31.begin(), found31.end(), PcfParam{5, 2}) != found31.end());
  CHECK(find_pcf_params(3, 2, 7) == find_pcf_params(3, 2, 7));
}

TEST_CASE("base points") {
  CHECK(valid_base_points(5, 2) == std::vector<std::uint64_t>{0, 4});
  CHECK(is_periodic_point(7, 1, 3));
  CHECK_FALSE(is_periodic_point(7, 1, 4));
  for (std::uint64_t p : {7, 11, 13}) {
    for (std::uint64_t c = 0; c < p; ++c) {
      const auto valid = valid_base_points(p, c);
      for (std::uint64_t x = 0; x < p; ++x) {
        bool post = false;
        std::uint64_t z = 0;
        for (std::uint64_t k = 0; k < p + 1; ++k) {
          z = (z * z + c) % p;
          post = post || z == x;
        }
        const bool expect = !post && !is_periodic_point(p, c, x);
        CHECK((std::find(valid.begin(), valid.end(), x) != valid.end()) == expect);
      }
    }
  }
}

TEST_CASE("preimage tree") {
  const auto ctx = FieldCtx::build(7, 1);
  const auto c = ctx->from_int(1);
  const auto t1 = preimage_tree(ctx, c, ctx->from_int(4), 1);
  CHECK(t1.node_count() == 3);
  CHECK_FALSE(t1.at(TreeWord::parse("a")).in_base_field());
  CHECK(t1.at(TreeWord::parse("a")) * t1.at(TreeWord::parse("a")) == ctx->from_int(3));
  CHECK(t1.params().r == 3);
  CHECK(t1.params().s == 2);

  const auto ctx5 = FieldCtx::build(7, 5);
  auto t = preimage_tree(ctx5, ctx5->from_int(1), ctx5->from_int(4), 5);
  CHECK(t.node_count() == 63);
  for (std::uint64_t i = 0; i < 31; ++i) {
    const auto& a = t.at_index(2 * i + 1);
    const auto& b = t.at_index(2 * i + 2);
    CHECK(a == -b);
    CHECK(a < b);
    CHECK(a * a + t.c() == t.at_index(i));
  }
  const auto before = t.values();
  const std::uint64_t sum = t.checksum();
  t.swap_children(TreeWord::parse("ab"));
  CHECK(t.checksum() != sum);
  for (std::uint64_t i = 0; i < 31; ++i) {
    CHECK(t.at_index(2 * i + 1) * t.at_index(2 * i + 1) + t.c() == t.at_index(i));
  }
  CHECK(t.at(TreeWord::parse("aba")) == before[TreeWord::parse("abb").index()]);
  CHECK(t.at(TreeWord::parse("abbab")) == before[TreeWord::parse("abaab").index()]);
  t.swap_children(TreeWord::parse("ab"));
  CHECK(t.values() == before);
  CHECK(t.find(2, t.at(TreeWord::parse("ba"))) == TreeWord::parse("ba").index());

  CHECK(code_of([&] { preimage_tree(ctx, c, ctx->from_int(3), 2); }) == ErrorCode::PeriodicBase);
  CHECK(code_of([&] { preimage_tree(ctx, c, ctx->from_int(2), 2); }) ==
        ErrorCode::PostcriticalBase);
  CHECK(code_of([&] { preimage_tree(ctx, ctx->zero(), ctx->from_int(4), 2); }) ==
        ErrorCode::WrongPortrait);
  CHECK(code_of([&] {
          preimage_tree(ctx, c, ctx->from_int(4), 2, PortraitParams::make(3, 1));
        }) == ErrorCode::WrongPortrait);
  // Square roots beyond F_49 are missing for a deeper tree.
  CHECK(code_of([&] { preimage_tree(ctx, c, ctx->from_int(4), 4); }) ==
        ErrorCode::MissingSquareRoot);
}
