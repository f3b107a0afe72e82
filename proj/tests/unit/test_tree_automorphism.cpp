#include <map>
#include <random>
#include <set>
#include <string>

#include "arbor/error.hpp"
#include "arbor/tree_automorphism.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

// Oracle: an automorphism as a map from parity strings to images, computed
// with the prefix rule directly on a/b strings.
std::string oracle_apply(const std::map<std::string, int>& par,
                         const std::string& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const int flip = par.at(w.substr(0, k));
    const char sym = w[k];
    out.push_back(flip ? (sym == 'a' ? 'b' : 'a') : sym);
  }
  return out;
}

std::vector<std::string> words_of_length(unsigned len) {
  std::vector<std::string> out{""};
  for (unsigned k = 0; k < len; ++k) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      next.push_back(w + "a");
      next.push_back(w + "b");
    }
    out = next;
  }
  return out;
}

std::map<std::string, int> parity_map(const TreeAutomorphism& sigma) {
  std::map<std::string, int> out;
  for (unsigned len = 0; len < sigma.depth(); ++len) {
    for (const auto& w : words_of_length(len)) {
      out[w] = sigma.par(TreeWord::parse(w)) ? 1 : 0;
    }
  }
  return out;
}

TreeAutomorphism random_aut(unsigned depth, std::mt19937_64& rng) {
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  std::vector<std::uint64_t> words((nodes + 63) / 64);
  for (auto& w : words) w = rng();
  if (nodes % 64) words.back() &= (std::uint64_t{1} << (nodes % 64)) - 1;
  return TreeAutomorphism::from_bits(depth, words);
}

std::vector<TreeAutomorphism> all_of_depth(unsigned depth) {
  std::vector<TreeAutomorphism> out;
  const std::uint64_t nodes = (std::uint64_t{1} << depth) - 1;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << nodes); ++k) {
    out.push_back(TreeAutomorphism::from_key(depth, k));
  }
  return out;
}

}  // namespace

TEST_CASE("tree words index in heap order") {
  CHECK(TreeWord().index() == 0);
  CHECK(TreeWord::parse("a").index() == 1);
  CHECK(TreeWord::parse("b").index() == 2);
  CHECK(TreeWord::parse("ab").index() == 4);
  std::set<std::uint64_t> seen;
  for (unsigned len = 0; len <= 4; ++len) {
    for (const auto& w : words_of_length(len)) {
      const TreeWord t = TreeWord::parse(w);
      CHECK(t.str() == w);
      CHECK(TreeWord::from_index(t.index()) == t);
      CHECK(t.a().index() == 2 * t.index() + 1);
      CHECK(t.b().index() == 2 * t.index() + 2);
      seen.insert(t.index());
    }
  }
  CHECK(seen.size() == 31);
  CHECK(*seen.rbegin() == 30);
  CHECK_THROWS_AS(TreeWord::parse("abc"), Error);
}

TEST_CASE("identity and root swap") {
  const auto e = TreeAutomorphism::identity(3);
  for (const auto& w : words_of_length(3)) {
    CHECK(e.apply(TreeWord::parse(w)).str() == w);
  }
  CHECK(TreeAutomorphism::root_swap(2).apply(TreeWord::parse("ab")).str() == "bb");
  CHECK(TreeAutomorphism::root_swap(2).apply(TreeWord::parse("aa")).str() == "ba");
  CHECK(TreeAutomorphism::root_swap(3).par(TreeWord()) == true);
  CHECK(TreeAutomorphism::root_swap(3).par(TreeWord::parse("a")) == false);
  CHECK(compose(TreeAutomorphism::root_swap(3), TreeAutomorphism::root_swap(3)) ==
        TreeAutomorphism::identity(3));
  CHECK_THROWS_AS(TreeAutomorphism::identity(0), Error);
  const auto e4 = TreeAutomorphism::identity(4);
  for (std::uint64_t i = 0; i < 15; ++i) CHECK_FALSE(e4.par_at(i));
}

TEST_CASE("apply follows the prefix rule") {
  const TreeWord a = TreeWord::parse("a");
  const auto alpha2 = TreeAutomorphism::from_support(2, std::span(&a, 1));
  CHECK(alpha2.apply(TreeWord::parse("ab")).str() == "aa");
  CHECK(alpha2.apply(TreeWord::parse("ba")).str() == "ba");
  CHECK_THROWS_AS(alpha2.apply(TreeWord::parse("aaa")), Error);
  CHECK_THROWS_AS(alpha2.par(TreeWord::parse("aa")), Error);
}

TEST_CASE("level actions are bijections") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sigma = random_aut(5, rng);
    for (unsigned len = 0; len <= 5; ++len) {
      std::set<std::string> images;
      for (const auto& w : words_of_length(len)) {
        images.insert(sigma.apply(TreeWord::parse(w)).str());
      }
      CHECK(images.size() == (std::size_t{1} << len));
    }
  }
}

TEST_CASE("compose matches composed actions exhaustively at depth <= 3") {
  for (unsigned depth = 1; depth <= 3; ++depth) {
    const auto all = all_of_depth(depth);
    CHECK(all.size() == (std::size_t{1} << ((1u << depth) - 1)));
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto ps = parity_map(all[i]);
      for (std::size_t j = 0; j < all.size(); ++j) {
        const auto pt = parity_map(all[j]);
        const auto st = compose(all[i], all[j]);
        for (unsigned len = 0; len <= depth; ++len) {
          for (const auto& w : words_of_length(len)) {
            const std::string expect = oracle_apply(ps, oracle_apply(pt, w));
            REQUIRE(st.apply(TreeWord::parse(w)).str() == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("depth 2 group has 8 distinct actions and closes under compose") {
  const auto all = all_of_depth(2);
  std::set<std::vector<std::string>> actions;
  for (const auto& s : all) {
    std::vector<std::string> act;
    for (const auto& w : words_of_length(2)) act.push_back(s.apply(TreeWord::parse(w)).str());
    actions.insert(act);
  }
  CHECK(actions.size() == 8);
  std::set<std::uint64_t> products;
  for (const auto& s : all) {
    for (const auto& t : all) products.insert(compose(s, t).key());
  }
  CHECK(products.size() == 8);
}

TEST_CASE("parity cocycle and sign multiplicativity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_aut(6, rng);
    const auto t = random_aut(6, rng);
    const auto st = compose(s, t);
    for (std::uint64_t i = 0; i < 63; ++i) {
      const TreeWord x = TreeWord::from_index(i);
      REQUIRE(st.par(x) == (s.par(t.apply(x)) != t.par(x)));
      REQUIRE(st.sgn(x) == s.sgn(t.apply(x)) * t.sgn(x));
    }
  }
}

TEST_CASE("inverse") {
  for (const auto& s : all_of_depth(3)) {
    CHECK(invert(invert(s)) == s);
    CHECK(compose(s, invert(s)).is_identity());
    CHECK(compose(invert(s), s).is_identity());
  }
  CHECK(invert(TreeAutomorphism::identity(4)) == TreeAutomorphism::identity(4));
  CHECK(invert(TreeAutomorphism::root_swap(3)) == TreeAutomorphism::root_swap(3));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_aut(12, rng);
    CHECK(compose(s, invert(s)).is_identity());
  }
}

TEST_CASE("packed arithmetic agrees with the general path") {
  std::mt19937_64 rng(17);
  for (unsigned depth = 1; depth <= 6; ++depth) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = random_aut(depth, rng);
      const auto t = random_aut(depth, rng);
      REQUIRE(packed::compose(depth, s.key(), t.key()) == compose(s, t).key());
      REQUIRE(packed::invert(depth, s.key()) == invert(s).key());
    }
  }
}

TEST_CASE("restrict is a homomorphism") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_aut(5, rng);
    const auto t = random_aut(5, rng);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
    REQUIRE(restrict_to(compose(s, t), m) == compose(restrict_to(s, m), restrict_to(t, m)));
  }
  const auto s = random_aut(4, rng);
  CHECK(restrict_to(s, 4) == s);
  CHECK_THROWS_AS(restrict_to(s, 5), Error);
  CHECK_THROWS_AS(restrict_to(s, 0), Error);
}

TEST_CASE("graft places subtrees") {
  CHECK(graft(TreeAutomorphism::identity(3), TreeAutomorphism::identity(3)) ==
        TreeAutomorphism::identity(4));
  const auto g = graft(TreeAutomorphism::root_swap(1), TreeAutomorphism::identity(1));
  CHECK(g.support().size() == 1);
  CHECK(g.support()[0].str() == "a");
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_aut(4, rng);
    const auto b = random_aut(4, rng);
    const auto gr = graft(a, b);
    CHECK_FALSE(gr.par(TreeWord()));
    for (std::uint64_t i = 0; i < 15; ++i) {
      const TreeWord w = TreeWord::from_index(i);
      CHECK(gr.par(TreeWord::parse("a").concat(w)) == a.par(w));
      CHECK(gr.par(TreeWord::parse("b").concat(w)) == b.par(w));
    }
    const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
    CHECK(restrict_to(graft(restrict_to(a, m), restrict_to(b, m)), m) ==
          restrict_to(gr, m));
  }
  CHECK_THROWS_AS(graft(TreeAutomorphism::identity(2), TreeAutomorphism::identity(3)), Error);
}

TEST_CASE("encoding") {
  CHECK(encode(TreeAutomorphism::identity(2)) == "ATn:2:00");
  CHECK(encode(TreeAutomorphism::root_swap(2)) == "ATn:2:01");
  CHECK(encode(TreeAutomorphism::identity(1)) == "ATn:1:00");
  CHECK(encode(TreeAutomorphism::identity(4)) == "ATn:4:0000");
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_aut(6, rng);
    REQUIRE(decode(encode(s)) == s);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_aut(9, rng);
    REQUIRE(decode(encode(s)) == s);
  }
  // Bit j of byte k is node 8k + j.
  const TreeWord node8 = TreeWord::from_index(8);
  CHECK(encode(TreeAutomorphism::from_support(4, std::span(&node8, 1))) == "ATn:4:0001");
  CHECK_THROWS_AS(decode("ATx:2:00"), Error);
  CHECK_THROWS_AS(decode("ATn:2:0"), Error);
  CHECK_THROWS_AS(decode("ATn:2:000"), Error);
  CHECK_THROWS_AS(decode("ATn:2:0g"), Error);
  CHECK_THROWS_AS(decode("ATn:4:00FF"), Error);
  CHECK_THROWS_AS(decode("ATn:2:08"), Error);
  CHECK_THROWS_AS(decode("ATn:0:"), Error);
  CHECK_THROWS_AS(decode("ATn::00"), Error);
  try {
    decode("ATn:2:80");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::MalformedEncoding);
  }
}

TEST_CASE("order of Aut(T_n) for small n") {
  for (unsigned depth = 1; depth <= 3; ++depth) {
    std::set<std::uint64_t> keys;
    for (const auto& s : all_of_depth(depth)) keys.insert(s.key());
    CHECK(keys.size() == (std::size_t{1} << ((1u << depth) - 1)));
  }
}
