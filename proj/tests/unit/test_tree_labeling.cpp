#include <set>

#include "arbor/error.hpp"
#include "arbor/tree_labeling.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

LabeledTree make_tree(std::uint64_t p, std::int64_t c, std::int64_t x0, unsigned depth) {
  const auto ctx = FieldCtx::build(p, depth);
  return preimage_tree(ctx, ctx->from_int(c), ctx->from_int(x0), depth);
}

bool is_prefix(const TreeWord& x, const TreeWord& y) {
  return x.length() <= y.length() && y.prefix(x.length()) == x;
}

std::size_t count_id(const LabelingReport& rep, const std::string& id) {
  std::size_t n = 0;
  for (const IdentityCheck& c : rep.checks) n += c.id == id ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("canonical constants") {
  const auto ctx = FieldCtx::build(7, 1);
  const FieldElement z = canonical_zeta4(*ctx);
  CHECK(z * z == -ctx->one());
  CHECK(z < -z);
  const FieldElement s = canonical_sqrt2(*ctx);
  CHECK(s * s == ctx->from_int(2));
  CHECK(s == ctx->from_int(3));
}

TEST_CASE("special tree labeling") {
  LabeledTree t = make_tree(7, 1, 4, 5);
  const LabelingReport before = verify_identities(t);
  CHECK(before.failures() > 0);
  for (const IdentityCheck& c : before.checks) {
    if (c.id == "prop21" || c.id == "iroot_1" || c.id == "iroot_2") CHECK(c.ok);
  }
  const LabelingReport rep = label_tree(t);
  CHECK(rep.kind == PortraitCase::SpecialLongTail);
  CHECK(rep.all_ok());
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.swaps.size() == 6);
  CHECK(rep.tree_checksum == t.checksum());
  CHECK(count_id(rep, "deltaprod") == 1);
  CHECK(special_quantities(t, TreeWord{}).delta == t.ctx()->from_int(3));
  CHECK(rep.gammaprod_anchors == 1);
  CHECK(rep.gammaprod_consistent_holds == 1);
  CHECK(rep.gammaprod_printed_holds == 1);

  // A second pass makes no swaps.
  const std::uint64_t sum = t.checksum();
  const LabelingReport again = label_tree(t);
  CHECK(again.swaps.empty());
  CHECK(t.checksum() == sum);
}

TEST_CASE("a single extra swap breaks checks only above it") {
  const LabeledTree base = [] {
    LabeledTree t = make_tree(7, 1, 4, 5);
    label_tree(t);
    return t;
  }();
  std::size_t broken = 0;
  for (std::uint64_t i = 0; i < 31; ++i) {
    LabeledTree t = base;
    const TreeWord y = TreeWord::from_index(i);
    t.swap_children(y);
    const LabelingReport rep = verify_identities(t);
    broken += rep.failures() > 0 ? 1 : 0;
    for (const IdentityCheck& c : rep.checks) {
      if (!c.ok) CHECK(is_prefix(c.node, y));
    }
  }
  CHECK(broken > 0);
}

TEST_CASE("special labeling at depth 6") {
  LabeledTree t = make_tree(7, 1, 4, 6);
  const LabelingReport rep = label_tree(t);
  CHECK(rep.all_ok());
  CHECK(rep.swaps.size() == 14);
  CHECK(rep.gammaprod_anchors == 3);
}

TEST_CASE("gamma product readings differ away from c = 1") {
  LabeledTree t = make_tree(11, 2, 0, 5);
  const LabelingReport rep = label_tree(t);
  CHECK(rep.all_ok());
  CHECK(rep.gammaprod_anchors > 0);
  CHECK(rep.gammaprod_consistent_holds == rep.gammaprod_anchors);
  CHECK(rep.gammaprod_printed_holds < rep.gammaprod_anchors);
}

TEST_CASE("short tail labeling") {
  for (std::int64_t x0 : {0, 4}) {
    LabeledTree t = make_tree(5, 2, x0, 5);
    const LabelingReport rep = label_tree(t);
    CHECK(rep.kind == PortraitCase::ShortTail);
    CHECK(rep.all_ok());
    CHECK_FALSE(rep.zeta4);
    REQUIRE(rep.sqrt2);
    CHECK(*rep.sqrt2 * *rep.sqrt2 == t.ctx()->from_int(2));
    CHECK(count_id(rep, "root2prod_1") > 0);
    CHECK(count_id(rep, "a1a2") > 0);
    CHECK(label_tree(t).swaps.empty());
  }
}

TEST_CASE("long tail labeling") {
  LabeledTree t = make_tree(7, 4, 0, 5);
  CHECK(t.params().r == 4);
  CHECK(t.params().s == 2);
  const LabelingReport rep = label_tree(t);
  CHECK(rep.kind == PortraitCase::LongTail);
  CHECK(rep.all_ok());
  CHECK(count_id(rep, "fourprod_1") > 0);
  CHECK_FALSE(rep.sqrt2);
}

TEST_CASE("shallow trees are vacuous") {
  LabeledTree t = make_tree(7, 1, 4, 2);
  const LabelingReport rep = label_tree(t);
  CHECK(rep.swaps.empty());
  CHECK(rep.all_ok());
  CHECK(rep.vacuous);
  CHECK_THROWS_AS(special_quantities(t, TreeWord{}), Error);
}
