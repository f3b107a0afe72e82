#include "arbor/json_io.hpp"

namespace arbor {
namespace {

Json optional_bit(const std::optional<unsigned>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const FieldElement& x) { return Json(x.coeffs()); }

Json to_json(const PortraitParams& params) {
  return {{"r", params.r}, {"s", params.s}, {"case", case_name(params.kind)}, {"e", params.e}};
}

Json to_json(const MembershipReport& report) {
  Json h = Json::array();
  for (const auto& v : report.h_value) h.push_back(optional_bit(v));
  Json violations = Json::array();
  for (const MembershipViolation& v : report.violations) {
    violations.push_back({{"node", v.node.str()}, {"kind", v.kind}});
  }
  return {{"in_group", report.in_group},
          {"p", optional_bit(report.p_value)},
          {"r", optional_bit(report.r_value)},
          {"h", h},
          {"violations", violations},
          {"params", to_json(report.params)},
          {"depth", report.depth},
          {"variants",
           {{"Mp", report.in_m}, {"Bp", report.in_b}, {"tMp", report.in_tm}, {"tBp", report.in_tb}}},
          {"p_nonvacuous", report.p_nonvacuous},
          {"r_nonvacuous", report.r_nonvacuous}};
}

Json to_json(const LabeledTree& tree) {
  const FieldCtx& ctx = *tree.ctx();
  Json nodes = Json::object();
  for (std::uint64_t i = 0; i < tree.node_count(); ++i) {
    nodes[TreeWord::from_index(i).str()] = to_json(tree.at_index(i));
  }
  return {{"p", ctx.p()},
          {"m", ctx.m()},
          {"modulus", ctx.modulus()},
          {"c", to_json(tree.c())},
          {"x0", to_json(tree.x0())},
          {"depth", tree.depth()},
          {"portrait", {{"r", tree.params().r}, {"s", tree.params().s}}},
          {"nodes", nodes}};
}

Json to_json(const LabelingReport& report) {
  Json swaps = Json::array();
  for (const LabelSwap& s : report.swaps) {
    swaps.push_back({{"node", s.node.str()}, {"level", s.node.length()}, {"rule", s.rule}});
  }
  Json checks = Json::array();
  for (const IdentityCheck& c : report.checks) {
    checks.push_back({{"node", c.node.str()}, {"id", c.id}, {"ok", c.ok}});
  }
  Json out = {{"case", case_name(report.kind)},
              {"zeta4", report.zeta4 ? to_json(*report.zeta4) : Json(nullptr)},
              {"sqrt2", report.sqrt2 ? to_json(*report.sqrt2) : Json(nullptr)},
              {"swaps", swaps},
              {"checks", checks},
              {"failures", report.failures()},
              {"vacuous", report.vacuous}};
  if (report.kind == PortraitCase::SpecialLongTail) {
    out["gammaprod"] = {{"anchors", report.gammaprod_anchors},
                        {"consistent_holds", report.gammaprod_consistent_holds},
                        {"printed_holds", report.gammaprod_printed_holds}};
  }
  return out;
}

Json to_json(const LevelCheck& level) {
  return {{"n", level.n},
          {"D_n", to_json(level.d)},
          {"chi", level.chi},
          {"parity_xor", level.parity_xor},
          {"ok", level.ok}};
}

Json to_json(const KummerReport& report) {
  Json classes = Json::array();
  for (const KummerClass& c : report.classes) {
    classes.push_back({{"label", c.label}, {"value", c.value}, {"chi", c.chi}});
  }
  return {{"p", report.p},
          {"k", report.k},
          {"c", report.c},
          {"x0", report.x0},
          {"params", to_json(report.params)},
          {"D", report.d},
          {"classes", classes},
          {"rank", report.rank},
          {"degree", report.degree},
          {"target_log2", report.target_log2},
          {"condition1", report.condition1},
          {"explanation", report.explanation}};
}

Json to_json(const SuiteResult& suite) {
  return {{"name", suite.name},
          {"params", suite.params},
          {"depth", suite.depth},
          {"instances", suite.instances},
          {"checks", suite.checks},
          {"failures", suite.failures},
          {"first_failure", optional_value(suite.first_failure)},
          {"ok", suite.ok()}};
}

Json to_json(const HomtestReport& report) {
  Json suites = Json::array();
  for (const SuiteResult& s : report.suites) suites.push_back(to_json(s));
  return {{"seed", report.seed},
          {"depth", report.depth},
          {"trials", report.trials},
          {"suites", suites},
          {"ok", report.ok()}};
}

Json to_json(const CountReport& report) {
  return {{"r", report.params.r},
          {"s", report.params.s},
          {"n", report.n},
          {"variant", variant_name(report.variant)},
          {"count", report.count},
          {"log2", optional_value(report.log2)},
          {"method", report.method},
          {"workers", report.workers}};
}

Json to_json(const KernelReport& report) {
  return {{"r", report.params.r},
          {"s", report.params.s},
          {"n", report.n},
          {"variant", variant_name(report.variant)},
          {"count_direct", optional_value(report.count_direct)},
          {"count_block", report.count_block},
          {"log2", optional_value(report.log2)},
          {"log2_formula", optional_value(report.log2_formula)},
          {"blocks", report.blocks}};
}

Json to_json(const OrderRow& row) {
  return {{"r", row.r},
          {"s", row.s},
          {"n", row.n},
          {"log2_formula", row.log2_formula},
          {"log2_closure", optional_value(row.log2_closure)},
          {"log2_predicate", optional_value(row.log2_predicate)},
          {"log2_kernel", optional_value(row.log2_kernel)},
          {"log2_recursion", optional_value(row.log2_recursion)},
          {"closure_partial", row.closure_partial},
          {"agree", row.agree}};
}

Json frobenius_json(const FrobeniusProbe& probe, const EmbeddingReport& embedding,
                    const std::vector<LevelCheck>& levels) {
  Json level_json = Json::array();
  bool levels_ok = true;
  for (const LevelCheck& l : levels) {
    level_json.push_back(to_json(l));
    levels_ok = levels_ok && l.ok;
  }
  Json sign_checks = Json::array();
  for (const SignCheck& s : embedding.signs) {
    sign_checks.push_back({{"node", s.anchor.str()},
                           {"functional", s.functional},
                           {"value", s.value},
                           {"sign", s.sign},
                           {"ok", s.ok}});
  }
  return {{"p", probe.p},
          {"k", probe.k},
          {"q0", probe.q0.get_str()},
          {"sigma", encode(probe.sigma)},
          {"membership", to_json(embedding.membership)},
          {"signs", {{"zeta4", optional_bit(embedding.zeta4_sign)},
                     {"sqrt2", optional_bit(embedding.sqrt2_sign)}}},
          {"sign_checks", sign_checks},
          {"signs_ok", embedding.signs_ok},
          {"p_zero", optional_value(embedding.p_zero)},
          {"levels", level_json},
          {"ok", embedding.ok && levels_ok}};
}

}  // namespace arbor
