#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arbor/counting_engine.hpp"
#include "arbor/error.hpp"
#include "arbor/json_io.hpp"
#include "arbor/pink_generators.hpp"

using namespace arbor;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Config {
  std::optional<unsigned> r;
  std::optional<unsigned> s;
  std::optional<std::uint64_t> p;
  std::optional<std::int64_t> c;
  std::optional<std::int64_t> x0;
  unsigned depth = 5;
  unsigned nmax = 5;
  std::uint64_t trials = 1000;
  unsigned workers = 1;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string kind = "auto";
  std::string variant = "tBp";
  unsigned k = 1;
  bool json = false;
  bool no_label = false;
};

std::string csv_opt(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : ""; }

std::string fixed_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << s;
  return os.str();
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("ARBOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "ARBOR_SEED is not an unsigned integer");
    }
  }
  return 0;
}

PortraitParams require_params(const Config& cfg) {
  if (!cfg.r || !cfg.s) throw Error(ErrorCode::InvalidArgument, "--r and --s are required");
  return PortraitParams::make(*cfg.r, *cfg.s);
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + cfg.out);
  f << text;
}

void emit_json(const Config& cfg, const Json& doc) { emit(cfg, doc.dump(2) + "\n"); }

std::optional<PortraitCase> parse_case(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "long") return PortraitCase::LongTail;
  if (text == "special") return PortraitCase::SpecialLongTail;
  if (text == "short") return PortraitCase::ShortTail;
  throw Error(ErrorCode::InvalidArgument, "--case must be auto, long, special or short");
}

// Builds the preimage tree for --p/--c/--x0/--depth; a missing --x0 picks
// the first valid base point.
LabeledTree build_tree(const Config& cfg) {
  if (!cfg.p || !cfg.c) throw Error(ErrorCode::InvalidArgument, "--p and --c are required");
  const std::uint64_t p = *cfg.p;
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "--p must be prime");
  const auto mod = [p](std::int64_t v) {
    const std::int64_t m = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  };
  const std::uint64_t c = mod(*cfg.c);
  std::uint64_t x0 = 0;
  if (cfg.x0) {
    x0 = mod(*cfg.x0);
  } else {
    const auto valid = valid_base_points(p, c);
    if (valid.empty()) throw Error(ErrorCode::InvalidArgument, "no valid base point in F_p");
    x0 = valid.front();
    std::cerr << "x0 = " << x0 << " (first valid base point)\n";
  }
  std::optional<PortraitParams> expected;
  if (cfg.r || cfg.s) expected = require_params(cfg);
  const auto ctx = FieldCtx::build(p, cfg.depth);
  return preimage_tree(ctx, ctx->from_int(static_cast<std::int64_t>(c)),
                       ctx->from_int(static_cast<std::int64_t>(x0)), cfg.depth, expected);
}

LabelingReport run_labeling(LabeledTree& tree, const Config& cfg) {
  const auto forced = parse_case(cfg.kind);
  if (!forced || *forced == tree.params().kind) return label_tree(tree);
  std::cerr << "warning: --case " << cfg.kind << " overrides the inferred case "
            << case_name(tree.params().kind) << "\n";
  const FieldCtx& ctx = *tree.ctx();
  std::vector<LabelSwap> swaps;
  switch (*forced) {
    case PortraitCase::LongTail:
      swaps = label_longtail(tree, canonical_zeta4(ctx));
      break;
    case PortraitCase::SpecialLongTail:
      swaps = label_special(tree, canonical_zeta4(ctx), canonical_sqrt2(ctx));
      break;
    case PortraitCase::ShortTail:
      swaps = label_shorttail(tree, canonical_sqrt2(ctx));
      break;
  }
  LabelingReport rep = verify_identities(tree);
  rep.swaps = std::move(swaps);
  return rep;
}

int cmd_orders(const Config& cfg) {
  if (!cfg.r || !cfg.s) throw Error(ErrorCode::InvalidArgument, "--r and --s are required");
  std::ostringstream os;
  os << "r,s,n,log2_formula,log2_closure,log2_predicate,agree\n";
  if (*cfg.r == 2 && *cfg.s == 1) {
    // Only the closed form is defined for the Chebyshev portrait.
    for (unsigned n = 1; n <= cfg.nmax; ++n) {
      os << "2,1," << n << "," << pink_log2_order(2, 1, n) << ",,,\n";
    }
    emit(cfg, os.str());
    return kPass;
  }
  OrderTableOptions opts;
  opts.workers = cfg.workers;
  const auto rows = verify_order_table(require_params(cfg), cfg.nmax, opts);
  bool ok = true;
  for (const OrderRow& row : rows) {
    ok = ok && row.agree;
    if (cfg.json) continue;
    os << row.r << "," << row.s << "," << row.n << "," << row.log2_formula << ","
       << csv_opt(row.log2_closure) << "," << csv_opt(row.log2_predicate) << ","
       << (row.agree ? "true" : "false") << "\n";
  }
  if (cfg.json) {
    Json doc = Json::array();
    for (const OrderRow& row : rows) doc.push_back(to_json(row));
    emit_json(cfg, doc);
  } else {
    emit(cfg, os.str());
  }
  return ok ? kPass : kFail;
}

int cmd_count(const Config& cfg) {
  const CountReport rep =
      count_predicate(require_params(cfg), cfg.depth, parse_variant(cfg.variant), cfg.workers);
  if (cfg.json) {
    emit_json(cfg, to_json(rep));
  } else {
    std::ostringstream os;
    os << "r,s,n,variant,count,log2,method,seconds\n"
       << rep.params.r << "," << rep.params.s << "," << rep.n << "," << variant_name(rep.variant)
       << "," << rep.count << "," << csv_opt(rep.log2) << "," << rep.method << ","
       << fixed_seconds(rep.seconds) << "\n";
    emit(cfg, os.str());
  }
  return kPass;
}

int cmd_kernels(const Config& cfg) {
  const PortraitParams params = require_params(cfg);
  const GroupVariant variant = parse_variant(cfg.variant);
  std::ostringstream os;
  os << "r,s,n,variant,count,log2,method,seconds\n";
  Json doc = Json::array();
  bool ok = true;
  for (unsigned n = 2; n <= cfg.nmax; ++n) {
    const KernelReport rep = kernel_count(params, n, variant);
    const bool direct_ok = !rep.count_direct || *rep.count_direct == rep.count_block;
    const bool formula_ok = !rep.log2_formula || rep.log2 == rep.log2_formula;
    ok = ok && direct_ok && formula_ok;
    doc.push_back(to_json(rep));
    os << params.r << "," << params.s << "," << n << "," << variant_name(variant) << ","
       << rep.count_block << "," << csv_opt(rep.log2) << ","
       << (rep.count_direct ? "direct+block" : "block") << "," << fixed_seconds(rep.seconds)
       << "\n";
  }
  if (cfg.json) {
    emit_json(cfg, doc);
  } else {
    emit(cfg, os.str());
  }
  return ok ? kPass : kFail;
}

int cmd_find_params(const Config& cfg) {
  const PortraitParams params = require_params(cfg);
  if (!cfg.p) throw Error(ErrorCode::InvalidArgument, "--p (largest prime) is required");
  const auto found = find_pcf_params(params.r, params.s, *cfg.p);
  std::ostringstream os;
  os << "p,c,first_x0\n";
  Json doc = Json::array();
  for (const PcfParam& f : found) {
    const auto valid = valid_base_points(f.p, f.c);
    const std::optional<std::uint64_t> x0 =
        valid.empty() ? std::nullopt : std::optional(valid.front());
    os << f.p << "," << f.c << "," << (x0 ? std::to_string(*x0) : "") << "\n";
    doc.push_back({{"p", f.p}, {"c", f.c}, {"first_x0", x0 ? Json(*x0) : Json(nullptr)}});
  }
  if (cfg.json) {
    emit_json(cfg, doc);
  } else {
    emit(cfg, os.str());
  }
  return found.empty() ? kFail : kPass;
}

int cmd_label(const Config& cfg) {
  LabeledTree tree = build_tree(cfg);
  const LabelingReport rep = run_labeling(tree, cfg);
  emit_json(cfg, {{"tree", to_json(tree)}, {"labeling", to_json(rep)}, {"ok", rep.all_ok()}});
  return rep.all_ok() ? kPass : kFail;
}

int cmd_verify(const Config& cfg) {
  LabeledTree tree = build_tree(cfg);
  const LabelingReport rep = cfg.no_label ? verify_identities(tree) : run_labeling(tree, cfg);
  Json doc = to_json(rep);
  doc["ok"] = rep.all_ok();
  emit_json(cfg, doc);
  return rep.all_ok() ? kPass : kFail;
}

int cmd_frobenius(const Config& cfg) {
  LabeledTree tree = build_tree(cfg);
  const LabelingReport labeling = run_labeling(tree, cfg);
  const FrobeniusProbe probe = frobenius_automorphism(tree, cfg.k);
  const EmbeddingReport emb = check_embedding(probe, tree, labeling);
  std::vector<LevelCheck> levels;
  for (unsigned n = 1; n <= tree.depth(); ++n) {
    levels.push_back(level_product_character(tree, probe, n));
  }
  Json doc = frobenius_json(probe, emb, levels);
  doc["labeling_ok"] = labeling.all_ok();
  const bool ok = doc["ok"].get<bool>() && labeling.all_ok();
  doc["ok"] = ok;
  emit_json(cfg, doc);
  return ok ? kPass : kFail;
}

int cmd_homtest(const Config& cfg) {
  const std::uint64_t seed = resolve_seed(cfg);
  std::cerr << "seed = " << seed << "\n";
  std::optional<PortraitParams> filter;
  if (cfg.r || cfg.s) filter = require_params(cfg);
  HomtestReport rep = run_homtests(seed, cfg.trials, cfg.depth, filter);
  if (!filter) rep.suites.insert(rep.suites.begin(), sgn22_exhaustive(3));
  emit_json(cfg, to_json(rep));
  return rep.ok() ? kPass : kFail;
}

int cmd_mod2(const Config& cfg) {
  Json pairs = Json::array();
  bool ok = mod2_iterate_check(cfg.nmax);
  std::vector<std::pair<unsigned, unsigned>> list = {{3, 1}, {3, 2}, {4, 2}, {5, 3}};
  if (cfg.r || cfg.s) {
    const PortraitParams p = require_params(cfg);
    list = {{p.r, p.s}};
  }
  const bool iterate_ok = ok;
  for (auto [r, s] : list) {
    const bool pass = misiurewicz_mod2_check(r, s);
    ok = ok && pass;
    pairs.push_back({{"r", r}, {"s", s}, {"ok", pass}});
  }
  emit_json(cfg, {{"nmax", cfg.nmax},
                  {"iterate_check", iterate_ok},
                  {"misiurewicz", pairs},
                  {"ok", ok}});
  return ok ? kPass : kFail;
}

int cmd_kummer(const Config& cfg) {
  if (!cfg.p || !cfg.c || !cfg.x0) {
    throw Error(ErrorCode::InvalidArgument, "--p, --c and --x0 are required");
  }
  const std::uint64_t p = *cfg.p;
  const auto mod = [p](std::int64_t v) {
    const std::int64_t m = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  };
  PortraitParams params;
  if (cfg.r || cfg.s) {
    params = require_params(cfg);
  } else {
    const auto portrait = orbit_portrait(p, mod(*cfg.c));
    if (!portrait) throw Error(ErrorCode::WrongPortrait, "c has no admissible portrait");
    params = PortraitParams::make(portrait->r, portrait->s);
  }
  emit_json(cfg, to_json(kummer_rank(p, mod(*cfg.c), mod(*cfg.x0), params, cfg.k)));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arboreal Galois group toolkit for quadratic PCF polynomials"};
  app.require_subcommand(1);
  Config cfg;

  auto add_params = [&cfg](CLI::App* sub) {
    sub->add_option("--r", cfg.r, "Portrait r");
    sub->add_option("--s", cfg.s, "Portrait s");
  };
  auto add_out = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
  };
  auto add_tree = [&cfg, &add_params](CLI::App* sub) {
    add_params(sub);
    sub->add_option("--p", cfg.p, "Prime")->required();
    sub->add_option("--c", cfg.c, "Parameter c in F_p")->required();
    sub->add_option("--x0", cfg.x0, "Base point in F_p (default: first valid)");
    sub->add_option("--depth", cfg.depth, "Tree depth")->check(CLI::Range(1, 6));
    sub->add_option("--case", cfg.kind, "auto, long, special or short");
  };

  auto* orders = app.add_subcommand("orders", "Order table: formula, closure, predicate");
  add_params(orders);
  orders->add_option("--nmax", cfg.nmax)->check(CLI::Range(1, 6));
  orders->add_option("--workers", cfg.workers)->check(CLI::Range(1, 256));
  orders->add_flag("--json", cfg.json);
  add_out(orders);

  auto* count = app.add_subcommand("count", "Count predicate members of Aut(T_n)");
  add_params(count);
  count->add_option("--depth", cfg.depth)->check(CLI::Range(1, 5));
  count->add_option("--variant", cfg.variant, "Mp, Bp, tMp or tBp");
  count->add_option("--workers", cfg.workers)->check(CLI::Range(1, 256));
  count->add_flag("--json", cfg.json);
  add_out(count);

  auto* kernels = app.add_subcommand("kernels", "Kernel counts for n = 2..nmax");
  add_params(kernels);
  kernels->add_option("--nmax", cfg.nmax)->check(CLI::Range(2, 6));
  kernels->add_option("--variant", cfg.variant, "Mp, Bp, tMp or tBp");
  kernels->add_flag("--json", cfg.json);
  add_out(kernels);

  auto* find = app.add_subcommand("find-params", "PCF parameters c over F_p, p <= --p");
  add_params(find);
  find->add_option("--p", cfg.p, "Largest prime to scan");
  find->add_flag("--json", cfg.json);
  add_out(find);

  auto* label = app.add_subcommand("label", "Build and label a preimage tree");
  add_tree(label);
  add_out(label);

  auto* verify = app.add_subcommand("verify-identities", "Check the exact identities");
  add_tree(verify);
  verify->add_flag("--no-label", cfg.no_label, "Verify the tree as built");
  add_out(verify);

  auto* frob = app.add_subcommand("frobenius", "Frobenius automorphism and embedding checks");
  add_tree(frob);
  frob->add_option("--k", cfg.k, "Use the p^k-power map")->check(CLI::Range(1, 64));
  add_out(frob);

  auto* hom = app.add_subcommand("homtest", "Cocycle and homomorphism suites");
  add_params(hom);
  hom->add_option("--trials", cfg.trials)->check(CLI::Range(1, 100000000));
  hom->add_option("--depth", cfg.depth)->check(CLI::Range(1, 6));
  hom->add_option("--seed", cfg.seed, "Seed (fallback ARBOR_SEED, then 0)");
  add_out(hom);

  auto* mod2 = app.add_subcommand("mod2", "Critical iterates and F_{r,s} modulo 2");
  add_params(mod2);
  mod2->add_option("--nmax", cfg.nmax)->check(CLI::Range(1, 12));
  add_out(mod2);

  auto* kummer = app.add_subcommand("kummer", "Quadratic classes and the degree condition");
  add_params(kummer);
  kummer->add_option("--p", cfg.p)->required();
  kummer->add_option("--c", cfg.c)->required();
  kummer->add_option("--x0", cfg.x0)->required();
  kummer->add_option("--k", cfg.k)->check(CLI::Range(1, 64));
  add_out(kummer);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (orders->parsed()) return cmd_orders(cfg);
    if (count->parsed()) return cmd_count(cfg);
    if (kernels->parsed()) return cmd_kernels(cfg);
    if (find->parsed()) return cmd_find_params(cfg);
    if (label->parsed()) return cmd_label(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (frob->parsed()) return cmd_frobenius(cfg);
    if (hom->parsed()) return cmd_homtest(cfg);
    if (mod2->parsed()) return cmd_mod2(cfg);
    if (kummer->parsed()) return cmd_kummer(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
