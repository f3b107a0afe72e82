#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arbor/counting_engine.hpp"
#include "arbor/error.hpp"
#include "arbor/json_io.hpp"
#include "arbor/pink_generators.hpp"

namespace py = pybind11;
using namespace arbor;

namespace {

LabeledTree build_tree(std::uint64_t p, std::uint64_t c, std::uint64_t x0, unsigned depth) {
  const auto ctx = FieldCtx::build(p, depth);
  return preimage_tree(ctx, ctx->from_int(static_cast<std::int64_t>(c % p)),
                       ctx->from_int(static_cast<std::int64_t>(x0 % p)), depth);
}

std::string label_json(std::uint64_t p, std::uint64_t c, std::uint64_t x0, unsigned depth) {
  LabeledTree tree = build_tree(p, c, x0, depth);
  const LabelingReport rep = label_tree(tree);
  return Json{{"tree", to_json(tree)}, {"labeling", to_json(rep)}, {"ok", rep.all_ok()}}.dump();
}

std::string frobenius_doc(std::uint64_t p, std::uint64_t c, std::uint64_t x0, unsigned depth,
                          unsigned k) {
  LabeledTree tree = build_tree(p, c, x0, depth);
  const LabelingReport labeling = label_tree(tree);
  const FrobeniusProbe probe = frobenius_automorphism(tree, k);
  const EmbeddingReport emb = check_embedding(probe, tree, labeling);
  std::vector<LevelCheck> levels;
  for (unsigned n = 1; n <= depth; ++n) levels.push_back(level_product_character(tree, probe, n));
  Json doc = frobenius_json(probe, emb, levels);
  doc["labeling_ok"] = labeling.all_ok();
  doc["ok"] = doc["ok"].get<bool>() && labeling.all_ok();
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_arbor, m) {
  m.doc() = "Native core of the arbor package";
  py::register_exception<Error>(m, "ArborError", PyExc_ValueError);

  py::class_<TreeAutomorphism>(m, "TreeAutomorphism")
      .def_static("identity", &TreeAutomorphism::identity, py::arg("depth"))
      .def_static("root_swap", &TreeAutomorphism::root_swap, py::arg("depth"))
      .def_static(
          "from_support",
          [](unsigned depth, const std::vector<std::string>& words) {
            std::vector<TreeWord> support;
            for (const std::string& w : words) support.push_back(TreeWord::parse(w));
            return TreeAutomorphism::from_support(depth, support);
          },
          py::arg("depth"), py::arg("words"))
      .def_static("decode", [](const std::string& text) { return decode(text); })
      .def_property_readonly("depth", &TreeAutomorphism::depth)
      .def("par", [](const TreeAutomorphism& s, const std::string& w) {
        return s.par(TreeWord::parse(w));
      })
      .def("apply", [](const TreeAutomorphism& s, const std::string& w) {
        return s.apply(TreeWord::parse(w)).str();
      })
      .def("support", [](const TreeAutomorphism& s) {
        std::vector<std::string> out;
        for (const TreeWord& w : s.support()) out.push_back(w.str());
        return out;
      })
      .def("is_identity", &TreeAutomorphism::is_identity)
      .def("encode", [](const TreeAutomorphism& s) { return encode(s); })
      .def("__mul__", [](const TreeAutomorphism& a, const TreeAutomorphism& b) {
        return compose(a, b);
      })
      .def("inverse", [](const TreeAutomorphism& s) { return invert(s); })
      .def("restrict", [](const TreeAutomorphism& s, unsigned d) { return restrict_to(s, d); })
      .def("__eq__", [](const TreeAutomorphism& a, const TreeAutomorphism& b) { return a == b; })
      .def("__repr__", [](const TreeAutomorphism& s) { return "<" + encode(s) + ">"; });

  m.def("compose", &compose, py::arg("sigma"), py::arg("tau"));
  m.def("graft", &graft, py::arg("left"), py::arg("right"));

  m.def("pink_generators", [](unsigned r, unsigned s, unsigned n) {
    return pink_generators(PortraitParams::make(r, s), n);
  });
  m.def("pink_log2_order", &pink_log2_order, py::arg("r"), py::arg("s"), py::arg("n"));
  m.def(
      "closure_log2",
      [](const std::vector<TreeAutomorphism>& gens) -> std::optional<unsigned> {
        const ClosureResult c = closure(gens);
        if (!c.complete) throw Error(ErrorCode::BudgetExceeded, "closure budget exhausted");
        return c.log2;
      },
      py::arg("generators"));
  m.def(
      "count_predicate",
      [](unsigned r, unsigned s, unsigned n, const std::string& variant, unsigned workers) {
        return count_predicate(PortraitParams::make(r, s), n, parse_variant(variant), workers)
            .count;
      },
      py::arg("r"), py::arg("s"), py::arg("n"), py::arg("variant") = "tBp",
      py::arg("workers") = 1);
  m.def(
      "kernel_json",
      [](unsigned r, unsigned s, unsigned n, const std::string& variant) {
        return to_json(kernel_count(PortraitParams::make(r, s), n, parse_variant(variant)))
            .dump();
      },
      py::arg("r"), py::arg("s"), py::arg("n"), py::arg("variant") = "tBp");
  m.def(
      "membership_json",
      [](const TreeAutomorphism& sigma, unsigned r, unsigned s) {
        return to_json(membership(sigma, PortraitParams::make(r, s))).dump();
      },
      py::arg("sigma"), py::arg("r"), py::arg("s"));

  m.def("orbit_portrait", [](std::uint64_t p, std::uint64_t c) -> std::optional<py::tuple> {
    const auto o = orbit_portrait(p, c);
    if (!o) return std::nullopt;
    return py::make_tuple(o->r, o->s);
  });
  m.def("find_pcf_params", [](unsigned r, unsigned s, std::uint64_t p_max) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const PcfParam& f : find_pcf_params(r, s, p_max)) out.emplace_back(f.p, f.c);
    return out;
  });
  m.def("valid_base_points", &valid_base_points, py::arg("p"), py::arg("c"));
  m.def("mod2_iterate_check", &mod2_iterate_check, py::arg("n_max"));
  m.def("misiurewicz_mod2_check", &misiurewicz_mod2_check, py::arg("r"), py::arg("s"));

  m.def("label_json", &label_json, py::arg("p"), py::arg("c"), py::arg("x0"),
        py::arg("depth") = 5);
  m.def("frobenius_json", &frobenius_doc, py::arg("p"), py::arg("c"), py::arg("x0"),
        py::arg("depth") = 5, py::arg("k") = 1);
  m.def(
      "kummer_json",
      [](std::uint64_t p, std::uint64_t c, std::uint64_t x0, unsigned r, unsigned s,
         unsigned k) { return to_json(kummer_rank(p, c, x0, PortraitParams::make(r, s), k)).dump(); },
      py::arg("p"), py::arg("c"), py::arg("x0"), py::arg("r"), py::arg("s"), py::arg("k") = 1);
  m.def(
      "homtest_json",
      [](std::uint64_t seed, std::uint64_t trials, unsigned depth) {
        return to_json(run_homtests(seed, trials, depth)).dump();
      },
      py::arg("seed"), py::arg("trials") = 1000, py::arg("depth") = 5);
}
