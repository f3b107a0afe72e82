#pragma once

#include <vector>

#include "arbor/counting_engine.hpp"
#include "arbor/dynamics.hpp"
#include "arbor/galois_probe.hpp"
#include "arbor/property_suites.hpp"
#include "arbor/tree_labeling.hpp"
#include "json.hpp"

namespace arbor {

using Json = nlohmann::ordered_json;

// Coefficient vector, constant term first.
Json to_json(const FieldElement& x);
Json to_json(const PortraitParams& params);
Json to_json(const MembershipReport& report);
Json to_json(const LabeledTree& tree);
Json to_json(const LabelingReport& report);
Json to_json(const LevelCheck& level);
Json to_json(const KummerReport& report);
Json to_json(const SuiteResult& suite);
Json to_json(const HomtestReport& report);
Json to_json(const CountReport& report);
Json to_json(const KernelReport& report);
Json to_json(const OrderRow& row);

// The frobenius subcommand's document.
Json frobenius_json(const FrobeniusProbe& probe, const EmbeddingReport& embedding,
                    const std::vector<LevelCheck>& levels);

}  // namespace arbor
