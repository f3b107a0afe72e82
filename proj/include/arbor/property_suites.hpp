#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arbor/parity_functionals.hpp"
#include "arbor/tree_automorphism.hpp"

namespace arbor {

// Uniform element of Aut(T_depth), depth <= 6.
TreeAutomorphism random_automorphism(unsigned depth, std::mt19937_64& rng);

// Uniform sampler over a variant's predicate set, by rejection on random
// packed keys. Throws BudgetExceeded after max_attempts misses in a row.
class MemberSampler {
 public:
  MemberSampler(const PortraitParams& params, unsigned depth, GroupVariant variant,
                std::uint64_t seed, std::uint64_t max_attempts = std::uint64_t{1} << 24);

  TreeAutomorphism next();
  std::mt19937_64& rng() noexcept { return rng_; }
  std::uint64_t attempts() const noexcept { return attempts_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  CompiledPredicate pred_;
  unsigned depth_;
  std::uint64_t mask_;
  std::uint64_t max_attempts_;
  std::mt19937_64 rng_;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
};

struct SuiteResult {
  std::string name;
  // "(r,s)" or "-" for parameter-free suites.
  std::string params;
  unsigned depth = 0;
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> first_failure;

  bool ok() const noexcept { return failures == 0 && checks > 0; }
};

struct HomtestReport {
  std::uint64_t seed = 0;
  unsigned depth = 0;
  std::uint64_t trials = 0;
  std::vector<SuiteResult> suites;
  double seconds = 0.0;

  bool ok() const noexcept;
};

// Parity composition rule, exhaustive over all pairs at depths 1..max_depth,
// against node images computed by applying tau then sigma.
SuiteResult sgn22_exhaustive(unsigned max_depth);

// Random cocycle and homomorphism suites. Each suite draws its own stream
// from (seed, suite index); filter restricts to one parameter pair.
HomtestReport run_homtests(std::uint64_t seed, std::uint64_t trials = 1000,
                           unsigned depth = 5,
                           const std::optional<PortraitParams>& filter = std::nullopt);

}  // namespace arbor
