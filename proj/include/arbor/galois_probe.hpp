#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/dynamics.hpp"
#include "arbor/parity_functionals.hpp"
#include "arbor/tree_automorphism.hpp"
#include "arbor/tree_labeling.hpp"

namespace arbor {

// The q0-power map on a labeled preimage tree, q0 = p^k, read as a tree
// automorphism of the tree's depth.
struct FrobeniusProbe {
  std::uint64_t p = 0;
  unsigned k = 1;
  mpz_class q0;
  TreeAutomorphism sigma = TreeAutomorphism::identity(1);
  // Heap index of the image of every node, levels 0..depth.
  std::vector<std::uint64_t> images;
  std::uint64_t tree_checksum = 0;
};

FrobeniusProbe frobenius_automorphism(const LabeledTree& tree, unsigned k = 1);

struct SignCheck {
  TreeWord anchor;
  // "pa", "pb", "r32" or "rr1".
  std::string functional;
  unsigned value = 0;
  // Exponent e in sigma(gamma) = (-1)^e gamma for the matching constant.
  unsigned sign = 0;
  bool ok = false;
};

struct EmbeddingReport {
  MembershipReport membership;
  std::optional<unsigned> zeta4_sign;
  std::optional<unsigned> sqrt2_sign;
  std::vector<SignCheck> signs;
  // Every functional value agrees with the Galois sign at every anchor.
  bool signs_ok = false;
  // Short tail only: P^a = P^b = 0 at every anchor.
  std::optional<bool> p_zero;
  bool ok = false;
};

// The labeling report must come from the same tree (matching checksum).
EmbeddingReport check_embedding(const FrobeniusProbe& probe, const LabeledTree& tree,
                                const LabelingReport& labeling);

struct LevelCheck {
  unsigned n = 0;
  FieldElement d;
  // Quadratic character of D_n over F_{q0}: +1 or -1.
  int chi = 1;
  unsigned parity_xor = 0;
  bool ok = false;
};

// D_1 = x0 - c, D_n = f^n(0) - x0 for n >= 2.
FieldElement discriminant_d(const LabeledTree& tree, unsigned n);

// XOR of Par(sigma, x) over level n - 1 against the non-square indicator of D_n.
LevelCheck level_product_character(const LabeledTree& tree, const FrobeniusProbe& probe,
                                   unsigned n);

struct KummerClass {
  std::string label;
  std::uint64_t value = 0;
  int chi = 1;
};

struct KummerReport {
  std::uint64_t p = 0;
  unsigned k = 1;
  std::uint64_t c = 0;
  std::uint64_t x0 = 0;
  PortraitParams params;
  std::vector<std::uint64_t> d;
  std::vector<KummerClass> classes;
  unsigned rank = 0;
  std::uint64_t degree = 1;
  unsigned target_log2 = 0;
  bool condition1 = false;
  std::string explanation;
};

// Quadratic classes of D_1..D_r and the case's constants over F_{p^k}.
KummerReport kummer_rank(std::uint64_t p, std::uint64_t c, std::uint64_t x0,
                         const PortraitParams& params, unsigned k = 1);

}  // namespace arbor
