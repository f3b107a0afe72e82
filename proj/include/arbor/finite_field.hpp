#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arbor {

class FieldCtx;

// Element of F_{p^m}: coefficients c_0..c_{m-1} of a polynomial in the
// modulus variable, each reduced mod p. Carries its field context.
class FieldElement {
 public:
  FieldElement() = default;

  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  const FieldCtx& ctx() const { return *ctx_; }
  const std::shared_ptr<const FieldCtx>& ctx_ptr() const noexcept { return ctx_; }

  bool is_zero() const noexcept;
  // True when the element lies in F_p.
  bool in_base_field() const noexcept;
  // Value of c_0; only meaningful for base-field elements.
  std::uint64_t base_value() const noexcept { return c_.empty() ? 0 : c_[0]; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(const mpz_class& e) const;
  FieldElement inverse() const;

  // Coefficient vector equality (same field assumed).
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.c_ == y.c_;
  }
  // Canonical order: lexicographic on (c_0, c_1, ..., c_{m-1}).
  friend bool operator<(const FieldElement& x, const FieldElement& y) {
    return x.c_ < y.c_;
  }

  std::string str() const;

 private:
  friend class FieldCtx;
  FieldElement(std::shared_ptr<const FieldCtx> ctx, std::vector<std::uint64_t> c)
      : ctx_(std::move(ctx)), c_(std::move(c)) {}

  std::shared_ptr<const FieldCtx> ctx_;
  std::vector<std::uint64_t> c_;
};

struct SqrtResult {
  // Canonically ordered: first <= second.
  FieldElement first;
  FieldElement second;
  bool degenerate = false;
};

// The field F_{p^m} with m = 2^depth, built on the first irreducible monic
// polynomial of degree m in the scan order x^m, x^m + 1, ..., x^m + x, ...
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  static constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 26;
  static constexpr unsigned kMaxDepth = 6;

  static std::shared_ptr<const FieldCtx> build(std::uint64_t p, unsigned depth);

  std::uint64_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  unsigned depth() const noexcept { return depth_; }
  // Monic modulus, coefficients of x^0..x^m.
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
  const mpz_class& order() const noexcept { return q_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t value) const;
  FieldElement from_coeffs(std::vector<std::uint64_t> coeffs) const;
  // The residue class of the modulus variable.
  FieldElement generator() const;

  bool is_square(const FieldElement& a) const;
  std::optional<SqrtResult> sqrt(const FieldElement& a) const;
  const FieldElement& least_nonsquare() const { return nonsquare_; }

  // a^(p^k), computed as k successive p-th powers.
  FieldElement frobenius(const FieldElement& a, unsigned k) const;

 private:
  friend class FieldElement;
  FieldCtx() = default;

  std::vector<std::uint64_t> mul_raw(const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b) const;
  FieldElement make(std::vector<std::uint64_t> c) const;
  void prepare_sqrt();

  std::uint64_t p_ = 0;
  unsigned depth_ = 0;
  unsigned m_ = 1;
  std::vector<std::uint64_t> modulus_;
  mpz_class q_;
  // q - 1 = 2^two_adic * odd_part.
  unsigned two_adic_ = 0;
  mpz_class odd_part_;
  FieldElement nonsquare_;
  FieldElement nonsquare_pow_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace arbor
