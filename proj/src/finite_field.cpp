#include "arbor/finite_field.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor {
namespace {

using Poly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a nonzero polynomial b over F_p.
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t coef = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      a[shift + j] = (a[shift + j] + p - mulmod(coef, b[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Multiplication modulo a monic modulus of degree m; inputs have length m.
Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
  const std::size_t m = modulus.size() - 1;
  std::vector<std::uint64_t> t(2 * m - 1, 0);
  // Products are below 2^52, so up to 2^11 of them fit without reduction.
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) t[i + j] += a[i] * b[j];
  }
  for (std::size_t k = 2 * m - 2; k >= m; --k) {
    const std::uint64_t coef = t[k] % p;
    if (coef != 0) {
      for (std::size_t j = 0; j < m; ++j) {
        if (modulus[j] != 0) t[k - m + j] += coef * (p - modulus[j]);
      }
    }
  }
  Poly out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = t[i] % p;
  return out;
}

Poly pow_p(const Poly& a, const Poly& modulus, std::uint64_t p) {
  const std::size_t m = modulus.size() - 1;
  Poly result(m, 0);
  result[0] = 1;
  Poly base = a;
  for (std::uint64_t e = p; e; e >>= 1) {
    if (e & 1) result = mul_mod(result, base, modulus, p);
    if (e > 1) base = mul_mod(base, base, modulus, p);
  }
  return result;
}

bool has_unit_gcd(const Poly& f, Poly h, std::uint64_t p) {
  h[1] = (h[1] + p - 1) % p;
  return poly_gcd(f, h, p).size() == 1;
}

// Rabin's test for degree m = 2^d: x^(p^m) = x mod f and
// gcd(x^(p^(m/2)) - x, f) = 1. Factors of degree 1 and 2 are ruled out
// early, which rejects most candidates after a couple of p-th powers.
bool irreducible_pow2_degree(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  Poly x(m, 0);
  x[1] = 1;
  Poly h = x;
  for (std::size_t k = 1; k <= m; ++k) {
    h = pow_p(h, f, p);
    if ((k == 1 || k == 2 || k == m / 2) && k < m && !has_unit_gcd(f, h, p)) return false;
  }
  return h == x;
}

// x^(2^d) + c0 with d >= 1 is irreducible iff -c0 is a non-square mod p and
// either the degree is 2 or p = 1 mod 4.
bool binomial_irreducible(std::size_t m, std::uint64_t c0, std::uint64_t p) {
  if (c0 == 0) return false;
  if (m > 2 && p % 4 != 1) return false;
  return powmod(p - c0, (p - 1) / 2, p) == p - 1;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool FieldElement::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool FieldElement::in_base_field() const noexcept {
  return std::all_of(c_.begin() + (c_.empty() ? 0 : 1), c_.end(),
                     [](std::uint64_t v) { return v == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  const std::uint64_t p = ctx_->p();
  std::vector<std::uint64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = (c_[i] + o.c_[i]) % p;
  return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  const std::uint64_t p = ctx_->p();
  std::vector<std::uint64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = (c_[i] + p - o.c_[i]) % p;
  return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator-() const {
  const std::uint64_t p = ctx_->p();
  std::vector<std::uint64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = (p - c_[i]) % p;
  return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  return FieldElement(ctx_, ctx_->mul_raw(c_, o.c_));
}

FieldElement FieldElement::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = ctx_->one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  return pow(ctx_->order() - 2);
}

std::string FieldElement::str() const {
  if (in_base_field()) return std::to_string(base_value());
  std::string out = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

std::vector<std::uint64_t> FieldCtx::mul_raw(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) const {
  if (m_ == 1) return {mulmod(a[0], b[0], p_)};
  return mul_mod(a, b, modulus_, p_);
}

FieldElement FieldCtx::make(std::vector<std::uint64_t> c) const {
  return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldCtx::zero() const { return make(std::vector<std::uint64_t>(m_, 0)); }

FieldElement FieldCtx::one() const {
  std::vector<std::uint64_t> c(m_, 0);
  c[0] = 1;
  return make(std::move(c));
}

FieldElement FieldCtx::from_int(std::int64_t value) const {
  std::vector<std::uint64_t> c(m_, 0);
  const std::int64_t sp = static_cast<std::int64_t>(p_);
  c[0] = static_cast<std::uint64_t>(((value % sp) + sp) % sp);
  return make(std::move(c));
}

FieldElement FieldCtx::from_coeffs(std::vector<std::uint64_t> coeffs) const {
  if (coeffs.size() > m_) {
    throw Error(ErrorCode::InvalidArgument, "too many coefficients for field");
  }
  coeffs.resize(m_, 0);
  for (auto& v : coeffs) v %= p_;
  return make(std::move(coeffs));
}

FieldElement FieldCtx::generator() const {
  if (m_ == 1) return zero();
  std::vector<std::uint64_t> c(m_, 0);
  c[1] = 1;
  return make(std::move(c));
}

bool FieldCtx::is_square(const FieldElement& a) const {
  if (a.is_zero()) return true;
  return a.pow((q_ - 1) / 2) == one();
}

std::optional<SqrtResult> FieldCtx::sqrt(const FieldElement& a) const {
  if (a.is_zero()) return SqrtResult{a, a, true};
  if (!is_square(a)) return std::nullopt;
  FieldElement root;
  if (two_adic_ == 1) {
    root = a.pow((q_ + 1) / 4);
  } else {
    // Tonelli-Shanks with the least non-square as auxiliary element.
    unsigned m = two_adic_;
    FieldElement c = nonsquare_pow_;
    FieldElement t = a.pow(odd_part_);
    root = a.pow((odd_part_ + 1) / 2);
    const FieldElement unit = one();
    while (!(t == unit)) {
      unsigned i = 0;
      FieldElement t2 = t;
      while (!(t2 == unit)) {
        t2 = t2 * t2;
        ++i;
      }
      FieldElement b = c;
      for (unsigned k = 0; k + 1 < m - i; ++k) b = b * b;
      m = i;
      c = b * b;
      t = t * c;
      root = root * b;
    }
  }
  if (!(root * root == a)) {
    throw Error(ErrorCode::InvariantViolation, "square root check failed");
  }
  FieldElement other = -root;
  if (other < root) std::swap(root, other);
  return SqrtResult{root, other, false};
}

FieldElement FieldCtx::frobenius(const FieldElement& a, unsigned k) const {
  FieldElement out = a;
  const mpz_class pz(static_cast<unsigned long>(p_));
  for (unsigned i = 0; i < k; ++i) out = out.pow(pz);
  return out;
}

void FieldCtx::prepare_sqrt() {
  mpz_class qm1 = q_ - 1;
  two_adic_ = 0;
  while (mpz_even_p(qm1.get_mpz_t())) {
    qm1 /= 2;
    ++two_adic_;
  }
  odd_part_ = qm1;
  // Scan in canonical order: c_0 most significant, c_{m-1} least.
  std::vector<std::uint64_t> c(m_, 0);
  for (;;) {
    std::size_t k = m_;
    while (k > 0) {
      --k;
      if (++c[k] < p_) break;
      c[k] = 0;
    }
    FieldElement cand = make(c);
    if (!is_square(cand)) {
      nonsquare_ = cand;
      break;
    }
  }
  nonsquare_pow_ = nonsquare_.pow(odd_part_);
}

std::shared_ptr<const FieldCtx> FieldCtx::build(std::uint64_t p, unsigned depth) {
  if (p == 2) throw Error(ErrorCode::InvalidArgument, "characteristic 2 is excluded");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw Error(ErrorCode::InvalidArgument, "prime too large");
  if (depth > kMaxDepth) throw Error(ErrorCode::InvalidArgument, "field depth must be <= 6");
  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = p;
  ctx->depth_ = depth;
  ctx->m_ = 1u << depth;
  const unsigned m = ctx->m_;
  Poly f(m + 1, 0);
  f[m] = 1;
  if (m > 1) {
    // Scan x^m + (lower terms) with c_0 varying fastest.
    for (;;) {
      const bool binomial = std::all_of(f.begin() + 1, f.end() - 1,
                                        [](std::uint64_t v) { return v == 0; });
      if (binomial) {
        if (binomial_irreducible(m, f[0], p)) break;
      } else if (f[0] != 0 && irreducible_pow2_degree(f, p)) {
        break;
      }
      std::size_t k = 0;
      while (k < m && ++f[k] == p) f[k++] = 0;
      if (k == m) throw Error(ErrorCode::InvariantViolation, "no irreducible modulus found");
    }
  }
  ctx->modulus_ = f;
  mpz_ui_pow_ui(ctx->q_.get_mpz_t(), p, m);
  ctx->prepare_sqrt();
  return ctx;
}

}  // namespace arbor
