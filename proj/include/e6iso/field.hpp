#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "e6iso/error.hpp"

namespace e6iso {

using Rng = std::mt19937_64;

// Exact rational number. Thin wrapper over mpq_class so that arithmetic
// always yields a materialized canonical value.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  std::string str() const { return v_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

 private:
  mpq_class v_;
};

inline bool is_zero(const Rational& a) { return a.is_zero(); }

class RationalField {
 public:
  using Scalar = Rational;

  Scalar zero() const { return {}; }
  Scalar one() const { return Rational(1); }
  Scalar from_int(long n) const { return Rational(n); }
  Scalar inv(const Scalar& a) const;
  bool is_invertible(const Scalar& a) const { return !a.is_zero(); }
  int characteristic() const { return 0; }
  bool is_finite() const { return false; }
  // 0 marks an infinite field.
  std::uint64_t size() const { return 0; }
  Scalar random(Rng& rng, int box) const;
  Scalar parse(std::string_view text) const;
  std::string str(const Scalar& a) const { return a.str(); }
  std::string name() const { return "Q"; }
  std::optional<Scalar> sqrt(const Scalar& a) const;
  bool is_square(const Scalar& a) const { return sqrt(a).has_value(); }
  // Squarefree integer representative of a·(Q^×)².
  Scalar square_class(const Scalar& a) const;

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// Squarefree part of a nonzero integer, sign preserved.
mpz_class squarefree_part(const mpz_class& n);

namespace detail {

struct GfData {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // low to high, monic, size m+1
  bool tables = false;
  std::vector<std::uint16_t> add_t, mul_t;
  std::vector<std::uint32_t> inv_t;
  std::uint32_t nonsquare = 0;  // least nonsquare by index (odd q)

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  bool same(const GfData& o) const { return p == o.p && m == o.m && modulus == o.modulus; }

  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
};

const GfData* join(const GfData* a, const GfData* b);

}  // namespace detail

// Element of GF(p^m), encoded as Σ c_i p^i for the residue Σ c_i t^i.
// A default-constructed element is zero and adopts the field of the other
// operand; the owning GaloisField must outlive every element.
class GfElement {
 public:
  GfElement() = default;
  GfElement(const detail::GfData* f, std::uint32_t v) : f_(v == 0 ? nullptr : f), v_(v) {}

  std::uint32_t index() const { return v_; }
  const detail::GfData* data() const { return f_; }
  bool is_zero() const { return v_ == 0; }

  friend GfElement operator+(const GfElement& a, const GfElement& b) {
    const auto* f = detail::join(a.f_, b.f_);
    return f ? GfElement(f, f->add(a.v_, b.v_)) : GfElement();
  }
  friend GfElement operator-(const GfElement& a, const GfElement& b) {
    const auto* f = detail::join(a.f_, b.f_);
    return f ? GfElement(f, f->add(a.v_, f->neg(b.v_))) : GfElement();
  }
  friend GfElement operator*(const GfElement& a, const GfElement& b) {
    const auto* f = detail::join(a.f_, b.f_);
    return f ? GfElement(f, f->mul(a.v_, b.v_)) : GfElement();
  }
  friend GfElement operator/(const GfElement& a, const GfElement& b);
  GfElement operator-() const { return f_ ? GfElement(f_, f_->neg(v_)) : GfElement(); }
  GfElement& operator+=(const GfElement& o) { return *this = *this + o; }
  GfElement& operator-=(const GfElement& o) { return *this = *this - o; }
  GfElement& operator*=(const GfElement& o) { return *this = *this * o; }
  friend bool operator==(const GfElement& a, const GfElement& b) {
    detail::join(a.f_, b.f_);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const GfElement& a, const GfElement& b) { return !(a == b); }

 private:
  const detail::GfData* f_ = nullptr;
  std::uint32_t v_ = 0;
};

inline bool is_zero(const GfElement& a) { return a.is_zero(); }

class GaloisField {
 public:
  using Scalar = GfElement;

  // GF(p^m) with the given monic modulus (low to high), or the
  // lexicographically least irreducible one when empty.
  GaloisField(std::uint32_t p, std::uint32_t m = 1, std::vector<std::uint32_t> modulus = {});

  Scalar zero() const { return {}; }
  Scalar one() const { return element(1); }
  Scalar from_int(long n) const;
  Scalar element(std::uint64_t index) const;
  // Residue with the given coefficients (low to high).
  Scalar from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coeffs(const Scalar& a) const;
  // The residue class of t.
  Scalar generator() const { return from_coeffs({0, 1}); }
  Scalar inv(const Scalar& a) const;
  Scalar pow(const Scalar& a, std::uint64_t e) const;
  bool is_invertible(const Scalar& a) const { return !a.is_zero(); }
  int characteristic() const { return static_cast<int>(d_->p); }
  std::uint32_t degree() const { return d_->m; }
  bool is_finite() const { return true; }
  std::uint64_t size() const { return d_->q; }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
  Scalar random(Rng& rng, int box = 0) const;
  Scalar parse(std::string_view text) const;
  std::string str(const Scalar& a) const;
  std::string name() const;
  std::optional<Scalar> sqrt(const Scalar& a) const;
  bool is_square(const Scalar& a) const;
  Scalar square_class(const Scalar& a) const;
  const detail::GfData* data() const { return d_.get(); }

  friend bool operator==(const GaloisField& a, const GaloisField& b) { return a.d_->same(*b.d_); }

 private:
  std::shared_ptr<const detail::GfData> d_;
};

// Least irreducible monic polynomial of degree m over GF(p), ordered by the
// base-p integer Σ c_i p^i of its non-leading coefficients.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t m);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

// is_zero through argument-dependent lookup, usable inside classes that
// declare their own is_zero member.
template <class S>
bool zero_p(const S& a) {
  return is_zero(a);
}

using AnyField = std::variant<RationalField, GaloisField>;

// "Q", "GF(7)", "GF(9)", "GF(3^2)".
AnyField parse_field(std::string_view text);
AnyField make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

template <class F>
typename F::Scalar power(const F& field, typename F::Scalar a, long e) {
  if (e < 0) {
    a = field.inv(a);
    e = -e;
  }
  auto r = field.one();
  while (e > 0) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

}  // namespace e6iso
