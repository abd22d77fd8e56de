#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "e6iso/field.hpp"
#include "e6iso/poly_parse.hpp"

namespace e6iso {

enum class EtaleShape { split, field };

template <class F>
struct EtaleData {
  F base;
  EtaleShape shape;
  typename F::Scalar n;      // field: d² = d − n, so N_K(d) = n
  typename F::Scalar delta;  // discriminant representative
  // User generator t0 = a0 + b0·d (field shape) for printing/parsing.
  typename F::Scalar a0, b0;
};

// Element of K. Field shape: u + v·d with T(d) = 1, N(d) = n. Split shape:
// (u, v) ∈ k × k. A default element is zero and adopts the other operand's K.
template <class F>
class EtaleElement {
 public:
  using S = typename F::Scalar;

  EtaleElement() = default;
  EtaleElement(const EtaleData<F>* k, S u, S v) : k_(k), u_(std::move(u)), v_(std::move(v)) {}

  const S& u() const { return u_; }
  const S& v() const { return v_; }
  const EtaleData<F>* data() const { return k_; }
  bool is_zero() const { return zero_p(u_) && zero_p(v_); }

  EtaleElement conj() const {
    if (!k_) return {};
    if (k_->shape == EtaleShape::split) return {k_, v_, u_};
    return {k_, u_ + v_, -v_};
  }
  S norm() const {
    if (!k_) return S{};
    if (k_->shape == EtaleShape::split) return u_ * v_;
    return u_ * u_ + u_ * v_ + k_->n * v_ * v_;
  }
  S trace() const {
    if (!k_) return S{};
    if (k_->shape == EtaleShape::split) return u_ + v_;
    return u_ + u_ + v_;
  }

  friend EtaleElement operator+(const EtaleElement& a, const EtaleElement& b) {
    return {join(a.k_, b.k_), a.u_ + b.u_, a.v_ + b.v_};
  }
  friend EtaleElement operator-(const EtaleElement& a, const EtaleElement& b) {
    return {join(a.k_, b.k_), a.u_ - b.u_, a.v_ - b.v_};
  }
  friend EtaleElement operator*(const EtaleElement& a, const EtaleElement& b) {
    const auto* k = join(a.k_, b.k_);
    if (!k) return {};
    if (k->shape == EtaleShape::split) return {k, a.u_ * b.u_, a.v_ * b.v_};
    S vv = a.v_ * b.v_;
    return {k, a.u_ * b.u_ - k->n * vv, a.u_ * b.v_ + a.v_ * b.u_ + vv};
  }
  EtaleElement operator-() const { return {k_, -u_, -v_}; }
  EtaleElement& operator+=(const EtaleElement& o) { return *this = *this + o; }
  EtaleElement& operator-=(const EtaleElement& o) { return *this = *this - o; }
  EtaleElement& operator*=(const EtaleElement& o) { return *this = *this * o; }
  friend bool operator==(const EtaleElement& a, const EtaleElement& b) {
    join(a.k_, b.k_);
    return a.u_ == b.u_ && a.v_ == b.v_;
  }
  friend bool operator!=(const EtaleElement& a, const EtaleElement& b) { return !(a == b); }

 private:
  static const EtaleData<F>* join(const EtaleData<F>* a, const EtaleData<F>* b) {
    if (a == b || !b) return a;
    if (!a) return b;
    if (a->shape != b->shape || !(a->base == b->base) || a->n != b->n)
      throw Error(ErrorCode::DescriptorMismatch, "operands from different etale algebras");
    return a;
  }

  const EtaleData<F>* k_ = nullptr;
  S u_{}, v_{};
};

template <class F>
bool is_zero(const EtaleElement<F>& a) {
  return a.is_zero();
}

// Quadratic étale algebra K/k, usable as the scalar ring of the algebra
// templates (base change A ⊗ K).
template <class F>
class EtaleAlgebra {
 public:
  using Base = F;
  using BaseScalar = typename F::Scalar;
  using Scalar = EtaleElement<F>;

  static EtaleAlgebra split(const F& k) {
    EtaleData<F> d{k, EtaleShape::split, k.zero(), k.one(), k.zero(), k.one()};
    return EtaleAlgebra(std::move(d));
  }

  // K = k[t]/(t² − βt + γ0); a separable reducible polynomial yields k × k.
  static EtaleAlgebra from_polynomial(const F& k, const BaseScalar& beta, const BaseScalar& gamma0) {
    bool char2 = k.characteristic() == 2;
    BaseScalar disc = beta * beta - k.from_int(4) * gamma0;
    if (char2 ? is_zero(beta) : is_zero(disc))
      throw Error(ErrorCode::InseparablePolynomial, "minimal polynomial is inseparable");
    bool reducible;
    if (char2) {
      // t = β·y turns it into y² + y + γ0/β².
      BaseScalar c = gamma0 / (beta * beta);
      reducible = false;
      if constexpr (requires { k.element(0); }) {
        for (std::uint64_t i = 0; i < k.size() && !reducible; ++i) {
          BaseScalar y = k.element(i);
          reducible = is_zero(y * y + y + c);
        }
      }
    } else {
      reducible = k.is_square(disc);
    }
    if (reducible) return split(k);
    BaseScalar a0, b0;  // t = a0 + b0·d
    BaseScalar n;
    if (!is_zero(beta)) {
      // d = t/β, N(d) = γ0/β².
      a0 = k.zero();
      b0 = beta;
      n = gamma0 / (beta * beta);
    } else {
      // d = 1/2 + t, N(d) = 1/4 + γ0.
      BaseScalar half = k.inv(k.from_int(2));
      a0 = -half;
      b0 = k.one();
      n = half * half + gamma0;
    }
    BaseScalar delta = char2 ? k.one() : k.square_class(k.one() - k.from_int(4) * n);
    EtaleData<F> d{k, EtaleShape::field, n, delta, a0, b0};
    return EtaleAlgebra(std::move(d));
  }

  // "split" or a polynomial in t of degree 2.
  static EtaleAlgebra parse(const F& k, std::string_view text) {
    std::string s(text);
    if (s == "split") return split(k);
    auto terms = parse_poly_terms(text, "t");
    BaseScalar c[3] = {k.zero(), k.zero(), k.zero()};
    for (const auto& [coef, deg] : terms) {
      if (deg > 2) throw Error(ErrorCode::NotDegreeTwo, "polynomial degree exceeds 2");
      c[deg] = c[deg] + k.parse(coef);
    }
    if (is_zero(c[2])) throw Error(ErrorCode::NotDegreeTwo, "polynomial is not of degree 2");
    BaseScalar inv = k.inv(c[2]);
    return from_polynomial(k, -(c[1] * inv), c[0] * inv);
  }

  const F& base() const { return data_->base; }
  EtaleShape shape() const { return data_->shape; }
  bool is_split() const { return data_->shape == EtaleShape::split; }
  const BaseScalar& delta() const { return data_->delta; }
  const EtaleData<F>* data() const { return data_.get(); }
  int characteristic() const { return base().characteristic(); }

  Scalar zero() const { return {}; }
  Scalar one() const { return embed(base().one()); }
  Scalar from_int(long n) const { return embed(base().from_int(n)); }
  Scalar embed(const BaseScalar& a) const { return make(a, a_or_zero(a)); }
  Scalar make(const BaseScalar& u, const BaseScalar& v) const { return Scalar(data_.get(), u, v); }
  // Trace-one element d (field shape) or (1, 0) (split shape).
  Scalar d() const { return is_split() ? make(base().one(), base().zero()) : make(base().zero(), base().one()); }
  // The user generator t (field shape); (1, −1) for split shape.
  Scalar t_user() const {
    if (is_split()) return make(base().one(), -base().one());
    return make(data_->a0, data_->b0);
  }
  // t with t² = δ, T(t) = 0 and N(t) = −δ.
  Scalar t_disc() const;
  Scalar random(Rng& rng, int box) const { return make(base().random(rng, box), base().random(rng, box)); }
  Scalar inv(const Scalar& a) const {
    BaseScalar n = a.norm();
    if (is_zero(n)) throw Error(ErrorCode::DivisionByZero, "non-invertible element of K");
    BaseScalar ninv = base().inv(n);
    Scalar c = a.conj();
    return make(c.u() * ninv, c.v() * ninv);
  }
  bool is_invertible(const Scalar& a) const { return !is_zero(a.norm()); }
  // Is a ∈ k (fixed by ι)?
  bool in_base(const Scalar& a) const { return a == a.conj(); }
  BaseScalar to_base(const Scalar& a) const {
    if (!in_base(a)) throw Error(ErrorCode::InvalidArgument, "element not in the base field");
    return a.u();
  }
  BaseScalar norm_bilinear(const Scalar& a, const Scalar& b) const { return (a * b.conj()).trace(); }
  Scalar scale(const BaseScalar& c, const Scalar& a) const {
    if (is_zero(a)) return a;
    return make(c * a.u(), c * a.v());
  }

  // Parse a + b*t in terms of the user generator (field) or "(u,v)" (split).
  Scalar parse(std::string_view text) const;
  std::string str(const Scalar& a) const;
  std::string name() const;

  friend bool operator==(const EtaleAlgebra& a, const EtaleAlgebra& b) {
    return a.data_ == b.data_ || (a.data_->shape == b.data_->shape && a.data_->base == b.data_->base &&
                                  a.data_->n == b.data_->n);
  }

 private:
  explicit EtaleAlgebra(EtaleData<F> d) : data_(std::make_shared<const EtaleData<F>>(std::move(d))) {}
  BaseScalar a_or_zero(const BaseScalar& a) const { return is_split() ? a : base().zero(); }

  std::shared_ptr<const EtaleData<F>> data_;
};

template <class F>
typename EtaleAlgebra<F>::Scalar EtaleAlgebra<F>::t_disc() const {
  const F& k = base();
  if (k.characteristic() == 2) return one();
  if (is_split()) return make(k.one(), -k.one());
  // 1 − 4n = δ·w², t = (2d − 1)/w.
  BaseScalar ratio = (k.one() - k.from_int(4) * data_->n) / data_->delta;
  auto w = k.sqrt(ratio);
  if (!w) throw Error(ErrorCode::InvalidArgument, "discriminant representative is not in the square class");
  BaseScalar winv = k.inv(*w);
  return make(-winv, k.from_int(2) * winv);
}

template <class F>
typename EtaleAlgebra<F>::Scalar EtaleAlgebra<F>::parse(std::string_view text) const {
  const F& k = base();
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (is_split()) {
    if (s.size() >= 5 && s.front() == '(' && s.back() == ')') {
      auto comma = s.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::ConfigParseError, "bad split element '" + s + "'");
      return make(k.parse(s.substr(1, comma - 1)), k.parse(s.substr(comma + 1, s.size() - comma - 2)));
    }
  }
  Scalar r = zero();
  Scalar t = t_user();
  for (const auto& [coef, deg] : parse_poly_terms(s, "t")) {
    Scalar term = embed(k.parse(coef));
    for (int i = 0; i < deg; ++i) term = term * t;
    r = r + term;
  }
  return r;
}

template <class F>
std::string EtaleAlgebra<F>::str(const Scalar& a) const {
  const F& k = base();
  if (is_split()) return "(" + k.str(a.u()) + "," + k.str(a.v()) + ")";
  // a = u + v·d = (u − v·a0/b0) + (v/b0)·t
  BaseScalar ct = a.v() / data_->b0;
  BaseScalar c0 = a.u() - ct * data_->a0;
  std::string out = k.str(c0);
  if (!is_zero(ct)) out += " + (" + k.str(ct) + ")*t";
  return out;
}

template <class F>
std::string EtaleAlgebra<F>::name() const {
  if (is_split()) return base().name() + "x" + base().name();
  return base().name() + "(d), d^2 - d + " + base().str(data_->n) + " = 0";
}

}  // namespace e6iso
