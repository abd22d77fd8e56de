#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "e6iso/field.hpp"

namespace e6iso {

template <class S>
struct Octonion {
  std::array<S, 8> c{};

  friend Octonion operator+(const Octonion& x, const Octonion& y) {
    Octonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
  }
  friend Octonion operator-(const Octonion& x, const Octonion& y) {
    Octonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = x.c[i] - y.c[i];
    return r;
  }
  Octonion operator-() const {
    Octonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = -c[i];
    return r;
  }
  friend Octonion operator*(const S& a, const Octonion& x) {
    Octonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = a * x.c[i];
    return r;
  }
  friend bool operator==(const Octonion& x, const Octonion& y) { return x.c == y.c; }
  friend bool operator!=(const Octonion& x, const Octonion& y) { return !(x == y); }
  bool is_zero() const {
    for (const auto& a : c)
      if (!zero_p(a)) return false;
    return true;
  }
};

enum class OctonionKind { zorn, cayley_dickson };

// Zorn layout: c = [α, β, a1, a2, a3, b1, b2, b3] for the vector matrix
// [[α, a], [b, β]]. Cayley-Dickson layout: coordinate i is the basis element
// whose binary digits select the doubling generators (bit 0 ↔ a, bit 1 ↔ b,
// bit 2 ↔ c), with (x, y)(u, v) = (xu + μ v̄ y, v x + y ū) at each level.
template <class R>
class OctonionAlgebra {
 public:
  using Scalar = typename R::Scalar;
  using Element = Octonion<Scalar>;

  static OctonionAlgebra zorn(const R& ring) { return OctonionAlgebra(ring, OctonionKind::zorn, {}); }

  static OctonionAlgebra cayley_dickson(const R& ring, const Scalar& a, const Scalar& b, const Scalar& c) {
    if (ring.characteristic() == 2)
      throw Error(ErrorCode::InvalidArgument, "Cayley-Dickson octonions require characteristic != 2");
    if (is_zero(a) || is_zero(b) || is_zero(c))
      throw Error(ErrorCode::InvalidArgument, "Cayley-Dickson parameters must be nonzero");
    return OctonionAlgebra(ring, OctonionKind::cayley_dickson, {a, b, c});
  }

  const R& ring() const { return ring_; }
  OctonionKind kind() const { return kind_; }
  bool is_zorn() const { return kind_ == OctonionKind::zorn; }
  const std::array<Scalar, 3>& params() const { return params_; }

  Element zero() const { return {}; }
  Element scalar(const Scalar& a) const {
    Element r;
    if (is_zorn()) {
      r.c[0] = a;
      r.c[1] = a;
    } else {
      r.c[0] = a;
    }
    return r;
  }
  Element one() const { return scalar(ring_.one()); }
  Element basis(int i) const {
    Element r;
    r.c[static_cast<size_t>(i)] = ring_.one();
    return r;
  }
  Element random(Rng& rng, int box) const {
    Element r;
    for (auto& a : r.c) a = ring_.random(rng, box);
    return r;
  }

  Element mul(const Element& x, const Element& y) const {
    if (is_zorn()) return zorn_mul(x, y);
    Element r;
    r.c = cd_mul<8>(x.c, y.c);
    return r;
  }

  Element conj(const Element& x) const {
    Element r;
    if (is_zorn()) {
      r.c[0] = x.c[1];
      r.c[1] = x.c[0];
      for (int i = 2; i < 8; ++i) r.c[i] = -x.c[i];
    } else {
      r.c[0] = x.c[0];
      for (int i = 1; i < 8; ++i) r.c[i] = -x.c[i];
    }
    return r;
  }

  Scalar norm(const Element& x) const {
    if (is_zorn()) return x.c[0] * x.c[1] - dot(x, 2, x, 5);
    Scalar s{};
    for (int i = 0; i < 8; ++i) s = s + coef_[i] * x.c[i] * x.c[i];
    return s;
  }

  Scalar norm_bilinear(const Element& x, const Element& y) const {
    if (is_zorn()) return x.c[0] * y.c[1] + y.c[0] * x.c[1] - dot(x, 2, y, 5) - dot(y, 2, x, 5);
    Scalar s{};
    for (int i = 0; i < 8; ++i) s = s + coef_[i] * x.c[i] * y.c[i];
    return s + s;
  }

  Scalar trace(const Element& x) const {
    if (is_zorn()) return x.c[0] + x.c[1];
    return x.c[0] + x.c[0];
  }

  // Diagonal coefficients of the norm in the doubling basis; equal to the
  // entries of the Pfister form of (a, b, c) in the same order.
  std::array<Scalar, 8> norm_coefficients() const { return coef_; }

  template <class R2>
  OctonionAlgebra<R2> base_change(const R2& ring2,
                                  const std::function<typename R2::Scalar(const Scalar&)>& embed) const {
    if (is_zorn()) return OctonionAlgebra<R2>::zorn(ring2);
    return OctonionAlgebra<R2>::cayley_dickson(ring2, embed(params_[0]), embed(params_[1]), embed(params_[2]));
  }

  // Nonzero elements of norm zero.
  std::vector<Element> norm_zero_samples(std::size_t count, Rng& rng, int box = 3, std::size_t budget = 200000) const;

  friend bool operator==(const OctonionAlgebra& a, const OctonionAlgebra& b) {
    return a.ring_ == b.ring_ && a.kind_ == b.kind_ && a.params_ == b.params_;
  }

 private:
  OctonionAlgebra(const R& ring, OctonionKind kind, std::array<Scalar, 3> params)
      : ring_(ring), kind_(kind), params_(std::move(params)) {
    if (kind_ == OctonionKind::cayley_dickson) {
      for (int i = 0; i < 8; ++i) {
        Scalar c = ring_.one();
        for (int bit = 0; bit < 3; ++bit)
          if (i >> bit & 1) c = c * -params_[static_cast<size_t>(bit)];
        coef_[static_cast<size_t>(i)] = c;
      }
    }
  }

  static Scalar dot(const Element& x, int xo, const Element& y, int yo) {
    return x.c[xo] * y.c[yo] + x.c[xo + 1] * y.c[yo + 1] + x.c[xo + 2] * y.c[yo + 2];
  }

  static Element zorn_mul(const Element& x, const Element& y) {
    // [[α, a], [b, β]]·[[α', a'], [b', β']] =
    // [[αα' + a·b', αa' + β'a − b×b'], [α'b + βb' + a×a', ββ' + b·a']]
    const auto& p = x.c;
    const auto& q = y.c;
    Element r;
    r.c[0] = p[0] * q[0] + dot(x, 2, y, 5);
    r.c[1] = p[1] * q[1] + dot(x, 5, y, 2);
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, l = (i + 2) % 3;
      Scalar bxb = p[5 + j] * q[5 + l] - p[5 + l] * q[5 + j];
      Scalar axa = p[2 + j] * q[2 + l] - p[2 + l] * q[2 + j];
      r.c[2 + i] = p[0] * q[2 + i] + q[1] * p[2 + i] - bxb;
      r.c[5 + i] = q[0] * p[5 + i] + p[1] * q[5 + i] + axa;
    }
    return r;
  }

  template <size_t N>
  static std::array<Scalar, N> cd_conj(const std::array<Scalar, N>& x) {
    std::array<Scalar, N> r = x;
    if constexpr (N > 1) {
      std::array<Scalar, N / 2> lo;
      for (size_t i = 0; i < N / 2; ++i) lo[i] = x[i];
      lo = cd_conj<N / 2>(lo);
      for (size_t i = 0; i < N / 2; ++i) {
        r[i] = lo[i];
        r[N / 2 + i] = -x[N / 2 + i];
      }
    }
    return r;
  }

  template <size_t N>
  std::array<Scalar, N> cd_mul(const std::array<Scalar, N>& x, const std::array<Scalar, N>& y) const {
    if constexpr (N == 1) {
      return {x[0] * y[0]};
    } else {
      constexpr size_t H = N / 2;
      constexpr size_t level = N == 2 ? 0 : (N == 4 ? 1 : 2);
      std::array<Scalar, H> p, q, u, v;
      for (size_t i = 0; i < H; ++i) {
        p[i] = x[i];
        q[i] = x[H + i];
        u[i] = y[i];
        v[i] = y[H + i];
      }
      auto first = cd_mul<H>(p, u);
      auto vq = cd_mul<H>(cd_conj<H>(v), q);
      auto vp = cd_mul<H>(v, p);
      auto qu = cd_mul<H>(q, cd_conj<H>(u));
      const Scalar& mu = params_[level];
      std::array<Scalar, N> r;
      for (size_t i = 0; i < H; ++i) {
        r[i] = first[i] + mu * vq[i];
        r[H + i] = vp[i] + qu[i];
      }
      return r;
    }
  }

  R ring_;
  OctonionKind kind_;
  std::array<Scalar, 3> params_{};
  std::array<Scalar, 8> coef_{};
};

template <class R>
std::vector<typename OctonionAlgebra<R>::Element> OctonionAlgebra<R>::norm_zero_samples(std::size_t count, Rng& rng,
                                                                                          int box,
                                                                                          std::size_t budget) const {
  std::vector<Element> out;
  if (count == 0) return out;
  if (is_zorn()) {
    // Choose a, b, α freely and solve αβ = a·b for β when α is invertible.
    for (std::size_t tries = 0; out.size() < count && tries < budget; ++tries) {
      Element x = random(rng, box);
      if (!ring_.is_invertible(x.c[0])) continue;
      x.c[1] = ring_.inv(x.c[0]) * dot(x, 2, x, 5);
      if (!x.is_zero()) out.push_back(x);
    }
    if (out.empty()) out.push_back(basis(0));
    while (out.size() < count) out.push_back(basis(static_cast<int>(out.size() % 8)));
    return out;
  }
  bool definite = true;
  for (const auto& a : params_)
    if constexpr (requires { a.sign(); }) {
      if (a.sign() > 0) definite = false;
    } else {
      definite = false;
    }
  if (definite) throw Error(ErrorCode::NoneExist, "octonion norm is anisotropic (definite)");
  for (std::size_t tries = 0; out.size() < count && tries < budget; ++tries) {
    Element x = random(rng, box);
    if (!x.is_zero() && is_zero(norm(x))) out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::NoneExist, "no norm-zero element found within budget");
  return out;
}

struct CompositionReport {
  std::size_t pairs = 0;
  std::size_t norm_failures = 0;
  std::size_t conj_failures = 0;
  std::size_t left_alt_failures = 0;
  std::size_t right_alt_failures = 0;
  bool ok() const { return norm_failures + conj_failures + left_alt_failures + right_alt_failures == 0; }
};

template <class R>
void composition_check_pair(const OctonionAlgebra<R>& C, const typename OctonionAlgebra<R>::Element& x,
                            const typename OctonionAlgebra<R>::Element& y, CompositionReport& rep) {
  auto xy = C.mul(x, y);
  ++rep.pairs;
  if (C.norm(xy) != C.norm(x) * C.norm(y)) ++rep.norm_failures;
  if (C.mul(C.conj(x), C.conj(y)) != C.conj(C.mul(y, x))) ++rep.conj_failures;
  if (C.mul(x, xy) != C.mul(C.mul(x, x), y)) ++rep.left_alt_failures;
  if (C.mul(C.mul(y, x), x) != C.mul(y, C.mul(x, x))) ++rep.right_alt_failures;
}

template <class R>
CompositionReport composition_law_check(const OctonionAlgebra<R>& C, std::size_t samples, Rng& rng, int box = 9) {
  CompositionReport rep;
  for (std::size_t i = 0; i < samples; ++i) composition_check_pair(C, C.random(rng, box), C.random(rng, box), rep);
  return rep;
}

// All pairs; only for finite bases with q^8 small.
template <class R>
CompositionReport composition_law_exhaustive(const OctonionAlgebra<R>& C) {
  const auto& k = C.ring();
  std::uint64_t q = k.size();
  std::uint64_t total = 1;
  for (int i = 0; i < 8; ++i) total *= q;
  auto element = [&](std::uint64_t idx) {
    typename OctonionAlgebra<R>::Element x;
    for (int i = 0; i < 8; ++i) {
      x.c[static_cast<size_t>(i)] = k.element(idx % q);
      idx /= q;
    }
    return x;
  };
  std::vector<typename OctonionAlgebra<R>::Element> all;
  all.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) all.push_back(element(i));
  CompositionReport rep;
  for (const auto& x : all)
    for (const auto& y : all) composition_check_pair(C, x, y, rep);
  return rep;
}

}  // namespace e6iso
