#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "e6iso/linalg.hpp"
#include "e6iso/octonion.hpp"

namespace e6iso {

// Σ α_i e_ii + Σ x_i[jl] with (i, j, l) cyclic (0-based).
template <class S>
struct AlbertElement {
  static constexpr std::size_t dim = 27;

  std::array<S, 3> alpha{};
  std::array<Octonion<S>, 3> x{};

  friend AlbertElement operator+(const AlbertElement& a, const AlbertElement& b) {
    AlbertElement r;
    for (int i = 0; i < 3; ++i) {
      r.alpha[i] = a.alpha[i] + b.alpha[i];
      r.x[i] = a.x[i] + b.x[i];
    }
    return r;
  }
  friend AlbertElement operator-(const AlbertElement& a, const AlbertElement& b) {
    AlbertElement r;
    for (int i = 0; i < 3; ++i) {
      r.alpha[i] = a.alpha[i] - b.alpha[i];
      r.x[i] = a.x[i] - b.x[i];
    }
    return r;
  }
  AlbertElement operator-() const {
    AlbertElement r;
    for (int i = 0; i < 3; ++i) {
      r.alpha[i] = -alpha[i];
      r.x[i] = -x[i];
    }
    return r;
  }
  friend AlbertElement operator*(const S& c, const AlbertElement& a) {
    AlbertElement r;
    for (int i = 0; i < 3; ++i) {
      r.alpha[i] = c * a.alpha[i];
      r.x[i] = c * a.x[i];
    }
    return r;
  }
  friend bool operator==(const AlbertElement& a, const AlbertElement& b) { return a.alpha == b.alpha && a.x == b.x; }
  friend bool operator!=(const AlbertElement& a, const AlbertElement& b) { return !(a == b); }
  bool is_zero() const {
    for (int i = 0; i < 3; ++i)
      if (!zero_p(alpha[i]) || !x[i].is_zero()) return false;
    return true;
  }

  std::vector<S> coords() const {
    std::vector<S> v;
    v.reserve(dim);
    for (const auto& a : alpha) v.push_back(a);
    for (const auto& o : x)
      for (const auto& c : o.c) v.push_back(c);
    return v;
  }
  static AlbertElement from_coords(const std::vector<S>& v) {
    AlbertElement r;
    for (int i = 0; i < 3; ++i) r.alpha[i] = v[static_cast<std::size_t>(i)];
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 8; ++c) r.x[i].c[c] = v[static_cast<std::size_t>(3 + 8 * i + c)];
    return r;
  }
};

enum class ElementTag { invertible, singular, nilpotent_sqzero, nilpotent_cube, other_rank2 };

const char* tag_name(ElementTag t);

template <class S>
struct ElementClass {
  ElementTag tag;
  bool zero = false;  // the zero element, tagged other_rank2
  S norm, quad_trace, trace;
  // Generic minimal polynomial t³ + c2 t² + c1 t + c0.
  std::array<S, 3> min_poly;
  bool is_nilpotent() const { return tag == ElementTag::nilpotent_sqzero || tag == ElementTag::nilpotent_cube; }
};

// The reduced Albert algebra H₃(C, Γ) over the ring R (a field or K).
template <class R>
class AlbertAlgebra {
 public:
  using Ring = R;
  using Scalar = typename R::Scalar;
  using Oct = OctonionAlgebra<R>;
  using OctElement = typename Oct::Element;
  using Element = AlbertElement<Scalar>;
  using Matrix3 = std::array<std::array<Scalar, 3>, 3>;

  AlbertAlgebra(Oct C, std::array<Scalar, 3> gamma) : C_(std::move(C)), gamma_(std::move(gamma)) {
    for (const auto& g : gamma_)
      if (is_zero(g)) throw Error(ErrorCode::ZeroGamma, "gamma entries must be nonzero");
  }

  const Oct& octonions() const { return C_; }
  const R& ring() const { return C_.ring(); }
  const std::array<Scalar, 3>& gamma() const { return gamma_; }

  Element zero() const { return {}; }
  Element one() const {
    Element r;
    for (auto& a : r.alpha) a = ring().one();
    return r;
  }
  Element e(int i) const {
    Element r;
    r.alpha[static_cast<std::size_t>(i)] = ring().one();
    return r;
  }
  Element off(int i, const OctElement& o) const {
    Element r;
    r.x[static_cast<std::size_t>(i)] = o;
    return r;
  }
  Element diag(const Scalar& a, const Scalar& b, const Scalar& c) const {
    Element r;
    r.alpha = {a, b, c};
    return r;
  }
  Element unit(std::size_t m) const {
    std::vector<Scalar> v(Element::dim, ring().zero());
    v[m] = ring().one();
    return Element::from_coords(v);
  }
  Element random(Rng& rng, int box) const {
    Element r;
    for (auto& a : r.alpha) a = ring().random(rng, box);
    for (auto& o : r.x) o = C_.random(rng, box);
    return r;
  }

  Scalar norm(const Element& x) const {
    const auto& a = x.alpha;
    Scalar n = a[0] * a[1] * a[2];
    for (int i = 0; i < 3; ++i) {
      auto [j, l] = jl(i);
      n = n - gamma_[j] * gamma_[l] * a[i] * C_.norm(x.x[i]);
    }
    OctElement p = C_.mul(C_.mul(x.x[0], x.x[1]), x.x[2]);
    return n + gamma_[0] * gamma_[1] * gamma_[2] * C_.trace(p);
  }

  Element adjoint(const Element& x) const {
    Element r;
    for (int i = 0; i < 3; ++i) {
      auto [j, l] = jl(i);
      r.alpha[i] = x.alpha[j] * x.alpha[l] - gamma_[j] * gamma_[l] * C_.norm(x.x[i]);
      r.x[i] = gamma_[i] * C_.conj(C_.mul(x.x[j], x.x[l])) - x.alpha[i] * x.x[i];
    }
    return r;
  }

  Element cross(const Element& x, const Element& y) const {
    Element r;
    for (int i = 0; i < 3; ++i) {
      auto [j, l] = jl(i);
      r.alpha[i] = x.alpha[j] * y.alpha[l] + y.alpha[j] * x.alpha[l] -
                   gamma_[j] * gamma_[l] * C_.norm_bilinear(x.x[i], y.x[i]);
      r.x[i] = gamma_[i] * C_.conj(C_.mul(x.x[j], y.x[l]) + C_.mul(y.x[j], x.x[l])) - x.alpha[i] * y.x[i] -
               y.alpha[i] * x.x[i];
    }
    return r;
  }

  Scalar trace(const Element& x) const { return x.alpha[0] + x.alpha[1] + x.alpha[2]; }

  Scalar trace_bilinear(const Element& x, const Element& y) const {
    Scalar t = x.alpha[0] * y.alpha[0] + x.alpha[1] * y.alpha[1] + x.alpha[2] * y.alpha[2];
    for (int i = 0; i < 3; ++i) {
      auto [j, l] = jl(i);
      t = t + gamma_[j] * gamma_[l] * C_.norm_bilinear(x.x[i], y.x[i]);
    }
    return t;
  }

  // S(x) = T(x♯)
  Scalar quad_trace(const Element& x) const {
    Scalar s{};
    for (int i = 0; i < 3; ++i) {
      auto [j, l] = jl(i);
      s = s + x.alpha[j] * x.alpha[l] - gamma_[j] * gamma_[l] * C_.norm(x.x[i]);
    }
    return s;
  }

  Scalar quad_trace_bilinear(const Element& x, const Element& y) const {
    return trace(x) * trace(y) - trace_bilinear(x, y);
  }

  // U_x y = T(x,y)x − x♯ × y
  Element u_op(const Element& x, const Element& y) const {
    return trace_bilinear(x, y) * x - cross(adjoint(x), y);
  }

  // {x,y,z} = U_{x,z} y = T(x,y)z + T(y,z)x − (z × x) × y
  Element triple(const Element& x, const Element& y, const Element& z) const {
    return trace_bilinear(x, y) * z + trace_bilinear(y, z) * x - cross(cross(z, x), y);
  }

  // a ∘ b = U_{a,b} 1
  Element circle(const Element& a, const Element& b) const { return triple(a, one(), b); }

  // x² = U_x 1
  Element square(const Element& x) const { return u_op(x, one()); }

  Element power(const Element& x, long n) const {
    if (n < 0) throw Error(ErrorCode::NegativePower, "negative power");
    Element prev = one(), cur = x;
    if (n == 0) return prev;
    for (long k = 1; k < n; ++k) {
      Element next = u_op(x, prev);  // x^{k+1} = U_x x^{k-1}
      prev = cur;
      cur = next;
    }
    return cur;
  }

  ElementClass<Scalar> classify(const Element& x) const {
    ElementClass<Scalar> c;
    c.norm = norm(x);
    c.quad_trace = quad_trace(x);
    c.trace = trace(x);
    c.min_poly = {-c.norm, c.quad_trace, -c.trace};
    Element adj = adjoint(x);
    if (x.is_zero()) {
      c.tag = ElementTag::other_rank2;
      c.zero = true;
    } else if (!is_zero(c.norm) && ring().is_invertible(c.norm)) {
      c.tag = ElementTag::invertible;
    } else if (adj.is_zero()) {
      c.tag = is_zero(c.trace) ? ElementTag::nilpotent_sqzero : ElementTag::singular;
    } else if (is_zero(c.trace) && is_zero(c.quad_trace) && is_zero(c.norm)) {
      c.tag = ElementTag::nilpotent_cube;
    } else {
      c.tag = ElementTag::other_rank2;
    }
    return c;
  }

  // c♯ for a random c with N(c) = 0, solving the norm for α₁; may be zero.
  std::optional<Element> random_singular(Rng& rng, int box) const {
    Element c = random(rng, box);
    c.alpha[0] = ring().zero();
    Scalar rest = norm(c);
    Scalar kappa = c.alpha[1] * c.alpha[2] - gamma_[1] * gamma_[2] * C_.norm(c.x[0]);
    if (!ring().is_invertible(kappa)) return std::nullopt;
    c.alpha[0] = -(rest * ring().inv(kappa));
    Element s = adjoint(c);
    if (s.is_zero()) return std::nullopt;
    return s;
  }

  bool is_primitive_idempotent(const Element& e) const {
    return !e.is_zero() && adjoint(e).is_zero() && u_op(e, e) == e && trace(e) == ring().one();
  }

  // φ_g(j) = g j gᵗ on H₃(C, 1).
  Element gl3_act(const Matrix3& g, const Element& j) const;

  friend bool operator==(const AlbertAlgebra& a, const AlbertAlgebra& b) {
    return a.C_ == b.C_ && a.gamma_ == b.gamma_;
  }

  static std::pair<int, int> jl(int i) { return {(i + 1) % 3, (i + 2) % 3}; }

 private:
  Oct C_;
  std::array<Scalar, 3> gamma_;
};

template <class R>
typename AlbertAlgebra<R>::Element AlbertAlgebra<R>::gl3_act(const Matrix3& g, const Element& j) const {
  for (const auto& gm : gamma_)
    if (gm != ring().one()) throw Error(ErrorCode::GammaNotUnit, "GL3 action requires gamma = <1,1,1>");
  Scalar det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
               g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (!ring().is_invertible(det)) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  std::array<std::array<OctElement, 3>, 3> M;
  for (int i = 0; i < 3; ++i) {
    auto [a, b] = jl(i);
    M[i][i] = C_.scalar(j.alpha[i]);
    M[a][b] = j.x[i];
    M[b][a] = C_.conj(j.x[i]);
  }
  auto entry = [&](int p, int q) {
    OctElement s;
    for (int r = 0; r < 3; ++r)
      for (int t = 0; t < 3; ++t) {
        Scalar c = g[p][r] * g[q][t];
        if (!is_zero(c)) s = s + c * M[r][t];
      }
    return s;
  };
  Element out;
  for (int i = 0; i < 3; ++i) {
    OctElement d = entry(i, i);
    out.alpha[i] = d.c[0];
    auto [a, b] = jl(i);
    out.x[i] = entry(a, b);
  }
  return out;
}

// ------------------------------------------------------------ identity suite

struct IdentityCount {
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct IdentityReport {
  std::map<std::string, IdentityCount> counts;
  std::size_t tuples = 0;
  bool ok() const {
    for (const auto& [name, c] : counts)
      if (c.failed) return false;
    return true;
  }
  void record(const std::string& name, bool pass) {
    auto& c = counts[name];
    ++c.checked;
    if (!pass) ++c.failed;
  }
};

// Every cubic-norm identity on one tuple (x, y, z).
template <class R>
void check_identities(const AlbertAlgebra<R>& A, const typename AlbertAlgebra<R>::Element& x,
                      const typename AlbertAlgebra<R>::Element& y, const typename AlbertAlgebra<R>::Element& z,
                      IdentityReport& rep) {
  const auto& k = A.ring();
  auto one = A.one();
  auto N = A.norm(x);
  auto T = A.trace(x);
  auto S = A.quad_trace(x);
  auto xs = A.adjoint(x);
  auto x2 = A.square(x);
  auto x3 = A.power(x, 3);
  auto x4 = A.power(x, 4);
  ++rep.tuples;
  rep.record("adjoint_of_adjoint", A.adjoint(xs) == N * x);
  rep.record("unit_cross", A.cross(one, x) == T * one - x);
  rep.record("adjoint_via_square", xs == x2 - T * x + S * one);
  rep.record("cross_with_adjoint", A.cross(xs, A.cross(x, y)) == N * y + A.trace_bilinear(xs, y) * x);
  rep.record("euler", A.trace_bilinear(xs, x) == k.from_int(3) * N);
  rep.record("adjoint_cross_x", A.cross(xs, x) == (S * T - N) * one - S * x - T * xs);
  rep.record("polarized_cross", A.cross(xs, A.cross(y, z)) + A.cross(A.cross(x, y), A.cross(x, z)) ==
                         A.trace_bilinear(xs, y) * z + A.trace_bilinear(xs, z) * y +
                             A.trace_bilinear(A.cross(y, z), x) * x);
  rep.record("cubic_equation", (x3 - T * x2 + S * x - N * one).is_zero() && (x4 - T * x3 + S * x2 - N * x).is_zero());
  auto lhs = A.u_op(x + z, y) - A.u_op(x, y) - A.u_op(z, y);
  rep.record("triple_expansion", lhs == A.triple(x, y, z));
  rep.record("S=T(x#)", S == A.trace(xs));
  rep.record("quad_trace_polar", A.quad_trace_bilinear(x, y) == A.quad_trace(x + y) - S - A.quad_trace(y));
  rep.record("cross", A.cross(x, y) == A.adjoint(x + y) - xs - A.adjoint(y));
}

template <class R>
IdentityReport identity_suite(const AlbertAlgebra<R>& A, std::size_t samples, Rng& rng, int box = 9) {
  IdentityReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = A.random(rng, box);
    auto y = A.random(rng, box);
    auto z = A.random(rng, box);
    check_identities(A, x, y, z, rep);
  }
  return rep;
}

// All triples from a random 3-dimensional subspace (finite fields).
template <class F>
IdentityReport identity_suite_subspace(const AlbertAlgebra<F>& A, Rng& rng) {
  const F& k = A.ring();
  using E = typename AlbertAlgebra<F>::Element;
  Subspace<F> W(k, E::dim);
  while (W.dim() < 3) W.insert(A.random(rng, 1).coords());
  std::vector<E> elems;
  std::uint64_t q = k.size();
  for (std::uint64_t idx = 0; idx < q * q * q; ++idx) {
    Vec<F> c = {k.element(idx % q), k.element(idx / q % q), k.element(idx / q / q)};
    elems.push_back(E::from_coords(W.combine(c)));
  }
  IdentityReport rep;
  for (const auto& x : elems)
    for (const auto& y : elems)
      for (const auto& z : elems) check_identities(A, x, y, z, rep);
  return rep;
}

// ------------------------------------------------------------ Peirce spaces

template <class F>
struct PeirceData {
  Subspace<F> A2, A1, A0;
  // Gram matrix of S(x, y) on the echelon basis of A0.
  std::vector<std::vector<typename F::Scalar>> s_gram;
  bool adjoint_relation = false;  // x♯ = S(x)e on the A0 basis
  bool direct_sum = false;
};

// Kernel of v ↦ Σ_j v_j·cols[j].
template <class F>
std::vector<Vec<F>> kernel_of_columns(const F& k, const std::vector<Vec<F>>& cols) {
  std::size_t n = cols.size();
  std::size_t m = cols.empty() ? 0 : cols[0].size();
  Subspace<F> rows(k, n);
  for (std::size_t i = 0; i < m; ++i) {
    Vec<F> row(n, k.zero());
    for (std::size_t j = 0; j < n; ++j) row[j] = cols[j][i];
    rows.insert(row);
  }
  return nullspace(rows);
}

template <class F>
PeirceData<F> peirce(const AlbertAlgebra<F>& A, const typename AlbertAlgebra<F>::Element& e) {
  using E = typename AlbertAlgebra<F>::Element;
  const F& k = A.ring();
  if (!A.is_primitive_idempotent(e)) throw Error(ErrorCode::NotPrimitiveIdempotent, "e is not a primitive idempotent");
  E f = A.one() - e;
  std::vector<Vec<F>> c1, c0;
  for (std::size_t m = 0; m < E::dim; ++m) {
    E u = A.unit(m);
    E ex = A.cross(e, u);
    Vec<F> col = ex.coords();
    col.push_back(A.trace(u));
    c1.push_back(col);
    c0.push_back((ex - A.trace(u) * f + u).coords());
  }
  PeirceData<F> d{Subspace<F>::span(k, E::dim, {e.coords()}),
                  Subspace<F>::span(k, E::dim, kernel_of_columns(k, c1)),
                  Subspace<F>::span(k, E::dim, kernel_of_columns(k, c0)),
                  {},
                  true,
                  false};
  d.direct_sum = d.A2.dim() + d.A1.dim() + d.A0.dim() == E::dim && d.A2.sum(d.A1).sum(d.A0).dim() == E::dim;
  const auto& b = d.A0.basis();
  for (const auto& bi : b) {
    E x = E::from_coords(bi);
    if (A.adjoint(x) != A.quad_trace(x) * e) d.adjoint_relation = false;
    std::vector<typename F::Scalar> row;
    for (const auto& bj : b) row.push_back(A.quad_trace_bilinear(x, E::from_coords(bj)));
    d.s_gram.push_back(std::move(row));
  }
  return d;
}

// ------------------------------------------------------------ nilpotents

// Search for a nonzero nilpotent: α e_jj − α e_ll + x[jl] with
// α² = −γ_jγ_l N_C(x), norm-zero entries first, then small coordinates.
template <class F>
std::optional<typename AlbertAlgebra<F>::Element> find_nilpotent(const AlbertAlgebra<F>& A, std::size_t budget,
                                                                  Rng& rng) {
  using E = typename AlbertAlgebra<F>::Element;
  using O = typename AlbertAlgebra<F>::OctElement;
  const F& k = A.ring();
  const auto& C = A.octonions();
  auto attempt = [&](int i, const O& o) -> std::optional<E> {
    if (o.is_zero()) return std::nullopt;
    auto [j, l] = AlbertAlgebra<F>::jl(i);
    auto m = -(A.gamma()[j] * A.gamma()[l] * C.norm(o));
    auto a = k.sqrt(m);
    if (!a) return std::nullopt;
    E x = A.off(i, o);
    x.alpha[j] = *a;
    x.alpha[l] = -*a;
    auto cls = A.classify(x);
    if (cls.is_nilpotent()) return x;
    return std::nullopt;
  };
  std::size_t used = 0;
  try {
    auto zs = C.norm_zero_samples(1, rng, 2, std::min<std::size_t>(budget, 2000));
    for (int i = 0; i < 3; ++i)
      if (auto x = attempt(i, zs[0])) return x;
  } catch (const Error&) {
  }
  // Exhaustive over {−1, 0, 1}^8 entries (or the whole field when small).
  for (int i = 0; i < 3 && used < budget; ++i) {
    for (std::size_t idx = 1; idx < 6561 && used < budget; ++idx, ++used) {
      O o;
      std::size_t t = idx;
      for (int c = 0; c < 8; ++c) {
        o.c[c] = k.from_int(static_cast<long>(t % 3) - 1);
        t /= 3;
      }
      if (auto x = attempt(i, o)) return x;
    }
  }
  for (; used < budget; ++used) {
    int i = static_cast<int>(used % 3);
    if (auto x = attempt(i, C.random(rng, 4))) return x;
  }
  return std::nullopt;
}

}  // namespace e6iso
