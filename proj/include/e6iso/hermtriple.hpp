#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "e6iso/albert.hpp"
#include "e6iso/etale.hpp"
#include "e6iso/idealgeom.hpp"
#include "e6iso/linalg.hpp"

namespace e6iso {

// 𝒯(A, K): carrier A ⊗ K with P_x y = U_x(ι y). Over k the carrier is
// 54-dimensional: coordinates 0..26 hold y and 27..53 hold z for
// x = y + d·z (field K) or x = (y, z) (split K).
template <class F>
class HermTriple {
 public:
  using Field = F;
  using S = typename F::Scalar;
  using KAlg = EtaleAlgebra<F>;
  using KS = EtaleElement<F>;
  using BaseAlgebra = AlbertAlgebra<F>;
  using KAlgebra = AlbertAlgebra<KAlg>;
  using AElem = AlbertElement<S>;
  using Elem = AlbertElement<KS>;
  static constexpr std::size_t half = AElem::dim;

  HermTriple(BaseAlgebra A, KAlg K) : A_(std::move(A)), K_(std::move(K)), AK_(extend(A_, K_)) {}

  static KAlgebra extend(const BaseAlgebra& A, const KAlg& K) {
    auto C = A.octonions().template base_change<KAlg>(K, [&](const S& a) { return K.embed(a); });
    std::array<KS, 3> g;
    for (int i = 0; i < 3; ++i) g[static_cast<std::size_t>(i)] = K.embed(A.gamma()[static_cast<std::size_t>(i)]);
    return KAlgebra(std::move(C), g);
  }

  const F& base() const { return A_.ring(); }
  const KAlg& etale() const { return K_; }
  const BaseAlgebra& algebra() const { return A_; }
  const KAlgebra& extended() const { return AK_; }
  std::size_t carrier_dim() const { return 2 * half; }

  Elem embed(const AElem& a) const {
    std::vector<KS> c;
    for (const auto& v : a.coords()) c.push_back(zero_p(v) ? KS{} : K_.embed(v));
    return Elem::from_coords(c);
  }
  Elem make(const AElem& y, const AElem& z) const {
    auto v = y.coords();
    auto cz = z.coords();
    v.insert(v.end(), cz.begin(), cz.end());
    return from_vec(v);
  }
  std::pair<AElem, AElem> parts(const Elem& x) const {
    auto v = to_vec(x);
    return {AElem::from_coords(Vec<F>(v.begin(), v.begin() + half)), AElem::from_coords(Vec<F>(v.begin() + half, v.end()))};
  }

  Vec<F> to_vec(const Elem& x) const {
    auto c = x.coords();
    Vec<F> v(2 * half, base().zero());
    for (std::size_t i = 0; i < half; ++i) {
      if (c[i].data() == nullptr) continue;
      v[i] = c[i].u();
      v[half + i] = c[i].v();
    }
    return v;
  }
  Elem from_vec(const Vec<F>& v) const {
    if (v.size() != 2 * half) throw Error(ErrorCode::DimensionMismatch, "carrier vectors have 54 coordinates");
    std::vector<KS> c(half);
    for (std::size_t i = 0; i < half; ++i)
      if (!zero_p(v[i]) || !zero_p(v[half + i])) c[i] = K_.make(v[i], v[half + i]);
    return Elem::from_coords(c);
  }
  Elem k_unit(std::size_t m) const { return from_vec(Subspace<F>::unit(base(), 2 * half, m)); }

  Elem iota(const Elem& x) const {
    Elem r;
    for (int i = 0; i < 3; ++i) {
      r.alpha[i] = x.alpha[i].conj();
      for (int c = 0; c < 8; ++c) r.x[i].c[c] = x.x[i].c[c].conj();
    }
    return r;
  }
  bool in_base(const Elem& x) const { return iota(x) == x; }
  AElem to_base(const Elem& x) const {
    if (!in_base(x)) throw Error(ErrorCode::InvalidArgument, "element is not fixed by the conjugation");
    auto c = x.coords();
    Vec<F> v(half, base().zero());
    for (std::size_t i = 0; i < half; ++i)
      if (c[i].data()) v[i] = c[i].u();
    return AElem::from_coords(v);
  }

  Elem p_op(const Elem& v, const Elem& w) const { return AK_.u_op(v, iota(w)); }
  // [x, y, z] = P_{x+z} y − P_x y − P_z y = {x, ι y, z}.
  Elem bracket(const Elem& x, const Elem& y, const Elem& z) const { return AK_.triple(x, iota(y), z); }
  Vec<F> bracket(const Vec<F>& x, const Vec<F>& y, const Vec<F>& z) const {
    return to_vec(bracket(from_vec(x), from_vec(y), from_vec(z)));
  }

  bool is_k_submodule(const Subspace<F>& X) const {
    KS d = K_.d();
    for (const auto& b : X.basis())
      if (!X.contains(to_vec(d * from_vec(b)))) return false;
    return true;
  }
  // K-rank of a free K-submodule.
  std::size_t rank(const Subspace<F>& X) const {
    if (X.ambient() != 2 * half) throw Error(ErrorCode::DimensionMismatch, "subspace is not in the 54-dimensional carrier");
    if (!is_k_submodule(X)) throw Error(ErrorCode::NotKSubmodule, "subspace is not closed under K");
    if (K_.is_split()) {
      std::size_t first = 0;
      for (auto p : X.pivots()) first += p < half;
      if (2 * first != X.dim()) throw Error(ErrorCode::RankMismatch, "K-submodule is not free");
    }
    return X.dim() / 2;
  }
  // K-span of elements of A ⊗ K.
  Subspace<F> k_span(const std::vector<Elem>& xs) const {
    Subspace<F> s(base(), 2 * half);
    KS d = K_.d();
    for (const auto& x : xs) {
      s.insert(to_vec(x));
      s.insert(to_vec(d * x));
    }
    return s;
  }

 private:
  BaseAlgebra A_;
  KAlg K_;
  KAlgebra AK_;
};

// ------------------------------------------------------------ inner ideals

struct TripleIdealCheck {
  bool inner = false;
  bool proper = true;
  bool enumerated = false;
};

template <class F>
TripleIdealCheck triple_inner_ideal(const HermTriple<F>& T, const Subspace<F>& X, std::uint64_t enum_limit = 1u << 12) {
  using Elem = typename HermTriple<F>::Elem;
  if (!T.is_k_submodule(X)) throw Error(ErrorCode::NotKSubmodule, "subspace is not closed under K");
  TripleIdealCheck out;
  std::size_t n = T.carrier_dim();
  out.proper = X.dim() != 0 && X.dim() != n;
  std::vector<Elem> b;
  for (const auto& v : X.basis()) b.push_back(T.from_vec(v));
  out.inner = true;
  for (std::size_t m = 0; m < n && out.inner; ++m) {
    Elem u = T.k_unit(m);
    for (std::size_t i = 0; i < b.size() && out.inner; ++i) {
      if (!X.contains(T.to_vec(T.p_op(b[i], u)))) out.inner = false;
      for (std::size_t j = i + 1; j < b.size() && out.inner; ++j)
        if (!X.contains(T.to_vec(T.bracket(b[i], u, b[j])))) out.inner = false;
    }
  }
  if constexpr (detail::is_finite_field<F>) {
    if (out.inner && T.base().size() == 2) {
      bool bad = false;
      bool done = detail::for_each_vector(T.base(), X.dim(), enum_limit, [&](const Vec<F>& c) {
        Elem x = T.from_vec(X.combine(c));
        for (std::size_t m = 0; m < n; ++m)
          if (!X.contains(T.to_vec(T.p_op(x, T.k_unit(m))))) return bad = true;
        return false;
      });
      if (done) {
        out.enumerated = true;
        out.inner = !bad;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ witnesses

enum class WitnessStrategy { nilpotent, subalgebra, search };

inline const char* strategy_name(WitnessStrategy s) {
  switch (s) {
    case WitnessStrategy::nilpotent: return "nilpotent";
    case WitnessStrategy::subalgebra: return "subalgebra";
    case WitnessStrategy::search: return "search";
  }
  return "?";
}

template <class F>
struct Witness {
  typename HermTriple<F>::Elem x;
  typename HermTriple<F>::Elem v;  // ι(x) × v = x
  WitnessStrategy via;
};

// v with ι(x) × v = x when x is nonzero and x♯ = 0.
template <class F>
std::optional<typename HermTriple<F>::Elem> solve_cross_partner(const HermTriple<F>& T, const typename HermTriple<F>::Elem& x) {
  const auto& AK = T.extended();
  if (x.is_zero() || !AK.adjoint(x).is_zero()) return std::nullopt;
  auto ix = T.iota(x);
  std::vector<Vec<F>> cols;
  for (std::size_t m = 0; m < T.carrier_dim(); ++m) cols.push_back(T.to_vec(AK.cross(ix, T.k_unit(m))));
  auto c = solve_columns(T.base(), cols, T.to_vec(x));
  if (!c) return std::nullopt;
  return T.from_vec(*c);
}

// φ(α, a) = α e_ii + T_K(s)⁻¹(N_K(s,a) e_jj + N_K(s,ιa) e_ll + t⁻¹(ιa − a) u[jl])
// with γ_jγ_l N_C(u) = δ N_K(s); slot 0 and u = 1 is the standard map.
template <class F>
struct KxKEmbedding {
  using S = typename F::Scalar;
  using KS = EtaleElement<F>;
  using AElem = AlbertElement<S>;

  AlbertAlgebra<F> A;
  EtaleAlgebra<F> K;
  KS s;
  int slot = 0;
  typename AlbertAlgebra<F>::OctElement u;

  AElem phi(const S& alpha, const KS& a) const {
    const F& k = A.ring();
    auto [j, l] = AlbertAlgebra<F>::jl(slot);
    S tr = s.trace();
    S ti = k.inv(tr);
    KS t = K.t_disc();
    KS ia = a.conj();
    S w = K.to_base(K.inv(t) * (ia - a));
    AElem x;
    x.alpha[static_cast<std::size_t>(slot)] = alpha;
    x.alpha[static_cast<std::size_t>(j)] = ti * K.norm_bilinear(s, a);
    x.alpha[static_cast<std::size_t>(l)] = ti * K.norm_bilinear(s, ia);
    x.x[static_cast<std::size_t>(slot)] = (ti * w) * u;
    return x;
  }
};

template <class F>
struct EmbeddingWitness {
  KxKEmbedding<F> map;
  AlbertElement<typename F::Scalar> phi_1_0, phi_0_1, phi_0_d;
  typename HermTriple<F>::Elem x;  // singular, trace one, satisfies x = i(x) x v
  bool unital = false;
  std::size_t norm_checks = 0;
  bool norms_ok = false;
  bool closed = false;  // image closed under ♯
};

namespace detail {

template <class F>
typename F::Scalar random_base(const F& k, Rng& rng) {
  return k.random(rng, 9);
}

// Images of the idempotents of E ⊗ K: u₂ = w(φ(0,d) − ι(d)φ(0,1)),
// w = (d − ι d)⁻¹.
template <class F>
typename HermTriple<F>::Elem split_idempotent(const HermTriple<F>& T, const KxKEmbedding<F>& m) {
  const auto& K = T.etale();
  auto d = K.d();
  auto w = K.inv(d - d.conj());
  auto pd = T.embed(m.phi(K.base().zero(), d));
  auto p1 = T.embed(m.phi(K.base().zero(), K.one()));
  return w * pd - (d.conj() * w) * p1;
}

}  // namespace detail

template <class F>
EmbeddingWitness<F> verify_embedding(const KxKEmbedding<F>& m, Rng& rng, std::size_t samples) {
  const F& k = m.A.ring();
  const auto& K = m.K;
  EmbeddingWitness<F> w{m, m.phi(k.one(), K.zero()), m.phi(k.zero(), K.one()), m.phi(k.zero(), K.d()), {}};
  w.unital = m.phi(k.one(), K.one()) == m.A.one();
  w.norms_ok = true;
  for (std::size_t i = 0; i < samples; ++i) {
    auto alpha = detail::random_base(k, rng);
    auto a = K.random(rng, 9);
    if (m.A.norm(m.phi(alpha, a)) != alpha * a.norm()) w.norms_ok = false;
    ++w.norm_checks;
  }
  // Image spanned by φ(1,0), φ(0,1), φ(0,d); adjoints must stay inside.
  auto img = span_of(m.A, {w.phi_1_0, w.phi_0_1, w.phi_0_d});
  w.closed = img.dim() == 3;
  for (const auto& b : img.basis())
    for (const auto& c : img.basis())
      if (!img.contains(m.A.cross(AlbertElement<typename F::Scalar>::from_coords(b),
                                  AlbertElement<typename F::Scalar>::from_coords(c))
                            .coords()))
        w.closed = false;
  HermTriple<F> T(m.A, K);
  w.x = detail::split_idempotent(T, m);
  return w;
}

// The standard embedding into 𝓗₃(C, ⟨r, 1, δN_K(s)⟩).
template <class F>
EmbeddingWitness<F> embed_kxK(const OctonionAlgebra<F>& C, const typename F::Scalar& r, const EtaleElement<F>& s,
                              const EtaleAlgebra<F>& K, Rng& rng, std::size_t samples = 200) {
  const F& k = C.ring();
  if (zero_p(s.trace())) throw Error(ErrorCode::TraceZeroS, "T_K(s) must be nonzero");
  if (!K.is_invertible(s)) throw Error(ErrorCode::InvalidArgument, "s must be invertible");
  if (k.characteristic() == 2 && K.is_split())
    throw Error(ErrorCode::CharTwoUnsupportedShape, "split K in characteristic 2 is not supported");
  AlbertAlgebra<F> A(C, {r, k.one(), K.delta() * s.norm()});
  KxKEmbedding<F> m{A, K, s, 0, C.one()};
  return verify_embedding(m, rng, samples);
}

// Looks for slot i, s with T_K(s) ≠ 0 and u ∈ C with γ_jγ_l N_C(u) = δ N_K(s).
template <class F>
std::optional<KxKEmbedding<F>> find_kxk_embedding(const AlbertAlgebra<F>& A, const EtaleAlgebra<F>& K, Rng& rng,
                                                  std::size_t budget) {
  const F& k = A.ring();
  const auto& C = A.octonions();
  std::vector<EtaleElement<F>> ss;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      auto s = K.make(k.from_int(a), k.from_int(b));
      if (!zero_p(s.trace()) && K.is_invertible(s)) ss.push_back(s);
    }
  for (std::size_t it = 0; it < budget; ++it) {
    int i = static_cast<int>(it % 3);
    auto [j, l] = AlbertAlgebra<F>::jl(i);
    if (ss.empty()) return std::nullopt;
    const auto& s = ss[(it / 3) % ss.size()];
    auto target = K.delta() * s.norm();
    auto u = C.random(rng, 2);
    auto nu = A.gamma()[static_cast<std::size_t>(j)] * A.gamma()[static_cast<std::size_t>(l)] * C.norm(u);
    if (zero_p(nu)) continue;
    auto lam = k.sqrt(target / nu);
    if (!lam) continue;
    KxKEmbedding<F> m{A, K, s, i, (*lam) * u};
    return m;
  }
  return std::nullopt;
}

template <class F>
std::optional<Witness<F>> isotropy_witness_search(const HermTriple<F>& T, WitnessStrategy strategy, std::size_t budget,
                                                  Rng& rng) {
  using Elem = typename HermTriple<F>::Elem;
  const auto& A = T.algebra();
  const auto& K = T.etale();
  const auto& AK = T.extended();
  auto accept = [&](const Elem& x, WitnessStrategy via) -> std::optional<Witness<F>> {
    auto v = solve_cross_partner(T, x);
    if (!v) return std::nullopt;
    return Witness<F>{x, *v, via};
  };
  switch (strategy) {
    case WitnessStrategy::nilpotent: {
      auto n = find_nilpotent(A, budget, rng);
      if (!n) return std::nullopt;
      Elem x = T.embed(*n);
      Elem v = -AK.one();
      if (AK.cross(T.iota(x), v) != x || !AK.adjoint(x).is_zero()) return std::nullopt;
      return Witness<F>{x, v, WitnessStrategy::nilpotent};
    }
    case WitnessStrategy::subalgebra: {
      if (K.is_split()) {
        // x = (e₁, e₂), ι(x) × e₃ = x.
        Elem x = T.make(A.e(0), A.e(1));
        return accept(x, WitnessStrategy::subalgebra);
      }
      auto m = find_kxk_embedding(A, K, rng, budget);
      if (!m) return std::nullopt;
      return accept(detail::split_idempotent(T, *m), WitnessStrategy::subalgebra);
    }
    case WitnessStrategy::search: {
      for (std::size_t i = 0; i < budget; ++i) {
        auto x = AK.random_singular(rng, 2);
        if (!x) continue;
        if (auto w = accept(*x, WitnessStrategy::search)) return w;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

template <class F>
struct WitnessClass {
  using AElem = AlbertElement<typename F::Scalar>;
  bool trace_zero = false;
  std::optional<AElem> nilpotent;
  // Trace-nonzero branch: (α, a) ↦ αc + a e + ι(a)ι(e).
  std::optional<AElem> c;
  std::optional<typename HermTriple<F>::Elem> e;
  bool verified = false;

  AElem embed(const HermTriple<F>& T, const typename F::Scalar& alpha, const EtaleElement<F>& a) const {
    auto ie = T.iota(*e);
    return T.to_base(T.embed(alpha * *c) + a * *e + a.conj() * ie);
  }
};

template <class F>
WitnessClass<F> witness_classify(const HermTriple<F>& T, const typename HermTriple<F>::Elem& x, Rng& rng,
                                 std::size_t budget = 20000) {
  using AElem = AlbertElement<typename F::Scalar>;
  const auto& A = T.algebra();
  const auto& K = T.etale();
  const auto& AK = T.extended();
  const F& k = A.ring();
  if (!solve_cross_partner(T, x)) throw Error(ErrorCode::NotAWitness, "element does not satisfy x# = 0 and x in i(x) x A_K");
  WitnessClass<F> out;
  auto b = AK.trace(x);
  out.trace_zero = zero_p(b);
  if (out.trace_zero) {
    auto [y, z] = T.parts(x);
    std::vector<AElem> cands{y, z};
    if constexpr (detail::is_finite_field<F>) {
      for (std::uint64_t i = 1; i < k.size(); ++i) cands.push_back(y + k.element(i) * z);
    } else {
      for (long l = -3; l <= 3; ++l)
        if (l != 0) cands.push_back(y + k.from_int(l) * z);
    }
    for (const auto& c : cands)
      if (!c.is_zero() && A.classify(c).is_nilpotent()) {
        out.nilpotent = c;
        break;
      }
    if (!out.nilpotent) out.nilpotent = find_nilpotent(A, budget, rng);
    out.verified = out.nilpotent && A.classify(*out.nilpotent).is_nilpotent();
    return out;
  }
  if (!K.is_invertible(b)) throw Error(ErrorCode::NotAWitness, "trace of the witness is not invertible in K");
  auto e = K.inv(b) * x;
  auto ie = T.iota(e);
  auto cK = AK.one() - e - ie;
  if (!T.in_base(cK)) throw Error(ErrorCode::NotAWitness, "complementary idempotent is not defined over k");
  out.c = T.to_base(cK);
  out.e = e;
  bool ok = AK.is_primitive_idempotent(e) && AK.is_primitive_idempotent(ie) && A.is_primitive_idempotent(*out.c);
  ok = ok && AK.cross(e, ie) == T.embed(*out.c);
  for (int i = 0; i < 50 && ok; ++i) {
    auto alpha = k.random(rng, 9);
    auto a = K.random(rng, 9);
    ok = A.norm(out.embed(T, alpha, a)) == alpha * a.norm();
  }
  ok = ok && out.embed(T, k.one(), K.one()) == A.one();
  out.verified = ok;
  return out;
}

// ------------------------------------------------------------ frame

template <class F>
struct FrameResult {
  AlbertAlgebra<EtaleAlgebra<F>> AK;  // 𝓗₃(C_K, ⟨1, s, ι s⟩)
  std::array<AlbertElement<EtaleElement<F>>, 3> d;
  bool idempotent = false;
  bool orthogonal = false;
  bool sum_one = false;
  bool trace_one = false;
  bool descent_fixed = false;
  bool ok() const { return idempotent && orthogonal && sum_one && trace_one && descent_fixed; }
};

// ι on 𝓗₃(C_K, ⟨1, s, ι s⟩): a₁ ↦ ι a₁, a₂ ↔ ι a₃, x₁ ↦ τ(x₁), x₂ ↔ τ(x₃),
// with τ(c ⊗ λ) = c̄ ⊗ ι(λ).
template <class F>
AlbertElement<EtaleElement<F>> frame_descent(const AlbertAlgebra<EtaleAlgebra<F>>& AK,
                                             const AlbertElement<EtaleElement<F>>& x) {
  const auto& C = AK.octonions();
  auto tau = [&](const Octonion<EtaleElement<F>>& o) {
    Octonion<EtaleElement<F>> r;
    for (int c = 0; c < 8; ++c) r.c[c] = o.c[c].conj();
    return C.conj(r);
  };
  AlbertElement<EtaleElement<F>> r;
  r.alpha = {x.alpha[0].conj(), x.alpha[2].conj(), x.alpha[1].conj()};
  r.x = {tau(x.x[0]), tau(x.x[2]), tau(x.x[1])};
  return r;
}

template <class F>
FrameResult<F> frame_from_embedding(const OctonionAlgebra<F>& C, const EtaleAlgebra<F>& K, const EtaleElement<F>& s) {
  using E = AlbertElement<EtaleElement<F>>;
  if (zero_p(s.trace())) throw Error(ErrorCode::TraceZeroS, "T_K(s) must be nonzero");
  auto CK = C.template base_change<EtaleAlgebra<F>>(K, [&](const typename F::Scalar& a) { return K.embed(a); });
  FrameResult<F> fr{AlbertAlgebra<EtaleAlgebra<F>>(CK, {K.one(), s, s.conj()}), {}};
  const auto& AK = fr.AK;
  auto ti = K.inv(K.embed(s.trace()));
  auto one23 = AK.off(0, CK.one());
  fr.d[0] = AK.e(0);
  fr.d[1] = ti * (s * AK.e(1) + s.conj() * AK.e(2) + one23);
  fr.d[2] = ti * (s.conj() * AK.e(1) + s * AK.e(2) - one23);
  fr.idempotent = true;
  fr.trace_one = true;
  fr.descent_fixed = true;
  for (const auto& di : fr.d) {
    fr.idempotent = fr.idempotent && AK.is_primitive_idempotent(di) && AK.square(di) == di;
    fr.trace_one = fr.trace_one && AK.trace(di) == K.one();
    fr.descent_fixed = fr.descent_fixed && frame_descent(AK, di) == di;
  }
  fr.orthogonal = true;
  for (int i = 0; i < 3; ++i) {
    auto [j, l] = AlbertAlgebra<EtaleAlgebra<F>>::jl(i);
    fr.orthogonal = fr.orthogonal && AK.cross(fr.d[j], fr.d[l]) == fr.d[i] && AK.circle(fr.d[j], fr.d[l]).is_zero();
  }
  E sum = fr.d[0] + fr.d[1] + fr.d[2];
  fr.sum_one = sum == AK.one();
  return fr;
}

// ------------------------------------------------------------ congruences

template <class F>
using KMatrix3 = std::array<std::array<EtaleElement<F>, 3>, 3>;

template <class F>
struct CongruenceMap {
  HermTriple<F> source, target;
  KMatrix3<F> g;
  std::size_t checked = 0;
  bool verified = false;

  typename HermTriple<F>::Elem apply(const typename HermTriple<F>::Elem& x) const;
};

namespace detail {

template <class F>
KMatrix3<F> inverse_transpose(const EtaleAlgebra<F>& K, const KMatrix3<F>& g) {
  auto det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
             g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (!K.is_invertible(det)) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  auto di = K.inv(det);
  KMatrix3<F> r;
  // Cofactor matrix divided by det is the inverse transpose.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      r[i][j] = di * (g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]);
    }
  return r;
}

// 𝓗₃(C, Γ) → 𝓗₃(C, 1): α_i ↦ α_i/γ_i, off-diagonal entries unchanged.
template <class R>
AlbertElement<typename R::Scalar> to_unit_gamma(const AlbertAlgebra<R>& A, const AlbertElement<typename R::Scalar>& x,
                                               bool inverse) {
  auto r = x;
  for (std::size_t i = 0; i < 3; ++i)
    r.alpha[i] = inverse ? x.alpha[i] * A.gamma()[i] : x.alpha[i] * A.ring().inv(A.gamma()[i]);
  return r;
}

}  // namespace detail

template <class F>
typename HermTriple<F>::Elem CongruenceMap<F>::apply(const typename HermTriple<F>::Elem& x) const {
  const auto& K = source.etale();
  auto unit = AlbertAlgebra<EtaleAlgebra<F>>(source.extended().octonions(), {K.one(), K.one(), K.one()});
  auto y = detail::to_unit_gamma(source.extended(), x, false);
  y = unit.gl3_act(detail::inverse_transpose(K, g), y);
  return detail::to_unit_gamma(target.extended(), y, true);
}

// g Γ ι(g)ᵗ = Γ' over K yields 𝒯(𝓗₃(C, Γ), K) ≅ 𝒯(𝓗₃(C, Γ'), K).
template <class F>
CongruenceMap<F> triple_iso_from_congruence(const OctonionAlgebra<F>& C, const std::array<typename F::Scalar, 3>& gamma,
                                            const std::array<typename F::Scalar, 3>& gamma2, const EtaleAlgebra<F>& K,
                                            const KMatrix3<F>& g, Rng& rng, std::size_t samples = 200) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto s = K.zero();
      for (int r = 0; r < 3; ++r) s = s + g[i][r] * K.embed(gamma[r]) * g[j][r].conj();
      auto want = i == j ? K.embed(gamma2[i]) : K.zero();
      if (s != want) throw Error(ErrorCode::NotACongruence, "g does not carry the hermitian form of gamma to gamma'");
    }
  CongruenceMap<F> m{HermTriple<F>(AlbertAlgebra<F>(C, gamma), K), HermTriple<F>(AlbertAlgebra<F>(C, gamma2), K), g};
  const auto& S = m.source;
  const auto& T = m.target;
  m.verified = true;
  for (std::size_t i = 0; i < samples; ++i) {
    auto x = S.extended().random(rng, 3);
    auto y = S.extended().random(rng, 3);
    if (m.apply(S.p_op(x, y)) != T.p_op(m.apply(x), m.apply(y))) m.verified = false;
    ++m.checked;
  }
  return m;
}

}  // namespace e6iso
