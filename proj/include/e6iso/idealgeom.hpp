#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "e6iso/albert.hpp"
#include "e6iso/linalg.hpp"

namespace e6iso {

enum class IdealTag { singular, hyperline, not_inner, trivial };

inline const char* ideal_tag_name(IdealTag t) {
  switch (t) {
    case IdealTag::singular: return "singular";
    case IdealTag::hyperline: return "hyperline";
    case IdealTag::not_inner: return "not_inner";
    case IdealTag::trivial: return "trivial";
  }
  return "?";
}

// `trivial` covers the zero space and the whole algebra, which are inner but
// neither singular nor hyperlines.
struct IdealKind {
  IdealTag tag = IdealTag::not_inner;
  std::size_t dim = 0;
  bool is_maximal_singular_5prime = false;
  // True when maximality was decided by exhausting L/X over a finite field.
  bool maximality_certified = false;
  bool enumerated = false;
};

namespace detail {

template <class F>
constexpr bool is_finite_field = requires(const F& k) { k.element(0); };

// Calls fn(coeffs) for every vector in k^r, stopping early when fn returns
// true or after `limit` vectors. Returns false when the limit cut it short.
template <class F, class Fn>
bool for_each_vector(const F& k, std::size_t r, std::uint64_t limit, Fn&& fn) {
  if constexpr (is_finite_field<F>) {
    std::uint64_t q = k.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (total > limit / q + 1) return false;
      total *= q;
    }
    if (total > limit) return false;
    Vec<F> c(r, k.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < r; ++i) {
        c[i] = k.element(t % q);
        t /= q;
      }
      if (fn(c)) return true;
    }
    return true;
  } else {
    (void)k, (void)r, (void)limit, (void)fn;
    return false;
  }
}

}  // namespace detail

template <class F>
Subspace<F> span_of(const AlbertAlgebra<F>& A, const std::vector<typename AlbertAlgebra<F>::Element>& xs) {
  Subspace<F> s(A.ring(), AlbertElement<typename F::Scalar>::dim);
  for (const auto& x : xs) s.insert(x.coords());
  return s;
}

template <class F>
bool is_singular_space(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  using E = typename AlbertAlgebra<F>::Element;
  const auto& b = X.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    E x = E::from_coords(b[i]);
    if (!A.adjoint(x).is_zero()) return false;
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!A.cross(x, E::from_coords(b[j])).is_zero()) return false;
  }
  return true;
}

// U_{b_i} A ⊆ X and U_{b_i,b_j} A ⊆ X on an echelon basis.
template <class F>
bool inner_by_polarization(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  using E = typename AlbertAlgebra<F>::Element;
  std::vector<E> b;
  for (const auto& v : X.basis()) b.push_back(E::from_coords(v));
  for (std::size_t m = 0; m < E::dim; ++m) {
    E u = A.unit(m);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!X.contains(A.u_op(b[i], u).coords())) return false;
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (!X.contains(A.triple(b[i], u, b[j]).coords())) return false;
    }
  }
  return true;
}

// U_x A ⊆ X for every x ∈ X; finite fields only.
template <class F>
std::optional<bool> inner_by_enumeration(const AlbertAlgebra<F>& A, const Subspace<F>& X, std::uint64_t limit) {
  using E = typename AlbertAlgebra<F>::Element;
  bool bad = false;
  bool done = detail::for_each_vector(A.ring(), X.dim(), limit, [&](const Vec<F>& c) {
    E x = E::from_coords(X.combine(c));
    for (std::size_t m = 0; m < E::dim; ++m)
      if (!X.contains(A.u_op(x, A.unit(m)).coords())) return bad = true;
    return false;
  });
  if (!done) return std::nullopt;
  return !bad;
}

// {y : x × y = 0 for all x ∈ X}.
template <class F>
Subspace<F> cross_annihilator(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  using E = typename AlbertAlgebra<F>::Element;
  const F& k = A.ring();
  RowSpace<F> rows(k, E::dim);
  for (const auto& bv : X.basis()) {
    E b = E::from_coords(bv);
    std::vector<Vec<F>> cols;
    for (std::size_t m = 0; m < E::dim; ++m) cols.push_back(A.cross(b, A.unit(m)).coords());
    for (std::size_t c = 0; c < E::dim; ++c) {
      Vec<F> row(E::dim, k.zero());
      for (std::size_t m = 0; m < E::dim; ++m) row[m] = cols[m][c];
      rows.insert(row);
    }
  }
  return Subspace<F>::span(k, E::dim, nullspace(rows));
}

// Basis of a complement of X inside L (X ⊆ L).
template <class F>
std::vector<Vec<F>> complement_in(const Subspace<F>& L, const Subspace<F>& X) {
  Subspace<F> acc = X;
  std::vector<Vec<F>> out;
  for (const auto& v : L.basis())
    if (acc.insert(v)) out.push_back(v);
  return out;
}

template <class F>
struct SingularExtension {
  std::vector<Vec<F>> found;  // coset representatives y with X + ky singular
  bool exhaustive = false;
};

// Vectors y ∈ (L ∩ within) \ X with X + ky singular, L = cross annihilator of X.
// Exhaustive over a projective set of coset representatives when it has at
// most `limit` elements, otherwise `limit` random samples.
template <class F>
SingularExtension<F> singular_extensions(const AlbertAlgebra<F>& A, const Subspace<F>& X,
                                         const Subspace<F>* within, Rng& rng,
                                         std::uint64_t limit, std::size_t want = SIZE_MAX) {
  using E = typename AlbertAlgebra<F>::Element;
  const F& k = A.ring();
  Subspace<F> L = cross_annihilator(A, X);
  if (within) L = L.intersect(*within);
  auto comp = complement_in(L, X);
  SingularExtension<F> out;
  std::size_t r = comp.size();
  if (r == 0) {
    out.exhaustive = true;
    return out;
  }
  auto test = [&](const Vec<F>& c) {
    Vec<F> y(E::dim, k.zero());
    for (std::size_t i = 0; i < r; ++i)
      if (!zero_p(c[i]))
        for (std::size_t j = 0; j < E::dim; ++j) y[j] = y[j] + c[i] * comp[i][j];
    if (Subspace<F>::is_null(y)) return false;
    if (A.adjoint(E::from_coords(y)).is_zero()) out.found.push_back(y);
    return out.found.size() >= want;
  };
  // Projective enumeration: leading coefficient 1 at position p.
  bool complete = true;
  if constexpr (detail::is_finite_field<F>) {
    std::uint64_t budget = limit;
    for (std::size_t p = 0; p < r && complete; ++p) {
      std::size_t tail = r - p - 1;
      bool stopped = false;
      bool ok = detail::for_each_vector(k, tail, budget, [&](const Vec<F>& t) {
        Vec<F> c(r, k.zero());
        c[p] = k.one();
        for (std::size_t i = 0; i < tail; ++i) c[p + 1 + i] = t[i];
        return stopped = test(c);
      });
      if (!ok) complete = false;
      if (stopped) return out;
    }
  } else {
    complete = false;
  }
  if (complete) {
    out.exhaustive = true;
    return out;
  }
  out.found.clear();
  for (std::uint64_t s = 0; s < limit; ++s) {
    Vec<F> c(r);
    for (auto& a : c) a = k.random(rng, 3);
    if (test(c)) break;
  }
  return out;
}

template <class F>
IdealKind is_inner_ideal(const AlbertAlgebra<F>& A, const Subspace<F>& X, std::uint64_t enum_limit = 1u << 12);

template <class F>
Subspace<F> hyperline(const AlbertAlgebra<F>& A, const typename AlbertAlgebra<F>::Element& x) {
  using E = typename AlbertAlgebra<F>::Element;
  if (x.is_zero() || !A.adjoint(x).is_zero()) throw Error(ErrorCode::NotSingular, "hyperline needs a nonzero singular element");
  Subspace<F> s(A.ring(), E::dim);
  for (std::size_t m = 0; m < E::dim; ++m) s.insert(A.cross(x, A.unit(m)).coords());
  return s;
}

template <class F>
struct PsiResult {
  Subspace<F> psi;
  Subspace<F> zero_bracket;  // {y : {X, y, A} = 0}
  bool psi2_verified = false;
};

// Z ⊆ {z : U_A z ⊆ X} for the span Z of the given vectors.
template <class F>
bool u_image_inside(const AlbertAlgebra<F>& A, const Subspace<F>& X, const std::vector<Vec<F>>& zs) {
  using E = typename AlbertAlgebra<F>::Element;
  Subspace<F> Z = Subspace<F>::span(A.ring(), E::dim, zs);
  std::vector<E> units;
  for (std::size_t m = 0; m < E::dim; ++m) units.push_back(A.unit(m));
  for (const auto& zv : Z.basis()) {
    E z = E::from_coords(zv);
    for (std::size_t m = 0; m < E::dim; ++m) {
      if (!X.contains(A.u_op(units[m], z).coords())) return false;
      for (std::size_t n = m + 1; n < E::dim; ++n)
        if (!X.contains(A.triple(units[m], z, units[n]).coords())) return false;
    }
  }
  return true;
}

namespace detail {

// {X,y,A} in X and U_A U_y X in X, without the innerness precondition check.
template <class F>
PsiResult<F> psi_solve(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  using E = typename AlbertAlgebra<F>::Element;
  const F& k = A.ring();
  RowSpace<F> rel(k, E::dim), abs(k, E::dim);
  std::vector<E> units;
  for (std::size_t m = 0; m < E::dim; ++m) units.push_back(A.unit(m));
  for (const auto& bv : X.basis()) {
    E b = E::from_coords(bv);
    for (std::size_t n = 0; n < E::dim; ++n) {
      std::vector<Vec<F>> raw, red;
      for (std::size_t m = 0; m < E::dim; ++m) {
        raw.push_back(A.triple(b, units[m], units[n]).coords());
        red.push_back(X.reduce(raw.back()));
      }
      for (std::size_t c = 0; c < E::dim; ++c) {
        Vec<F> r1(E::dim, k.zero()), r2(E::dim, k.zero());
        bool nz1 = false, nz2 = false;
        for (std::size_t m = 0; m < E::dim; ++m) {
          r1[m] = raw[m][c];
          r2[m] = red[m][c];
          nz1 = nz1 || !zero_p(r1[m]);
          nz2 = nz2 || !zero_p(r2[m]);
        }
        if (nz1 && abs.dim() < E::dim) abs.insert(r1);
        if (nz2 && rel.dim() < E::dim) rel.insert(r2);
      }
    }
  }
  PsiResult<F> out{Subspace<F>::span(k, E::dim, nullspace(rel)), Subspace<F>::span(k, E::dim, nullspace(abs)), false};
  // U_A U_y X in X, by polarization in y.
  std::vector<Vec<F>> zs;
  const auto& yb = out.psi.basis();
  for (std::size_t i = 0; i < yb.size(); ++i) {
    E yi = E::from_coords(yb[i]);
    for (const auto& xv : X.basis()) {
      E x = E::from_coords(xv);
      zs.push_back(A.u_op(yi, x).coords());
      for (std::size_t j = i + 1; j < yb.size(); ++j) zs.push_back(A.triple(yi, x, E::from_coords(yb[j])).coords());
    }
  }
  out.psi2_verified = u_image_inside(A, X, zs);
  return out;
}

}  // namespace detail

template <class F>
PsiResult<F> psi_detailed(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  using E = typename AlbertAlgebra<F>::Element;
  if (X.dim() == 0 || X.dim() == E::dim) throw Error(ErrorCode::NotInnerIdeal, "psi needs a nonzero proper inner ideal");
  if (is_inner_ideal(A, X).tag == IdealTag::not_inner) throw Error(ErrorCode::NotInnerIdeal, "X is not an inner ideal");
  auto out = detail::psi_solve(A, X);
  if (!out.psi2_verified) throw Error(ErrorCode::NotInnerIdeal, "U_A U_y X is not inside X on the {X,y,A} solution space");
  return out;
}

template <class F>
Subspace<F> psi(const AlbertAlgebra<F>& A, const Subspace<F>& X) {
  return psi_detailed(A, X).psi;
}

template <class F>
IdealKind is_inner_ideal(const AlbertAlgebra<F>& A, const Subspace<F>& X, std::uint64_t enum_limit) {
  using E = typename AlbertAlgebra<F>::Element;
  if (X.ambient() != E::dim) throw Error(ErrorCode::DimensionMismatch, "subspace is not in the 27-dimensional carrier");
  IdealKind kind;
  kind.dim = X.dim();
  if (X.dim() == 0 || X.dim() == E::dim) {
    kind.tag = IdealTag::trivial;
    return kind;
  }
  bool inner = inner_by_polarization(A, X);
  if constexpr (detail::is_finite_field<F>) {
    if (inner && A.ring().size() < 3) {
      auto full = inner_by_enumeration(A, X, enum_limit);
      if (full) {
        kind.enumerated = true;
        inner = *full;
      }
    }
  }
  if (!inner) return kind;
  if (is_singular_space(A, X)) {
    kind.tag = IdealTag::singular;
    if (X.dim() == 5) {
      Rng rng(5);
      auto ext = singular_extensions<F>(A, X, nullptr, rng, 1u << 16, 1);
      kind.is_maximal_singular_5prime = ext.found.empty();
      kind.maximality_certified = ext.found.empty() && ext.exhaustive;
    }
    return kind;
  }
  if (X.dim() == 10) {
    auto P = detail::psi_solve(A, X).psi;
    if (P.dim() == 1) {
      E x = E::from_coords(P.basis()[0]);
      if (A.adjoint(x).is_zero() && hyperline(A, x) == X) kind.tag = IdealTag::hyperline;
    }
  }
  return kind;
}

// ------------------------------------------------------------ ψ table

struct PsiTableRow {
  std::string label;  // "1", "2", "3", "5'", "6", "10"
  std::size_t dim_x = 0;
  std::size_t expected = 0;
  std::size_t got = 0;
  bool psi_is_inner = false;
  bool zero_bracket_match = false;  // ψ(X) = {y : {X,y,A} = 0} (dim ≠ 6)
  bool extra_ok = true;             // 6: {X, ψX, A} = X; 2: ψX is 5'
  bool ok() const { return got == expected && psi_is_inner && zero_bracket_match && extra_ok; }
};

struct PsiTableReport {
  std::vector<PsiTableRow> rows;
  std::size_t restarts = 0;
  bool ok() const {
    if (rows.empty()) return false;
    for (const auto& r : rows)
      if (!r.ok()) return false;
    return true;
  }
};

// span{x, y, a} over bases of X, Y and the unit vectors of A.
template <class F>
Subspace<F> bracket_span(const AlbertAlgebra<F>& A, const Subspace<F>& X, const Subspace<F>& Y) {
  using E = typename AlbertAlgebra<F>::Element;
  Subspace<F> s(A.ring(), E::dim);
  for (const auto& xv : X.basis())
    for (const auto& yv : Y.basis())
      for (std::size_t m = 0; m < E::dim; ++m)
        s.insert(A.triple(E::from_coords(xv), E::from_coords(yv), A.unit(m)).coords());
  return s;
}

// Greedy chain of singular subspaces inside the hyperline of e₁₁, ending in a
// maximal one of dimension 5 inside it.
template <class F>
std::vector<Subspace<F>> greedy_singular_chain(const AlbertAlgebra<F>& A, Rng& rng, std::uint64_t limit) {
  using E = typename AlbertAlgebra<F>::Element;
  Subspace<F> H = hyperline(A, A.e(0));
  std::vector<Subspace<F>> chain;
  Subspace<F> X(A.ring(), E::dim);
  for (;;) {
    auto ext = singular_extensions(A, X, &H, rng, limit, X.dim() == 0 ? 1 : SIZE_MAX);
    if (ext.found.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, ext.found.size() - 1);
    X.insert(ext.found[pick(rng)]);
    chain.push_back(X);
  }
  return chain;
}

template <class F>
PsiTableRow psi_row(const AlbertAlgebra<F>& A, const std::string& label, const Subspace<F>& X, std::size_t expected) {
  PsiTableRow row{label, X.dim(), expected};
  auto res = psi_detailed(A, X);
  row.got = res.psi.dim();
  row.psi_is_inner = is_inner_ideal(A, res.psi).tag != IdealTag::not_inner;
  if (X.dim() == 6)
    row.zero_bracket_match = true;
  else
    row.zero_bracket_match = res.psi == res.zero_bracket;
  if (label == "6") row.extra_ok = bracket_span(A, X, res.psi) == X;
  if (label == "2") row.extra_ok = is_inner_ideal(A, res.psi).is_maximal_singular_5prime;
  if (label == "5'" || label == "3") row.extra_ok = psi(A, res.psi) == X;
  return row;
}

// Builds inner ideals of dimensions 1, 2, 3, 5', 6, 10 over a finite field
// and checks dim ψ(X) against 10, 5', 3, 2, 6, 1.
template <class F>
PsiTableReport psi_table_check(const AlbertAlgebra<F>& A, Rng& rng, std::size_t restarts = 40,
                               std::uint64_t limit = 1u << 16) {
  PsiTableReport rep;
  rep.rows.push_back(psi_row(A, "1", span_of(A, {A.e(0)}), 10));
  rep.rows.push_back(psi_row(A, "10", hyperline(A, A.e(0)), 1));
  std::optional<Subspace<F>> five_prime, six;
  bool low_done = false;
  for (std::size_t r = 0; r < restarts && !(five_prime && six && low_done); ++r) {
    ++rep.restarts;
    auto chain = greedy_singular_chain(A, rng, limit);
    if (chain.size() < 5) continue;
    if (!low_done) {
      rep.rows.push_back(psi_row(A, "2", chain[1], 5));
      rep.rows.push_back(psi_row(A, "3", chain[2], 3));
      low_done = true;
    }
    const Subspace<F>& X5 = chain[4];
    auto ext = singular_extensions<F>(A, X5, nullptr, rng, limit, 1);
    if (ext.found.empty()) {
      if (ext.exhaustive && !five_prime) five_prime = X5;
    } else if (!six) {
      Subspace<F> X6 = X5;
      X6.insert(ext.found[0]);
      if (is_singular_space(A, X6)) six = X6;
    }
  }
  if (!low_done) throw Error(ErrorCode::ConstructionFailed, "no singular subspace of dimension 2 or 3 found");
  if (!five_prime) throw Error(ErrorCode::ConstructionFailed, "no maximal singular subspace of dimension 5 found");
  if (!six) throw Error(ErrorCode::ConstructionFailed, "no singular subspace of dimension 6 found");
  rep.rows.push_back(psi_row(A, "5'", *five_prime, 2));
  rep.rows.push_back(psi_row(A, "6", *six, 6));
  return rep;
}

// ------------------------------------------------------------ flag table

enum class FlagKind { a1a6, a3a5, a4, a2 };

inline const char* flag_name(FlagKind f) {
  switch (f) {
    case FlagKind::a1a6: return "a1a6";
    case FlagKind::a3a5: return "a3a5";
    case FlagKind::a4: return "a4";
    case FlagKind::a2: return "a2";
  }
  return "?";
}

// T supplies base(), carrier_dim(), rank(Subspace) (K-rank; throws
// NotKSubmodule) and bracket(Vec, Vec, Vec).
template <class T, class F = typename T::Field>
Subspace<F> triple_bracket_span(const T& t, const Subspace<F>& X, const Subspace<F>& Y) {
  const F& k = t.base();
  std::size_t n = t.carrier_dim();
  Subspace<F> s(k, n);
  for (const auto& x : X.basis())
    for (const auto& y : Y.basis())
      for (std::size_t m = 0; m < n; ++m) {
        s.insert(t.bracket(x, y, Subspace<F>::unit(k, n, m)));
        if (s.dim() == n) return s;
      }
  return s;
}

template <class T, class F = typename T::Field>
bool flag_check(const T& t, FlagKind kind, const Subspace<F>& X, const std::optional<Subspace<F>>& Y = std::nullopt) {
  auto need = [&](const Subspace<F>& S, std::size_t r) {
    if (t.rank(S) != r) throw Error(ErrorCode::RankMismatch, std::string("rank differs from the ") + flag_name(kind) + " row");
  };
  auto needY = [&]() -> const Subspace<F>& {
    if (!Y) throw Error(ErrorCode::RankMismatch, std::string(flag_name(kind)) + " needs the second space Y");
    return *Y;
  };
  switch (kind) {
    case FlagKind::a1a6:
    case FlagKind::a3a5: {
      const auto& Yv = needY();
      need(X, kind == FlagKind::a1a6 ? 1 : 2);
      need(Yv, kind == FlagKind::a1a6 ? 10 : 5);
      return Yv.contains(X) && triple_bracket_span(t, X, Yv).dim() == 0;
    }
    case FlagKind::a4:
      need(X, 3);
      return triple_bracket_span(t, X, X).dim() == 0;
    case FlagKind::a2:
      need(X, 6);
      return triple_bracket_span(t, X, X) == X;
  }
  return false;
}

}  // namespace e6iso
