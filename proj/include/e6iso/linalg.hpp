#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "e6iso/field.hpp"

namespace e6iso {

template <class F>
using Vec = std::vector<typename F::Scalar>;

// Subspace of F^n kept in reduced row-echelon form, so equal subspaces have
// identical bases.
template <class F>
class Subspace {
 public:
  using S = typename F::Scalar;

  Subspace(const F& field, std::size_t ambient) : field_(field), ambient_(ambient) {}

  static Subspace span(const F& field, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    Subspace s(field, ambient);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }
  static Subspace full(const F& field, std::size_t ambient) {
    Subspace s(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.insert(unit(field, ambient, i));
    return s;
  }
  static Vec<F> unit(const F& field, std::size_t ambient, std::size_t i) {
    Vec<F> v(ambient, field.zero());
    v[i] = field.one();
    return v;
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec<F>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // v minus its projection along the pivot columns; zero iff v ∈ span.
  Vec<F> reduce(Vec<F> v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      S c = v[pivots_[r]];
      if (is_zero(c)) continue;
      for (std::size_t i = pivots_[r]; i < ambient_; ++i)
        if (!is_zero(rows_[r][i])) v[i] = v[i] - c * rows_[r][i];
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_null(reduce(v)); }

  bool contains(const Subspace& o) const {
    for (const auto& v : o.rows_)
      if (!contains(v)) return false;
    return true;
  }

  // Adds v; returns true when the dimension grew.
  bool insert(const Vec<F>& v0) {
    Vec<F> v = reduce(v0);
    std::size_t p = 0;
    while (p < ambient_ && is_zero(v[p])) ++p;
    if (p == ambient_) return false;
    S inv = field_.inv(v[p]);
    for (std::size_t i = p; i < ambient_; ++i) v[i] = v[i] * inv;
    for (auto& row : rows_) {
      S c = row[p];
      if (is_zero(c)) continue;
      for (std::size_t i = p; i < ambient_; ++i)
        if (!is_zero(v[i])) row[i] = row[i] - c * v[i];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

  Subspace sum(const Subspace& o) const {
    Subspace s = *this;
    for (const auto& v : o.rows_) s.insert(v);
    return s;
  }

  Subspace intersect(const Subspace& o) const;

  // Element with the given coordinates in the echelon basis.
  Vec<F> combine(const Vec<F>& coeffs) const {
    Vec<F> v(ambient_, field_.zero());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!is_zero(coeffs[r]))
        for (std::size_t i = 0; i < ambient_; ++i) v[i] = v[i] + coeffs[r] * rows_[r][i];
    return v;
  }

  Vec<F> random_element(Rng& rng, int box) const {
    Vec<F> c(rows_.size());
    for (auto& a : c) a = field_.random(rng, box);
    return combine(c);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  static bool is_null(const Vec<F>& v) {
    for (const auto& a : v)
      if (!is_zero(a)) return false;
    return true;
  }

 private:
  void check(const Vec<F>& v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  }

  F field_;
  std::size_t ambient_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

// Incremental row space used to collect linear constraints.
template <class F>
using RowSpace = Subspace<F>;

// {v ∈ F^n : row·v = 0 for every constraint row in the space}.
template <class F>
std::vector<Vec<F>> nullspace(const Subspace<F>& constraints) {
  const F& k = constraints.field();
  std::size_t n = constraints.ambient();
  const auto& rows = constraints.basis();
  const auto& piv = constraints.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec<F>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<F> v(n, k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < rows.size(); ++r) v[piv[r]] = -rows[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
std::vector<Vec<F>> nullspace(const F& k, std::size_t ncols, const std::vector<Vec<F>>& rows) {
  return nullspace(Subspace<F>::span(k, ncols, rows));
}

// Solves Σ_j v_j·columns[j] = rhs.
template <class F>
std::optional<Vec<F>> solve_columns(const F& k, const std::vector<Vec<F>>& columns, const Vec<F>& rhs) {
  std::size_t n = columns.size();
  std::size_t m = rhs.size();
  // Rows of the augmented system [A | b], one per coordinate.
  Subspace<F> rs(k, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    Vec<F> row(n + 1, k.zero());
    for (std::size_t j = 0; j < n; ++j) row[j] = columns[j][i];
    row[n] = rhs[i];
    rs.insert(row);
  }
  const auto& piv = rs.pivots();
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  Vec<F> v(n, k.zero());
  for (std::size_t r = 0; r < rs.dim(); ++r) v[piv[r]] = rs.basis()[r][n];
  return v;
}

template <class F>
Subspace<F> Subspace<F>::intersect(const Subspace& o) const {
  std::size_t a = dim(), b = o.dim();
  std::vector<Vec<F>> eqs;
  // Σ c_i x_i − Σ d_j y_j = 0, one equation per ambient coordinate.
  for (std::size_t i = 0; i < ambient_; ++i) {
    Vec<F> row(a + b, field_.zero());
    for (std::size_t r = 0; r < a; ++r) row[r] = rows_[r][i];
    for (std::size_t r = 0; r < b; ++r) row[a + r] = -o.rows_[r][i];
    eqs.push_back(std::move(row));
  }
  Subspace out(field_, ambient_);
  for (const auto& sol : nullspace(field_, a + b, eqs)) {
    Vec<F> c(sol.begin(), sol.begin() + static_cast<long>(a));
    out.insert(combine(c));
  }
  return out;
}

template <class F>
typename F::Scalar det3(const F&, const std::array<std::array<typename F::Scalar, 3>, 3>& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

}  // namespace e6iso
