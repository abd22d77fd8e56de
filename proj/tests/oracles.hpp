#pragma once

// Brute-force isotropy oracles for diagonal forms, independent of the Witt engine.

#include <algorithm>
#include <cmath>
#include <vector>

#include "e6iso/field.hpp"

namespace oracle {

// Isotropic vectors of sum a_i x_i^2 over GF(p), by enumeration.
inline std::vector<std::vector<long>> isotropic_vectors(const std::vector<long>& a, long p) {
  std::size_t n = a.size();
  std::vector<std::vector<long>> out;
  std::vector<long> x(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && ++x[i] == p) x[i++] = 0;
    if (i == n) break;
    long q = 0;
    for (std::size_t j = 0; j < n; ++j) q = (q + a[j] * x[j] % p * x[j]) % p;
    if (q == 0) out.push_back(x);
  }
  return out;
}

inline std::size_t brute_witt_index_gf(const std::vector<long>& a, long p) {
  auto iso = isotropic_vectors(a, p);
  if (iso.empty()) return 0;
  for (const auto& v : iso)
    for (const auto& w : iso) {
      long b = 0;
      for (std::size_t j = 0; j < a.size(); ++j) b = (b + a[j] * v[j] % p * w[j]) % p;
      if (b != 0) continue;
      // independent?
      bool dep = false;
      for (long c = 1; c < p && !dep; ++c) {
        bool same = true;
        for (std::size_t j = 0; j < a.size(); ++j) same &= (c * v[j]) % p == w[j];
        dep = same;
      }
      if (!dep) return 2;
    }
  return 1;
}

inline bool is_int_square(long n) {
  if (n < 0) return false;
  long r = std::lround(std::sqrt(double(n)));
  for (long s = std::max(0L, r - 2); s <= r + 2; ++s)
    if (s * s == n) return true;
  return false;
}

inline long sqfree(long n) { return e6iso::squarefree_part(mpz_class(n)).get_si(); }

// Isotropy over Q_p by residue counting (p odd, squarefree coefficients).
inline bool local_iso_odd(const std::vector<long>& a, long p) {
  std::vector<long> unit, div;
  for (long c : a) ((c % p) ? unit : div).push_back((c % p == 0) ? c / p : c);
  for (auto* part : {&unit, &div}) {
    std::vector<long> r;
    for (long c : *part) r.push_back(((c % p) + p) % p);
    if (!r.empty() && !isotropic_vectors(r, p).empty()) return true;
  }
  return false;
}

// Isotropy over Q_2: a primitive zero mod 32 lifts (squarefree coefficients).
inline bool local_iso_2(const std::vector<long>& a) {
  std::size_t n = a.size();
  std::vector<long> x(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && ++x[i] == 16) x[i++] = 0;
    if (i == n) break;
    bool primitive = false;
    for (long v : x) primitive |= v % 2 != 0;
    if (!primitive) continue;
    long q = 0;
    for (std::size_t j = 0; j < n; ++j) q += a[j] * x[j] * x[j];
    if (((q % 32) + 32) % 32 == 0) return true;
  }
  return false;
}

inline bool point_search(const std::vector<long>& a) {
  std::size_t n = a.size();
  long B = n == 3 ? 150 : 30;
  std::vector<long> x(n - 1, -B);
  x[0] = 0;  // x_1 >= 0 by symmetry
  for (;;) {
    long s = 0;
    bool nz = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      s += a[j] * x[j] * x[j];
      nz |= x[j] != 0;
    }
    if (nz && (-s) % a[n - 1] == 0 && is_int_square(-s / a[n - 1])) return true;
    std::size_t i = 0;
    for (; i + 1 < n; ++i) {
      if (++x[i] <= B) break;
      x[i] = i == 0 ? 0 : -B;
    }
    if (i + 1 == n) break;
  }
  return false;
}

struct QOracle {
  std::size_t witt_index = 0;
  bool certified = true;
};

inline QOracle rational_oracle(const std::vector<long>& raw) {
  std::vector<long> a;
  for (long c : raw) a.push_back(sqfree(c));
  std::size_t n = a.size();
  QOracle o;
  if (n == 1) return o;
  if (n == 2) {
    o.witt_index = is_int_square(-a[0] * a[1]) ? 1 : 0;
    return o;
  }
  bool pos = false, negv = false;
  for (long c : a) (c > 0 ? pos : negv) = true;
  bool local = pos && negv && local_iso_2(a);
  for (long p = 3; local && p <= 19; p += 2) {
    bool prime = true;
    for (long d = 3; d * d <= p; d += 2) prime &= p % d != 0;
    if (!prime) continue;
    bool divides = false;
    for (long c : a) divides |= c % p == 0;
    if (divides) local = local_iso_odd(a, p);
  }
  if (!local) return o;
  if (!point_search(a)) o.certified = false;
  o.witt_index = 1;
  if (n == 4) {
    long d = 1;
    for (long c : a) d *= c;
    if (is_int_square(d)) o.witt_index = 2;
  }
  return o;
}

}  // namespace oracle
