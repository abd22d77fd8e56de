#include <gtest/gtest.h>

#include "e6iso/idealgeom.hpp"

using namespace e6iso;

namespace {

using AG = AlbertAlgebra<GaloisField>;
using E = AG::Element;

AG split_gf(unsigned p) {
  GaloisField F(p, 1);
  return AG(OctonionAlgebra<GaloisField>::zorn(F), {F.one(), F.one(), F.one()});
}

E random_singular(const AG& A, Rng& rng) {
  for (;;)
    if (auto x = A.random_singular(rng, 3)) return *x;
}

}  // namespace

TEST(IdealGeom, Recognition) {
  auto A = split_gf(3);
  auto k1 = is_inner_ideal(A, span_of(A, {A.e(0)}));
  EXPECT_EQ(k1.tag, IdealTag::singular);
  EXPECT_EQ(k1.dim, 1u);
  auto h = hyperline(A, A.e(0));
  auto kh = is_inner_ideal(A, h);
  EXPECT_EQ(kh.tag, IdealTag::hyperline);
  EXPECT_EQ(kh.dim, 10u);
  EXPECT_EQ(is_inner_ideal(A, span_of(A, {A.one()})).tag, IdealTag::not_inner);
  EXPECT_EQ(is_inner_ideal(A, span_of(A, {A.e(0), A.e(1)})).tag, IdealTag::not_inner);
  EXPECT_EQ(is_inner_ideal(A, Subspace<GaloisField>::full(A.ring(), 27)).tag, IdealTag::trivial);
}

TEST(IdealGeom, EnumerationOverGF2) {
  auto A = split_gf(2);
  auto k = is_inner_ideal(A, hyperline(A, A.e(0)));
  EXPECT_TRUE(k.enumerated);
  EXPECT_EQ(k.tag, IdealTag::hyperline);
  auto n = is_inner_ideal(A, span_of(A, {A.e(0) + A.e(1)}));
  EXPECT_EQ(n.tag, IdealTag::not_inner);
}

TEST(IdealGeom, HyperlineShape) {
  auto A = split_gf(3);
  auto h = hyperline(A, A.e(0));
  EXPECT_EQ(h.dim(), 10u);
  EXPECT_TRUE(h.contains(A.e(2).coords()));
  EXPECT_TRUE(h.contains(A.e(1).coords()));
  Rng rng(3);
  for (const auto& b : h.basis()) EXPECT_TRUE(zero_p(A.norm(E::from_coords(b))));
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(zero_p(A.norm(E::from_coords(h.random_element(rng, 1)))));
  EXPECT_THROW(hyperline(A, A.one()), Error);

  auto A5 = split_gf(5);
  Rng r5(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(hyperline(A5, random_singular(A5, r5)).dim(), 10u);
}

TEST(IdealGeom, PsiBasics) {
  auto A = split_gf(3);
  auto X = span_of(A, {A.e(0)});
  auto P = psi_detailed(A, X);
  EXPECT_TRUE(P.psi2_verified);
  EXPECT_EQ(P.psi, hyperline(A, A.e(0)));
  EXPECT_EQ(P.psi, P.zero_bracket);
  EXPECT_EQ(psi(A, P.psi), X);
  EXPECT_THROW(psi(A, span_of(A, {A.one()})), Error);
}

TEST(IdealGeom, PsiProperties) {
  auto A = split_gf(3);
  Rng rng(11);
  for (int i = 0; i < 4; ++i) {
    E x = random_singular(A, rng);
    auto X = span_of(A, {x});
    auto H = hyperline(A, x);
    auto P = psi(A, X);
    EXPECT_EQ(P, H);
    EXPECT_EQ(psi(A, H), X);
    EXPECT_NE(is_inner_ideal(A, P).tag, IdealTag::not_inner);
    // A point in the hyperline gives a nested pair, and ψ reverses it.
    auto y = E::from_coords(H.random_element(rng, 1));
    if (y.is_zero() || !A.adjoint(y).is_zero()) continue;
    auto Y = span_of(A, {y});
    auto HY = hyperline(A, y);
    if (!HY.contains(Y)) continue;
    EXPECT_TRUE(psi(A, Y).contains(psi(A, HY)));
  }
}

TEST(IdealGeom, PsiTableGF3) {
  auto A = split_gf(3);
  Rng rng(2024);
  auto rep = psi_table_check(A, rng);
  ASSERT_EQ(rep.rows.size(), 6u);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.got, r.expected) << r.label;
    EXPECT_TRUE(r.psi_is_inner) << r.label;
    EXPECT_TRUE(r.zero_bracket_match) << r.label;
    EXPECT_TRUE(r.extra_ok) << r.label;
  }
  EXPECT_TRUE(rep.ok());
}

TEST(IdealGeom, RationalPsi) {
  RationalField Q;
  AlbertAlgebra<RationalField> A(OctonionAlgebra<RationalField>::zorn(Q), {Rational(1), Rational(-1), Rational(2)});
  auto X = span_of(A, {A.e(1)});
  EXPECT_EQ(is_inner_ideal(A, X).tag, IdealTag::singular);
  EXPECT_EQ(psi(A, X).dim(), 10u);
}
