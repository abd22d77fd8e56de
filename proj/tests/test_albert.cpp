#include <gtest/gtest.h>

#include "e6iso/albert.hpp"
#include "e6iso/etale.hpp"

using namespace e6iso;

namespace {

using AQ = AlbertAlgebra<RationalField>;
using AG = AlbertAlgebra<GaloisField>;

AQ split_q(std::array<Rational, 3> g = {Rational(1), Rational(1), Rational(1)}) {
  return AQ(OctonionAlgebra<RationalField>::zorn(RationalField{}), g);
}

AQ definite_q(std::array<Rational, 3> g) {
  RationalField Q;
  return AQ(OctonionAlgebra<RationalField>::cayley_dickson(Q, Rational(-1), Rational(-1), Rational(-1)), g);
}

AG split_gf(const GaloisField& F) { return AG(OctonionAlgebra<GaloisField>::zorn(F), {F.one(), F.one(), F.one()}); }

}  // namespace

TEST(Albert, BasicValues) {
  auto A = split_q();
  auto one = A.one();
  EXPECT_EQ(A.norm(one), Rational(1));
  EXPECT_EQ(A.adjoint(one), one);
  EXPECT_EQ(A.norm(A.diag(2, 3, 5)), Rational(30));
  EXPECT_TRUE(A.adjoint(A.e(0)).is_zero());
  EXPECT_EQ(A.cross(A.e(0), A.e(1)), A.e(2));
  EXPECT_EQ(A.trace(A.diag(1, 2, 3)), Rational(6));
  EXPECT_EQ(A.quad_trace(one), Rational(3));
  EXPECT_EQ(A.trace_bilinear(one, one), Rational(3));
  EXPECT_EQ(A.quad_trace(A.e(0)), Rational(0));
  auto x = A.off(0, A.octonions().one());
  EXPECT_EQ(A.norm(x), Rational(0));
}

TEST(Albert, UOperatorAndPowers) {
  auto A = split_q({Rational(2), Rational(-3), Rational(5)});
  Rng rng(1);
  auto y = A.random(rng, 9);
  EXPECT_EQ(A.u_op(A.one(), y), y);
  EXPECT_EQ(A.triple(A.one(), A.one(), A.one()), Rational(2) * A.one());
  EXPECT_EQ(A.power(y, 0), A.one());
  EXPECT_EQ(A.power(y, 1), y);
  EXPECT_THROW(A.power(y, -1), Error);
  // Quadratic in x, linear in y.
  auto x = A.random(rng, 9), z = A.random(rng, 9);
  EXPECT_EQ(A.u_op(Rational(3) * x, y), Rational(9) * A.u_op(x, y));
  EXPECT_EQ(A.u_op(x, y + z), A.u_op(x, y) + A.u_op(x, z));
  EXPECT_EQ(A.triple(x, y, z), A.triple(z, y, x));
  EXPECT_EQ(A.circle(x, z), A.triple(x, A.one(), z));
}

TEST(Albert, Classify) {
  auto A = split_q();
  EXPECT_EQ(A.classify(A.one()).tag, ElementTag::invertible);
  EXPECT_EQ(A.classify(A.e(0)).tag, ElementTag::singular);
  auto zero = A.classify(A.zero());
  EXPECT_TRUE(zero.zero);
  EXPECT_EQ(zero.tag, ElementTag::other_rank2);
  EXPECT_EQ(A.classify(A.diag(1, 1, 0)).tag, ElementTag::other_rank2);
  for (auto g : {std::array<Rational, 3>{1, 1, 1}, std::array<Rational, 3>{2, -7, 3}}) {
    auto B = split_q(g);
    auto o = B.octonions().basis(2);  // norm zero
    auto n = B.off(0, o);
    auto c = B.classify(n);
    EXPECT_EQ(c.tag, ElementTag::nilpotent_sqzero);
    EXPECT_TRUE(B.power(n, 2).is_zero());
  }
}

TEST(Albert, NilpotentIffPowerVanishes) {
  GaloisField F3(3);
  auto A = split_gf(F3);
  Rng rng(2);
  int nil = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = A.random(rng, 0);
    if (i % 4 == 0) {
      // Push samples toward the nilpotent locus: a norm-zero entry in a 2x2 block.
      x = A.off(i % 3, A.octonions().norm_zero_samples(1, rng)[0]);
    }
    bool tagged = A.classify(x).is_nilpotent();
    bool vanishes = A.power(x, 2).is_zero() || A.power(x, 3).is_zero();
    ASSERT_EQ(tagged, vanishes);
    nil += tagged;
  }
  EXPECT_GT(nil, 100);
}

template <class R>
void expect_suite(const AlbertAlgebra<R>& A, std::size_t n, int box, unsigned seed) {
  Rng rng(seed);
  auto rep = identity_suite(A, n, rng, box);
  for (const auto& [name, c] : rep.counts) EXPECT_EQ(c.failed, 0u) << name;
  EXPECT_EQ(rep.tuples, n);
  EXPECT_EQ(rep.counts.size(), 12u);
}

TEST(Albert, IdentitiesFiniteFields) {
  GaloisField F2(2), F3(3), F4(2, 2), F5(5);
  expect_suite(split_gf(F2), 200, 0, 1);
  expect_suite(split_gf(F3), 200, 0, 2);
  expect_suite(split_gf(F4), 200, 0, 3);
  expect_suite(AG(OctonionAlgebra<GaloisField>::cayley_dickson(F5, F5.from_int(2), F5.from_int(3), F5.from_int(1)),
                  {F5.from_int(2), F5.one(), F5.from_int(3)}),
               200, 0, 4);
  Rng rng(5);
  auto rep = identity_suite_subspace(split_gf(F2), rng);
  EXPECT_EQ(rep.tuples, 512u);
  EXPECT_TRUE(rep.ok());
}

TEST(Albert, IdentitiesRational) {
  expect_suite(split_q(), 100, 9, 6);
  expect_suite(definite_q({Rational(1), Rational(-2), Rational(3)}), 100, 9, 7);
}

TEST(Albert, IdentitiesOverEtale) {
  RationalField Q;
  auto K = EtaleAlgebra<RationalField>::parse(Q, "t^2 - 2");
  auto CK = OctonionAlgebra<RationalField>::zorn(Q).base_change<EtaleAlgebra<RationalField>>(
      K, [&](const Rational& a) { return K.embed(a); });
  AlbertAlgebra<EtaleAlgebra<RationalField>> AK(CK, {K.one(), K.parse("1+t"), K.parse("1-t")});
  expect_suite(AK, 40, 3, 8);
}

TEST(Albert, Peirce) {
  GaloisField F3(3);
  auto A = split_gf(F3);
  auto d = peirce(A, A.e(0));
  EXPECT_EQ(d.A2.dim(), 1u);
  EXPECT_EQ(d.A1.dim(), 16u);
  EXPECT_EQ(d.A0.dim(), 10u);
  EXPECT_TRUE(d.direct_sum);
  EXPECT_TRUE(d.adjoint_relation);
  EXPECT_EQ(d.A2, Subspace<GaloisField>::span(F3, 27, {A.e(0).coords()}));
  auto x = A.e(1) + A.e(2);
  EXPECT_TRUE(d.A0.contains(x.coords()));
  EXPECT_EQ(A.adjoint(x), A.e(0));
  EXPECT_EQ(A.quad_trace(x), F3.one());
  // T-orthogonality of the three pieces.
  const Subspace<GaloisField>* parts[3] = {&d.A2, &d.A1, &d.A0};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (const auto& u : parts[a]->basis())
        for (const auto& v : parts[b]->basis())
          EXPECT_TRUE(A.trace_bilinear(AG::Element::from_coords(u), AG::Element::from_coords(v)).is_zero());
  EXPECT_THROW(peirce(A, A.one()), Error);
  // A non-diagonal primitive idempotent.
  Rng rng(9);
  auto g = AG::Matrix3{{{F3.one(), F3.one(), F3.zero()}, {F3.zero(), F3.one(), F3.zero()}, {F3.zero(), F3.zero(), F3.one()}}};
  auto e2 = A.gl3_act(g, A.e(1));
  if (A.is_primitive_idempotent(e2)) {
    auto d2 = peirce(A, e2);
    EXPECT_EQ(d2.A1.dim(), 16u);
    EXPECT_TRUE(d2.adjoint_relation);
  }
}

TEST(Albert, QuadraticTraceOnOffDiagonal) {
  // S restricted to C[jl] equals ⟨−γ_jγ_l⟩·N_C as Gram matrices.
  auto A = definite_q({Rational(2), Rational(-5), Rational(3)});
  const auto& C = A.octonions();
  for (int i = 0; i < 3; ++i) {
    auto [j, l] = AQ::jl(i);
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        auto u = A.off(i, C.basis(a)), v = A.off(i, C.basis(b));
        EXPECT_EQ(A.quad_trace_bilinear(u, v),
                  -(A.gamma()[j] * A.gamma()[l]) * C.norm_bilinear(C.basis(a), C.basis(b)));
      }
  }
}

TEST(Albert, GL3Action) {
  auto A = split_q();
  using M = AQ::Matrix3;
  M I{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Rng rng(10);
  auto x = A.random(rng, 5);
  EXPECT_EQ(A.gl3_act(I, x), x);
  M D{{{7, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_EQ(A.norm(A.gl3_act(D, x)), Rational(49) * A.norm(x));
  M P{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
  EXPECT_EQ(A.gl3_act(P, A.e(0)), A.e(1));
  EXPECT_EQ(A.gl3_act(P, A.e(1)), A.e(0));
  M Z{{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
  EXPECT_THROW(A.gl3_act(Z, x), Error);
  EXPECT_THROW(split_q({1, 2, 1}).gl3_act(I, x), Error);
  for (int n = 0; n < 50; ++n) {
    M g;
    for (auto& r : g)
      for (auto& c : r) c = Rational(static_cast<long>(rng() % 7) - 3);
    Rational det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                   g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    if (det.is_zero()) continue;
    M gt;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) gt[a][b] = g[b][a];
    auto u = A.random(rng, 4), y = A.random(rng, 4);
    EXPECT_EQ(A.norm(A.gl3_act(g, u)), det * det * A.norm(u));
    EXPECT_EQ(A.u_op(A.gl3_act(g, u), y), A.gl3_act(g, A.u_op(u, A.gl3_act(gt, y))));
  }
}

TEST(Albert, FindNilpotent) {
  Rng rng(11);
  GaloisField F3(3);
  auto n = find_nilpotent(split_gf(F3), 1000, rng);
  ASSERT_TRUE(n.has_value());
  EXPECT_TRUE(split_gf(F3).power(*n, 2).is_zero());
  EXPECT_FALSE(find_nilpotent(definite_q({1, 1, 1}), 20000, rng).has_value());
  auto B = definite_q({1, 1, -1});
  auto m = find_nilpotent(B, 20000, rng);
  ASSERT_TRUE(m.has_value());
  EXPECT_FALSE(m->is_zero());
  EXPECT_TRUE(B.power(*m, 2).is_zero());
  EXPECT_TRUE(B.classify(*m).is_nilpotent());
}
