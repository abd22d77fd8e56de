#include <gtest/gtest.h>

#include "e6iso/etale.hpp"
#include "e6iso/octonion.hpp"

using namespace e6iso;

namespace {

using OQ = OctonionAlgebra<RationalField>;
using OG = OctonionAlgebra<GaloisField>;

OQ definite() {
  RationalField Q;
  return OQ::cayley_dickson(Q, Rational(-1), Rational(-1), Rational(-1));
}

}  // namespace

TEST(Octonion, UnitAndIdempotents) {
  RationalField Q;
  auto Z = OQ::zorn(Q);
  Rng rng(1);
  auto x = Z.random(rng, 9);
  EXPECT_EQ(Z.mul(Z.one(), x), x);
  EXPECT_EQ(Z.mul(x, Z.one()), x);
  auto e = Z.basis(0);
  EXPECT_EQ(Z.mul(e, Z.one() - e), Z.zero());
  EXPECT_EQ(Z.mul(e, e), e);
  auto C = definite();
  auto y = C.random(rng, 9);
  EXPECT_EQ(C.mul(C.one(), y), y);
}

TEST(Octonion, CayleyDicksonBasis) {
  auto C = definite();
  auto i = C.basis(1), j = C.basis(2);
  auto k = C.mul(i, j);
  EXPECT_EQ(k, C.basis(3));
  EXPECT_EQ(C.mul(k, j), -i);
  EXPECT_EQ(C.mul(i, i), -C.one());
  EXPECT_EQ(C.mul(j, i), -k);
}

TEST(Octonion, NormTraceConj) {
  RationalField Q;
  auto Z = OQ::zorn(Q);
  EXPECT_EQ(Z.norm(Z.one()), Rational(1));
  EXPECT_EQ(Z.trace(Z.one()), Rational(2));
  OQ::Element d;
  d.c[0] = Rational(3);
  d.c[1] = Rational(7);
  EXPECT_EQ(Z.norm(d), Rational(21));
  EXPECT_EQ(Z.mul(d, Z.conj(d)), Z.scalar(Rational(21)));
  auto C = definite();
  OQ::Element ones;
  for (auto& c : ones.c) c = Rational(1);
  EXPECT_EQ(C.norm(ones), Rational(8));
  Rng rng(2);
  for (const auto& A : {Z, C}) {
    for (int n = 0; n < 300; ++n) {
      auto x = A.random(rng, 9), y = A.random(rng, 9);
      ASSERT_EQ(A.mul(x, A.conj(x)), A.scalar(A.norm(x)));
      ASSERT_EQ(x + A.conj(x), A.scalar(A.trace(x)));
      ASSERT_EQ(A.trace(A.mul(x, y)), A.trace(A.mul(y, x)));
      ASSERT_EQ(A.norm_bilinear(x, y), A.norm(x + y) - A.norm(x) - A.norm(y));
      ASSERT_EQ(A.conj(A.conj(x)), x);
    }
  }
}

TEST(Octonion, CharacteristicTwoForbidsCayleyDickson) {
  GaloisField F2(2);
  EXPECT_THROW(OG::cayley_dickson(F2, F2.one(), F2.one(), F2.one()), Error);
}

TEST(Octonion, NormZeroSampler) {
  Rng rng(3);
  GaloisField F2(2);
  auto Z2 = OG::zorn(F2);
  OG::Element e;
  e.c[0] = F2.one();
  EXPECT_TRUE(Z2.norm(e).is_zero());
  for (const auto& x : Z2.norm_zero_samples(20, rng)) {
    EXPECT_FALSE(x.is_zero());
    EXPECT_TRUE(Z2.norm(x).is_zero());
  }
  RationalField Q;
  auto ZQ = OQ::zorn(Q);
  OQ::Element a;
  a.c[2] = Rational(1);
  EXPECT_TRUE(ZQ.norm(a).is_zero());
  for (const auto& x : ZQ.norm_zero_samples(50, rng)) EXPECT_TRUE(ZQ.norm(x).is_zero());
  try {
    definite().norm_zero_samples(1, rng);
    FAIL() << "expected NoneExist";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NoneExist);
  }
  auto iso = OQ::cayley_dickson(Q, Rational(2), Rational(-1), Rational(-1));
  for (const auto& x : iso.norm_zero_samples(3, rng)) EXPECT_TRUE(iso.norm(x).is_zero());
  GaloisField F5(5);
  auto C5 = OG::cayley_dickson(F5, F5.from_int(2), F5.from_int(3), F5.from_int(2));
  for (const auto& x : C5.norm_zero_samples(5, rng)) EXPECT_TRUE(C5.norm(x).is_zero());
}

TEST(Octonion, ZornGF2NormCensus) {
  // Oracle: the norm αβ − a·b is the hyperbolic 8-dimensional form over
  // GF(2), with q^7 + q^4 − q^3 zeros including 0.
  const int oracle_nonzero_zeros = (1 << 7) + (1 << 4) - (1 << 3) - 1;
  GaloisField F2(2);
  auto Z = OG::zorn(F2);
  int zeros = 0, ones = 0;
  for (int idx = 1; idx < 256; ++idx) {
    OG::Element x;
    for (int c = 0; c < 8; ++c) x.c[c] = F2.element((idx >> c) & 1);
    (Z.norm(x).is_zero() ? zeros : ones)++;
  }
  EXPECT_EQ(oracle_nonzero_zeros, 135);
  EXPECT_EQ(zeros, 135);
  EXPECT_EQ(ones, 120);
}

TEST(Octonion, CompositionLaw) {
  GaloisField F2(2);
  auto rep = composition_law_exhaustive(OG::zorn(F2));
  EXPECT_EQ(rep.pairs, 65536u);
  EXPECT_TRUE(rep.ok());
  Rng rng(4);
  RationalField Q;
  EXPECT_TRUE(composition_law_check(OQ::zorn(Q), 1000, rng).ok());
  EXPECT_TRUE(composition_law_check(definite(), 1000, rng).ok());
  GaloisField F4(2, 2), F5(5);
  EXPECT_TRUE(composition_law_check(OG::zorn(F4), 500, rng).ok());
  EXPECT_TRUE(
      composition_law_check(OG::cayley_dickson(F5, F5.from_int(2), F5.from_int(3), F5.from_int(4)), 500, rng).ok());
}

TEST(Octonion, BaseChange) {
  RationalField Q;
  auto K = EtaleAlgebra<RationalField>::parse(Q, "t^2 - 2");
  using OK = OctonionAlgebra<EtaleAlgebra<RationalField>>;
  OK CK = definite().base_change<EtaleAlgebra<RationalField>>(K, [&](const Rational& a) { return K.embed(a); });
  Rng rng(5);
  auto rep = composition_law_check(CK, 200, rng, 5);
  EXPECT_TRUE(rep.ok());
}
