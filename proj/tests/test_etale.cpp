#include <gtest/gtest.h>

#include "e6iso/etale.hpp"

using namespace e6iso;

TEST(Etale, RealQuadratic) {
  RationalField Q;
  auto K = EtaleAlgebra<RationalField>::parse(Q, "t^2 - 2");
  EXPECT_FALSE(K.is_split());
  auto r2 = K.parse("t");
  EXPECT_EQ(r2 * r2, K.from_int(2));
  EXPECT_EQ(r2.conj(), K.parse("-t"));
  auto a = K.parse("1 + t");
  EXPECT_EQ(a.norm(), Rational(-1));
  EXPECT_EQ(a.trace(), Rational(2));
  EXPECT_EQ(K.delta(), Rational(2));
  EXPECT_EQ(K.d().trace(), Rational(1));
}

TEST(Etale, Split) {
  RationalField Q;
  auto K = EtaleAlgebra<RationalField>::split(Q);
  auto a = K.make(Rational(3), Rational(5));
  EXPECT_EQ(a.norm(), Rational(15));
  EXPECT_EQ(a.trace(), Rational(8));
  EXPECT_EQ(a.conj(), K.make(Rational(5), Rational(3)));
  EXPECT_EQ(K.delta(), Rational(1));
  // A reducible separable polynomial gives the split algebra.
  EXPECT_TRUE(EtaleAlgebra<RationalField>::parse(Q, "t^2 - 1").is_split());
}

TEST(Etale, CharacteristicTwo) {
  GaloisField F2(2);
  auto K = EtaleAlgebra<GaloisField>::parse(F2, "t^2 + t + 1");
  EXPECT_FALSE(K.is_split());
  EXPECT_EQ(K.delta(), F2.one());
  auto t = K.parse("t");
  EXPECT_EQ(t.norm(), F2.one());
  EXPECT_EQ(t.trace(), F2.one());
  EXPECT_EQ(t * t, t + K.one());
  EXPECT_THROW(EtaleAlgebra<GaloisField>::parse(F2, "t^2 + 1"), Error);
  EXPECT_TRUE(EtaleAlgebra<GaloisField>::parse(F2, "t^2 + t").is_split());
}

TEST(Etale, Errors) {
  RationalField Q;
  EXPECT_THROW(EtaleAlgebra<RationalField>::parse(Q, "t^2 - 2*t + 1"), Error);
  EXPECT_THROW(EtaleAlgebra<RationalField>::parse(Q, "t^3 + 1"), Error);
  EXPECT_THROW(EtaleAlgebra<RationalField>::parse(Q, "t + 1"), Error);
  try {
    EtaleAlgebra<RationalField>::parse(Q, "t + 1");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDegreeTwo);
  }
}

template <class F>
void check_axioms_exhaustive(const EtaleAlgebra<F>& K) {
  const F& k = K.base();
  std::uint64_t q = k.size();
  std::vector<typename EtaleAlgebra<F>::Scalar> all;
  for (std::uint64_t i = 0; i < q; ++i)
    for (std::uint64_t j = 0; j < q; ++j) all.push_back(K.make(k.element(i), k.element(j)));
  for (const auto& a : all) {
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ(a * a.conj(), K.embed(a.norm()));
    EXPECT_EQ(a + a.conj(), K.embed(a.trace()));
    for (const auto& b : all) {
      ASSERT_EQ((a * b).norm(), a.norm() * b.norm());
      ASSERT_EQ((a + b).trace(), a.trace() + b.trace());
      ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
    }
  }
}

TEST(Etale, AxiomsExhaustiveFinite) {
  GaloisField F2(2), F3(3);
  check_axioms_exhaustive(EtaleAlgebra<GaloisField>::parse(F2, "t^2 + t + 1"));
  check_axioms_exhaustive(EtaleAlgebra<GaloisField>::parse(F3, "t^2 + 1"));
  check_axioms_exhaustive(EtaleAlgebra<GaloisField>::split(F3));
  GaloisField F4(2, 2);
  // t² + t + c is irreducible over GF(4) iff c has absolute trace 1.
  check_axioms_exhaustive(EtaleAlgebra<GaloisField>::from_polynomial(F4, F4.one(), F4.generator()));
}

TEST(Etale, AxiomsRandomRational) {
  RationalField Q;
  Rng rng(11);
  for (const char* spec : {"t^2 - 2", "t^2 + 1", "split", "3*t^2 - t + 5"}) {
    auto K = EtaleAlgebra<RationalField>::parse(Q, spec);
    for (int i = 0; i < 1000; ++i) {
      auto a = K.random(rng, 20), b = K.random(rng, 20);
      ASSERT_EQ(a.conj().conj(), a);
      ASSERT_EQ((a * b).norm(), a.norm() * b.norm());
      ASSERT_EQ((a + b).trace(), a.trace() + b.trace());
      ASSERT_EQ(K.norm_bilinear(a, b), (a + b).norm() - a.norm() - b.norm());
      if (K.is_invertible(a)) ASSERT_EQ(K.inv(a) * a, K.one());
    }
  }
}

TEST(Etale, DiscriminantGenerator) {
  RationalField Q;
  for (const char* spec : {"t^2 - 2", "t^2 + 1", "t^2 - 12", "t^2 - t - 1", "split", "2*t^2 + 3*t + 7"}) {
    auto K = EtaleAlgebra<RationalField>::parse(Q, spec);
    auto t = K.t_disc();
    EXPECT_EQ(t.trace(), Rational(0)) << spec;
    EXPECT_EQ(t.norm(), -K.delta()) << spec;
    EXPECT_EQ(t * t, K.embed(K.delta())) << spec;
    EXPECT_EQ(K.delta(), Q.square_class(K.delta()));
  }
  EXPECT_EQ(EtaleAlgebra<RationalField>::parse(Q, "t^2 - 12").delta(), Rational(3));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    GaloisField F(p);
    auto K = EtaleAlgebra<GaloisField>::from_polynomial(F, F.zero(), -F.from_int(F.data()->nonsquare));
    EXPECT_FALSE(K.is_split());
    auto t = K.t_disc();
    EXPECT_TRUE(t.trace().is_zero());
    EXPECT_EQ(t.norm(), -K.delta());
  }
}

TEST(Etale, PrintParseRoundTrip) {
  RationalField Q;
  auto K = EtaleAlgebra<RationalField>::parse(Q, "t^2 - 2");
  auto a = K.parse("3/2 - 5*t");
  EXPECT_EQ(K.parse(K.str(a) == "3/2 + (-5)*t" ? "3/2 - 5*t" : "0"), a);
}
