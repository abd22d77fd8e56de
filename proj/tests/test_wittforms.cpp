#include <gtest/gtest.h>

#include <cmath>

#include "e6iso/wittforms.hpp"
#include "oracles.hpp"

using namespace e6iso;
using namespace oracle;

namespace {

FormEntry E(const TowerField& F, long u, std::uint32_t mask = 0) { return make_entry(F, Rational(u), mask); }

}  // namespace

TEST(WittForms, PfisterExpansion) {
  auto Q = TowerField::rationals();
  EXPECT_EQ(pfister(Q, {E(Q, 1)}), diag(Q, {"1", "-1"}));
  auto F = TowerField::rationals({"a", "b"});
  EXPECT_EQ(pfister(F, {parse_entry(F, "a"), parse_entry(F, "b")}), diag(F, {"1", "-a", "-b", "a*b"}));
  EXPECT_EQ(pfister(F, {E(F, 2), E(F, 3), E(F, 5)}).dim(), 8u);
  EXPECT_THROW(pfister(Q, {E(Q, 0)}), Error);
  auto f = diag(Q, {"3", "7", "-2"});
  auto h = tensor(Q, pfister(Q, {E(Q, 1)}), f);
  EXPECT_EQ(h.dim(), 6u);
  EXPECT_TRUE(is_hyperbolic(h, Q));
}

TEST(WittForms, EntryLiterals) {
  auto F = TowerField::rationals({"x", "y", "z"});
  auto e = parse_entry(F, "-12*x*z");
  EXPECT_EQ(e.unit, -3);
  EXPECT_EQ(e.mask, 5u);
  EXPECT_EQ(entry_string(F, e), "-3*x*z");
  EXPECT_EQ(parse_entry(F, "1/2*y^3").mask, 2u);
  EXPECT_EQ(parse_entry(F, "1/2*y^3").unit, 2);
  EXPECT_EQ(parse_entry(F, "x^2").mask, 0u);
  EXPECT_EQ(entry_string(F, parse_entry(F, "-y")), "-y");
  EXPECT_THROW(parse_entry(F, "w"), Error);
  EXPECT_THROW(parse_entry(F, "0*x"), Error);
  EXPECT_THROW(parse_entry(F, "3**x"), Error);
  EXPECT_THROW(TowerField::parse("GF(4)"), Error);
  EXPECT_THROW(TowerField::parse("GF(2)"), Error);
  EXPECT_THROW(TowerField::rationals({"x", "x"}), Error);
  EXPECT_EQ(TowerField::parse("GF(7)", {"t"}).name(), "GF(7)((t))");
}

TEST(WittForms, SmallExamples) {
  auto Q = TowerField::rationals();
  auto w = witt_decompose(diag(Q, {"1", "-1"}), Q);
  EXPECT_EQ(w.witt_index, 1u);
  EXPECT_TRUE(w.kernel.entries.empty());
  w = witt_decompose(diag(Q, {"1", "1"}), Q);
  EXPECT_EQ(w.witt_index, 0u);
  EXPECT_EQ(*w.signature, 2);
  auto T = TowerField::rationals({"t"});
  EXPECT_EQ(witt_decompose(diag(T, {"1", "-t"}), T).witt_index, 0u);
  EXPECT_TRUE(is_isometric(diag(Q, {"1", "1", "1", "1"}), pfister(Q, {E(Q, -1), E(Q, -1)}), Q));
  EXPECT_TRUE(is_isometric(pfister(Q, {E(Q, 2), E(Q, 3)}), pfister(Q, {E(Q, 8), E(Q, 27)}), Q));
  auto X = TowerField::rationals({"x", "y", "z"});
  auto pxyz = pfister(X, {parse_entry(X, "x"), parse_entry(X, "y"), parse_entry(X, "z")});
  DiagForm hyp;
  for (int i = 0; i < 4; ++i) hyp = orth_sum(hyp, diag(X, {"1", "-1"}));
  EXPECT_FALSE(is_isometric(pxyz, hyp, X));
  // <1,1,1> over Q is anisotropic; <1,1,1,1,-1> has index 1.
  EXPECT_EQ(witt_decompose(diag(Q, {"1", "1", "1"}), Q).witt_index, 0u);
  auto w5 = witt_decompose(diag(Q, {"1", "1", "1", "1", "-1"}), Q);
  EXPECT_EQ(w5.witt_index, 1u);
  EXPECT_EQ(w5.kernel.dim(), 3u);
  // 5-dim indefinite forms over Q are isotropic.
  EXPECT_GE(witt_decompose(diag(Q, {"1", "2", "3", "5", "-7"}), Q).witt_index, 1u);
}

TEST(WittForms, FiniteFieldOracle) {
  for (unsigned p : {3u, 5u, 7u}) {
    auto F = TowerField::prime(p);
    long n0 = F.nonsquare();
    for (std::size_t n = 1; n <= 4; ++n)
      for (unsigned bits = 0; bits < (1u << n); ++bits) {
        std::vector<long> a;
        DiagForm f;
        for (std::size_t i = 0; i < n; ++i) {
          long c = (bits >> i & 1u) ? n0 : 1;
          a.push_back(c);
          f.entries.push_back(E(F, c));
        }
        auto w = witt_decompose(f, F);
        EXPECT_EQ(w.witt_index, brute_witt_index_gf(a, p)) << p << " " << form_string(F, f);
        EXPECT_EQ(w.kernel.dim() + 2 * w.witt_index, n);
        std::vector<long> ka;
        for (const auto& e : w.kernel.entries) ka.push_back(e.unit.get_si());
        if (!ka.empty()) {
          EXPECT_TRUE(isotropic_vectors(ka, p).empty());
        }
        EXPECT_EQ(is_witt_zero(f, F), w.kernel.entries.empty());
      }
  }
}

TEST(WittForms, RationalOracle) {
  auto Q = TowerField::rationals();
  Rng rng(7);
  std::uniform_int_distribution<long> coef(-20, 20);
  std::uniform_int_distribution<int> dimd(1, 4);
  std::size_t uncertified = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = dimd(rng);
    std::vector<long> a;
    DiagForm f;
    while (a.size() < n) {
      long c = coef(rng);
      if (c == 0) continue;
      a.push_back(c);
      f.entries.push_back(E(Q, c));
    }
    auto o = rational_oracle(a);
    if (!o.certified) ++uncertified;
    auto w = witt_decompose(f, Q);
    EXPECT_EQ(w.witt_index, o.witt_index) << form_string(Q, f);
    EXPECT_EQ(w.kernel.dim() % 2, n % 2);
    EXPECT_EQ(witt_decompose(w.kernel, Q).witt_index, 0u);
    EXPECT_EQ(is_witt_zero(f, Q), w.kernel.entries.empty());
    // kernel ⊥ H^i is isometric to f
    DiagForm back = w.kernel;
    for (std::size_t i = 0; i < w.witt_index; ++i) back = orth_sum(back, diag(Q, {"1", "-1"}));
    EXPECT_TRUE(is_isometric(f, back, Q));
  }
  RecordProperty("uncertified", static_cast<int>(uncertified));
  EXPECT_EQ(uncertified, 0u);
}

TEST(WittForms, TowerPfisterAnisotropic) {
  std::vector<std::string> names{"t1", "t2", "t3", "t4", "t5", "t6"};
  for (std::size_t n = 1; n <= 6; ++n) {
    auto F = TowerField::rationals({names.begin(), names.begin() + n});
    std::vector<FormEntry> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(FormEntry{1, 1u << i});
    auto w = witt_decompose(pfister(F, gens), F);
    EXPECT_EQ(w.witt_index, 0u);
    EXPECT_EQ(w.kernel.dim(), std::size_t(1) << n);
  }
  auto G = TowerField::prime(5, {"s", "t"});
  auto f = pfister(G, {parse_entry(G, "s"), parse_entry(G, "t")});
  EXPECT_TRUE(is_anisotropic(f, G));
  EXPECT_FALSE(is_anisotropic(orth_sum(f, diag(G, {"2", "3"})), G));
}

TEST(WittForms, ClassLevelProperties) {
  auto F = TowerField::rationals({"x", "y"});
  Rng rng(3);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<std::uint32_t> mask(0, 3);
  auto rnd = [&] {
    long c = 0;
    while (c == 0) c = coef(rng);
    return E(F, c, mask(rng));
  };
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<FormEntry> g{rnd(), rnd()}, h{rnd()};
    auto gh = g;
    gh.insert(gh.end(), h.begin(), h.end());
    EXPECT_TRUE(is_isometric(tensor(F, pfister(F, g), pfister(F, h)), pfister(F, gh), F));
    DiagForm f;
    for (int i = 0; i < 5; ++i) f.entries.push_back(rnd());
    auto w = witt_decompose(f, F);
    EXPECT_EQ(w.kernel.dim() + 2 * w.witt_index, f.dim());
    EXPECT_EQ(witt_decompose(w.kernel, F).witt_index, 0u);
    EXPECT_TRUE(is_isometric(orth_sum(f, scale(F, E(F, -1), f)), orth_sum(f, scale(F, E(F, -1), f)), F));
    EXPECT_TRUE(is_hyperbolic(orth_sum(f, scale(F, E(F, -1), f)), F));
  }
}

TEST(WittForms, AlbertInvariants) {
  auto Q = TowerField::rationals();
  std::array<FormEntry, 3> one{E(Q, 1), E(Q, 1), E(Q, 1)};
  auto split = f3_f5(Q, FormAlbertData::split(one));
  EXPECT_TRUE(split.f3.is_zero());
  EXPECT_TRUE(split.f5.is_zero());
  FormAlbertData def{{E(Q, -1), E(Q, -1), E(Q, -1)}, one};
  auto inv = f3_f5(Q, def);
  EXPECT_EQ(inv.f5.witt_index, 0u);
  EXPECT_EQ(*inv.f5.signature, 32);
  FormAlbertData ind{{E(Q, -1), E(Q, -1), E(Q, -1)}, {E(Q, 1), E(Q, 1), E(Q, -1)}};
  EXPECT_TRUE(f3_f5(Q, ind).f5.is_zero());
  EXPECT_THROW(f3_f5(Q, FormAlbertData{def.c, {E(Q, 1), E(Q, 0), E(Q, 1)}}), Error);
}

TEST(WittForms, ConditionThree) {
  auto Q = TowerField::rationals();
  std::array<FormEntry, 3> one{E(Q, 1), E(Q, 1), E(Q, 1)};
  FormAlbertData def{{E(Q, -1), E(Q, -1), E(Q, -1)}, one};
  std::vector<FormEntry> mm{E(Q, -1), E(Q, -1)};
  EXPECT_TRUE(mt3_check(Q, def, E(Q, 2), mm));
  EXPECT_FALSE(mt3_check(Q, def, E(Q, -1), mm));
  EXPECT_THROW(mt3_check(Q, def, E(Q, 2), {E(Q, -1)}), Error);
  FormAlbertData split = FormAlbertData::split({E(Q, 3), E(Q, 1), E(Q, 7)});
  for (long d : {-1, 2, 3, -5}) {
    EXPECT_TRUE(mt3_check(Q, split, E(Q, d), {E(Q, 1), E(Q, 1)}));
    auto s = mt3_search(Q, split, E(Q, d));
    ASSERT_TRUE(s.gamma);
    EXPECT_EQ(s.tried, 1u);
  }
  auto miss = mt3_search(Q, def, E(Q, -1));
  EXPECT_FALSE(miss.gamma);
  EXPECT_TRUE(miss.complete);
  // Gamma = <r, 1, delta N(s)> finds <<-r, -delta N(s)>>.
  auto K = TowerField::rationals();
  long r = 3, dns = 2 * 7;
  FormAlbertData shape{{E(K, -1), E(K, -1), E(K, -1)}, {E(K, r), E(K, 1), E(K, dns)}};
  auto s = mt3_search(K, shape, E(K, 2));
  ASSERT_TRUE(s.gamma);
  EXPECT_TRUE(mt3_check(K, shape, E(K, 2), *s.gamma));
  EXPECT_TRUE(mt3_check(K, shape, E(K, 2), {E(K, -r), E(K, -dns)}));
}

TEST(WittForms, IndexClassifier) {
  auto Q = TowerField::rationals();
  std::array<FormEntry, 3> one{E(Q, 1), E(Q, 1), E(Q, 1)};
  std::array<FormEntry, 3> C{E(Q, -1), E(Q, -1), E(Q, -1)};
  for (long d : {-1, 2, 5})
    EXPECT_EQ(tits_index(Q, FormAlbertData::split(one), E(Q, d)), TitsIndexLabel::quasi_split);
  FormAlbertData ind{C, {E(Q, 1), E(Q, 1), E(Q, -1)}};
  EXPECT_EQ(tits_index(Q, ind, E(Q, -1)), TitsIndexLabel::row2_two_circles);
  EXPECT_EQ(tits_index(Q, ind, E(Q, 2)), TitsIndexLabel::row3_one_circle);
  FormAlbertData def{C, one};
  EXPECT_EQ(tits_index(Q, def, E(Q, -1)), TitsIndexLabel::anisotropic);
  EXPECT_EQ(tits_index(Q, def, E(Q, 2)), TitsIndexLabel::row3_one_circle);
  // Off Q with n = 0 the killed-by-K step is not decided.
  auto T = TowerField::rationals({"t"});
  FormAlbertData tdef{{E(T, -1), E(T, -1), E(T, -1)}, {E(T, 1), E(T, 1), E(T, -1)}};
  EXPECT_THROW(tits_index(T, tdef, E(T, -1)), Error);
  EXPECT_EQ(classify_index(T, tdef, E(T, -1)).label, TitsIndexLabel::undecided);
  // Over GF(p) every 3-Pfister is hyperbolic.
  auto G = TowerField::prime(7);
  FormAlbertData gdef{{E(G, 3), E(G, 3), E(G, 3)}, {E(G, 1), E(G, 3), E(G, 1)}};
  EXPECT_EQ(tits_index(G, gdef, E(G, 3)), TitsIndexLabel::quasi_split);
}

TEST(WittForms, TowerAnalogue) {
  auto F = TowerField::rationals({"x", "y", "z", "u", "v", "d"});
  auto x = [&](const char* s) { return parse_entry(F, s); };
  auto big = pfister(F, {x("x"), x("y"), x("z"), x("u"), x("v"), x("d")});
  EXPECT_TRUE(is_anisotropic(big, F));
  auto f26 = orth_sum(diag(F, {"1", "-d"}), tensor(F, pfister(F, {x("x"), x("y"), x("z")}), diag(F, {"-u", "-v", "u*v"})));
  EXPECT_EQ(f26.dim(), 26u);
  EXPECT_TRUE(is_anisotropic(f26, F));
  FormAlbertData A{{x("x"), x("y"), x("z")}, {x("-u"), x("-v"), x("u*v")}};
  auto inv = f3_f5(F, A);
  EXPECT_FALSE(inv.f5.is_zero());
  EXPECT_FALSE(mt3prime_check(F, A, x("d")));
  EXPECT_FALSE(mt3_search(F, A, x("d")).gamma);
}
