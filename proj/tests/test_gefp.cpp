#include <gtest/gtest.h>

#include "gefp/gefp.hpp"

using namespace gefp;

namespace {

AnisotropyPoint<Rational> pt(Rational delta, Rational t, bool nonphysical = false) {
  return AnisotropyPoint<Rational>::make(delta, t, nonphysical);
}

Rational oracle(const YoungProfile& p, const AnisotropyPoint<Rational>& a) {
  return gefp_oracle(WeightGrid<Rational>::homogeneous(p.n(), weights_from_anisotropy(a)), p).value;
}

class GefpFloat : public ::testing::Test {
 protected:
  PrecisionGuard guard{128};
};

}  // namespace

TEST(Residue, IcePointSmallValues) {
  const auto ice = pt(Rational(1, 2), Rational(1));
  EXPECT_EQ(gefp_residue(YoungProfile(3, {2, 3}), ice).value, Rational(5, 7));
  EXPECT_EQ(gefp_residue(YoungProfile(3, {2, 2}), ice).value, Rational(2, 7));
  EXPECT_EQ(gefp_residue(YoungProfile(4, {2, 3}), ice).value, Rational(1, 3));
  EXPECT_EQ(gefp_residue(YoungProfile(4, {1, 3}), ice).value, Rational(5, 42));
  EXPECT_EQ(gefp_residue(YoungProfile(4, {2, 2, 3}), ice).value, Rational(1, 21));
}

TEST(Residue, EmptyProfileIsOne) {
  EXPECT_EQ(gefp_residue(YoungProfile(3, {}), pt(Rational(1, 2), Rational(1))).value, Rational(1));
}

TEST(Residue, SingleRowIsPartialSumOfH) {
  for (const auto& a : {pt(Rational(1, 2), Rational(1)), pt(Rational(-1), Rational(2, 3))}) {
    for (int n = 1; n <= 5; ++n) {
      const auto table = htable_oracle(n, a);
      Rational partial = 0;
      for (int r = 1; r <= n; ++r) {
        partial += table(r);
        EXPECT_EQ(gefp_residue(YoungProfile(n, {r}), a).value, partial) << "N=" << n << " r=" << r;
      }
    }
  }
}

TEST(Residue, VanishesBelowDiagonal) {
  const auto a = pt(Rational(-1), Rational(2, 3));
  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : all_profiles(n, 1, n)) {
      if (p.admissible()) continue;
      EXPECT_EQ(gefp_residue(p, a).value, Rational(0)) << p.str();
      EXPECT_EQ(oracle(p, a), Rational(0)) << p.str();
    }
  }
}

TEST(Residue, MatchesOracleUpToFour) {
  for (const auto& a : {pt(Rational(1, 2), Rational(1)), pt(Rational(0), Rational(1)), pt(Rational(-1), Rational(2, 3)),
                        pt(Rational(3, 2), Rational(1, 2), true)}) {
    for (int n = 1; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, a);
      for (const auto& p : all_profiles(n, 1, n))
        EXPECT_EQ(gefp_residue(p, a, &fam).value, oracle(p, a)) << p.str() << " delta=" << a.delta;
    }
  }
}

TEST(Residue, KnownValuesAwayFromIce) {
  EXPECT_EQ(gefp_residue(YoungProfile(3, {2, 3}), pt(Rational(-1), Rational(2, 3))).value, Rational(2421, 2629));
  EXPECT_EQ(gefp_residue(YoungProfile(3, {2, 3}), pt(Rational(3, 2), Rational(1, 2), true)).value, Rational(96, 101));
}

TEST(Residue, FullFrozenProfileIsOne) {
  // r_j = N for every row means every cut edge is fixed already
  const auto a = pt(Rational(1, 3), Rational(3, 4));
  EXPECT_EQ(gefp_residue(YoungProfile(4, {4, 4, 4, 4}), a).value, Rational(1));
}

TEST(Residue, LastEntryNReducesProfile) {
  const auto a = pt(Rational(0), Rational(1));
  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : all_profiles(n, 1, n)) {
      if (p[p.s() - 1] != n) continue;
      EXPECT_EQ(gefp_residue(p, a).value, gefp_residue(p.without_last(), a).value) << p.str();
    }
  }
}

TEST_F(GefpFloat, ResidueFloatMatchesExact) {
  const AnisotropyPoint<Real> af = AnisotropyPoint<Real>::make(Real(-1), Real(2) / 3);
  const auto res = gefp_residue(YoungProfile(3, {2, 3}), af);
  EXPECT_LT(abs(res.value - Real(2421) / 2629), Real("1e-30"));
  EXPECT_EQ(res.backend, "float");
}

TEST_F(GefpFloat, DeterminantJetsMatchOracle) {
  const Real lam("1.4"), eta("0.45");
  const auto w = weights_from_trig(lam, Real(0), eta);
  for (int n = 1; n <= 4; ++n) {
    const auto g = WeightGrid<Real>::homogeneous(n, w);
    for (const auto& p : all_profiles(n, 1, n)) {
      const Real o = gefp_oracle(g, p).value;
      const Real d = gefp_determinant_jets(p, lam, eta).value;
      if (o == 0) {
        EXPECT_LT(abs(d), Real("1e-25")) << p.str();
      } else {
        EXPECT_LT(relative_error(d, o), Real("1e-20")) << p.str();
      }
    }
  }
}

TEST_F(GefpFloat, DeterminantJetsIcePoint) {
  const Real pi = real_pi();
  const auto res = gefp_determinant_jets(YoungProfile(3, {2, 3}), pi / 2, pi / 6);
  EXPECT_LT(abs(res.value - Real(5) / 7), Real("1e-25"));
  EXPECT_EQ(res.engine, "determinant");
}

TEST_F(GefpFloat, DeterminantJetsCap) {
  EXPECT_THROW(gefp_determinant_jets(YoungProfile(7, {7, 7, 7, 7, 7, 7, 7}), Real("1.4"), Real("0.3")), TooLarge);
}

TEST(Efp, ExactMatchesOracle) {
  const auto a = pt(Rational(-1), Rational(2, 3));
  for (int n = 2; n <= 4; ++n)
    for (int s = 1; s <= n; ++s)
      for (int r = s; r <= n; ++r) {
        const auto viaResidue = efp_special_case(n, s, r, a);
        EXPECT_EQ(viaResidue.value, efp_special_case(n, s, r, a, Engine::Oracle).value);
        EXPECT_EQ(viaResidue.quantity, "efp");
      }
}

TEST(Efp, IcePointValue) {
  // two rows frozen up to the second column at N = 3
  EXPECT_EQ(efp_special_case(3, 2, 2, pt(Rational(1, 2), Rational(1))).value, Rational(2, 7));
}

TEST(Efp, RejectsColumnOutOfRange) {
  EXPECT_THROW(efp_special_case(3, 1, 0, pt(Rational(1, 2), Rational(1))), BadIndex);
  EXPECT_THROW(efp_special_case(3, 1, 4, pt(Rational(1, 2), Rational(1))), BadIndex);
}

TEST_F(GefpFloat, EfpTrigEnginesAgree) {
  const Real lam("1.35"), eta("0.4");
  const Real det = efp_special_case(4, 2, 3, lam, eta, Engine::Determinant).value;
  EXPECT_LT(relative_error(efp_special_case(4, 2, 3, lam, eta, Engine::Oracle).value, det), Real("1e-20"));
  EXPECT_LT(relative_error(efp_special_case(4, 2, 3, lam, eta, Engine::HomogeneousLimit).value, det), Real("1e-20"));
  EXPECT_LT(relative_error(efp_special_case(4, 2, 3, lam, eta, Engine::Residue).value, det), Real("1e-20"));
}

TEST(PoleDeformation, SmallCases) {
  const auto ice = pt(Rational(1, 2), Rational(1));
  for (const auto& r : {std::vector<int>{2}, std::vector<int>{2, 3}}) {
    const int n = r.back();
    const auto rep = pole_deformation_check(YoungProfile(n, r), ice);
    EXPECT_TRUE(rep.balanced) << YoungProfile(n, r).str();
    EXPECT_EQ(rep.from_unit_pole, rep.reduced_value);
    EXPECT_TRUE(rep.infinity_decays);
  }
  const auto rep = pole_deformation_check(YoungProfile(4, {2, 3, 4}), ice);
  EXPECT_TRUE(rep.balanced);
  ASSERT_EQ(rep.pole_orders.size(), 2u);
  EXPECT_GE(rep.pole_orders[0], 4 - 2);
  EXPECT_GE(rep.pole_orders[1], 4 - 3);
}

TEST(PoleDeformation, AllProfilesUpToFour) {
  for (const auto& a : {pt(Rational(-1), Rational(2, 3)), pt(Rational(1, 3), Rational(3, 4))}) {
    for (int n = 1; n <= 4; ++n)
      for (const auto& p : all_profiles(n, 1, n)) {
        if (p[p.s() - 1] != n) continue;
        const auto rep = pole_deformation_check(p, a);
        EXPECT_TRUE(rep.balanced) << p.str();
        for (std::size_t j = 0; j < rep.pole_orders.size(); ++j)
          EXPECT_GE(rep.pole_orders[j], n - p[static_cast<int>(j)]) << p.str();
      }
  }
}

TEST(PoleDeformation, RequiresLastEntryN) {
  EXPECT_THROW(pole_deformation_check(YoungProfile(3, {2, 2}), pt(Rational(1, 2), Rational(1))), BadIndex);
}

TEST_F(GefpFloat, DeterminantJetsMatchFloatResidue) {
  const Real lam("1.4"), eta("0.45");
  const auto a = anisotropy_from_trig(lam, eta);
  for (int n = 1; n <= 4; ++n) {
    const auto fam = h_family_oracle(n, a);
    for (const auto& p : all_profiles(n, 1, n)) {
      if (!p.admissible()) continue;
      const Real d = gefp_determinant_jets(p, lam, eta).value;
      EXPECT_LT(relative_error(d, gefp_residue(p, a, &fam).value), Real("1e-14")) << p.str();
    }
  }
}

TEST(Residue, BoundedAndMonotone) {
  for (const auto& a : {pt(Rational(1, 2), Rational(1)), pt(Rational(3, 2), Rational(1, 4))}) {
    for (int n = 1; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, a);
      for (const auto& p : all_profiles(n, 1, n)) {
        const Rational g = gefp_residue(p, a, &fam).value;
        EXPECT_GE(g, 0) << p.str();
        EXPECT_LE(g, 1) << p.str();
      }
      Rational prev = 0;
      for (int r = 1; r <= n; ++r) {
        const Rational g = gefp_residue(YoungProfile(n, {r}), a, &fam).value;
        EXPECT_GE(g, prev);
        prev = g;
      }
      EXPECT_EQ(prev, Rational(1));
    }
  }
}
