#include <gtest/gtest.h>

#include "gefp/hfun.hpp"

using namespace gefp;

namespace {

const std::vector<std::pair<Rational, Rational>> kExactPoints{
    {Rational(1, 2), Rational(1)}, {Rational(0), Rational(1)}, {Rational(-1), Rational(2, 3)}, {Rational(1, 3), Rational(3, 4)}};

AnisotropyPoint<Rational> point(const std::pair<Rational, Rational>& p) {
  return AnisotropyPoint<Rational>::make(p.first, p.second);
}

Real jet_gap(const Jet<Real>& x, const Jet<Real>& y) {
  Real worst = 0;
  for (int k = 0; k <= x.order(); ++k) worst = max(worst, Real(abs(x[k] - y[k])));
  return worst;
}

class HfunFloat : public ::testing::Test {
 protected:
  PrecisionGuard guard{128};
};

}  // namespace

TEST_F(HfunFloat, OmegaRhoIdentities) {
  const Real lam("1.3"), eta("0.35");
  const int order = 10;
  const auto w = OmegaRho<Real>::from_trig(lam, eta, order);
  const auto one = Jet<Real>::constant(Real(1), order);
  const Real t = sin(lam - eta) / sin(lam + eta), delta = cos(2 * eta);
  EXPECT_EQ(w.omega[0], Real(0));
  EXPECT_LT(jet_gap(w.rho * (w.omega - one), one), Real("1e-30"));
  EXPECT_LT(jet_gap(w.omega_tilde * (2 * t * delta * w.omega - one), t * t * w.omega), Real("1e-30"));
  EXPECT_LT(jet_gap(w.rho_tilde * (one - w.omega_tilde), one), Real("1e-30"));
  EXPECT_LT(jet_gap(w.omega_tilde, OmegaRho<Real>::omega_tilde_trig(lam, eta, order)), Real("1e-30"));
}

TEST(Hfun, OmegaRhoExactFromOmega) {
  // omega as a formal jet over the rationals
  const auto om = Jet<Rational>::from_coefficients({0, Rational(2), Rational(-1, 3), Rational(5)});
  const auto w = OmegaRho<Rational>::from_omega(om, Rational(1, 4), Rational(2));
  const auto one = Jet<Rational>::constant(1, 3);
  const auto lhs = w.omega_tilde * (Rational(2) * Rational(2) * Rational(1, 4) * w.omega - one);
  const auto rhs = Rational(4) * w.omega;
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(lhs[k], rhs[k]);
}

TEST_F(HfunFloat, BoundaryHSingleSite) {
  EXPECT_LT(abs(boundary_H_via_K(1, 1, Real("1.4"), Real("0.3")) - 1), Real("1e-36"));
}

TEST_F(HfunFloat, BoundaryHIcePoint) {
  const Real pi = real_pi();
  const auto t = htable_via_K(3, pi / 2, pi / 6);
  EXPECT_LT(abs(t(1) - Real(2) / 7), Real("1e-20"));
  EXPECT_LT(abs(t(2) - Real(3) / 7), Real("1e-20"));
  EXPECT_LT(abs(t(3) - Real(2) / 7), Real("1e-20"));
}

TEST_F(HfunFloat, BoundaryHNormalized) {
  const Real pi = real_pi();
  EXPECT_LT(abs(htable_via_K(4, pi / 2, Real("0.35")).sum() - 1), Real("1e-22"));
}

TEST_F(HfunFloat, BoundaryHMatchesOracle) {
  const Real lam("1.25"), eta("0.3");
  const auto w = weights_from_trig(lam, Real(0), eta);
  for (int n = 1; n <= 5; ++n) {
    const auto o = htable_oracle(WeightGrid<Real>::homogeneous(n, w));
    for (int r = 1; r <= n; ++r)
      EXPECT_LT(relative_error(boundary_H_via_K(n, r, lam, eta), o(r)), Real("1e-18")) << n << "," << r;
  }
  EXPECT_THROW(boundary_H_via_K(3, 4, lam, eta), BadIndex);
}

TEST(Hfun, GeneratingFunction) {
  const auto ice = AnisotropyPoint<Rational>::make(Rational(1, 2), Rational(1));
  EXPECT_EQ(h_generating(htable_oracle(1, ice)), UniPoly<Rational>::constant(1));
  EXPECT_EQ(h_generating(htable_oracle(2, ice)), (UniPoly<Rational>{Rational(1, 2), Rational(1, 2)}));
  for (const auto& p : kExactPoints)
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(h_generating(htable_oracle(n, point(p)))(Rational(1)), Rational(1));
}

TEST(Hfun, TableSumsToOneExactly) {
  for (const auto& p : kExactPoints)
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(htable_oracle(n, point(p)).sum(), Rational(1));
}

TEST_F(HfunFloat, KfintConstantFunction) {
  const auto [lhs, rhs] = kfint_check(2, UniPoly<Real>::constant(Real(1)), Real("1.4"), Real("0.45"));
  EXPECT_LT(abs(lhs - rhs), Real("1e-30"));
}

TEST_F(HfunFloat, KfintHighPowerVanishes) {
  for (int n = 1; n <= 5; ++n) {
    const auto [lhs, rhs] = kfint_check(n, UniPoly<Real>::monomial(n), Real("1.4"), Real("0.45"));
    EXPECT_LT(abs(lhs), Real("1e-25")) << n;
    EXPECT_LT(abs(rhs), Real("1e-25")) << n;
  }
}

TEST_F(HfunFloat, KfintLinearFunction) {
  const auto [lhs, rhs] = kfint_check(3, UniPoly<Real>::monomial(1), Real("1.17"), Real("0.52"));
  EXPECT_LT(relative_error(lhs, rhs), Real("1e-20"));
}

TEST_F(HfunFloat, KfintAllPowers) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= n; ++m) {
      const auto [lhs, rhs] = kfint_check(n, UniPoly<Real>::monomial(m), Real("1.35"), Real("0.4"));
      EXPECT_LT(abs(lhs - rhs), Real("1e-18")) << n << "," << m;
    }
}

TEST(Hfun, MultivariateSingleVariable) {
  const auto fam = h_family_oracle(4, point(kExactPoints[2]));
  for (const Rational& z : {Rational(0), Rational(1, 3), Rational(-2)})
    EXPECT_EQ(h_multivariate(fam, 4, {z}), fam[4](z));
}

TEST(Hfun, MultivariateSymmetric) {
  const auto fam = h_family_oracle(3, point(kExactPoints[3]));
  const Rational z1(2, 7), z2(-5, 3);
  EXPECT_EQ(h_multivariate(fam, 3, {z1, z2}), h_multivariate(fam, 3, {z2, z1}));
}

TEST(Hfun, SpecializationAtOne) {
  for (const auto& p : kExactPoints) {
    for (int n = 2; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, point(p));
      for (int s = 2; s <= n; ++s) {
        std::vector<Rational> z;
        for (int j = 0; j < s - 1; ++j) z.emplace_back(j + 2, 2 * j + 5);
        auto zz = z;
        zz.emplace_back(1);
        EXPECT_EQ(h_multivariate(fam, n, zz), h_multivariate(fam, n, z)) << n << "," << s;
        // and symbolically
        const auto hs = h_multivariate_symbolic(fam, n, s);
        const auto hs1 = h_multivariate_symbolic(fam, n, s - 1);
        const auto sub = substitute(hs, s - 1, Rational(1));
        EXPECT_EQ(truncate_to(sub, hs1.caps()), hs1);
      }
    }
  }
}

TEST(Hfun, SymbolicPropertiesUpToFour) {
  for (const auto& p : kExactPoints) {
    for (int n = 1; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, point(p));
      for (int s = 1; s <= n; ++s) {
        const auto h = h_multivariate_symbolic(fam, n, s);
        for (int v = 0; v < s; ++v) EXPECT_LE(degree_in(h, v), n - 1) << n << "," << s;
        for (int i = 0; i + 1 < s; ++i) EXPECT_EQ(swap_variables(h, i, i + 1), h);
        // symbolic and determinant evaluations agree, including coincident points
        std::vector<Rational> z;
        for (int j = 0; j < s; ++j) z.emplace_back(3 * j - 2, j + 2);
        EXPECT_EQ(h.evaluate(z), h_multivariate(fam, n, z));
        const std::vector<Rational> same(static_cast<std::size_t>(s), Rational(2, 5));
        EXPECT_EQ(h.evaluate(same), h_multivariate(fam, n, same));
      }
    }
  }
}

TEST(Hfun, TwoVariableNumeratorDividesExactly) {
  const auto fam = h_family_oracle(2, point(kExactPoints[0]));
  const auto num = h_numerator(h_columns(fam, 2, 2), {2, 2});
  const auto q = divide_by_difference(num, 0, 1);
  auto z1 = MultiPoly<Rational>::monomial({2, 2}, 0, 1), z2 = MultiPoly<Rational>::monomial({2, 2}, 1, 1);
  EXPECT_EQ(q * (z1 - z2), num);
}

TEST(Hfun, SimpleZeroProperty) {
  for (const auto& p : kExactPoints) {
    for (int n = 2; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, point(p));
      for (int s = 2; s <= n; ++s) {
        const auto h = h_multivariate_symbolic(fam, n, s);
        for (int j = 0; j < s - 1; ++j) {
          const auto rep = simple_zero_substitution(h, n, j, p.first, p.second);
          EXPECT_TRUE(rep.vanishes) << n << "," << s << "," << j;
          if (p.first == 0) {
            // free fermions: h_{N,s} vanishes identically on the curve
            EXPECT_TRUE(rep.numerator.is_zero()) << n << "," << s << "," << j;
          } else if (s == n) {
            EXPECT_EQ(rep.order, 1) << n << "," << j;
          }
        }
      }
    }
  }
}

TEST_F(HfunFloat, RapidityRoundTrip) {
  const Real lam("1.3"), eta("0.4");
  for (const char* z : {"0.3", "-0.7", "1", "2.5"}) {
    const Real l = rapidity_from_z(Real(z), lam, eta);
    EXPECT_LT(abs(z_from_rapidity(l, lam, eta) - Real(z)), Real("1e-30")) << z;
  }
  EXPECT_LT(abs(z_from_rapidity(lam, lam, eta) - 1), Real("1e-36"));
}

TEST_F(HfunFloat, BranchPoleAndDuplicates) {
  const Real lam("1.3"), eta("0.4");
  const Real t = sin(lam - eta) / sin(lam + eta);
  EXPECT_THROW(h_via_inhomogeneous_Z({1 / t, Real("0.2")}, lam, eta), BranchPole);
  EXPECT_THROW(h_via_inhomogeneous_Z({Real("0.2"), Real("0.2")}, lam, eta), DuplicateRapidity);
}

TEST_F(HfunFloat, ViaInhomogeneousZMatchesDeterminant) {
  const Real lam("1.3"), eta("0.4");
  const auto fam = h_family_via_K(3, lam, eta);
  const Real got = h_via_inhomogeneous_Z({Real("0.3"), Real("0.6")}, lam, eta);
  EXPECT_LT(relative_error(got, h_multivariate(fam, 2, {Real("0.3"), Real("0.6")})), Real("1e-18"));
  const std::vector<Real> z3{Real("0.3"), Real("0.6"), Real("-0.4")};
  EXPECT_LT(relative_error(h_via_inhomogeneous_Z(z3, lam, eta), h_multivariate(fam, 3, z3)), Real("1e-18"));
}

TEST_F(HfunFloat, ViaInhomogeneousZNearHomogeneousPoint) {
  PrecisionGuard wide(256);
  const Real lam("1.3"), eta("0.4");
  const std::vector<Real> z{Real(1) + Real("1e-9"), Real(1) - Real("2e-9"), Real(1) + Real("3e-9")};
  const auto fam = h_family_via_K(3, lam, eta);
  EXPECT_LT(abs(h_via_inhomogeneous_Z(z, lam, eta) - 1), Real("1e-7"));
  EXPECT_LT(abs(h_multivariate(fam, 3, std::vector<Real>(3, Real(1))) - 1), Real("1e-60"));
}

TEST_F(HfunFloat, ViaInhomogeneousZSimpleZero) {
  const Real lam("1.3"), eta("0.4");
  const Real t = sin(lam - eta) / sin(lam + eta), delta = cos(2 * eta);
  auto at = [&](const Real& z1) {
    const Real z2 = (2 * delta * t * z1 - 1) / (t * t * z1);
    return h_via_inhomogeneous_Z({z1, z2}, lam, eta);
  };
  const Real h1 = at(Real("1e-6")), h2 = at(Real("2e-6"));
  EXPECT_LT(abs(h1), Real("1e-4"));
  // linear vanishing: doubling z_1 doubles h
  EXPECT_LT(abs(h2 / h1 - 2), Real("1e-3"));
}
