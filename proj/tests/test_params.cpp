#include <gtest/gtest.h>

#include "gefp/params.hpp"
#include "gefp/young.hpp"

using namespace gefp;

TEST(DeltaT, IcePoint) {
  const auto p = delta_t_from_weights(VertexWeights<Rational>::from_abc(1, 1, 1));
  EXPECT_EQ(p.delta, Rational(1, 2));
  EXPECT_EQ(p.t, Rational(1));
}

TEST(DeltaT, FreeFermion) {
  const auto p = delta_t_from_weights(VertexWeights<Rational>::from_ab_c2(1, 1, 2));
  EXPECT_EQ(p.delta, Rational(0));
  EXPECT_EQ(p.t, Rational(1));
  PrecisionGuard guard(128);
  const auto f = delta_t_from_weights(VertexWeights<Real>::from_abc(1, 1, sqrt(Real(2))));
  EXPECT_LT(abs(f.delta), Real("1e-36"));
}

TEST(DeltaT, Asymmetric) {
  const auto p = delta_t_from_weights(VertexWeights<Rational>::from_abc(2, 1, 2));
  EXPECT_EQ(p.delta, Rational(1, 4));
  EXPECT_EQ(p.t, Rational(1, 2));
}

TEST(DeltaT, ZeroWeightRejected) {
  VertexWeights<Rational> w{0, 1, 1, Rational(1), true};
  EXPECT_THROW(delta_t_from_weights(w), DivisionByZero);
  EXPECT_THROW(VertexWeights<Rational>::from_abc(0, 1, 1), NonphysicalWeights);
}

TEST(DeltaT, ScaleInvariance) {
  const auto base = delta_t_from_weights(VertexWeights<Rational>::from_abc(3, 2, 4));
  for (int k : {2, 5, 11}) {
    const auto scaled = delta_t_from_weights(VertexWeights<Rational>::from_abc(3 * k, 2 * k, 4 * k));
    EXPECT_EQ(scaled.delta, base.delta);
    EXPECT_EQ(scaled.t, base.t);
  }
}

TEST(WeightsFromTrig, IcePoint) {
  PrecisionGuard guard(128);
  const Real pi = real_pi();
  const auto w = weights_from_trig(pi / 2, Real(0), pi / 6);
  const Real half_sqrt3 = sqrt(Real(3)) / 2;
  EXPECT_LT(abs(w.a - half_sqrt3), Real("1e-36"));
  EXPECT_LT(abs(w.b - half_sqrt3), Real("1e-36"));
  EXPECT_LT(abs(*w.c - half_sqrt3), Real("1e-36"));
}

TEST(WeightsFromTrig, FreeFermion) {
  PrecisionGuard guard(128);
  const Real pi = real_pi();
  const auto w = weights_from_trig(pi / 2, Real(0), pi / 4);
  EXPECT_LT(abs(w.a - sqrt(Real(2)) / 2), Real("1e-36"));
  EXPECT_LT(abs(*w.c - 1), Real("1e-36"));
  EXPECT_LT(abs(delta_t_from_weights(w).delta), Real("1e-36"));
}

TEST(WeightsFromTrig, NegativeWeightRejected) {
  PrecisionGuard guard(128);
  const Real pi = real_pi();
  EXPECT_THROW(weights_from_trig(Real("0.1"), Real(0), pi / 6), NonphysicalWeights);
  EXPECT_NO_THROW(weights_from_trig(Real("0.1"), Real(0), pi / 6, true));
}

TEST(WeightsFromTrig, DeltaRoundTrip) {
  PrecisionGuard guard(128);
  for (const char* lam : {"1.2", "1.5", "1.9"}) {
    for (const char* eta : {"0.3", "0.5", "0.7"}) {
      const Real l(lam), e(eta);
      const auto w = weights_from_trig(l, Real("0.05"), e);
      EXPECT_LT(abs(delta_t_from_weights(w).delta - cos(2 * e)), Real("1e-35"));
    }
  }
}

TEST(Anisotropy, Validation) {
  EXPECT_NO_THROW(AnisotropyPoint<Rational>::make(Rational(1, 2), Rational(1)));
  EXPECT_THROW(AnisotropyPoint<Rational>::make(Rational(3, 2), Rational(1, 2)), NonphysicalWeights);
  EXPECT_NO_THROW(AnisotropyPoint<Rational>::make(Rational(3, 2), Rational(1, 2), true));
  EXPECT_THROW(AnisotropyPoint<Rational>::make(Rational(0), Rational(-1)), NonphysicalWeights);
  const auto w = weights_from_anisotropy(AnisotropyPoint<Rational>::make(Rational(0), Rational(1)));
  EXPECT_EQ(w.c_squared, Rational(2));
}

TEST(Anisotropy, FromTrigMatchesWeights) {
  PrecisionGuard guard(128);
  const Real lam("1.3"), eta("0.4");
  const auto p = anisotropy_from_trig(lam, eta);
  const auto q = delta_t_from_weights(weights_from_trig(lam, Real(0), eta));
  EXPECT_LT(abs(p.delta - q.delta), Real("1e-36"));
  EXPECT_LT(abs(p.t - q.t), Real("1e-36"));
}

TEST(YoungProfile, DiagramAndArea) {
  YoungProfile p(5, {2, 3, 3});
  EXPECT_EQ(p.diagram(), (std::vector<int>{3, 2, 2}));
  EXPECT_EQ(p.area(), 7);
  EXPECT_TRUE(p.admissible());
  EXPECT_FALSE(YoungProfile(3, {1, 1}).admissible());
  EXPECT_EQ(p.without_last(), YoungProfile(5, {2, 3}));
}

TEST(YoungProfile, RejectsInvalid) {
  EXPECT_THROW(YoungProfile(3, {3, 2}), InvalidProfile);
  EXPECT_THROW(YoungProfile(3, {0}), InvalidProfile);
  EXPECT_THROW(YoungProfile(3, {4}), InvalidProfile);
  EXPECT_THROW(YoungProfile(2, {1, 2, 2}), InvalidProfile);
  try {
    YoungProfile(3, {3, 2});
  } catch (const InvalidProfile& e) {
    EXPECT_NE(std::string(e.what()).find("weakly increasing"), std::string::npos);
  }
}

TEST(YoungProfile, ParseAndEnumerate) {
  EXPECT_EQ(parse_profile(4, "1,3,4").r(), (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(parse_profile(4, "").s(), 0);
  EXPECT_THROW(parse_profile(4, "1,x"), ParseError);
  // weakly increasing sequences of length s over {1..N}: binom(N+s-1, s)
  EXPECT_EQ(all_profiles(3, 0, 3).size(), 1u + 3u + 6u + 10u);
  EXPECT_EQ(all_profiles(5, 1, 5).size(), 5u + 15u + 35u + 70u + 126u);
}
