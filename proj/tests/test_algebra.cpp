#include <gtest/gtest.h>

#include <random>

#include "gefp/algebra/jet.hpp"
#include "gefp/algebra/matrix.hpp"
#include "gefp/algebra/multipoly.hpp"
#include "gefp/algebra/poly.hpp"
#include "gefp/algebra/series.hpp"

using namespace gefp;

namespace {

// Laplace expansion along the first row; the reference for det().
Rational cofactor_det(const Matrix<Rational>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    const Rational minor = cofactor_det(m.select(rows, cols));
    total += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return total;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST(Determinant, SmallIntegerMatrix) {
  Matrix<Rational> m{{1, 2}, {3, 4}};
  EXPECT_EQ(det(m), Rational(-2));
}

TEST(Determinant, Identity) {
  EXPECT_EQ(det(Matrix<Rational>::identity(5)), Rational(1));
  PrecisionGuard guard(128);
  EXPECT_EQ(det(Matrix<Real>::identity(5)), Real(1));
}

TEST(Determinant, SingularGivesZero) {
  Matrix<Rational> m{{1, 2, 3}, {2, 4, 6}, {0, 1, 5}};
  EXPECT_EQ(det(m), Rational(0));
  Matrix<Rational> zero_pivot{{0, 1}, {1, 0}};
  EXPECT_EQ(det(zero_pivot), Rational(-1));
}

TEST(Determinant, MatchesCofactorExpansionOnRandomRationals) {
  std::mt19937 rng(12345);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      Matrix<Rational> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
      EXPECT_EQ(det(m), cofactor_det(m)) << "n = " << n;
    }
  }
}

TEST(Determinant, FloatMatchesExact) {
  PrecisionGuard guard(128);
  std::mt19937 rng(7);
  Matrix<Rational> m(4);
  Matrix<Real> f(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      m(i, j) = random_rational(rng);
      f(i, j) = to_real(m(i, j));
    }
  EXPECT_LT(relative_error(det(f), to_real(det(m))), Real("1e-35"));
}

TEST(Determinant, JetHankelMatchesDirectExpansion) {
  PrecisionGuard guard(128);
  // phi = 1/sin(x) around x = 1.1
  const auto x = Jet<Real>::variable(Real("1.1"), 4);
  const auto phi = sin(x).reciprocal();
  Matrix<Real> m{{phi.derivative(0), phi.derivative(1)}, {phi.derivative(1), phi.derivative(2)}};
  const Real direct = phi.derivative(0) * phi.derivative(2) - phi.derivative(1) * phi.derivative(1);
  EXPECT_LT(relative_error(det(m), direct), Real("1e-35"));
}

TEST(PermutationSign, Basic) {
  EXPECT_EQ(permutation_sign({0, 1, 2}), 1);
  EXPECT_EQ(permutation_sign({1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign({1, 2, 0}), 1);
}

TEST(SeriesInvert, GeometricSeries) {
  const std::vector<Rational> f{1, -1};
  auto s = TruncatedSeries<Rational>::univariate({3}, 0, std::span<const Rational>(f));
  const auto g = series_invert(s);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(g.coefficient(std::vector<int>{k}), Rational(1));
}

TEST(SeriesInvert, Constant) {
  const auto g = series_invert(TruncatedSeries<Rational>::constant({2, 2}, Rational(2)));
  EXPECT_EQ(g, TruncatedSeries<Rational>::constant({2, 2}, Rational(1, 2)));
}

TEST(SeriesInvert, BivariateMultiplyBack) {
  const Rational delta(1, 3), t(2, 5);
  TruncatedSeries<Rational> f = TruncatedSeries<Rational>::one({2, 2});
  f[std::vector<int>{1, 0}] = -2 * delta * t;
  f[std::vector<int>{1, 1}] = t * t;
  EXPECT_EQ(f * series_invert(f), TruncatedSeries<Rational>::one({2, 2}));
}

TEST(SeriesInvert, ZeroConstantThrows) {
  TruncatedSeries<Rational> f({2});
  f[std::vector<int>{1}] = 1;
  EXPECT_THROW(series_invert(f), NotInvertible);
}

TEST(SeriesInvert, InvolutionOnRandomSeries) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    TruncatedSeries<Rational> f({3, 2, 2});
    for (std::size_t k = 0; k < f.size(); ++k) f.at_flat(k) = random_rational(rng);
    if (f.at_flat(0) == 0) f.at_flat(0) = 1;
    EXPECT_EQ(series_invert(series_invert(f)), f);
  }
}

TEST(SeriesProduct, TruncatesToCaps) {
  auto z = TruncatedSeries<Rational>::monomial({2}, 0, 1);
  const auto z3 = z * z * z;
  EXPECT_TRUE(z3.is_zero());
  EXPECT_EQ((z * z).coefficient(std::vector<int>{2}), Rational(1));
}

TEST(SeriesCompose, ExponentialOfLinear) {
  // exp(u) with u = z: coefficients 1/k!
  auto z = TruncatedSeries<Rational>::monomial({4}, 0, 1);
  std::vector<Rational> exp_taylor{1, 1, Rational(1, 2), Rational(1, 6), Rational(1, 24)};
  const auto e = z.compose(exp_taylor);
  EXPECT_EQ(e.coefficient(std::vector<int>{3}), Rational(1, 6));
}

TEST(PolyDivExact, DifferenceOfSquares) {
  UniPoly<Rational> p{-1, 0, 1}, q{-1, 1};
  EXPECT_EQ(poly_div_exact(p, q), (UniPoly<Rational>{1, 1}));
}

TEST(PolyDivExact, DivideByOne) {
  UniPoly<Rational> p{3, 0, Rational(1, 2), 7};
  EXPECT_EQ(poly_div_exact(p, UniPoly<Rational>::constant(1)), p);
}

TEST(PolyDivExact, NonzeroRemainderThrows) {
  UniPoly<Rational> p{1, 0, 1}, q{-1, 1};
  EXPECT_THROW(poly_div_exact(p, q), NotDivisible);
}

TEST(PolyDivExact, VandermondeNumeratorTwoVariables) {
  // h_2(z) = (1+z)/2 at the ice point; the two-variable numerator
  // det[[(z1-1) h_2(z1), z1 h_1], [(z2-1) h_2(z2), z2 h_1]] divided by z1 - z2.
  const std::vector<int> caps{3, 3};
  using MP = MultiPoly<Rational>;
  auto z1 = MP::monomial(caps, 0, 1), z2 = MP::monomial(caps, 1, 1);
  auto one = MP::one(caps);
  auto h2 = [&](const MP& z) { return (one + z) * Rational(1, 2); };
  const MP num = (z1 - one) * h2(z1) * z2 - (z2 - one) * h2(z2) * z1;
  const MP q = divide_by_difference(num, 0, 1);
  EXPECT_EQ(q * (z1 - z2), num);
}

TEST(PolyDivExact, DivideByDifferenceDetectsRemainder) {
  const std::vector<int> caps{2, 2};
  auto z1 = MultiPoly<Rational>::monomial(caps, 0, 1);
  EXPECT_THROW(divide_by_difference(z1, 0, 1), NotDivisible);
}

TEST(MultiPoly, SubstituteAndSwap) {
  const std::vector<int> caps{2, 2};
  using MP = MultiPoly<Rational>;
  MP p(caps);
  p[std::vector<int>{1, 2}] = 3;  // 3 z1 z2^2
  p[std::vector<int>{0, 1}] = 1;  // z2
  const MP q = substitute(p, 1, Rational(2));
  EXPECT_EQ(q.coefficient(std::vector<int>{1}), Rational(12));
  EXPECT_EQ(q.coefficient(std::vector<int>{0}), Rational(2));
  const MP s = swap_variables(p, 0, 1);
  EXPECT_EQ(s.coefficient(std::vector<int>{2, 1}), Rational(3));
  EXPECT_EQ(degree_in(p, 1), 2);
  EXPECT_EQ(degree_in(p, 0), 1);
}

TEST(Jet, SinMatchesFiniteDifferences) {
  PrecisionGuard guard(128);
  const Real x0("0.7");
  const auto s = sin(Jet<Real>::variable(x0, 8));
  // derivatives of sin: sin, cos, -sin, -cos, sin
  EXPECT_LT(abs(s.derivative(0) - sin(x0)), Real("1e-36"));
  EXPECT_LT(abs(s.derivative(1) - cos(x0)), Real("1e-36"));
  EXPECT_LT(abs(s.derivative(2) + sin(x0)), Real("1e-36"));
  EXPECT_LT(abs(s.derivative(3) + cos(x0)), Real("1e-36"));
  EXPECT_LT(abs(s.derivative(4) - sin(x0)), Real("1e-36"));
  // central difference of the jet's own first derivative
  const Real h("1e-12");
  const Real fd = (sin(x0 + h) - sin(x0 - h)) / (2 * h);
  EXPECT_LT(abs(fd - s.derivative(1)), Real("1e-20"));
}

TEST(Jet, ReciprocalAndDivision) {
  PrecisionGuard guard(128);
  const auto x = Jet<Real>::variable(Real("0.3"), 6);
  const auto one = Jet<Real>::constant(Real(1), 6);
  const auto prod = x * x.reciprocal();
  for (int k = 0; k <= 6; ++k) EXPECT_LT(abs(prod[k] - one[k]), Real("1e-36"));
  EXPECT_THROW(Jet<Rational>(3).reciprocal(), NotInvertible);
}

TEST(Jet, ExactPolynomialArithmetic) {
  const auto x = Jet<Rational>::variable(Rational(2), 3);
  const auto p = pow(x, 3);  // (2 + e)^3 = 8 + 12 e + 6 e^2 + e^3
  EXPECT_EQ(p[0], Rational(8));
  EXPECT_EQ(p[1], Rational(12));
  EXPECT_EQ(p[2], Rational(6));
  EXPECT_EQ(p[3], Rational(1));
  EXPECT_EQ(p.derivative(2), Rational(12));
}
