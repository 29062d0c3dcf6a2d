#pragma once

// Determinant engines in the trigonometric parametrization (float backend):
// the Izergin-Korepin partition function, its homogeneous limits, the K_n
// polynomials and the two inhomogeneous GEFP evaluations.
//
// Weights at site (row i, column k) are a = sin(lambda_k - nu_i + eta),
// b = sin(lambda_k - nu_i - eta), c = sin(2 eta); lambdas belong to the
// vertical lines (counted from the right), nus to the horizontal lines.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "gefp/algebra/jet.hpp"
#include "gefp/algebra/matrix.hpp"
#include "gefp/algebra/poly.hpp"
#include "gefp/algebra/series.hpp"
#include "gefp/errors.hpp"
#include "gefp/params.hpp"
#include "gefp/scalar.hpp"
#include "gefp/young.hpp"

namespace gefp {

inline constexpr int kPermutationMaxN = 7;

namespace detail {

inline Real factorial(int n) {
  Real f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// True when |x| is at rounding-noise level for the working precision.
inline bool negligible(const Real& x, const Real& scale = Real(1)) {
  const Real eps = pow(Real(2), -static_cast<long>(working_precision_bits()) + 12);
  return abs(x) <= eps * scale;
}

inline void require_distinct(const std::vector<Real>& xs, const char* what) {
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (std::size_t k = j + 1; k < xs.size(); ++k)
      if (negligible(sin(xs[j] - xs[k])))
        throw DuplicateRapidity(std::string("coincident ") + what + " at positions " +
                                std::to_string(j + 1) + " and " + std::to_string(k + 1));
}

/// sin(base + z_var) as a series in one variable of a multivariate box.
inline TruncatedSeries<Real> sin_series(const std::vector<int>& caps, int var, const Real& base) {
  const auto jet = sin(Jet<Real>::variable(base, caps[static_cast<std::size_t>(var)]));
  return TruncatedSeries<Real>::univariate(caps, var, std::span<const Real>(jet.coefficients()));
}

inline TruncatedSeries<Real> cos_series(const std::vector<int>& caps, int var, const Real& base) {
  const auto jet = cos(Jet<Real>::variable(base, caps[static_cast<std::size_t>(var)]));
  return TruncatedSeries<Real>::univariate(caps, var, std::span<const Real>(jet.coefficients()));
}

/// sin(z_i - z_j + base) by the addition formula.
inline TruncatedSeries<Real> sin_difference_series(const std::vector<int>& caps, int i, int j,
                                                   const Real& base) {
  return sin_series(caps, i, base) * cos_series(caps, j, Real(0)) -
         cos_series(caps, i, base) * sin_series(caps, j, Real(0));
}

/// m_1! ... m_s! times the coefficient of z^m: the mixed partial derivative at 0.
inline Real mixed_derivative(const TruncatedSeries<Real>& f, const std::vector<int>& m) {
  Real v = f.coefficient(m);
  for (int mk : m) v *= factorial(mk);
  return v;
}

}  // namespace detail

/// Elementary trigonometric functions of the parametrization.
struct Trig {
  Real eta;

  Real a(const Real& lambda, const Real& nu) const { return sin(lambda - nu + eta); }
  Real b(const Real& lambda, const Real& nu) const { return sin(lambda - nu - eta); }
  Real c() const { return sin(2 * eta); }
  Real d(const Real& x, const Real& y) const { return sin(x - y); }
  Real e(const Real& x, const Real& y) const { return sin(x - y + 2 * eta); }
  Real phi(const Real& lambda, const Real& nu) const { return c() / (a(lambda, nu) * b(lambda, nu)); }
};

/// Taylor jet of phi(lambda) = c / (a(lambda) b(lambda)) at nu = 0.
class PhiJet {
 public:
  PhiJet(const Real& lambda, const Real& eta, int order) : lambda_(lambda), eta_(eta) {
    const auto x = Jet<Real>::variable(lambda, order);
    a_ = sin(x + eta);
    b_ = sin(x - eta);
    jet_ = (a_ * b_).reciprocal() * sin(2 * eta);
  }

  int order() const { return jet_.order(); }
  const Jet<Real>& jet() const { return jet_; }
  /// d^m phi / d lambda^m at the base point.
  Real derivative(int m) const { return jet_.derivative(m); }
  Real value() const { return jet_[0]; }
  Real a() const { return a_[0]; }
  Real b() const { return b_[0]; }
  Real c() const { return sin(2 * eta_); }

  /// Hankel matrix [phi^(j+k+shift)] of size n.
  Matrix<Real> hankel(std::size_t n, int shift = 0) const {
    Matrix<Real> m(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(j, k) = derivative(static_cast<int>(j + k) + shift);
    return m;
  }

 private:
  Real lambda_, eta_;
  Jet<Real> a_, b_, jet_;
};

/// Z_N for fully inhomogeneous rapidities.
inline Real ik_partition(const SpectralData<Real>& sp) {
  const std::size_t n = sp.size();
  if (n == 0) return Real(1);
  detail::require_distinct(sp.lambdas, "lambdas");
  detail::require_distinct(sp.nus, "nus");
  const Trig tr{sp.eta};
  Real pref = 1;
  Matrix<Real> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Real a = tr.a(sp.lambdas[j], sp.nus[k]);
      const Real b = tr.b(sp.lambdas[j], sp.nus[k]);
      pref *= a * b;
      m(j, k) = tr.c() / (a * b);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      pref /= tr.d(sp.lambdas[k], sp.lambdas[j]) * tr.d(sp.nus[j], sp.nus[k]);
  return pref * det(m);
}

/// Z_N with every nu = 0 and distinct lambdas.
inline Real partition_column_homogeneous(const std::vector<Real>& lambdas, const Real& eta) {
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) return Real(1);
  detail::require_distinct(lambdas, "lambdas");
  Matrix<Real> m(static_cast<std::size_t>(n));
  Real pref = 1;
  for (int k = 0; k < n; ++k) {
    const PhiJet phi(lambdas[static_cast<std::size_t>(k)], eta, n - 1);
    for (int j = 0; j < n; ++j) m(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = phi.derivative(j);
    pref *= pow(phi.a() * phi.b(), n);
  }
  for (int j = 0; j < n; ++j) {
    pref /= detail::factorial(j);
    for (int k = j + 1; k < n; ++k)
      pref /= sin(lambdas[static_cast<std::size_t>(k)] - lambdas[static_cast<std::size_t>(j)]);
  }
  return pref * det(m);
}

/// Z_N in the fully homogeneous limit.
inline Real homogeneous_partition_jets(int n, const Real& lambda, const Real& eta) {
  if (n < 1) throw BadIndex("lattice size must be positive");
  const PhiJet phi(lambda, eta, 2 * n - 2);
  Real fact = 1;
  for (int k = 1; k < n; ++k) fact *= detail::factorial(k);
  return pow(phi.a() * phi.b(), n * n) * det(phi.hankel(static_cast<std::size_t>(n))) / (fact * fact);
}

/// K_n(x) from the derivatives phi^(0..2n): coefficient i is (-1)^i times
/// the minor of the (n+1) x n matrix [phi^(j+k-1)] (j = 0..n, k = 1..n) with
/// row i deleted, scaled by (-1)^n n! phi^(n+1) / det[phi^(j+k)]_{n+1}.
inline UniPoly<Real> k_polynomial_from_derivatives(int n, const std::vector<Real>& d) {
  if (n < 0) throw BadIndex("K_n needs n >= 0");
  if (static_cast<int>(d.size()) < 2 * n + 1) throw BadIndex("K_n needs 2n + 1 derivatives");
  const auto D = [&](int m) -> const Real& { return d[static_cast<std::size_t>(m)]; };
  const std::size_t sz = static_cast<std::size_t>(n) + 1;
  Matrix<Real> hank(sz);
  for (std::size_t j = 0; j < sz; ++j)
    for (std::size_t k = 0; k < sz; ++k) hank(j, k) = D(static_cast<int>(j + k));
  const Real hd = det(hank);
  Real bound = 1;  // Hadamard bound, for a scale-aware singularity test
  for (std::size_t j = 0; j < sz; ++j) {
    Real row = 0;
    for (std::size_t k = 0; k < sz; ++k) row += hank(j, k) * hank(j, k);
    bound *= sqrt(row);
  }
  if (hd == 0 || detail::negligible(hd, bound))
    throw SingularHankel("det[phi^(j+k)] vanishes for this (lambda, eta)");
  const Real scale = ((n % 2) ? -1 : 1) * detail::factorial(n) * pow(D(0), n + 1) / hd;
  std::vector<Real> coeffs(sz);
  for (int i = 0; i <= n; ++i) {
    Matrix<Real> minor(static_cast<std::size_t>(n));
    std::size_t row = 0;
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      for (int k = 1; k <= n; ++k) minor(row, static_cast<std::size_t>(k - 1)) = D(j + k - 1);
      ++row;
    }
    coeffs[static_cast<std::size_t>(i)] = ((i % 2) ? -1 : 1) * det(minor) * scale;
  }
  return UniPoly<Real>(std::move(coeffs));
}

inline UniPoly<Real> k_polynomial(int n, const Real& lambda, const Real& eta) {
  if (n < 0) throw BadIndex("K_n needs n >= 0");
  const PhiJet phi(lambda, eta, 2 * n);
  std::vector<Real> d;
  for (int m = 0; m <= 2 * n; ++m) d.push_back(phi.derivative(m));
  return k_polynomial_from_derivatives(n, d);
}

/// K(d/de) f at e = 0, for f given by Taylor coefficients f_m.
inline Real apply_k(const UniPoly<Real>& k, const std::vector<Real>& taylor) {
  Real total = 0;
  for (int m = 0; m <= k.degree() && m < static_cast<int>(taylor.size()); ++m)
    total += k[m] * detail::factorial(m) * taylor[static_cast<std::size_t>(m)];
  return total;
}

namespace detail {

// Unnormalized GEFP G~ by the row-removal recurrence; r holds the reduced
// profile and may contain nonpositive entries (then the sum is empty).
inline Real gefp_tilde(const std::vector<Real>& lam, const std::vector<Real>& nu, const Real& eta,
                       const std::vector<int>& r) {
  if (r.empty()) return ik_partition(SpectralData<Real>{lam, nu, eta});
  const Trig tr{eta};
  const int n = static_cast<int>(lam.size());
  const int r1 = r.front();
  if (r1 <= 0) return Real(0);
  Real pref = tr.c();
  for (int k = r1; k < n; ++k) pref *= tr.a(lam[static_cast<std::size_t>(k)], nu[0]);
  std::vector<int> rest;
  for (std::size_t j = 1; j < r.size(); ++j) rest.push_back(r[j] - 1);
  const std::vector<Real> nu_rest(nu.begin() + 1, nu.end());
  Real total = 0;
  for (int j = 0; j < r1; ++j) {
    const Real& lj = lam[static_cast<std::size_t>(j)];
    Real term = 1;
    for (int k = 0; k < r1; ++k) {
      if (k == j) continue;
      const Real& lk = lam[static_cast<std::size_t>(k)];
      term *= tr.b(lk, nu[0]) * tr.e(lk, lj) / tr.d(lk, lj);
    }
    for (int l = 1; l < n; ++l) term *= tr.a(lj, nu[static_cast<std::size_t>(l)]);
    std::vector<Real> lam_rest = lam;
    lam_rest.erase(lam_rest.begin() + j);
    total += term * gefp_tilde(lam_rest, nu_rest, eta, rest);
  }
  return pref * total;
}

inline void check_sizes(const SpectralData<Real>& sp, const YoungProfile& profile) {
  if (static_cast<int>(sp.size()) != profile.n())
    throw BadIndex("spectral data and profile sizes differ");
  detail::require_distinct(sp.lambdas, "lambdas");
  detail::require_distinct(sp.nus, "nus");
}

}  // namespace detail

/// GEFP by s applications of the row-removal recurrence, normalized by Z_N.
inline Real gefp_inhom_recurrence(const SpectralData<Real>& sp, const YoungProfile& profile) {
  detail::check_sizes(sp, profile);
  if (profile.s() == 0) return Real(1);
  return detail::gefp_tilde(sp.lambdas, sp.nus, sp.eta, profile.r()) / ik_partition(sp);
}

/// GEFP from the N x N determinant with shift operators, expanded over the
/// s epsilon columns; the remaining columns form phi-minors shared between
/// terms. Shift operators exp(lambda_j d/de_k) are realized as e_k -> lambda_j;
/// a nonzero `shift` evaluates F(e + shift) at e = lambda - shift instead.
inline Real gefp_inhom_determinant(const SpectralData<Real>& sp, const YoungProfile& profile,
                                   const Real& shift = Real(0), int max_n = kPermutationMaxN) {
  const int n = profile.n();
  if (n > max_n) throw TooLarge("operator determinant is capped at N = " + std::to_string(max_n));
  detail::check_sizes(sp, profile);
  const int s = profile.s();
  if (s == 0) return Real(1);
  const Trig tr{sp.eta};
  const auto& lam = sp.lambdas;
  const auto& nu = sp.nus;
  const auto L = [&](int k) -> const Real& { return lam[static_cast<std::size_t>(k)]; };
  const auto V = [&](int k) -> const Real& { return nu[static_cast<std::size_t>(k)]; };

  Matrix<Real> phi(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) phi(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = tr.phi(L(j), V(k));

  Real pref = 1 / det(phi);
  for (int j = 0; j < s; ++j) {
    for (int k = j + 1; k < n; ++k) pref *= tr.d(V(j), V(k));
    for (int k = 0; k < n; ++k) pref /= k < profile[j] ? tr.a(L(k), V(j)) : tr.b(L(k), V(j));
  }

  auto F = [&](const std::vector<Real>& e0) {
    std::vector<Real> e(e0);
    for (auto& x : e) x += shift;
    Real v = 1;
    for (int j = 0; j < s; ++j)
      for (int k = j + 1; k < s; ++k)
        v *= tr.a(e[static_cast<std::size_t>(j)], V(k)) * tr.b(e[static_cast<std::size_t>(k)], V(j)) /
             tr.e(e[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(k)]);
    for (int j = 0; j < s; ++j) {
      const Real& ej = e[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        v *= k < profile[j] ? tr.e(L(k), ej) : tr.d(L(k), ej);
        v /= tr.b(ej, V(k));
      }
    }
    return v;
  };

  // phi-minors over columns s..n-1, keyed by the bitmask of rows used
  std::unordered_map<std::uint32_t, Real> minors;
  auto minor_det = [&](std::uint32_t used) -> const Real& {
    auto it = minors.find(used);
    if (it != minors.end()) return it->second;
    std::vector<std::size_t> rows, cols;
    for (int j = 0; j < n; ++j)
      if (!(used & (1u << j))) rows.push_back(static_cast<std::size_t>(j));
    for (int k = s; k < n; ++k) cols.push_back(static_cast<std::size_t>(k));
    return minors.emplace(used, det(phi.select(rows, cols))).first->second;
  };

  Real total = 0;
  std::vector<int> chosen(static_cast<std::size_t>(s));
  std::vector<Real> eps(static_cast<std::size_t>(s));
  // Column k < s takes row chosen[k]; only rows below r_k survive, since
  // d(lambda_j, e_k) vanishes at e_k = lambda_j for j >= r_k.
  std::function<void(int, std::uint32_t)> rec = [&](int k, std::uint32_t used) {
    if (k == s) {
      std::vector<std::size_t> perm;
      for (int x : chosen) perm.push_back(static_cast<std::size_t>(x));
      for (int j = 0; j < n; ++j)
        if (!(used & (1u << j))) perm.push_back(static_cast<std::size_t>(j));
      const Real& m = minor_det(used);
      if (m == 0) return;
      for (int q = 0; q < s; ++q) eps[static_cast<std::size_t>(q)] = L(chosen[static_cast<std::size_t>(q)]) - shift;
      total += permutation_sign(perm) * m * F(eps);
      return;
    }
    for (int row = 0; row < profile[k]; ++row) {
      if (used & (1u << row)) continue;
      chosen[static_cast<std::size_t>(k)] = row;
      rec(k + 1, used | (1u << row));
    }
  };
  rec(0, 0);
  return pref * total;
}

/// GEFP in the homogeneous limit: all lambdas equal, all nus zero. The
/// epsilon-function is expanded as an s-variable series at the origin.
inline Real gefp_homogeneous_limit(const YoungProfile& profile, const Real& lambda, const Real& eta,
                                   int max_n = kPermutationMaxN) {
  const int n = profile.n();
  const int s = profile.s();
  if (n > max_n) throw TooLarge("homogeneous limit is capped at N = " + std::to_string(max_n));
  if (s == 0) return Real(1);
  const PhiJet phi(lambda, eta, 2 * n - 2);
  const Real a = phi.a(), b = phi.b();

  const std::vector<int> caps(static_cast<std::size_t>(s), n - 1);
  using TS = TruncatedSeries<Real>;
  TS f = TS::one(caps);
  for (int j = 0; j < s; ++j) {
    for (int k = j + 1; k < s; ++k) {
      f = f * detail::sin_series(caps, j, lambda + eta);
      f = f * detail::sin_series(caps, k, lambda - eta);
      f = f * detail::sin_difference_series(caps, j, k, 2 * eta).inverse();
    }
  }
  for (int j = 0; j < s; ++j) {
    const int rj = profile[j];
    f = f * pow(detail::sin_series(caps, j, Real(0)), static_cast<unsigned>(n - rj));
    f = f * pow(detail::sin_series(caps, j, -2 * eta), static_cast<unsigned>(rj));
    f = f * pow(detail::sin_series(caps, j, lambda - eta).inverse(), static_cast<unsigned>(n));
  }

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> orders(static_cast<std::size_t>(s));
  Real total = 0;
  do {
    Real term = 1;
    for (int k = s; k < n; ++k) term *= phi.derivative(perm[static_cast<std::size_t>(k)] + k - s);
    if (term == 0) continue;
    for (int k = 0; k < s; ++k) orders[static_cast<std::size_t>(k)] = perm[static_cast<std::size_t>(k)];
    std::vector<std::size_t> p(perm.begin(), perm.end());
    total += permutation_sign(p) * term * detail::mixed_derivative(f, orders);
  } while (std::next_permutation(perm.begin(), perm.end()));

  Real pref = ((s * n) % 2) ? -1 : 1;
  for (int j = 1; j <= s; ++j) pref *= detail::factorial(n - j);
  for (int j = 0; j < s; ++j) pref /= pow(a, profile[j]) * pow(b, n - profile[j]);
  pref /= det(phi.hankel(static_cast<std::size_t>(n)));
  return pref * total;
}

}  // namespace gefp
