#pragma once

// Homogeneous GEFP engines: coefficient extraction from the multiple
// integral representation (exact or float), and the s x s K-operator
// determinant (float, trigonometric parameters).

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gefp/algebra/matrix.hpp"
#include "gefp/algebra/multipoly.hpp"
#include "gefp/algebra/series.hpp"
#include "gefp/hfun.hpp"
#include "gefp/ik.hpp"
#include "gefp/oracle.hpp"
#include "gefp/params.hpp"
#include "gefp/result.hpp"
#include "gefp/young.hpp"

namespace gefp {

inline constexpr int kDeterminantMaxS = 6;

namespace detail {

template <Scalar S>
std::map<std::string, std::string> anisotropy_echo(const AnisotropyPoint<S>& p) {
  return {{"delta", to_string(p.delta)}, {"t", to_string(p.t)}};
}

inline std::map<std::string, std::string> trig_echo(const Real& lambda, const Real& eta) {
  return {{"lambda", to_string(lambda)}, {"eta", to_string(eta)}};
}

/// [(t^2 - 2 Delta t) z + 1]^p (z - 1)^(-q) as a univariate series to `cap`.
template <Scalar S>
std::vector<S> single_factor(const S& delta, const S& t, int p, int q, int cap) {
  const UniPoly<S> lin{S(1), t * t - S(2) * delta * t};
  const UniPoly<S> num = pow(lin, static_cast<unsigned>(p));
  // (z - 1)^(-q) = (-1)^q sum_n binom(n + q - 1, q - 1) z^n
  std::vector<S> inv(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n) {
    S binom = 1;
    for (int i = 1; i < q; ++i) binom = binom * S(n + i) / S(i);
    inv[static_cast<std::size_t>(n)] = (q % 2 ? S(-1) : S(1)) * binom;
  }
  std::vector<S> out(static_cast<std::size_t>(cap) + 1, S(0));
  for (int a = 0; a <= num.degree() && a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b) out[static_cast<std::size_t>(a + b)] += num[a] * inv[static_cast<std::size_t>(b)];
  return out;
}

/// 1 / (t^2 z_j z_k - 2 Delta t z_j + 1) inside the box.
template <Scalar S>
TruncatedSeries<S> pair_factor_inverse(const std::vector<int>& caps, int j, int k, const S& delta, const S& t) {
  TruncatedSeries<S> f = TruncatedSeries<S>::one(caps);
  std::vector<int> e(caps.size(), 0);
  e[static_cast<std::size_t>(j)] = 1;
  if (caps[static_cast<std::size_t>(j)] >= 1) {
    f[e] += S(-2) * delta * t;
    e[static_cast<std::size_t>(k)] = 1;
    if (caps[static_cast<std::size_t>(k)] >= 1) f[e] += t * t;
  }
  return f.inverse();
}

/// The part of the integrand that does not involve h:
/// prod_j [(t^2 - 2 Delta t) z_j + 1]^(s-j) (z_j - 1)^(-(s-j+1))
/// times prod_{j<k} 1/(t^2 z_j z_k - 2 Delta t z_j + 1), j 1-based.
template <Scalar S>
TruncatedSeries<S> integrand_kernel(const std::vector<int>& caps, const S& delta, const S& t) {
  const int s = static_cast<int>(caps.size());
  TruncatedSeries<S> g = TruncatedSeries<S>::one(caps);
  for (int j = 0; j < s; ++j) {
    const auto u = single_factor(delta, t, s - 1 - j, s - j, caps[static_cast<std::size_t>(j)]);
    g = g * TruncatedSeries<S>::univariate(caps, j, std::span<const S>(u));
  }
  for (int j = 0; j < s; ++j)
    for (int k = j + 1; k < s; ++k) g = g * pair_factor_inverse(caps, j, k, delta, t);
  return g;
}

/// sum_{e <= caps} g[caps - e] * n[e]: the top coefficient of g * n.
template <Scalar S>
S top_coefficient(const TruncatedSeries<S>& g, const TruncatedSeries<S>& n) {
  const std::size_t top = g.size() - 1;
  S total = 0;
  for (std::size_t e = 0; e <= top; ++e) {
    const S& ne = n.at_flat(e);
    if (ne == 0) continue;
    const S& ge = g.at_flat(top - e);
    if (ge == 0) continue;
    total += ge * ne;
  }
  return total;
}

}  // namespace detail

/// G = (-1)^s [prod_j z_j^(r_j - 1)] of the integrand's analytic part. The
/// Vandermonde product times h_{N,s} is the determinant det[f_k(z_j)], so
/// the coefficient is a sum of small determinants and nothing is divided.
template <Scalar S>
CorrelationResult<S> gefp_residue(const YoungProfile& profile, const AnisotropyPoint<S>& point,
                                  const HFamily<S>* family = nullptr) {
  const int n = profile.n();
  const int s = profile.s();
  auto res = make_result<S>(S(1), "gefp", "residue", n, profile.r());
  res.parameters = detail::anisotropy_echo(point);
  if (s == 0) return res;
  std::optional<HFamily<S>> own;
  if (!family || family->max_n() < n) {
    own = h_family_oracle(n, point);
    family = &*own;
  }
  std::vector<int> caps;
  for (int rj : profile.r()) caps.push_back(rj - 1);
  const auto kernel = detail::integrand_kernel(caps, point.delta, point.t);
  const auto numer = h_numerator(h_columns(*family, n, s), caps);
  const S coeff = detail::top_coefficient(kernel, numer);
  res.value = (s % 2 ? S(-1) : S(1)) * coeff;
  return res;
}

/// G = (-1)^s det[K_{N-s+j}(d/de_k)] F(e) at e = 0, with
/// F = prod_{j<k} 1/(rho~(e_j) rho(e_k) (omega~(e_j) omega(e_k) - 1))
///   * prod_j omega(e_j)^(N-r_j) rho(e_j)^N.
/// Operators on distinct variables commute, so the determinant expands into
/// F's Taylor coefficients weighted by determinants of K coefficients.
inline CorrelationResult<Real> gefp_determinant_jets(const YoungProfile& profile, const Real& lambda,
                                                     const Real& eta) {
  const int n = profile.n();
  const int s = profile.s();
  if (s > kDeterminantMaxS) throw TooLarge("operator determinant is capped at s = 6");
  auto res = make_result<Real>(Real(1), "gefp", "determinant", n, profile.r());
  res.parameters = detail::trig_echo(lambda, eta);
  if (s == 0) return res;

  std::vector<UniPoly<Real>> ks;
  for (int i = 0; i < s; ++i) ks.push_back(k_polynomial(n - s + i, lambda, eta));
  const auto w = OmegaRho<Real>::from_trig(lambda, eta, n - 1);
  const std::vector<int> caps(static_cast<std::size_t>(s), n - 1);
  using TS = TruncatedSeries<Real>;
  auto embed = [&](const Jet<Real>& j, int var) {
    return TS::univariate(caps, var, std::span<const Real>(j.coefficients()));
  };
  TS f = TS::one(caps);
  for (int j = 0; j < s; ++j) {
    f = f * embed(pow(w.omega, static_cast<unsigned>(n - profile[j])), j);
    f = f * embed(pow(w.rho, static_cast<unsigned>(n)), j);
  }
  for (int j = 0; j < s; ++j) {
    for (int k = j + 1; k < s; ++k) {
      TS denom = embed(w.rho_tilde, j) * embed(w.rho, k) *
                 (embed(w.omega_tilde, j) * embed(w.omega, k) - TS::one(caps));
      f = f * denom.inverse();
    }
  }
  const auto table = f.exponent_table();
  Matrix<Real> m(static_cast<std::size_t>(s));
  Real total = 0;
  for (std::size_t off = 0; off < f.size(); ++off) {
    if (f.at_flat(off) == 0) continue;
    Real weight = f.at_flat(off);
    for (int k = 0; k < s; ++k) {
      const int mk = table[off * static_cast<std::size_t>(s) + static_cast<std::size_t>(k)];
      weight *= detail::factorial(mk);
      for (int i = 0; i < s; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = ks[static_cast<std::size_t>(i)][mk];
    }
    total += weight * det(m);
  }
  res.value = (s % 2 ? -1 : 1) * total;
  return res;
}

enum class Engine { Oracle, Residue, Determinant, HomogeneousLimit };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Oracle: return "oracle";
    case Engine::Residue: return "residue";
    case Engine::Determinant: return "determinant";
    case Engine::HomogeneousLimit: return "homlim";
  }
  return "?";
}

/// EFP: the constant profile (r, ..., r) of length s, where the integrand
/// carries (z_1 ... z_s)^r in place of prod z_j^(r_j).
template <Scalar S>
CorrelationResult<S> efp_special_case(int n, int s, int r, const AnisotropyPoint<S>& point,
                                      Engine engine = Engine::Residue) {
  if (r < 1 || r > n) throw BadIndex("EFP column must satisfy 1 <= r <= N");
  const auto profile = YoungProfile::constant(n, s, r);
  CorrelationResult<S> res;
  switch (engine) {
    case Engine::Residue: res = gefp_residue(profile, point); break;
    case Engine::Oracle: {
      res = gefp_oracle(WeightGrid<S>::homogeneous(n, weights_from_anisotropy(point)), profile);
      res.parameters = detail::anisotropy_echo(point);
      break;
    }
    default: throw Unsupported(std::string("engine '") + engine_name(engine) + "' needs trigonometric parameters");
  }
  res.quantity = "efp";
  return res;
}

inline CorrelationResult<Real> efp_special_case(int n, int s, int r, const Real& lambda, const Real& eta,
                                                Engine engine = Engine::Determinant) {
  if (r < 1 || r > n) throw BadIndex("EFP column must satisfy 1 <= r <= N");
  const auto profile = YoungProfile::constant(n, s, r);
  CorrelationResult<Real> res;
  switch (engine) {
    case Engine::Determinant: res = gefp_determinant_jets(profile, lambda, eta); break;
    case Engine::HomogeneousLimit:
      res = make_result<Real>(gefp_homogeneous_limit(profile, lambda, eta), "gefp", "homlim", n, profile.r());
      res.parameters = detail::trig_echo(lambda, eta);
      break;
    case Engine::Oracle:
      res = gefp_oracle(WeightGrid<Real>::homogeneous(n, weights_from_trig(lambda, Real(0), eta)), profile);
      res.parameters = detail::trig_echo(lambda, eta);
      break;
    case Engine::Residue:
      res = gefp_residue(profile, anisotropy_from_trig(lambda, eta));
      res.parameters = detail::trig_echo(lambda, eta);
      break;
  }
  res.quantity = "efp";
  return res;
}

/// Outcome of deforming the z_s contour when r_s = N.
struct PoleDeformationReport {
  Rational value;            // G for the full profile
  Rational reduced_value;    // G for the profile without its last entry
  Rational from_unit_pole;   // contribution of the pole at z_s = 1
  std::vector<int> pole_orders;  // per j < s: order at z_j = 0 of the z_s residue at the moving pole
  bool infinity_decays = false;  // integrand is O(z_s^-2) at infinity
  bool balanced = false;
};

namespace detail {

/// A rational function of one variable as numerator / denominator.
struct RatFn {
  UniPoly<Rational> num = UniPoly<Rational>::constant(1);
  UniPoly<Rational> den = UniPoly<Rational>::constant(1);

  RatFn& operator*=(const RatFn& o) {
    num = num * o.num;
    den = den * o.den;
    return *this;
  }
  static RatFn ratio(UniPoly<Rational> n, UniPoly<Rational> d) { return {std::move(n), std::move(d)}; }

  /// Order of vanishing at 0 (max int for the zero function).
  int order() const {
    if (num.is_zero()) return std::numeric_limits<int>::max();
    auto low = [](const UniPoly<Rational>& p) {
      int k = 0;
      while (p[k] == 0) ++k;
      return k;
    };
    if (den.is_zero()) throw DivisionByZero("zero denominator in residue bookkeeping");
    return low(num) - low(den);
  }
};

}  // namespace detail

/// Deforms the z_s contour for a profile ending in r_s = N. The pole at
/// z_s = 1 must reproduce the shorter profile. At the moving poles
/// z_s = (2 Delta t z_j - 1)/(t^2 z_j) the residue must stay analytic at
/// z_j = 0, where the z_j integral then sees no pole.
inline PoleDeformationReport pole_deformation_check(const YoungProfile& profile, const AnisotropyPoint<Rational>& point) {
  const int n = profile.n();
  const int s = profile.s();
  if (s < 1 || profile[s - 1] != n) throw BadIndex("pole deformation needs a profile ending in r_s = N");
  const Rational& delta = point.delta;
  const Rational& t = point.t;
  const auto family = h_family_oracle(n, point);
  PoleDeformationReport rep;
  rep.value = gefp_residue(profile, point, &family).value;
  rep.reduced_value = gefp_residue(profile.without_last(), point, &family).value;

  const auto h = h_multivariate_symbolic(family, n, s);
  const int last = s - 1;
  rep.infinity_decays = degree_in(h, last) <= n - 1;

  // (i) residue at z_s = 1 of the z_s integrand (1/z_s^N and the pair
  // factors evaluated there), then the remaining coefficient extraction
  {
    std::vector<int> caps;
    for (int j = 0; j < last; ++j) caps.push_back(profile[j] - 1);
    MultiPoly<Rational> h1 = substitute(h, last, Rational(1));
    h1 = truncate_to(h1, caps);
    TruncatedSeries<Rational> g = TruncatedSeries<Rational>::one(caps);
    for (int j = 0; j < last; ++j) {
      const auto u = detail::single_factor(delta, t, s - 1 - j, s - j, caps[static_cast<std::size_t>(j)]);
      g = g * TruncatedSeries<Rational>::univariate(caps, j, std::span<const Rational>(u));
      // (z_j - 1) / ((t^2 - 2 Delta t) z_j + 1)
      const std::vector<Rational> lin{Rational(-1), Rational(1)};
      const std::vector<Rational> den{Rational(1), t * t - 2 * delta * t};
      g = g * TruncatedSeries<Rational>::univariate(caps, j, std::span<const Rational>(lin));
      g = g * TruncatedSeries<Rational>::univariate(caps, j, std::span<const Rational>(den)).inverse();
    }
    for (int j = 0; j < last; ++j) {
      for (int k = j + 1; k < last; ++k) {
        auto zj = TruncatedSeries<Rational>::monomial(caps, j, 1);
        auto zk = TruncatedSeries<Rational>::monomial(caps, k, 1);
        g = g * (zj - zk) * detail::pair_factor_inverse(caps, j, k, delta, t);
      }
    }
    const Rational coeff = last == 0 ? h1.at_flat(0) * g.at_flat(0) : (g * h1).at_flat((g * h1).size() - 1);
    // G = (-1)^s Res_0 = (-1)^s (-Res_1 - sum_j Res_{p_j} - Res_inf)
    rep.from_unit_pole = (s % 2 ? Rational(1) : Rational(-1)) * coeff;
  }

  // (ii) the moving poles, with the spectator variables at sample rationals
  using P = UniPoly<Rational>;
  for (int j = 0; j < last; ++j) {
    std::vector<Rational> zval(static_cast<std::size_t>(s));
    for (int k = 0; k < last; ++k) zval[static_cast<std::size_t>(k)] = Rational(k + 2, 2 * k + 7);
    const P w = P::monomial(1);
    const P pz{Rational(-1), 2 * delta * t};  // z_s = pz / qz
    const P qz = P::monomial(1, t * t);
    auto var = [&](int k) { return k == j ? w : P::constant(zval[static_cast<std::size_t>(k)]); };
    detail::RatFn fn;
    // single-variable factors of z_1..z_{s-1}, and 1/z_j^(r_j) (spectators are constants)
    for (int k = 0; k < last; ++k) {
      const P zk = var(k);
      const P lin = P::constant(1) + (t * t - 2 * delta * t) * zk;
      fn *= detail::RatFn::ratio(pow(lin, static_cast<unsigned>(s - 1 - k)),
                                 pow(zk - P::constant(1), static_cast<unsigned>(s - k)));
    }
    fn *= detail::RatFn::ratio(P::constant(1), P::monomial(profile[j]));
    // z_s factors: 1/(z_s - 1) and 1/z_s^N
    fn *= detail::RatFn::ratio(qz, pz - qz);
    fn *= detail::RatFn::ratio(pow(qz, static_cast<unsigned>(n)), pow(pz, static_cast<unsigned>(n)));
    // pairs among z_1..z_{s-1}
    for (int a = 0; a < last; ++a)
      for (int b = a + 1; b < last; ++b)
        fn *= detail::RatFn::ratio(var(a) - var(b),
                                   t * t * var(a) * var(b) - 2 * delta * t * var(a) + P::constant(1));
    // pairs with z_s; the (j, s) denominator is replaced by its residue 1/(t^2 z_j)
    for (int a = 0; a < last; ++a) {
      const P za = var(a);
      if (a == j) {
        fn *= detail::RatFn::ratio(za * qz - pz, qz * P::monomial(1, t * t));
      } else {
        fn *= detail::RatFn::ratio(za * qz - pz, t * t * za * pz + (P::constant(1) - 2 * delta * t * za) * qz);
      }
    }
    // h with z_j = w, spectators fixed and z_s = pz / qz, times qz^(N-1)
    {
      const int deg = n - 1;
      const auto table = h.exponent_table();
      P acc;
      for (std::size_t off = 0; off < h.size(); ++off) {
        const Rational& c = h.at_flat(off);
        if (c == 0) continue;
        P term = P::constant(c);
        for (int k = 0; k < last; ++k)
          term = term * pow(var(k), static_cast<unsigned>(table[off * static_cast<std::size_t>(s) + static_cast<std::size_t>(k)]));
        const int bs = table[off * static_cast<std::size_t>(s) + static_cast<std::size_t>(last)];
        term = term * pow(pz, static_cast<unsigned>(bs)) * pow(qz, static_cast<unsigned>(deg - bs));
        acc = acc + term;
      }
      fn *= detail::RatFn::ratio(acc, pow(qz, static_cast<unsigned>(deg)));
    }
    rep.pole_orders.push_back(fn.order());
  }

  bool poles_ok = true;
  for (int ord : rep.pole_orders) poles_ok = poles_ok && ord >= 0;
  rep.balanced = rep.infinity_decays && poles_ok && rep.from_unit_pole == rep.reduced_value &&
                 rep.value == rep.reduced_value;
  return rep;
}

}  // namespace gefp
