#pragma once

// Boundary correlations H_N^(r) with their generating functions h_N(z) and
// h_{N,s}(z_1, ..., z_s). The jets omega and rho feed the K-operator side.

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gefp/algebra/jet.hpp"
#include "gefp/algebra/matrix.hpp"
#include "gefp/algebra/multipoly.hpp"
#include "gefp/algebra/poly.hpp"
#include "gefp/ik.hpp"
#include "gefp/oracle.hpp"
#include "gefp/params.hpp"

namespace gefp {

/// omega(e) = (a/b) sin e / sin(e - 2 eta) and rho = 1/(omega - 1), with
/// omega~ = t^2 omega / (2 t Delta omega - 1) and rho~ = 1/(1 - omega~),
/// all as jets at e = 0.
template <Scalar S>
struct OmegaRho {
  Jet<S> omega, rho, omega_tilde, rho_tilde;

  /// Builds rho, omega~ and rho~ from omega through the rational relations.
  static OmegaRho from_omega(Jet<S> omega, const S& delta, const S& t) {
    const int d = omega.order();
    const auto one = Jet<S>::constant(S(1), d);
    OmegaRho w;
    w.omega = std::move(omega);
    w.rho = (w.omega - one).reciprocal();
    w.omega_tilde = (t * t * w.omega) / (S(2) * t * delta * w.omega - one);
    w.rho_tilde = (one - w.omega_tilde).reciprocal();
    return w;
  }

  static OmegaRho from_trig(const Real& lambda, const Real& eta, int order)
    requires std::is_same_v<S, Real>
  {
    const Real a = sin(lambda + eta), b = sin(lambda - eta);
    const auto e = Jet<Real>::variable(Real(0), order);
    const auto om = (a / b) * sin(e) / sin(e - 2 * eta);
    return from_omega(om, cos(2 * eta), b / a);
  }

  /// omega~ straight from its trigonometric form (b/a) sin e / sin(e + 2 eta).
  static Jet<Real> omega_tilde_trig(const Real& lambda, const Real& eta, int order) {
    const Real a = sin(lambda + eta), b = sin(lambda - eta);
    const auto e = Jet<Real>::variable(Real(0), order);
    return (b / a) * sin(e) / sin(e + 2 * eta);
  }
};

/// The row-1 boundary distribution H_N^(1..N).
template <Scalar S>
struct HTable {
  int n = 0;
  std::vector<S> values;  // values[r-1] = H_N^(r)
  std::string backend = backend_name<S>();

  const S& operator()(int r) const { return values.at(static_cast<std::size_t>(r - 1)); }
  S sum() const {
    S total = 0;
    for (const auto& v : values) total += v;
    return total;
  }
};

template <Scalar S>
HTable<S> htable_oracle(const WeightGrid<S>& grid) {
  HTable<S> t;
  t.n = grid.n();
  for (int r = 1; r <= t.n; ++r) t.values.push_back(boundary_H_oracle(grid, r).value);
  return t;
}

/// Oracle table at a = 1, b = t, c^2 = 1 + t^2 - 2 t Delta.
template <Scalar S>
HTable<S> htable_oracle(int n, const AnisotropyPoint<S>& p) {
  return htable_oracle(WeightGrid<S>::homogeneous(n, weights_from_anisotropy(p)));
}

/// H_N^(r) = K_{N-1}(d/de) [omega(e)^(N-r) rho(e)^(N-1)] at e = 0.
inline Real boundary_H_via_K(int n, int r, const Real& lambda, const Real& eta) {
  if (r < 1 || r > n) throw BadIndex("boundary index r must satisfy 1 <= r <= N");
  const auto k = k_polynomial(n - 1, lambda, eta);
  const auto w = OmegaRho<Real>::from_trig(lambda, eta, n - 1);
  const auto f = pow(w.omega, static_cast<unsigned>(n - r)) * pow(w.rho, static_cast<unsigned>(n - 1));
  return apply_k(k, f.coefficients());
}

inline HTable<Real> htable_via_K(int n, const Real& lambda, const Real& eta) {
  HTable<Real> t;
  t.n = n;
  for (int r = 1; r <= n; ++r) t.values.push_back(boundary_H_via_K(n, r, lambda, eta));
  return t;
}

/// h_N(z) = sum_r H_N^(r) z^(r-1).
template <Scalar S>
UniPoly<S> h_generating(const HTable<S>& table) {
  return UniPoly<S>(table.values);
}

/// LHS = K_{N-1}(d/de) f(omega(e)) at 0 and RHS = [z^(N-1)] (z-1)^(N-1) h_N(z) f(z),
/// with h_N taken from the enumeration oracle at the matching weights.
inline std::pair<Real, Real> kfint_check(int n, const UniPoly<Real>& f, const Real& lambda, const Real& eta) {
  const auto k = k_polynomial(n - 1, lambda, eta);
  const auto w = OmegaRho<Real>::from_trig(lambda, eta, n - 1);
  const Real lhs = apply_k(k, w.omega.compose_polynomial(f.coefficients()).coefficients());
  const auto grid = WeightGrid<Real>::homogeneous(n, weights_from_trig(lambda, Real(0), eta, true));
  const auto h = h_generating(htable_oracle(grid));
  const auto prod = pow(UniPoly<Real>{Real(-1), Real(1)}, static_cast<unsigned>(n - 1)) * h * f;
  return {lhs, prod[n - 1]};
}

/// h_1, ..., h_N at one parameter point; family[m] = h_m.
template <Scalar S>
struct HFamily {
  std::vector<UniPoly<S>> h;  // h[0] unused

  int max_n() const { return static_cast<int>(h.size()) - 1; }
  const UniPoly<S>& operator[](int m) const {
    if (m < 1 || m > max_n()) throw BadIndex("h_m requested outside the family");
    return h[static_cast<std::size_t>(m)];
  }
};

template <Scalar S>
HFamily<S> h_family_oracle(int n, const AnisotropyPoint<S>& p) {
  HFamily<S> fam;
  fam.h.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) fam.h[static_cast<std::size_t>(m)] = h_generating(htable_oracle(m, p));
  return fam;
}

inline HFamily<Real> h_family_via_K(int n, const Real& lambda, const Real& eta) {
  HFamily<Real> fam;
  fam.h.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) fam.h[static_cast<std::size_t>(m)] = h_generating(htable_via_K(m, lambda, eta));
  return fam;
}

/// The s column functions f_k(z) = z^k (z-1)^(s-1-k) h_{N-k}(z), k = 0..s-1.
template <Scalar S>
std::vector<UniPoly<S>> h_columns(const HFamily<S>& fam, int n, int s) {
  if (s < 0 || s > n) throw BadIndex("h_{N,s} needs 0 <= s <= N");
  std::vector<UniPoly<S>> cols;
  const UniPoly<S> zm1{S(-1), S(1)};
  for (int k = 0; k < s; ++k)
    cols.push_back(UniPoly<S>::monomial(k) * pow(zm1, static_cast<unsigned>(s - 1 - k)) * fam[n - k]);
  return cols;
}

namespace detail {

/// Taylor coefficients p^(i)(x)/i! for i < count.
template <Scalar S>
std::vector<S> taylor_at(UniPoly<S> p, const S& x, int count) {
  std::vector<S> out;
  S fact = 1;
  for (int i = 0; i < count; ++i) {
    if (i > 0) fact *= i;
    out.push_back(p(x) / fact);
    p = p.derivative();
  }
  return out;
}

}  // namespace detail

/// h_{N,s}(z) = det[f_k(z_j)] / prod_{j<k} (z_j - z_k). Coincident arguments
/// use the confluent form: a repeated value contributes Taylor rows to both
/// the numerator and the Vandermonde matrix.
template <Scalar S>
S h_multivariate(const HFamily<S>& fam, int n, const std::vector<S>& z) {
  const int s = static_cast<int>(z.size());
  if (s > n) throw BadIndex("h_{N,s} needs s <= N");
  if (s == 0) return S(1);
  const auto cols = h_columns(fam, n, s);
  std::vector<UniPoly<S>> powers;
  for (int k = 0; k < s; ++k) powers.push_back(UniPoly<S>::monomial(k));

  // group equal arguments, keeping first-appearance order
  std::vector<std::pair<S, int>> groups;
  for (const auto& x : z) {
    bool found = false;
    for (auto& g : groups)
      if (g.first == x) {
        ++g.second;
        found = true;
      }
    if (!found) groups.emplace_back(x, 1);
  }
  Matrix<S> num(static_cast<std::size_t>(s)), van(static_cast<std::size_t>(s));
  std::size_t row = 0;
  for (const auto& [x, mult] : groups) {
    std::vector<std::vector<S>> fr, vr;
    for (int k = 0; k < s; ++k) {
      fr.push_back(detail::taylor_at(cols[static_cast<std::size_t>(k)], x, mult));
      vr.push_back(detail::taylor_at(powers[static_cast<std::size_t>(k)], x, mult));
    }
    for (int i = 0; i < mult; ++i, ++row)
      for (int k = 0; k < s; ++k) {
        num(row, static_cast<std::size_t>(k)) = fr[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        van(row, static_cast<std::size_t>(k)) = vr[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      }
  }
  // det[z_j^k] = prod_{j<k} (z_k - z_j) = (-1)^(s(s-1)/2) prod_{j<k} (z_j - z_k)
  const S sign = ((s * (s - 1) / 2) % 2) ? S(-1) : S(1);
  return sign * det(num) / det(van);
}

/// Coefficients of the numerator det[f_k(z_j)] inside the box `caps`:
/// the coefficient of z^e is det[[z^(e_j)] f_k].
template <Scalar S>
MultiPoly<S> h_numerator(const std::vector<UniPoly<S>>& cols, const std::vector<int>& caps) {
  const std::size_t s = cols.size();
  MultiPoly<S> out(caps);
  const auto table = out.exponent_table();
  Matrix<S> m(s);
  for (std::size_t off = 0; off < out.size(); ++off) {
    bool zero_row = false;
    for (std::size_t j = 0; j < s && !zero_row; ++j) {
      bool any = false;
      for (std::size_t k = 0; k < s; ++k) {
        m(j, k) = cols[k][table[off * s + j]];
        any = any || m(j, k) != 0;
      }
      zero_row = !any;
    }
    if (!zero_row) out.at_flat(off) = det(m);
  }
  return out;
}

/// h_{N,s} as an explicit polynomial, by exact division of the numerator by
/// every z_j - z_k. The box has side N + s - 2 (the numerator's degree bound).
template <Scalar S>
MultiPoly<S> h_multivariate_symbolic(const HFamily<S>& fam, int n, int s) {
  if (s < 0 || s > n) throw BadIndex("h_{N,s} needs 0 <= s <= N");
  if (s == 0) return MultiPoly<S>::one({});
  const std::vector<int> caps(static_cast<std::size_t>(s), n + s - 2);
  MultiPoly<S> p = h_numerator(h_columns(fam, n, s), caps);
  for (int j = 0; j < s; ++j)
    for (int k = j + 1; k < s; ++k) p = divide_by_difference(p, j, k);
  return p;
}

/// The point z_s = (2 Delta t z_j - 1)/(t^2 z_j) substituted into h_{N,s}.
/// With D the degree bound N - 1, `numerator` is (t^2 z_j)^D h in the
/// remaining s - 1 variables, and `order` is the lowest power of z_j in h
/// (numerator order minus D).
template <Scalar S>
struct SimpleZeroReport {
  MultiPoly<S> numerator;
  int order = 0;
  bool vanishes = false;  // order >= 1
};

template <Scalar S>
SimpleZeroReport<S> simple_zero_substitution(const MultiPoly<S>& h, int n, int j, const S& delta, const S& t) {
  const int s = static_cast<int>(h.variables());
  if (s < 2 || j < 0 || j >= s - 1) throw BadIndex("substitution needs s >= 2 and j < s");
  const int deg = n - 1;
  const int last = s - 1;
  if (degree_in(h, last) > deg) throw NotDivisible("h_{N,s} exceeds its degree bound");
  std::vector<int> caps;
  for (int d = 0; d < last; ++d) caps.push_back(h.caps()[static_cast<std::size_t>(d)] + (d == j ? deg : 0));
  MultiPoly<S> out(caps);
  // (2 Delta t z_j - 1)^m (t^2 z_j)^(deg - m) as a polynomial in z_j
  std::vector<UniPoly<S>> sub;
  const UniPoly<S> lin{S(-1), S(2) * delta * t};
  const UniPoly<S> t2z = UniPoly<S>::monomial(1, t * t);
  for (int m = 0; m <= deg; ++m)
    sub.push_back(pow(lin, static_cast<unsigned>(m)) * pow(t2z, static_cast<unsigned>(deg - m)));
  const auto table = h.exponent_table();
  std::vector<int> e(static_cast<std::size_t>(last));
  for (std::size_t off = 0; off < h.size(); ++off) {
    const S& c = h.at_flat(off);
    if (c == 0) continue;
    const int* ex = &table[off * static_cast<std::size_t>(s)];
    const auto& poly = sub[static_cast<std::size_t>(ex[last])];
    for (int q = 0; q <= poly.degree(); ++q) {
      if (poly[q] == 0) continue;
      for (int d = 0; d < last; ++d) e[static_cast<std::size_t>(d)] = ex[d];
      e[static_cast<std::size_t>(j)] += q;
      out[e] += c * poly[q];
    }
  }
  SimpleZeroReport<S> rep;
  int low = -1;
  const auto otable = out.exponent_table();
  for (std::size_t off = 0; off < out.size(); ++off) {
    if (out.at_flat(off) == 0) continue;
    const int ej = otable[off * static_cast<std::size_t>(last) + static_cast<std::size_t>(j)];
    if (low < 0 || ej < low) low = ej;
  }
  rep.numerator = std::move(out);
  rep.order = low < 0 ? std::numeric_limits<int>::max() : low - deg;
  rep.vanishes = rep.order >= 1;
  return rep;
}

/// z -> rapidity on the principal branch: with w = t z,
/// lambda_j = atan(tan(eta) (1 + w) / (1 - w)).
inline Real rapidity_from_z(const Real& z, const Real& lambda, const Real& eta) {
  const Real t = sin(lambda - eta) / sin(lambda + eta);
  const Real w = t * z;
  if (detail::negligible(1 - w)) throw BranchPole("t z = 1 sends the rapidity to the branch point");
  return atan(tan(eta) * (1 + w) / (1 - w));
}

/// Rapidity -> z: the ratio (a/b) b(lambda_j)/a(lambda_j).
inline Real z_from_rapidity(const Real& lambda_j, const Real& lambda, const Real& eta) {
  return sin(lambda + eta) / sin(lambda - eta) * sin(lambda_j - eta) / sin(lambda_j + eta);
}

/// h_{N,N}(z) = [Z_N(lambda_1..lambda_N) / Z_N] prod_j (a / a(lambda_j))^(N-1),
/// with Z_N(lambda) the column-inhomogeneous partition function (all nu = 0).
inline Real h_via_inhomogeneous_Z(const std::vector<Real>& z, const Real& lambda, const Real& eta) {
  const int n = static_cast<int>(z.size());
  if (n == 0) return Real(1);
  std::vector<Real> lams;
  for (const auto& x : z) lams.push_back(rapidity_from_z(x, lambda, eta));
  const Real a = sin(lambda + eta);
  Real ratio = partition_column_homogeneous(lams, eta) / homogeneous_partition_jets(n, lambda, eta);
  for (const auto& l : lams) ratio *= pow(a / sin(l + eta), n - 1);
  return ratio;
}

}  // namespace gefp
