#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"

namespace gefp {

/// Dense univariate polynomial with ascending coefficients. Trailing zeros are
/// stripped, so the zero polynomial has no coefficients and degree -1.
template <Scalar S>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }
  UniPoly(std::initializer_list<S> coeffs) : c_(coeffs) { normalize(); }

  static UniPoly constant(const S& v) { return UniPoly(std::vector<S>{v}); }
  static UniPoly monomial(int degree, const S& coeff = S(1)) {
    std::vector<S> c(static_cast<std::size_t>(degree) + 1, S(0));
    c.back() = coeff;
    return UniPoly(std::move(c));
  }
  /// z - root
  static UniPoly linear_root(const S& root) { return UniPoly({S(-root), S(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coefficients() const { return c_; }

  /// Coefficient of z^k (zero beyond the degree).
  S operator[](int k) const {
    return (k < 0 || k > degree()) ? S(0) : c_[static_cast<std::size_t>(k)];
  }

  S operator()(const S& z) const {
    S acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const S& s, const UniPoly& a) {
    std::vector<S> c = a.c_;
    for (auto& x : c) x *= s;
    return UniPoly(std::move(c));
  }

  friend UniPoly pow(const UniPoly& base, unsigned e) {
    UniPoly r = UniPoly::constant(S(1));
    for (unsigned k = 0; k < e; ++k) r = r * base;
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<S> c_;
};

/// Quotient and remainder of long division.
template <Scalar S>
std::pair<UniPoly<S>, UniPoly<S>> poly_divmod(const UniPoly<S>& p, const UniPoly<S>& q) {
  if (q.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<S> rem = p.coefficients();
  const int dq = q.degree();
  const int dp = p.degree();
  if (dp < dq) return {UniPoly<S>{}, p};
  std::vector<S> quot(static_cast<std::size_t>(dp - dq) + 1, S(0));
  const S lead = q[dq];
  for (int k = dp - dq; k >= 0; --k) {
    const S f = rem[static_cast<std::size_t>(k + dq)] / lead;
    quot[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k + j)] -= f * q[j];
  }
  rem.resize(static_cast<std::size_t>(dq));
  return {UniPoly<S>(std::move(quot)), UniPoly<S>(std::move(rem))};
}

/// Exact quotient; a nonzero remainder means the caller's algebra is wrong.
template <Scalar S>
UniPoly<S> poly_div_exact(const UniPoly<S>& p, const UniPoly<S>& q) {
  auto [quot, rem] = poly_divmod(p, q);
  if constexpr (is_exact_v<S>) {
    if (!rem.is_zero()) throw NotDivisible("nonzero remainder in exact polynomial division");
  } else {
    Real scale = 0;
    for (const auto& c : p.coefficients()) scale = std::max<Real>(scale, abs(c));
    const Real tol = scale * pow(Real(2), -static_cast<long>(working_precision_bits()) + 16);
    for (const auto& c : rem.coefficients())
      if (abs(c) > tol) throw NotDivisible("nonzero remainder in polynomial division");
  }
  return quot;
}

}  // namespace gefp
