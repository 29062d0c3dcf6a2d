#pragma once

// Univariate truncated Taylor series ("jets") around a base point. A Jet of
// order D stores c_0..c_D with f(x0 + h) = sum_k c_k h^k + O(h^{D+1}), so the
// m-th derivative at the base point is m! * c_m.

#include <cstddef>
#include <utility>
#include <vector>

#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"

namespace gefp {

template <Scalar S>
class Jet {
 public:
  Jet() : c_(1, S(0)) {}
  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, S(0)) {
    if (order < 0) throw BadIndex("negative jet order");
  }

  static Jet constant(const S& value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
  }

  /// The identity function x0 + h.
  static Jet variable(const S& base, int order) {
    Jet j(order);
    j.c_[0] = base;
    if (order >= 1) j.c_[1] = S(1);
    return j;
  }

  static Jet from_coefficients(std::vector<S> coeffs) {
    if (coeffs.empty()) throw BadIndex("empty jet");
    Jet j;
    j.c_ = std::move(coeffs);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const S& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  S& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<S>& coefficients() const { return c_; }

  /// m-th derivative at the base point.
  S derivative(int m) const {
    S f = c_[static_cast<std::size_t>(m)];
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator+=(const S& s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, const S& s) { return a += s; }
  friend Jet operator-(Jet a, const S& s) { return a += S(-s); }
  friend Jet operator*(Jet a, const S& s) { return a *= s; }
  friend Jet operator*(const S& s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet out(a.order());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < a.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  /// 1/f; requires an invertible constant term.
  Jet reciprocal() const {
    if (c_[0] == 0) throw NotInvertible("jet with zero constant term");
    Jet out(order());
    const S inv0 = S(1) / c_[0];
    out.c_[0] = inv0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      S acc = 0;
      for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
      out.c_[k] = -acc * inv0;
    }
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  friend Jet pow(Jet base, unsigned exponent) {
    Jet result = Jet::constant(S(1), base.order());
    while (exponent > 0) {
      if (exponent & 1u) result = result * base;
      exponent >>= 1u;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  /// p(f) for a polynomial p given by ascending coefficients (Horner).
  Jet compose_polynomial(const std::vector<S>& p) const {
    Jet out(order());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      out = out * *this;
      out.c_[0] += *it;
    }
    return out;
  }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw BadIndex("jet order mismatch");
  }

  std::vector<S> c_;
};

/// sin and cos of a jet, from s' = c u', c' = -s u'.
inline std::pair<Jet<Real>, Jet<Real>> sin_cos(const Jet<Real>& u) {
  const int d = u.order();
  Jet<Real> s(d), c(d);
  s[0] = sin(u[0]);
  c[0] = cos(u[0]);
  for (int k = 1; k <= d; ++k) {
    Real sk = 0, ck = 0;
    for (int j = 1; j <= k; ++j) {
      const Real ju = j * u[j];
      sk += ju * c[k - j];
      ck -= ju * s[k - j];
    }
    s[k] = sk / k;
    c[k] = ck / k;
  }
  return {std::move(s), std::move(c)};
}

inline Jet<Real> sin(const Jet<Real>& u) { return sin_cos(u).first; }
inline Jet<Real> cos(const Jet<Real>& u) { return sin_cos(u).second; }

}  // namespace gefp
