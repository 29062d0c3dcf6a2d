#pragma once

// A six-vertex point given either by its Boltzmann weights (a, b, c) or by
// (Delta, t). Trigonometric data (lambda, nu, eta) map onto both.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"

namespace gefp {

/// Weights of the vertex pairs {1,2}, {3,4}, {5,6}. The exact backend may
/// know c only through c^2; every probability depends on c^2 alone because
/// each configuration has exactly N more type-5 than type-6 vertices.
template <Scalar S>
struct VertexWeights {
  S a;
  S b;
  S c_squared;
  std::optional<S> c;
  bool allow_nonphysical = false;

  static VertexWeights from_abc(S a, S b, S c, bool allow_nonphysical = false) {
    VertexWeights w{a, b, c * c, c, allow_nonphysical};
    w.validate();
    return w;
  }
  static VertexWeights from_ab_c2(S a, S b, S c_squared, bool allow_nonphysical = false) {
    VertexWeights w{a, b, c_squared, std::nullopt, allow_nonphysical};
    if constexpr (!is_exact_v<S>) {
      if (c_squared > 0) w.c = sqrt(c_squared);
    }
    w.validate();
    return w;
  }

  void validate() const {
    if (allow_nonphysical) {
      if (a == 0 || b == 0 || c_squared == 0)
        throw NonphysicalWeights("weights must be nonzero");
      return;
    }
    if (!(a > 0) || !(b > 0) || !(c_squared > 0) || (c && !(*c > 0)))
      throw NonphysicalWeights("physical weights require a, b, c > 0");
  }
};

template <Scalar S>
struct AnisotropyPoint {
  S delta;
  S t;
  bool allow_nonphysical = false;

  static AnisotropyPoint make(S delta, S t, bool allow_nonphysical = false) {
    AnisotropyPoint p{std::move(delta), std::move(t), allow_nonphysical};
    p.validate();
    return p;
  }

  /// c^2 / a^2 = 1 + t^2 - 2 t Delta.
  S c_squared_ratio() const { return S(1) + t * t - S(2) * t * delta; }

  void validate() const {
    if (t == 0) throw NonphysicalWeights("t = b/a must be nonzero");
    if (allow_nonphysical) {
      if (c_squared_ratio() == 0) throw NonphysicalWeights("c must be nonzero");
      return;
    }
    if (!(t > 0)) throw NonphysicalWeights("physical regime requires t > 0");
    if (!(c_squared_ratio() > 0))
      throw NonphysicalWeights("physical regime requires 1 + t^2 - 2 t Delta > 0");
  }
};

template <Scalar S>
struct SpectralData {
  std::vector<S> lambdas;  // one per vertical line, counted from the right
  std::vector<S> nus;      // one per horizontal line, counted from the top
  S eta;

  std::size_t size() const { return lambdas.size(); }

  static SpectralData make(std::vector<S> lambdas, std::vector<S> nus, S eta) {
    if (lambdas.size() != nus.size())
      throw BadIndex("lambda and nu lists must have equal length");
    return {std::move(lambdas), std::move(nus), std::move(eta)};
  }
};

template <Scalar S>
AnisotropyPoint<S> delta_t_from_weights(const VertexWeights<S>& w) {
  if (w.a == 0 || w.b == 0) throw DivisionByZero("Delta and t need nonzero a and b");
  AnisotropyPoint<S> p;
  p.delta = (w.a * w.a + w.b * w.b - w.c_squared) / (S(2) * w.a * w.b);
  p.t = w.b / w.a;
  p.allow_nonphysical = w.allow_nonphysical;
  return p;
}

/// Representative weights a = 1, b = t, c^2 = 1 + t^2 - 2 t Delta.
template <Scalar S>
VertexWeights<S> weights_from_anisotropy(const AnisotropyPoint<S>& p) {
  return VertexWeights<S>::from_ab_c2(S(1), p.t, p.c_squared_ratio(), p.allow_nonphysical);
}

/// a = sin(lambda - nu + eta), b = sin(lambda - nu - eta), c = sin(2 eta).
inline VertexWeights<Real> weights_from_trig(const Real& lambda, const Real& nu, const Real& eta,
                                             bool allow_nonphysical = false) {
  const Real a = sin(lambda - nu + eta);
  const Real b = sin(lambda - nu - eta);
  const Real c = sin(2 * eta);
  if (!allow_nonphysical && (!(a > 0) || !(b > 0) || !(c > 0)))
    throw NonphysicalWeights("trigonometric weights are not all positive");
  return VertexWeights<Real>::from_abc(a, b, c, allow_nonphysical);
}

/// Delta = cos(2 eta), t = sin(lambda - eta) / sin(lambda + eta) at nu = 0.
inline AnisotropyPoint<Real> anisotropy_from_trig(const Real& lambda, const Real& eta,
                                                  bool allow_nonphysical = false) {
  const Real a = sin(lambda + eta);
  if (a == 0) throw DivisionByZero("sin(lambda + eta) vanishes");
  AnisotropyPoint<Real> p{cos(2 * eta), sin(lambda - eta) / a, allow_nonphysical};
  p.validate();
  return p;
}

}  // namespace gefp
