#pragma once

// Exact operations on dense multivariate polynomials stored in a
// TruncatedSeries whose caps bound the degrees.

#include <cstddef>
#include <vector>

#include "gefp/algebra/series.hpp"

namespace gefp {

template <Scalar S>
using MultiPoly = TruncatedSeries<S>;

/// Degree of p in one variable (-1 for the zero polynomial).
template <Scalar S>
int degree_in(const MultiPoly<S>& p, int var) {
  const std::size_t nv = p.variables();
  const std::vector<int> table = p.exponent_table();
  int deg = -1;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.at_flat(k) != 0) deg = std::max(deg, table[k * nv + static_cast<std::size_t>(var)]);
  return deg;
}

/// p / (z_i - z_j), throwing NotDivisible unless the division is exact.
template <Scalar S>
MultiPoly<S> divide_by_difference(const MultiPoly<S>& p, int i, int j) {
  if (i == j) throw BadIndex("divide_by_difference needs distinct variables");
  const auto& caps = p.caps();
  const std::size_t nv = caps.size();
  const int ci = caps[static_cast<std::size_t>(i)];
  const int cj = caps[static_cast<std::size_t>(j)];
  // Write p = sum_a P_a z_i^a and q = sum_a Q_a z_i^a; then
  // P_a = Q_{a-1} - z_j Q_a, so Q_{a-1} = P_a + z_j Q_a from the top down.
  MultiPoly<S> q(caps);
  const std::vector<int> table = p.exponent_table();
  std::vector<int> e(nv);
  auto slice_add = [&](int a_dst, int a_src, bool from_p, bool shift_j) {
    // q[z_i^a_dst] += (from_p ? p : q)[z_i^a_src] * (shift_j ? z_j : 1)
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (table[k * nv + static_cast<std::size_t>(i)] != a_src) continue;
      const S& c = from_p ? p.at_flat(k) : q.at_flat(k);
      if (c == 0) continue;
      for (std::size_t d = 0; d < nv; ++d) e[d] = table[k * nv + d];
      e[static_cast<std::size_t>(i)] = a_dst;
      if (shift_j) {
        if (e[static_cast<std::size_t>(j)] + 1 > cj)
          throw NotDivisible("quotient degree overflow in divide_by_difference");
        ++e[static_cast<std::size_t>(j)];
      }
      q[e] += c;
    }
  };
  for (int a = ci; a >= 1; --a) {
    slice_add(a - 1, a, true, false);
    slice_add(a - 1, a, false, true);
  }
  // Remainder P_0 + z_j Q_0 must vanish.
  MultiPoly<S> rem(caps);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (table[k * nv + static_cast<std::size_t>(i)] != 0) continue;
    rem.at_flat(k) += p.at_flat(k);
    const S& c = q.at_flat(k);
    if (c == 0) continue;
    for (std::size_t d = 0; d < nv; ++d) e[d] = table[k * nv + d];
    if (e[static_cast<std::size_t>(j)] + 1 > cj) throw NotDivisible("remainder overflow");
    ++e[static_cast<std::size_t>(j)];
    rem[e] += c;
  }
  if constexpr (is_exact_v<S>) {
    if (!rem.is_zero()) throw NotDivisible("polynomial is not divisible by z_i - z_j");
  }
  return q;
}

/// Sets variable `var` to `value`, removing it from the variable list.
template <Scalar S>
MultiPoly<S> substitute(const MultiPoly<S>& p, int var, const S& value) {
  const auto& caps = p.caps();
  const std::size_t nv = caps.size();
  typename MultiPoly<S>::Index reduced;
  for (std::size_t d = 0; d < nv; ++d)
    if (static_cast<int>(d) != var) reduced.push_back(caps[d]);
  MultiPoly<S> out(reduced);
  const std::vector<int> table = p.exponent_table();
  std::vector<int> e(nv - 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.at_flat(k) == 0) continue;
    S c = p.at_flat(k);
    std::size_t w = 0;
    for (std::size_t d = 0; d < nv; ++d) {
      if (static_cast<int>(d) == var) {
        for (int m = 0; m < table[k * nv + d]; ++m) c *= value;
      } else {
        e[w++] = table[k * nv + d];
      }
    }
    out[e] += c;
  }
  return out;
}

/// Exchanges two variables (the caps must agree).
template <Scalar S>
MultiPoly<S> swap_variables(const MultiPoly<S>& p, int i, int j) {
  const auto& caps = p.caps();
  if (caps.at(static_cast<std::size_t>(i)) != caps.at(static_cast<std::size_t>(j)))
    throw BadIndex("swap_variables needs equal caps");
  MultiPoly<S> out(caps);
  const std::size_t nv = caps.size();
  const std::vector<int> table = p.exponent_table();
  std::vector<int> e(nv);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t d = 0; d < nv; ++d) e[d] = table[k * nv + d];
    std::swap(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
    out[e] = p.at_flat(k);
  }
  return out;
}

/// Restricts to a smaller box by dropping terms outside it.
template <Scalar S>
MultiPoly<S> truncate_to(const MultiPoly<S>& p, const typename MultiPoly<S>::Index& caps) {
  MultiPoly<S> out(caps);
  const std::size_t nv = p.variables();
  const std::vector<int> table = p.exponent_table();
  std::vector<int> e(nv);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.at_flat(k) == 0) continue;
    bool inside = true;
    for (std::size_t d = 0; d < nv; ++d) {
      e[d] = table[k * nv + d];
      if (e[d] > caps[d]) inside = false;
    }
    if (inside) out[e] = p.at_flat(k);
  }
  return out;
}

}  // namespace gefp
