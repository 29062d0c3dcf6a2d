#pragma once

// Multivariate truncated power series over a dense box of exponents
// 0 <= e_d <= caps[d]. Products drop every term outside the box, so the
// same type doubles as a dense multivariate polynomial when the caps bound
// the degrees.

#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "gefp/algebra/poly.hpp"
#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"

namespace gefp {

template <Scalar S>
class TruncatedSeries {
 public:
  using Index = std::vector<int>;

  TruncatedSeries() : TruncatedSeries(Index{}) {}
  explicit TruncatedSeries(Index caps) : caps_(std::move(caps)) {
    strides_.assign(caps_.size(), 1);
    std::size_t total = 1;
    for (std::size_t d = caps_.size(); d-- > 0;) {
      if (caps_[d] < 0) throw BadIndex("negative series cap");
      strides_[d] = total;
      total *= static_cast<std::size_t>(caps_[d]) + 1;
    }
    data_.assign(total, S(0));
  }

  static TruncatedSeries constant(Index caps, const S& value) {
    TruncatedSeries f(std::move(caps));
    f.data_[0] = value;
    return f;
  }
  static TruncatedSeries one(Index caps) { return constant(std::move(caps), S(1)); }

  /// Embeds a univariate coefficient list in variable `var`.
  static TruncatedSeries univariate(Index caps, int var, std::span<const S> coeffs) {
    TruncatedSeries f(std::move(caps));
    const int top = std::min<int>(f.caps_.at(static_cast<std::size_t>(var)),
                                  static_cast<int>(coeffs.size()) - 1);
    for (int k = 0; k <= top; ++k)
      f.data_[static_cast<std::size_t>(k) * f.strides_[static_cast<std::size_t>(var)]] =
          coeffs[static_cast<std::size_t>(k)];
    return f;
  }
  static TruncatedSeries univariate(Index caps, int var, const UniPoly<S>& p) {
    return univariate(std::move(caps), var, std::span<const S>(p.coefficients()));
  }

  /// The monomial coeff * z_var^power (zero if outside the box).
  static TruncatedSeries monomial(Index caps, int var, int power, const S& coeff = S(1)) {
    TruncatedSeries f(std::move(caps));
    if (power <= f.caps_.at(static_cast<std::size_t>(var)))
      f.data_[static_cast<std::size_t>(power) * f.strides_[static_cast<std::size_t>(var)]] = coeff;
    return f;
  }

  std::size_t variables() const { return caps_.size(); }
  const Index& caps() const { return caps_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<S>& data() const { return data_; }

  std::size_t flat(std::span<const int> e) const {
    std::size_t off = 0;
    for (std::size_t d = 0; d < caps_.size(); ++d) {
      if (e[d] < 0 || e[d] > caps_[d]) throw BadIndex("exponent outside series box");
      off += static_cast<std::size_t>(e[d]) * strides_[d];
    }
    return off;
  }
  Index unflat(std::size_t off) const {
    Index e(caps_.size());
    for (std::size_t d = 0; d < caps_.size(); ++d) {
      e[d] = static_cast<int>(off / strides_[d]);
      off %= strides_[d];
    }
    return e;
  }

  S& operator[](std::span<const int> e) { return data_[flat(e)]; }
  const S& operator[](std::span<const int> e) const { return data_[flat(e)]; }
  S& at_flat(std::size_t off) { return data_[off]; }
  const S& at_flat(std::size_t off) const { return data_[off]; }

  /// Coefficient of z^e; zero outside the box.
  S coefficient(std::span<const int> e) const {
    for (std::size_t d = 0; d < caps_.size(); ++d)
      if (e[d] < 0 || e[d] > caps_[d]) return S(0);
    return data_[flat(e)];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  TruncatedSeries& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const S& s) { return a *= s; }
  friend TruncatedSeries operator*(const S& s, TruncatedSeries a) { return a *= s; }
  TruncatedSeries& operator+=(const S& s) {
    data_[0] += s;
    return *this;
  }

  /// Truncated product; cost is |a| times the number of nonzero terms of b.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check(b);
    TruncatedSeries out(a.caps_);
    const std::size_t nv = a.caps_.size();
    const std::vector<int> table = a.exponent_table();
    for (std::size_t jb = 0; jb < b.data_.size(); ++jb) {
      const S& cb = b.data_[jb];
      if (cb == 0) continue;
      const int* eb = &table[jb * nv];
      for (std::size_t ja = 0; ja < a.data_.size(); ++ja) {
        const S& ca = a.data_[ja];
        if (ca == 0) continue;
        const int* ea = &table[ja * nv];
        bool fits = true;
        for (std::size_t d = 0; d < nv; ++d) {
          if (ea[d] + eb[d] > a.caps_[d]) {
            fits = false;
            break;
          }
        }
        if (fits) out.data_[ja + jb] += ca * cb;
      }
    }
    return out;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  /// 1/f up to the caps.
  TruncatedSeries inverse() const {
    if (data_[0] == 0) throw NotInvertible("series with zero constant term");
    const std::size_t nv = caps_.size();
    const std::vector<int> table = exponent_table();
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < data_.size(); ++k)
      if (data_[k] != 0) support.push_back(k);
    TruncatedSeries g(caps_);
    const S inv0 = S(1) / data_[0];
    g.data_[0] = inv0;
    // Lexicographic flat order visits every divisor of m before m.
    for (std::size_t m = 1; m < data_.size(); ++m) {
      const int* em = &table[m * nv];
      S acc = 0;
      for (std::size_t k : support) {
        if (k > m) break;
        const int* ek = &table[k * nv];
        bool below = true;
        for (std::size_t d = 0; d < nv; ++d) {
          if (ek[d] > em[d]) {
            below = false;
            break;
          }
        }
        if (below) acc += data_[k] * g.data_[m - k];
      }
      g.data_[m] = -acc * inv0;
    }
    return g;
  }

  friend TruncatedSeries pow(TruncatedSeries base, unsigned e) {
    TruncatedSeries r = one(base.caps_);
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }

  /// outer(inner) for an outer function given by Taylor coefficients at
  /// inner's constant term; inner's own constant is ignored.
  TruncatedSeries compose(const std::vector<S>& outer_taylor) const {
    TruncatedSeries u = *this;
    u.data_[0] = 0;
    TruncatedSeries out(caps_);
    for (auto it = outer_taylor.rbegin(); it != outer_taylor.rend(); ++it) {
      out = out * u;
      out.data_[0] += *it;
    }
    return out;
  }

  /// Value at a point (as a polynomial: every stored term contributes).
  S evaluate(std::span<const S> z) const {
    if (z.size() != caps_.size()) throw BadIndex("evaluation point has wrong arity");
    const std::size_t nv = caps_.size();
    const std::vector<int> table = exponent_table();
    S total = 0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (data_[k] == 0) continue;
      S term = data_[k];
      for (std::size_t d = 0; d < nv; ++d)
        for (int p = 0; p < table[k * nv + d]; ++p) term *= z[d];
      total += term;
    }
    return total;
  }

  /// Exponent vectors of every flat offset, row-major.
  std::vector<int> exponent_table() const {
    const std::size_t nv = caps_.size();
    std::vector<int> table(data_.size() * nv);
    std::vector<int> e(nv, 0);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      for (std::size_t d = 0; d < nv; ++d) table[k * nv + d] = e[d];
      for (std::size_t d = nv; d-- > 0;) {
        if (++e[d] <= caps_[d]) break;
        e[d] = 0;
      }
    }
    return table;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.caps_ == b.caps_ && a.data_ == b.data_;
  }

 private:
  void check(const TruncatedSeries& o) const {
    if (o.caps_ != caps_) throw BadIndex("series caps mismatch");
  }

  Index caps_;
  std::vector<std::size_t> strides_;
  std::vector<S> data_;
};

/// Inverse of a univariate series given by coefficients, to `order` terms.
template <Scalar S>
std::vector<S> series_reciprocal(const std::vector<S>& f, int order) {
  if (f.empty() || f[0] == 0) throw NotInvertible("series with zero constant term");
  std::vector<S> g(static_cast<std::size_t>(order) + 1, S(0));
  const S inv0 = S(1) / f[0];
  g[0] = inv0;
  for (int k = 1; k <= order; ++k) {
    S acc = 0;
    for (int j = 1; j <= k && j < static_cast<int>(f.size()); ++j)
      acc += f[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
    g[static_cast<std::size_t>(k)] = -acc * inv0;
  }
  return g;
}

/// series_invert as a named operation.
template <Scalar S>
TruncatedSeries<S> series_invert(const TruncatedSeries<S>& f) {
  return f.inverse();
}

}  // namespace gefp
