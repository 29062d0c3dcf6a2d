#pragma once

// Ground truth by direct weighted summation over six-vertex configurations
// with domain wall boundary conditions.
//
// Conventions: rows are counted from the top, vertical lines (columns) from
// the right, both 1-based. A horizontal edge state is 1 when its arrow points
// left, a vertical edge state is 1 when its arrow points down. Boundary
// arrows: left edges point left, right edges point right, top edges point
// down, bottom edges point up.
//
// The c-vertex with both horizontal arrows outgoing is type 5; it is the only
// c-vertex possible in the top row, and every configuration has exactly N
// more of type 5 than of type 6. Sums are therefore accumulated "reduced":
// type 5 weighs 1 and type 6 weighs c^2, and Z = c^N * (reduced sum).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gefp/errors.hpp"
#include "gefp/params.hpp"
#include "gefp/result.hpp"
#include "gefp/scalar.hpp"
#include "gefp/young.hpp"

namespace gefp {

inline constexpr int kOracleMaxN = 8;
inline constexpr int kNaiveMaxN = 4;

enum class VertexType : std::uint8_t { A1 = 0, A2, B3, B4, C5, C6 };

/// Arrow states (left edge, right edge, top edge, bottom edge) of each type.
struct VertexArrows {
  std::uint8_t left, right, top, bottom;
};
inline constexpr std::array<VertexArrows, 6> kVertexArrows{{
    {0, 0, 0, 0},  // 1: right/right, up/up
    {1, 1, 1, 1},  // 2: left/left, down/down
    {0, 0, 1, 1},  // 3: right/right, down/down
    {1, 1, 0, 0},  // 4: left/left, up/up
    {1, 0, 1, 0},  // 5: horizontal out, vertical in
    {0, 1, 0, 1},  // 6: horizontal in, vertical out
}};

inline constexpr std::uint8_t type_bit(VertexType t) { return std::uint8_t(1u << static_cast<unsigned>(t)); }
inline constexpr std::uint8_t kAllTypes = 0x3f;

/// Per-site weights a_jk, b_jk and the global c (or only c^2).
template <Scalar S>
class WeightGrid {
 public:
  static WeightGrid homogeneous(int n, const VertexWeights<S>& w) {
    WeightGrid g(n);
    g.a_.assign(static_cast<std::size_t>(n * n), w.a);
    g.b_.assign(static_cast<std::size_t>(n * n), w.b);
    g.c_squared_ = w.c_squared;
    g.c_ = w.c;
    g.homogeneous_ = true;
    return g;
  }

  /// Site (row i, column k) carries a(lambda_k, nu_i) and b(lambda_k, nu_i).
  static WeightGrid from_spectral(const SpectralData<Real>& sp, bool allow_nonphysical = false)
    requires std::is_same_v<S, Real>
  {
    const int n = static_cast<int>(sp.size());
    WeightGrid g(n);
    g.a_.resize(static_cast<std::size_t>(n * n));
    g.b_.resize(static_cast<std::size_t>(n * n));
    for (int i = 1; i <= n; ++i) {
      for (int k = 1; k <= n; ++k) {
        const Real diff = sp.lambdas[static_cast<std::size_t>(k - 1)] - sp.nus[static_cast<std::size_t>(i - 1)];
        const Real a = sin(diff + sp.eta);
        const Real b = sin(diff - sp.eta);
        if (!allow_nonphysical && (!(a > 0) || !(b > 0)))
          throw NonphysicalWeights("spectral data give a nonpositive weight at site (" +
                                   std::to_string(i) + "," + std::to_string(k) + ")");
        g.a_[g.site(i, k)] = a;
        g.b_[g.site(i, k)] = b;
      }
    }
    const Real c = sin(2 * sp.eta);
    if (!allow_nonphysical && !(c > 0)) throw NonphysicalWeights("sin(2 eta) must be positive");
    g.c_ = c;
    g.c_squared_ = c * c;
    g.homogeneous_ = false;
    return g;
  }

  int n() const { return n_; }
  const S& a(int row, int col) const { return a_[site(row, col)]; }
  const S& b(int row, int col) const { return b_[site(row, col)]; }
  const S& c_squared() const { return c_squared_; }
  const std::optional<S>& c() const { return c_; }
  bool is_homogeneous() const { return homogeneous_; }

  /// Reduced weight of a vertex type at a site.
  S weight(int row, int col, VertexType t) const {
    switch (t) {
      case VertexType::A1:
      case VertexType::A2: return a(row, col);
      case VertexType::B3:
      case VertexType::B4: return b(row, col);
      case VertexType::C5: return S(1);
      case VertexType::C6: return c_squared_;
    }
    return S(0);
  }

  /// c^N, the factor stripped from reduced sums.
  S c_power() const {
    if (!c_) throw Unsupported("c is known only through c^2; use the reduced partition function");
    S p = 1;
    for (int k = 0; k < n_; ++k) p *= *c_;
    return p;
  }

 private:
  explicit WeightGrid(int n) : n_(n) {
    if (n < 1) throw BadIndex("lattice size must be positive");
  }
  std::size_t site(int row, int col) const {
    return static_cast<std::size_t>((row - 1) * n_ + (col - 1));
  }

  int n_;
  std::vector<S> a_, b_;
  S c_squared_;
  std::optional<S> c_;
  bool homogeneous_ = true;
};

/// Restrictions applied during a transfer sweep.
struct TransferSpec {
  /// Allowed vertex types per site (row-major, rows from the top, columns
  /// from the right); empty means unrestricted.
  std::vector<std::uint8_t> allowed;
  /// Per row: r such that the edge between lines r and r+1 must point left;
  /// 0 or N mean no constraint.
  std::vector<int> marked_edge;
  /// Per row: number of columns present, counted from the right; empty
  /// means the full square. Absent vertical edges keep pointing down.
  std::vector<int> row_width;

  static TransferSpec none() { return {}; }
};

/// Reduced weighted sum over configurations, by a vertex-by-vertex sweep over
/// (vertical edge states, current horizontal edge) with 2^(N+1) states.
template <Scalar S>
S reduced_transfer(const WeightGrid<S>& grid, const TransferSpec& spec, int max_n = kOracleMaxN) {
  const int n = grid.n();
  if (n > max_n) throw TooLarge("oracle is capped at N = " + std::to_string(max_n));
  const std::size_t states = std::size_t(1) << (n + 1);
  std::vector<S> cur(states, S(0)), next(states, S(0));
  std::vector<char> live(states, 0), next_live(states, 0);
  const std::size_t all_down = (std::size_t(1) << n) - 1;
  // state index = (vertical bits << 1) | horizontal bit
  std::vector<S> rows(std::size_t(1) << n, S(0));
  std::vector<char> rows_live(std::size_t(1) << n, 0);
  rows[all_down] = 1;
  rows_live[all_down] = 1;

  for (int row = 1; row <= n; ++row) {
    const int width = spec.row_width.empty() ? n : spec.row_width[static_cast<std::size_t>(row - 1)];
    const int marked = spec.marked_edge.empty() ? 0 : spec.marked_edge[static_cast<std::size_t>(row - 1)];
    std::fill(live.begin(), live.end(), 0);
    for (std::size_t bits = 0; bits < rows.size(); ++bits) {
      if (!rows_live[bits]) continue;
      const std::size_t idx = (bits << 1) | 1u;  // the left boundary arrow points left
      cur[idx] = rows[bits];
      live[idx] = 1;
    }
    for (int col = width; col >= 1; --col) {
      std::fill(next_live.begin(), next_live.end(), 0);
      const std::uint8_t mask =
          spec.allowed.empty() ? kAllTypes
                               : spec.allowed[static_cast<std::size_t>((row - 1) * n + (col - 1))];
      const unsigned vbit = static_cast<unsigned>(col - 1);
      for (std::size_t idx = 0; idx < states; ++idx) {
        if (!live[idx]) continue;
        const unsigned h = idx & 1u;
        const std::size_t bits = idx >> 1;
        const unsigned v = (bits >> vbit) & 1u;
        for (unsigned t = 0; t < 6; ++t) {
          if (!(mask & (1u << t))) continue;
          const auto& arr = kVertexArrows[t];
          if (arr.left != h || arr.top != v) continue;
          const std::size_t nbits = (bits & ~(std::size_t(1) << vbit)) | (std::size_t(arr.bottom) << vbit);
          const std::size_t nidx = (nbits << 1) | arr.right;
          const S w = grid.weight(row, col, static_cast<VertexType>(t));
          if (!next_live[nidx]) {
            next[nidx] = cur[idx] * w;
            next_live[nidx] = 1;
          } else {
            next[nidx] += cur[idx] * w;
          }
        }
      }
      std::swap(cur, next);
      std::swap(live, next_live);
      if (marked > 0 && marked < n && col == marked + 1) {
        for (std::size_t idx = 0; idx < states; ++idx)
          if ((idx & 1u) == 0) live[idx] = 0;
      }
    }
    std::fill(rows_live.begin(), rows_live.end(), 0);
    for (std::size_t idx = 0; idx < states; ++idx) {
      if (!live[idx] || (idx & 1u)) continue;  // the right boundary arrow points right
      rows[idx >> 1] = cur[idx];
      rows_live[idx >> 1] = 1;
    }
  }
  return rows_live[0] ? rows[0] : S(0);
}

/// Z_N / c^N.
template <Scalar S>
S reduced_partition_oracle(const WeightGrid<S>& grid, int max_n = kOracleMaxN) {
  return reduced_transfer(grid, TransferSpec::none(), max_n);
}

/// Z_N summed over all configurations; requires c itself, not only c^2.
template <Scalar S>
S partition_function_oracle(const WeightGrid<S>& grid, int max_n = kOracleMaxN) {
  return reduced_partition_oracle(grid, max_n) * grid.c_power();
}

namespace detail {

inline TransferSpec edge_spec(const YoungProfile& p) {
  TransferSpec spec;
  spec.marked_edge.assign(static_cast<std::size_t>(p.n()), 0);
  for (int j = 0; j < p.s(); ++j) spec.marked_edge[static_cast<std::size_t>(j)] = p[j];
  return spec;
}

inline TransferSpec frozen_spec(const YoungProfile& p) {
  const int n = p.n();
  TransferSpec spec;
  spec.allowed.assign(static_cast<std::size_t>(n * n), kAllTypes);
  for (int j = 1; j <= p.s(); ++j)
    for (int col = p[j - 1] + 1; col <= n; ++col)
      spec.allowed[static_cast<std::size_t>((j - 1) * n + (col - 1))] = type_bit(VertexType::A2);
  return spec;
}

template <Scalar S>
void require_same(const S& x, const S& y, const char* what) {
  if constexpr (is_exact_v<S>) {
    if (x != y) throw OracleMismatch(what);
  } else {
    const Real tol = pow(Real(2), -static_cast<long>(working_precision_bits()) + 24);
    if (abs(x - y) > tol * (abs(y) + 1)) throw OracleMismatch(what);
  }
}

}  // namespace detail

/// Probability that every cornered vertex of the Young diagram is of type 2.
template <Scalar S>
S frozen_region_oracle(const WeightGrid<S>& grid, const YoungProfile& profile, int max_n = kOracleMaxN) {
  if (profile.n() != grid.n()) throw BadIndex("profile and grid sizes differ");
  return reduced_transfer(grid, detail::frozen_spec(profile), max_n) /
         reduced_partition_oracle(grid, max_n);
}

/// Probability that the marked edges all point left. The frozen-corner
/// characterization is evaluated alongside and must agree.
template <Scalar S>
CorrelationResult<S> gefp_oracle(const WeightGrid<S>& grid, const YoungProfile& profile,
                                 int max_n = kOracleMaxN) {
  if (profile.n() != grid.n()) throw BadIndex("profile and grid sizes differ");
  const S z = reduced_partition_oracle(grid, max_n);
  const S edges = reduced_transfer(grid, detail::edge_spec(profile), max_n) / z;
  const S frozen = reduced_transfer(grid, detail::frozen_spec(profile), max_n) / z;
  detail::require_same(edges, frozen, "edge and frozen-corner definitions disagree");
  return make_result<S>(edges, "gefp", "oracle", grid.n(), profile.r());
}

/// Probability that the type-5 vertex of the top row sits on line r.
template <Scalar S>
CorrelationResult<S> boundary_H_oracle(const WeightGrid<S>& grid, int r, int max_n = kOracleMaxN) {
  const int n = grid.n();
  if (r < 1 || r > n) throw BadIndex("boundary index r must satisfy 1 <= r <= N");
  TransferSpec spec;
  spec.allowed.assign(static_cast<std::size_t>(n * n), kAllTypes);
  spec.allowed[static_cast<std::size_t>(r - 1)] = type_bit(VertexType::C5);
  const S value = reduced_transfer(grid, spec, max_n) / reduced_partition_oracle(grid, max_n);
  return make_result<S>(value, "H", "oracle", n, {r});
}

/// Z of the lattice with the frozen corner removed, divided by c^N.
template <Scalar S>
S reduced_modified_domain_partition(const WeightGrid<S>& grid, const YoungProfile& profile,
                                    int max_n = kOracleMaxN) {
  if (!grid.is_homogeneous())
    throw Unsupported("the cut-domain identity is defined for homogeneous weights only");
  if (profile.n() != grid.n()) throw BadIndex("profile and grid sizes differ");
  TransferSpec spec;
  spec.row_width.assign(static_cast<std::size_t>(grid.n()), grid.n());
  for (int j = 0; j < profile.s(); ++j) spec.row_width[static_cast<std::size_t>(j)] = profile[j];
  return reduced_transfer(grid, spec, max_n);
}

template <Scalar S>
S modified_domain_partition(const WeightGrid<S>& grid, const YoungProfile& profile,
                            int max_n = kOracleMaxN) {
  return reduced_modified_domain_partition(grid, profile, max_n) * grid.c_power();
}

/// One configuration: vertex types row-major (rows from the top, columns
/// from the right).
struct Configuration {
  std::vector<VertexType> types;
  int count(VertexType t) const {
    int c = 0;
    for (auto x : types) c += (x == t);
    return c;
  }
};

/// Every DWBC configuration, by brute force over all interior edge states
/// filtered by the ice rule. Deliberately independent of the transfer sweep.
inline std::vector<Configuration> enumerate_configurations(int n, int max_n = 3) {
  if (n < 1) throw BadIndex("lattice size must be positive");
  if (n > std::min(max_n, kNaiveMaxN)) throw TooLarge("naive enumeration is capped");
  // horizontal edge (row i, position p): p = 0 right boundary .. p = n left boundary
  // vertical edge (col k, position q): q = 0 top boundary .. q = n bottom boundary
  const int interior = 2 * n * (n - 1);
  std::vector<Configuration> out;
  std::vector<int> h(static_cast<std::size_t>(n * (n + 1))), v(static_cast<std::size_t>(n * (n + 1)));
  auto H = [&](int i, int p) -> int& { return h[static_cast<std::size_t>((i - 1) * (n + 1) + p)]; };
  auto V = [&](int k, int q) -> int& { return v[static_cast<std::size_t>((k - 1) * (n + 1) + q)]; };
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << interior); ++mask) {
    int bit = 0;
    for (int i = 1; i <= n; ++i) {
      H(i, 0) = 0;
      H(i, n) = 1;
      for (int p = 1; p < n; ++p) H(i, p) = static_cast<int>((mask >> bit++) & 1u);
    }
    for (int k = 1; k <= n; ++k) {
      V(k, 0) = 1;
      V(k, n) = 0;
      for (int q = 1; q < n; ++q) V(k, q) = static_cast<int>((mask >> bit++) & 1u);
    }
    Configuration conf;
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      for (int k = n; k >= 1 && ok; --k) {
        // vertex (i, k): left edge is position k, right edge position k-1
        const int l = H(i, k), r = H(i, k - 1), t = V(k, i - 1), b = V(k, i);
        int found = -1;
        for (int ty = 0; ty < 6; ++ty) {
          const auto& arr = kVertexArrows[static_cast<std::size_t>(ty)];
          if (arr.left == l && arr.right == r && arr.top == t && arr.bottom == b) found = ty;
        }
        if (found < 0) ok = false;
        else conf.types.push_back(static_cast<VertexType>(found));
      }
    }
    if (ok) {
      // reorder to row-major with columns 1..n from the right
      Configuration sorted;
      sorted.types.resize(conf.types.size());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sorted.types[static_cast<std::size_t>(i * n + (n - 1 - j))] = conf.types[static_cast<std::size_t>(i * n + j)];
      out.push_back(std::move(sorted));
    }
  }
  return out;
}

/// Reduced Z from the naive enumeration.
template <Scalar S>
S naive_reduced_partition(const WeightGrid<S>& grid, int max_n = 3) {
  const int n = grid.n();
  S total = 0;
  for (const auto& conf : enumerate_configurations(n, max_n)) {
    S w = 1;
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        w *= grid.weight(i, k, conf.types[static_cast<std::size_t>((i - 1) * n + (k - 1))]);
    total += w;
  }
  return total;
}

}  // namespace gefp
