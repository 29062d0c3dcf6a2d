#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gefp/errors.hpp"

namespace gefp {

/// Marked horizontal edges: edge j sits in row j (from the top) between
/// vertical lines r_j and r_j + 1 (from the right), with
/// 1 <= r_1 <= ... <= r_s <= N. The frozen corner is the Young diagram
/// with row lengths N - r_j.
class YoungProfile {
 public:
  YoungProfile() = default;
  YoungProfile(int n, std::vector<int> r) : n_(n), r_(std::move(r)) {
    if (n_ < 1) throw InvalidProfile("lattice size N must be at least 1");
    if (static_cast<int>(r_.size()) > n_)
      throw InvalidProfile("profile length s must not exceed N");
    for (std::size_t j = 0; j < r_.size(); ++j) {
      if (r_[j] < 1 || r_[j] > n_)
        throw InvalidProfile("each r_j must satisfy 1 <= r_j <= N (got r_" + std::to_string(j + 1) +
                             " = " + std::to_string(r_[j]) + ")");
      if (j > 0 && r_[j] < r_[j - 1])
        throw InvalidProfile(
            "profile must be weakly increasing: 1 <= r_1 <= r_2 <= ... <= r_s <= N (got " + str() +
            ")");
    }
  }

  /// The constant profile (r, ..., r) of length s.
  static YoungProfile constant(int n, int s, int r) { return {n, std::vector<int>(static_cast<std::size_t>(s), r)}; }

  int n() const { return n_; }
  int s() const { return static_cast<int>(r_.size()); }
  const std::vector<int>& r() const { return r_; }
  int operator[](int j) const { return r_[static_cast<std::size_t>(j)]; }

  /// Row lengths N - r_j of the frozen corner (weakly decreasing).
  std::vector<int> diagram() const {
    std::vector<int> mu;
    for (int rj : r_) mu.push_back(n_ - rj);
    return mu;
  }
  int area() const {
    int a = 0;
    for (int rj : r_) a += n_ - rj;
    return a;
  }

  /// r_j >= j for every j; otherwise the ice rule forces probability zero.
  bool admissible() const {
    for (std::size_t j = 0; j < r_.size(); ++j)
      if (r_[j] < static_cast<int>(j) + 1) return false;
    return true;
  }

  /// Drops the last marked edge.
  YoungProfile without_last() const {
    std::vector<int> r(r_.begin(), r_.end() - (r_.empty() ? 0 : 1));
    return {n_, std::move(r)};
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < r_.size(); ++j) os << (j ? "," : "") << r_[j];
    return os.str();
  }

  friend bool operator==(const YoungProfile&, const YoungProfile&) = default;

 private:
  int n_ = 1;
  std::vector<int> r_;
};

/// Parses "2,3,5" (an empty string gives the empty profile).
inline YoungProfile parse_profile(int n, const std::string& text) {
  std::vector<int> r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      r.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("cannot parse profile entry '" + item + "'");
    }
  }
  return {n, std::move(r)};
}

/// Every weakly increasing profile of length min_s..max_s, in lexicographic
/// order by (s, r).
inline std::vector<YoungProfile> all_profiles(int n, int min_s, int max_s) {
  std::vector<YoungProfile> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int lo) {
    if (remaining == 0) {
      out.emplace_back(n, cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.push_back(v);
      rec(remaining - 1, v);
      cur.pop_back();
    }
  };
  for (int s = min_s; s <= max_s; ++s) rec(s, 1);
  return out;
}

}  // namespace gefp
