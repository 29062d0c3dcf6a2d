#pragma once

// The eight desk-scale acceptance criteria, shared by the acceptance binary
// and `gefp-lab verify --level desk`.

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gefp/gefp_lab.hpp"

namespace gefp::acceptance {

// Pinned tolerances and limits.
inline constexpr unsigned kInhomBits = 128;
inline const char* const kInhomTol = "1e-18";
inline constexpr unsigned kIkBits = 256;
inline const char* const kIkTol = "1e-22";
inline const char* const kHomJetsTol = "1e-22";
inline constexpr unsigned kBoundaryBits = 128;
inline const char* const kBoundaryTol = "1e-18";
inline const char* const kKfintTol = "1e-18";
inline constexpr double kResidueMatrixSeconds = 300.0;

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline Outcome titled(int id, std::string title) {
  Outcome o;
  o.id = id;
  o.title = std::move(title);
  return o;
}

/// Counts checks and keeps the first failure and the worst float error.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) {
      ++failed_;
      if (first_.empty()) first_ = what;
    }
  }
  void error(const Real& err, const Real& tol, const std::string& what) {
    if (err > worst_) worst_ = err;
    check(err <= tol, what);
  }
  bool ok() const { return failed_ == 0 && checked_ > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checked_ << " checks";
    if (worst_ > 0) os << ", worst error " << to_string(worst_, 3);
    if (failed_) os << ", " << failed_ << " failed (first: " << first_ << ")";
    return os.str();
  }

 private:
  int checked_ = 0;
  int failed_ = 0;
  Real worst_ = 0;
  std::string first_;
};

inline Real rel_or_abs(const Real& got, const Real& want) {
  return want == 0 ? Real(abs(got)) : relative_error(got, want);
}

inline AnisotropyPoint<Rational> rational_point(const char* delta, const char* t, bool nonphysical = false) {
  return AnisotropyPoint<Rational>::make(parse_rational(delta), parse_rational(t), nonphysical);
}

inline std::string label(const AnisotropyPoint<Rational>& p, const YoungProfile& prof) {
  return "(" + to_string(p.delta) + "," + to_string(p.t) + ") N=" + std::to_string(prof.n()) + " r=(" +
         prof.str() + ")";
}

/// Grid of the exact equivalence matrix; (3/2, 1/2) has c^2 < 0.
inline std::vector<AnisotropyPoint<Rational>> residue_grid() {
  return {rational_point("1/2", "1"), rational_point("0", "1"), rational_point("-1", "2/3"),
          rational_point("3/2", "1/2", true), rational_point("3/2", "1/4")};
}

inline std::vector<AnisotropyPoint<Rational>> physical_grid() {
  return {rational_point("1/2", "1"), rational_point("0", "1"), rational_point("-1", "2/3"),
          rational_point("3/2", "1/4")};
}

inline SpectralData<Real> spectral_set(int which, int n) {
  static const std::vector<std::vector<const char*>> lam{{"1.3", "1.45", "1.62", "1.77", "1.9"},
                                                         {"0.9", "1.05", "1.22", "1.31", "1.47"}};
  static const std::vector<std::vector<const char*>> nu{{"0.05", "-0.1", "0.12", "0.2", "-0.04"},
                                                        {"0.02", "0.11", "-0.07", "0.15", "-0.03"}};
  static const std::vector<const char*> eta{"0.4", "0.3"};
  SpectralData<Real> sp;
  for (int k = 0; k < n; ++k) {
    sp.lambdas.emplace_back(lam[static_cast<std::size_t>(which)][static_cast<std::size_t>(k)]);
    sp.nus.emplace_back(nu[static_cast<std::size_t>(which)][static_cast<std::size_t>(k)]);
  }
  sp.eta = Real(eta[static_cast<std::size_t>(which)]);
  return sp;
}

inline Outcome criterion1() {
  Outcome out = titled(1, "residue engine equals oracle exactly (N<=5, all profiles, 5 points)");
  const auto start = std::chrono::steady_clock::now();
  Tally tally;
  for (const auto& p : residue_grid()) {
    for (int n = 1; n <= 5; ++n) {
      const auto fam = h_family_oracle(n, p);
      const auto grid = WeightGrid<Rational>::homogeneous(n, weights_from_anisotropy(p));
      for (const auto& prof : all_profiles(n, 0, n))
        tally.check(gefp_residue(prof, p, &fam).value == gefp_oracle(grid, prof).value, label(p, prof));
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = tally.ok() && out.seconds < kResidueMatrixSeconds;
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion2() {
  Outcome out = titled(2, "inhomogeneous recurrence = determinant = oracle (N<=4, 2 spectral sets)");
  PrecisionGuard guard(kInhomBits);
  const Real tol(kInhomTol);
  Tally tally;
  for (int which = 0; which < 2; ++which) {
    for (int n = 1; n <= 4; ++n) {
      const auto sp = spectral_set(which, n);
      const auto grid = WeightGrid<Real>::from_spectral(sp);
      for (const auto& prof : all_profiles(n, 1, n)) {
        const Real o = gefp_oracle(grid, prof).value;
        const std::string what = "set " + std::to_string(which) + " N=" + std::to_string(n) + " r=(" + prof.str() + ")";
        tally.error(rel_or_abs(gefp_inhom_recurrence(sp, prof), o), tol, what + " recurrence");
        tally.error(rel_or_abs(gefp_inhom_determinant(sp, prof), o), tol, what + " determinant");
      }
    }
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion3() {
  Outcome out = titled(3, "Izergin-Korepin and homogeneous jets vs oracle (N<=5)");
  PrecisionGuard guard(kIkBits);
  Tally tally;
  for (int which = 0; which < 2; ++which) {
    for (int n = 1; n <= 5; ++n) {
      const auto sp = spectral_set(which, n);
      const Real z = partition_function_oracle(WeightGrid<Real>::from_spectral(sp));
      tally.error(relative_error(ik_partition(sp), z), Real(kIkTol), "IK set " + std::to_string(which) + " N=" + std::to_string(n));
    }
  }
  const Real pi = real_pi();
  const std::vector<std::pair<Real, std::string>> etas{{pi / 6, "ice"}, {pi / 4, "free fermion"}};
  for (const auto& [eta, name] : etas) {
    const auto w = weights_from_trig(pi / 2, Real(0), eta);
    for (int n = 1; n <= 5; ++n) {
      const Real z = partition_function_oracle(WeightGrid<Real>::homogeneous(n, w));
      tally.error(relative_error(homogeneous_partition_jets(n, pi / 2, eta), z), Real(kHomJetsTol),
                  "jets " + name + " N=" + std::to_string(n));
    }
  }
  const Real z3 = partition_function_oracle(WeightGrid<Real>::homogeneous(3, weights_from_trig(pi / 2, Real(0), pi / 6)));
  tally.error(relative_error(z3, 7 * pow(sqrt(Real(3)) / 2, 9)), Real(kHomJetsTol), "Z_3(ice) = 7 (sqrt3/2)^9");
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion4() {
  Outcome out = titled(4, "boundary layer: sum H = 1 (N<=6), H via K (N<=5), Kfint (N<=5)");
  Tally tally;
  for (const auto& p : physical_grid())
    for (int n = 1; n <= 6; ++n)
      tally.check(htable_oracle(n, p).sum() == 1, "sum H at N=" + std::to_string(n) + " delta=" + to_string(p.delta));
  PrecisionGuard guard(kBoundaryBits);
  const Real pi = real_pi();
  const std::vector<std::pair<Real, Real>> trig{{Real("1.3"), Real("0.35")}, {pi / 2, pi / 6}};
  for (const auto& [lam, eta] : trig) {
    for (int n = 1; n <= 5; ++n) {
      const auto viaK = htable_via_K(n, lam, eta);
      const auto grid = WeightGrid<Real>::homogeneous(n, weights_from_trig(lam, Real(0), eta));
      for (int r = 1; r <= n; ++r)
        tally.error(rel_or_abs(viaK(r), boundary_H_oracle(grid, r).value), Real(kBoundaryTol),
                    "H via K N=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  }
  for (int n = 1; n <= 5; ++n) {
    for (int m = 0; m <= n; ++m) {
      const auto [lhs, rhs] = kfint_check(n, UniPoly<Real>::monomial(m), Real("1.35"), Real("0.4"));
      tally.error(abs(lhs - rhs) / max(Real(1), Real(abs(rhs))), Real(kKfintTol),
                  "Kfint N=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion5() {
  Outcome out = titled(5, "h_{N,s}: symmetry, degree, value at z_s = 1, simple zero (N<=4)");
  Tally tally;
  std::vector<AnisotropyPoint<Rational>> points{rational_point("1/2", "1"), rational_point("0", "1"),
                                                rational_point("-1", "2/3"), rational_point("1/3", "3/4")};
  for (const auto& p : points) {
    for (int n = 1; n <= 4; ++n) {
      const auto fam = h_family_oracle(n, p);
      for (int s = 1; s <= n; ++s) {
        const std::string what = "delta=" + to_string(p.delta) + " N=" + std::to_string(n) + " s=" + std::to_string(s);
        const auto h = h_multivariate_symbolic(fam, n, s);
        for (int i = 0; i + 1 < s; ++i) tally.check(swap_variables(h, i, i + 1) == h, what + " symmetry");
        for (int v = 0; v < s; ++v) tally.check(degree_in(h, v) <= n - 1, what + " degree");
        if (s >= 2) {
          const auto lower = h_multivariate_symbolic(fam, n, s - 1);
          tally.check(truncate_to(substitute(h, s - 1, Rational(1)), lower.caps()) == lower, what + " at z_s=1");
          for (int j = 0; j < s - 1; ++j) {
            const auto rep = simple_zero_substitution(h, n, j, p.delta, p.t);
            tally.check(rep.vanishes, what + " zero at j=" + std::to_string(j));
            if (s == n && !rep.numerator.is_zero())
              tally.check(rep.order == 1, what + " simple zero at j=" + std::to_string(j));
          }
        }
      }
    }
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion6() {
  Outcome out = titled(6, "vanishing iff r_j < j, r_s = N reduction, pole deformation, EFP");
  Tally tally;
  for (const auto& p : physical_grid()) {
    for (int n = 1; n <= 5; ++n) {
      const auto fam = h_family_oracle(n, p);
      std::map<std::vector<int>, Rational> value;
      for (const auto& prof : all_profiles(n, 0, n)) value[prof.r()] = gefp_residue(prof, p, &fam).value;
      for (const auto& prof : all_profiles(n, 1, n)) {
        const Rational& g = value.at(prof.r());
        tally.check((g == 0) == !prof.admissible(), label(p, prof) + " vanishing");
        if (prof[prof.s() - 1] == n)
          tally.check(g == value.at(prof.without_last().r()), label(p, prof) + " r_s = N");
      }
      for (int s = 1; s <= n; ++s) {
        for (int r = 1; r <= n; ++r) {
          const auto efp = efp_special_case(n, s, r, p).value;
          const auto grid = WeightGrid<Rational>::homogeneous(n, weights_from_anisotropy(p));
          tally.check(efp == gefp_oracle(grid, YoungProfile::constant(n, s, r)).value,
                      label(p, YoungProfile::constant(n, s, r)) + " EFP");
        }
      }
    }
  }
  for (const auto& p : {rational_point("1/2", "1"), rational_point("-1", "2/3")}) {
    for (int n = 1; n <= 4; ++n)
      for (const auto& prof : all_profiles(n, 1, n))
        if (prof[prof.s() - 1] == n) tally.check(pole_deformation_check(prof, p).balanced, label(p, prof) + " pole deformation");
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion7() {
  Outcome out = titled(7, "cut domain: Z_mod a^|mu| = G Z_N exactly (N<=4)");
  Tally tally;
  const std::vector<std::vector<Rational>> weights{{1, 1, 1}, {Rational(3, 2), Rational(1, 2), 1}};
  for (const auto& w : weights) {
    for (int n = 1; n <= 4; ++n) {
      const auto grid = WeightGrid<Rational>::homogeneous(n, VertexWeights<Rational>::from_abc(w[0], w[1], w[2]));
      const Rational z = partition_function_oracle(grid);
      for (const auto& prof : all_profiles(n, 0, n)) {
        Rational lhs = modified_domain_partition(grid, prof);
        for (int k = 0; k < prof.area(); ++k) lhs *= w[0];
        tally.check(lhs == gefp_oracle(grid, prof).value * z,
                    "a=" + to_string(w[0]) + " N=" + std::to_string(n) + " r=(" + prof.str() + ")");
      }
    }
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

inline Outcome criterion8() {
  Outcome out = titled(8, "configuration counts 1, 2, 7, 42, 429; naive filter 1, 2, 7");
  Tally tally;
  const std::vector<long> counts{1, 2, 7, 42, 429};
  for (int n = 1; n <= 5; ++n) {
    const auto grid = WeightGrid<Rational>::homogeneous(n, VertexWeights<Rational>::from_abc(1, 1, 1));
    tally.check(partition_function_oracle(grid) == Rational(counts[static_cast<std::size_t>(n - 1)]),
                "transfer count N=" + std::to_string(n));
    if (n <= 3)
      tally.check(static_cast<long>(enumerate_configurations(n).size()) == counts[static_cast<std::size_t>(n - 1)],
                  "naive count N=" + std::to_string(n));
  }
  out.passed = tally.ok();
  out.detail = tally.summary();
  return out;
}

/// Runs one criterion, turning an escaped library error into a failure.
inline Outcome run_criterion(int id) {
  static const std::vector<std::function<Outcome()>> all{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8};
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = all.at(static_cast<std::size_t>(id - 1))();
  } catch (const Error& e) {
    out = titled(id, "criterion " + std::to_string(id));
    out.detail = e.name() + ": " + e.what();
  }
  if (out.seconds == 0)
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline std::vector<Outcome> run_all() {
  std::vector<Outcome> outs;
  for (int id = 1; id <= 8; ++id) outs.push_back(run_criterion(id));
  return outs;
}

}  // namespace gefp::acceptance
