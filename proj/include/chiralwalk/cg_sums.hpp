// Copyright 2026 The Chiralwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chiralwalk/errors.hpp"
#include "chiralwalk/spectrum.hpp"

namespace chiralwalk {

/// Half-width of the guard band around each critical phase, in radians.
/// Inside the band the spectral sums are dominated by a near-vanishing
/// eigenvalue and the two-level predictions below are not meaningful.
inline constexpr double kDefaultGuardMargin = 0.02;

/// Largest odd index tabulated when locating critical phases. The critical
/// phase for j = 99 sits within 0.007 of pi/2; everything beyond is treated
/// as the dense-critical region.
inline constexpr int kDefaultCriticalJMax = 99;

/// Spectral sums of the walk with the quantities derived from them.
/// p_star and t_star are present only away from the critical phases.
struct CGSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double gamma_c = 0.0;
  std::optional<double> p_star;
  std::optional<double> t_star;
  bool near_critical = false;
  double min_abs_eigenvalue = 0.0;  // smallest |E_j| over j != 0, diagnostic
};

/// Diagnostic decomposition of a spectral sum over the paired modes
/// (j, n-j), grouped by the parity of j in 1..(n-1)/2.
struct SumSplit {
  double total = 0.0;
  double odd_part = 0.0;
  double even_part = 0.0;
};

struct CriticalTheta {
  int j = 0;
  double theta_c_exact = 0.0;   // atan(n / alpha_j)
  double theta_c_approx = 0.0;  // atan(pi j / 2)
};

/// Critical phases for odd j, ascending in both j and theta.
struct CriticalThetaTable {
  std::vector<CriticalTheta> entries;
};

namespace detail {

inline double reciprocal_power(double value, int exponent) {
  double term = 1.0;
  for (int k = 0; k < exponent; ++k) term /= value;
  return term;
}

inline void require_noncritical_term(double eigenvalue, int j, const WalkSpectrum& spectrum) {
  const double zero_tol = 1e-12 * spectrum.n;
  if (std::abs(eigenvalue) <= zero_tol) {
    throw CriticalThetaError("spectral sum diverges: walk eigenvalue j=" + std::to_string(j) +
                             " vanishes at theta=" + std::to_string(spectrum.theta) +
                             " (n=" + std::to_string(spectrum.n) + ")");
  }
}

}  // namespace detail

/// S_i = (1/n) * sum over nonzero eigenvalues of 1/E_j^i.
/// The j = 0 mode is excluded by definition; any other eigenvalue within
/// 1e-12 * n of zero marks an exactly critical phase and raises
/// CriticalThetaError.
inline double sum_s(int i, const WalkSpectrum& spectrum) {
  if (i < 1) throw InvalidParameterError("sum_s: exponent must be >= 1");
  double acc = 0.0;
  for (int j = 1; j < spectrum.n; ++j) {
    const double e = spectrum.eigenvalues(j);
    detail::require_noncritical_term(e, j, spectrum);
    acc += detail::reciprocal_power(e, i);
  }
  return acc / spectrum.n;
}

/// Same sum, reported as paired odd/even partial sums: modes j and n-j are
/// combined, then attributed to the parity of j = 1..(n-1)/2. Away from the
/// critical phases each part carries about half of S_1.
inline SumSplit sum_s_split(int i, const WalkSpectrum& spectrum) {
  if (i < 1) throw InvalidParameterError("sum_s_split: exponent must be >= 1");
  SumSplit split;
  for (int j = 1; j <= (spectrum.n - 1) / 2; ++j) {
    const double e_low = spectrum.eigenvalues(j);
    const double e_high = spectrum.eigenvalues(spectrum.n - j);
    detail::require_noncritical_term(e_low, j, spectrum);
    detail::require_noncritical_term(e_high, spectrum.n - j, spectrum);
    const double pair =
        (detail::reciprocal_power(e_low, i) + detail::reciprocal_power(e_high, i)) / spectrum.n;
    (j % 2 != 0 ? split.odd_part : split.even_part) += pair;
  }
  split.total = split.odd_part + split.even_part;
  return split;
}

/// Critical jumping rate, gamma_c = S_1.
inline double gamma_c(const WalkSpectrum& spectrum) { return sum_s(1, spectrum); }

/// Large-n approximation S_1 ~ 1/(n cos(theta)), valid away from criticals.
inline double s1_asymptotic(int n, double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2.0)) {
    throw InvalidParameterError("s1_asymptotic: theta must lie in [0, pi/2); cos vanishes at pi/2");
  }
  return 1.0 / (n * std::cos(theta));
}

/// Large-n approximation S_2 ~ 1/(n^2 cos^2(theta)).
inline double s2_asymptotic(int n, double theta) {
  const double s1 = s1_asymptotic(n, theta);
  return s1 * s1;
}

/// Two-level predictions from the exact sums:
/// success probability p* = S_1/sqrt(S_2), reached at t* = (pi/2)(sqrt(S_2)/S_1)sqrt(n).
inline std::pair<double, double> predicted_success_and_runtime(const WalkSpectrum& spectrum) {
  const double s1 = sum_s(1, spectrum);
  const double s2 = sum_s(2, spectrum);
  const double p_star = s1 / std::sqrt(s2);
  const double t_star =
      (std::numbers::pi / 2.0) * (std::sqrt(s2) / s1) * std::sqrt(static_cast<double>(spectrum.n));
  return {p_star, t_star};
}

/// Phases where the mode-j eigenvalue crosses zero, for odd j up to j_max:
/// exact root atan(n / alpha_j) alongside the n-independent approximation
/// atan(pi j / 2).
inline CriticalThetaTable critical_thetas(int n, int j_max) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidParameterError("critical_thetas: n must be odd and >= 3");
  }
  if (j_max < 1 || j_max > n - 2 || j_max % 2 == 0) {
    throw InvalidParameterError("critical_thetas: j_max must be odd and in [1, n-2], got " +
                                std::to_string(j_max));
  }
  CriticalThetaTable table;
  table.entries.reserve((j_max + 1) / 2);
  for (int j = 1; j <= j_max; j += 2) {
    table.entries.push_back({j, std::atan(n / alpha(j, n)),
                             std::atan(std::numbers::pi * j / 2.0)});
  }
  return table;
}

/// True when theta falls inside the guard band of a tabulated critical phase
/// (odd j up to kDefaultCriticalJMax), or beyond the last tabulated critical
/// where the divergences crowd together toward pi/2.
inline bool is_near_critical(double theta, int n, double margin = kDefaultGuardMargin) {
  if (!(margin > 0.0)) throw InvalidParameterError("is_near_critical: margin must be positive");
  int j_max = std::min(kDefaultCriticalJMax, n - 2);
  if (j_max % 2 == 0) --j_max;
  const CriticalThetaTable table = critical_thetas(n, j_max);
  for (const CriticalTheta& entry : table.entries) {
    if (std::abs(theta - entry.theta_c_exact) < margin) return true;
  }
  return theta > table.entries.back().theta_c_exact - margin;
}

/// Assemble the full sum record for one walk spectrum. Throws
/// CriticalThetaError if the phase is exactly critical; near-critical (but
/// not exact) phases yield finite sums with the prediction fields empty.
inline CGSums cg_sums(const WalkSpectrum& spectrum, double margin = kDefaultGuardMargin) {
  CGSums sums;
  sums.s1 = sum_s(1, spectrum);
  sums.s2 = sum_s(2, spectrum);
  sums.gamma_c = sums.s1;
  sums.near_critical = is_near_critical(spectrum.theta, spectrum.n, margin);
  sums.min_abs_eigenvalue = spectrum.eigenvalues.tail(spectrum.n - 1).cwiseAbs().minCoeff();
  if (!sums.near_critical) {
    const auto [p_star, t_star] = predicted_success_and_runtime(spectrum);
    sums.p_star = p_star;
    sums.t_star = t_star;
  }
  return sums;
}

}  // namespace chiralwalk
