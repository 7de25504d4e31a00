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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chiralwalk/cg_sums.hpp"
#include "chiralwalk/errors.hpp"
#include "chiralwalk/graph.hpp"
#include "chiralwalk/parallel.hpp"
#include "chiralwalk/spectrum.hpp"

namespace chiralwalk {

/// Search instance: walk graph, jumping rate, and the marked vertex.
struct SearchProblem {
  ChiralCompleteGraph graph;
  double gamma = 0.0;
  int marked = 0;
};

/// Full eigensystem of the search Hamiltonian, energies ascending, with the
/// probability overlaps of each eigenstate against the equal superposition
/// and the marked vertex.
struct SearchSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd states;  // column a = |psi_a>, largest entry rotated real-positive
  Eigen::VectorXd overlaps_s;
  Eigen::VectorXd overlaps_w;
};

/// Adjacent eigenstate pair carrying the bulk of the |s> and |w> overlap
/// mass: the two-level subspace the search rotates in.
struct SupportPair {
  int lower_index = 0;
  int upper_index = 1;
  double gap = 0.0;
  double combined_support = 0.0;
};

/// How the jumping rate is chosen in sweeps.
struct GammaRule {
  enum class Kind { ExactS1, Asymptotic, Fixed };
  Kind kind = Kind::ExactS1;
  double value = 0.0;

  static GammaRule exact_s1() { return {Kind::ExactS1, 0.0}; }
  static GammaRule asymptotic() { return {Kind::Asymptotic, 0.0}; }
  static GammaRule fixed(double v) { return {Kind::Fixed, v}; }

  double resolve(const WalkSpectrum& spectrum) const {
    switch (kind) {
      case Kind::ExactS1:
        return sum_s(1, spectrum);
      case Kind::Asymptotic:
        return s1_asymptotic(spectrum.n, spectrum.theta);
      case Kind::Fixed:
        return value;
    }
    throw InvalidParameterError("GammaRule: unknown kind");
  }
};

namespace detail {

inline void validate_problem(const SearchProblem& p) {
  if (!std::isfinite(p.gamma)) {
    throw InvalidParameterError("SearchProblem: gamma must be finite");
  }
  if (p.marked < 0 || p.marked >= p.graph.n()) {
    throw InvalidParameterError("SearchProblem: marked vertex " + std::to_string(p.marked) +
                                " out of range for n=" + std::to_string(p.graph.n()));
  }
}

/// Rotate each eigenvector so its largest-magnitude entry is real positive.
inline void fix_phases(Eigen::MatrixXcd& states) {
  for (Eigen::Index a = 0; a < states.cols(); ++a) {
    Eigen::Index imax = 0;
    states.col(a).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = states(imax, a);
    const double mag = std::abs(pivot);
    if (mag > 0.0) states.col(a) *= std::conj(pivot) / mag;
  }
}

/// Unguarded secular sum (1/n) sum_j 1/(gamma E_j - E). Division by an exact
/// pole yields +-inf, which the bracketing logic treats as a sign.
inline double secular_raw(double energy, const WalkSpectrum& spectrum, double gamma) {
  double acc = 0.0;
  for (int j = 0; j < spectrum.n; ++j) {
    acc += 1.0 / (gamma * spectrum.eigenvalues(j) - energy);
  }
  return acc / spectrum.n;
}

}  // namespace detail

/// H = -gamma L - |w><w|.
inline HermitianMatrix build_search_hamiltonian(const SearchProblem& p) {
  detail::validate_problem(p);
  HermitianMatrix hamiltonian = (-p.gamma) * build_laplacian(p.graph);
  hamiltonian(p.marked, p.marked) -= 1.0;
  return hamiltonian;
}

/// Dense eigendecomposition of H with overlap tables. This is the oracle
/// route; search_energies_secular below reaches the same energies through
/// the closed-form walk spectrum.
inline SearchSpectrum diagonalize_search(const SearchProblem& p) {
  const HermitianMatrix hamiltonian = build_search_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("diagonalize_search: eigensolver failed for n=" +
                         std::to_string(p.graph.n()) + ", theta=" + std::to_string(p.graph.theta()) +
                         ", gamma=" + std::to_string(p.gamma));
  }
  SearchSpectrum spectrum;
  spectrum.energies = solver.eigenvalues();
  spectrum.states = solver.eigenvectors();
  detail::fix_phases(spectrum.states);

  const int n = p.graph.n();
  const Eigen::VectorXcd s_state = equal_superposition(n);
  spectrum.overlaps_s.resize(n);
  spectrum.overlaps_w.resize(n);
  for (int a = 0; a < n; ++a) {
    spectrum.overlaps_s(a) = std::norm(s_state.dot(spectrum.states.col(a)));
    spectrum.overlaps_w(a) = std::norm(spectrum.states(p.marked, a));
  }
  return spectrum;
}

/// F(E) = (1/n) sum_j 1/(gamma E_j - E), including the j = 0 term.
/// Strictly increasing between consecutive poles and decaying to zero at
/// +-infinity, so F(E) = 1 interlaces the poles.
inline double secular_function(double energy, const WalkSpectrum& spectrum, double gamma) {
  double pole_scale = 1.0;
  for (int j = 0; j < spectrum.n; ++j) {
    pole_scale = std::max(pole_scale, std::abs(gamma * spectrum.eigenvalues(j)));
  }
  const double pole_tol = 1e-13 * pole_scale;
  for (int j = 0; j < spectrum.n; ++j) {
    if (std::abs(gamma * spectrum.eigenvalues(j) - energy) < pole_tol) {
      throw PoleEvaluationError("secular_function: E=" + std::to_string(energy) +
                                " lies within " + std::to_string(pole_tol) +
                                " of the pole at gamma*E_" + std::to_string(j));
    }
  }
  return detail::secular_raw(energy, spectrum, gamma);
}

/// All n eigenvalues of H from the secular equation F(E) = 1, sorted
/// ascending. Poles gamma*E_j are clustered (tolerance 1e-9 * max|pole|);
/// one root is isolated below the smallest distinct pole and one inside each
/// open interval between consecutive distinct poles by bisection to absolute
/// tolerance 1e-12. Each pole of multiplicity m also remains an eigenvalue
/// with multiplicity m - 1 (the walk eigenvectors orthogonal to |w> are
/// untouched by the rank-one marking term).
inline std::vector<double> search_energies_secular(const WalkSpectrum& spectrum, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw InvalidParameterError("search_energies_secular: gamma must be finite and nonzero");
  }
  const int n = spectrum.n;
  std::vector<double> poles(n);
  for (int j = 0; j < n; ++j) poles[j] = gamma * spectrum.eigenvalues(j);
  std::sort(poles.begin(), poles.end());

  const double pole_scale = std::max(std::abs(poles.front()), std::abs(poles.back()));
  const double cluster_tol = 1e-9 * pole_scale;
  std::vector<double> distinct;
  std::vector<int> multiplicity;
  for (int j = 0; j < n; ++j) {
    if (j == 0 || poles[j] - poles[j - 1] > cluster_tol) {
      distinct.push_back(poles[j]);
      multiplicity.push_back(1);
    } else {
      ++multiplicity.back();
    }
  }

  const auto f = [&](double e) { return detail::secular_raw(e, spectrum, gamma) - 1.0; };

  const auto bisect = [&](double lo, double hi) {
    // invariant: f(lo) < 0 < f(hi)
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  // Endpoint just right of a pole where f is negative. delta expands
  // geometrically past floating-point collapse onto the pole itself.
  const auto right_of_pole = [&](double pole, double width) {
    double delta = 1e-7 * width;
    for (int attempt = 0; attempt < 80; ++attempt) {
      const double x = pole + delta;
      if (x > pole && x < pole + 0.5 * width && f(x) < 0.0) return x;
      delta *= 10.0;
    }
    throw BracketingError("search_energies_secular: no negative value right of pole " +
                          std::to_string(pole) + " (interval width " + std::to_string(width) + ")");
  };
  const auto left_of_pole = [&](double pole, double width) {
    double delta = 1e-7 * width;
    for (int attempt = 0; attempt < 80; ++attempt) {
      const double x = pole - delta;
      if (x < pole && x > pole - 0.5 * width && f(x) > 0.0) return x;
      delta *= 10.0;
    }
    throw BracketingError("search_energies_secular: no positive value left of pole " +
                          std::to_string(pole) + " (interval width " + std::to_string(width) + ")");
  };

  std::vector<double> energies;
  energies.reserve(n);

  // Root below the smallest pole: F rises from 0+ toward +inf at the pole.
  {
    double lo = distinct.front() - 1.0;
    for (int attempt = 0; f(lo) >= 0.0; ++attempt) {
      if (attempt > 100) {
        throw BracketingError("search_energies_secular: no sign change below the smallest pole " +
                              std::to_string(distinct.front()));
      }
      lo = distinct.front() - 2.0 * (distinct.front() - lo);
    }
    const double hi = left_of_pole(distinct.front(), std::max(1.0, std::abs(distinct.front())));
    energies.push_back(bisect(lo, hi));
  }

  // One root strictly inside each interval between consecutive distinct poles.
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    const double width = distinct[i + 1] - distinct[i];
    const double lo = right_of_pole(distinct[i], width);
    const double hi = left_of_pole(distinct[i + 1], width);
    if (!(lo < hi)) {
      throw BracketingError("search_energies_secular: degenerate bracket in (" +
                            std::to_string(distinct[i]) + ", " + std::to_string(distinct[i + 1]) +
                            ")");
    }
    energies.push_back(bisect(lo, hi));
  }

  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (int m = 1; m < multiplicity[i]; ++m) energies.push_back(distinct[i]);
  }
  std::sort(energies.begin(), energies.end());
  return energies;
}

/// Adjacent pair (a, a+1) maximizing the combined overlap mass
/// overlaps_s[a] + overlaps_s[a+1] + overlaps_w[a] + overlaps_w[a+1].
inline SupportPair support_pair(const SearchSpectrum& spectrum) {
  const Eigen::Index n = spectrum.energies.size();
  if (n < 2) throw InvalidParameterError("support_pair: need at least two eigenstates");
  SupportPair best;
  double best_mass = -1.0;
  for (Eigen::Index a = 0; a + 1 < n; ++a) {
    const double mass = spectrum.overlaps_s(a) + spectrum.overlaps_s(a + 1) +
                        spectrum.overlaps_w(a) + spectrum.overlaps_w(a + 1);
    if (mass > best_mass) {
      best_mass = mass;
      best.lower_index = static_cast<int>(a);
    }
  }
  best.upper_index = best.lower_index + 1;
  best.gap = spectrum.energies(best.upper_index) - spectrum.energies(best.lower_index);
  best.combined_support = best_mass;
  return best;
}

/// k lowest eigenvalues of H across a phase grid (dense path), one row per
/// grid point. Grid points are processed in parallel; a CriticalThetaError
/// from resolving gamma = S_1 at an exactly critical phase propagates.
inline Eigen::MatrixXd energy_level_sweep(int n, const std::vector<double>& thetas, int k,
                                          const GammaRule& rule) {
  if (k < 1 || k > n) throw InvalidParameterError("energy_level_sweep: k must be in [1, n]");
  Eigen::MatrixXd levels(static_cast<Eigen::Index>(thetas.size()), k);
  parallel_for(thetas.size(), [&](std::size_t idx) {
    const ChiralCompleteGraph graph(n, thetas[idx]);
    const WalkSpectrum spectrum = walk_spectrum(graph);
    const SearchProblem problem{graph, rule.resolve(spectrum), 0};
    const HermitianMatrix hamiltonian = build_search_hamiltonian(problem);
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(hamiltonian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("energy_level_sweep: eigensolver failed at theta=" +
                           std::to_string(thetas[idx]));
    }
    levels.row(static_cast<Eigen::Index>(idx)) = solver.eigenvalues().head(k).transpose();
  });
  return levels;
}

}  // namespace chiralwalk
