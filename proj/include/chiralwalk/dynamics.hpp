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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chiralwalk/errors.hpp"
#include "chiralwalk/graph.hpp"
#include "chiralwalk/parallel.hpp"
#include "chiralwalk/search_hamiltonian.hpp"

namespace chiralwalk {

/// Sampled success probability |<w|psi(t)>|^2 over a uniform time grid.
/// norm_drift records the worst deviation of the state norm from one across
/// all samples; spectral evolution keeps it far below 1e-9.
struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> success;
  double norm_drift = 0.0;
  std::optional<Eigen::MatrixXd> vertex_probabilities;  // sample-major, opt-in
};

/// Location and height of a trace maximum. at_endpoint flags traces with no
/// interior local maximum (monotone or constant), where the last sample is
/// reported instead.
struct PeakReport {
  double t_peak = 0.0;
  double p_peak = 0.0;
  bool at_endpoint = false;
};

/// Exact unitary propagator built from one Hermitian eigendecomposition,
/// reused across arbitrarily many evaluation times.
class SpectralEvolver {
 public:
  explicit SpectralEvolver(const HermitianMatrix& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("SpectralEvolver: eigendecomposition failed (dim=" +
                           std::to_string(hamiltonian.rows()) + ")");
    }
    energies_ = solver.eigenvalues();
    states_ = solver.eigenvectors();
  }

  /// Reuse an already computed eigensystem.
  SpectralEvolver(Eigen::VectorXd energies, Eigen::MatrixXcd states)
      : energies_(std::move(energies)), states_(std::move(states)) {
    if (energies_.size() != states_.cols() || states_.rows() != states_.cols()) {
      throw InvalidParameterError("SpectralEvolver: inconsistent eigensystem dimensions");
    }
  }

  Eigen::Index dimension() const { return states_.rows(); }

  /// psi(t) = sum_a e^{-i E_a t} |psi_a><psi_a|psi0>. psi0 must be normalized.
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const {
    Eigen::VectorXcd coeffs = states_.adjoint() * check_state(psi0);
    apply_phases(coeffs, t);
    return states_ * coeffs;
  }

  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXcd& states() const { return states_; }

  /// Eigenbasis coefficients of a (validated) initial state.
  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& psi0) const {
    return states_.adjoint() * check_state(psi0);
  }

  void apply_phases(Eigen::VectorXcd& coeffs, double t) const {
    for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
      coeffs(a) *= std::polar(1.0, -energies_(a) * t);
    }
  }

 private:
  const Eigen::VectorXcd& check_state(const Eigen::VectorXcd& psi0) const {
    if (psi0.size() != states_.rows()) {
      throw InvalidParameterError("SpectralEvolver: state dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
      throw InvalidParameterError("SpectralEvolver: initial state must be normalized, |psi| = " +
                                  std::to_string(psi0.norm()));
    }
    return psi0;
  }

  Eigen::VectorXd energies_;
  Eigen::MatrixXcd states_;
};

/// One-shot evolution under a fixed Hermitian Hamiltonian.
inline Eigen::VectorXcd evolve(const HermitianMatrix& hamiltonian, const Eigen::VectorXcd& psi0,
                               double t) {
  return SpectralEvolver(hamiltonian).evolve(psi0, t);
}

/// Walk Hamiltonian without the marking term, H_walk = -gamma L.
inline HermitianMatrix build_walk_hamiltonian(const ChiralCompleteGraph& g, double gamma) {
  if (!std::isfinite(gamma)) throw InvalidParameterError("build_walk_hamiltonian: gamma not finite");
  return (-gamma) * build_laplacian(g);
}

/// Success probability over t = 0, dt, 2*dt, ... <= t_max from a precomputed
/// search eigensystem, starting in the equal superposition.
inline EvolutionTrace success_trace(const SearchSpectrum& spectrum, int marked, double t_max,
                                    double dt, bool keep_vertex_probabilities = false) {
  if (!(t_max > 0.0) || !(dt > 0.0)) {
    throw InvalidParameterError("success_trace: t_max and dt must be positive");
  }
  const Eigen::Index n = spectrum.energies.size();
  if (marked < 0 || marked >= n) {
    throw InvalidParameterError("success_trace: marked vertex out of range");
  }
  const SpectralEvolver evolver(spectrum.energies, spectrum.states);
  const Eigen::VectorXcd coeffs = evolver.coefficients(equal_superposition(static_cast<int>(n)));

  const auto samples =
      static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12))) + 1;
  EvolutionTrace trace;
  trace.times.resize(samples);
  trace.success.resize(samples);
  std::vector<double> drift(samples, 0.0);
  if (keep_vertex_probabilities) {
    trace.vertex_probabilities.emplace(static_cast<Eigen::Index>(samples), n);
  }

  parallel_for(samples, [&](std::size_t k) {
    const double t = static_cast<double>(k) * dt;
    Eigen::VectorXcd phased = coeffs;
    evolver.apply_phases(phased, t);
    const Eigen::VectorXcd psi = evolver.states() * phased;
    trace.times[k] = t;
    trace.success[k] = std::norm(psi(marked));
    drift[k] = std::abs(psi.squaredNorm() - 1.0);
    if (trace.vertex_probabilities) {
      trace.vertex_probabilities->row(static_cast<Eigen::Index>(k)) =
          psi.cwiseAbs2().transpose();
    }
  });
  for (const double d : drift) trace.norm_drift = std::max(trace.norm_drift, d);
  return trace;
}

/// Convenience overload: diagonalizes the search Hamiltonian first.
inline EvolutionTrace success_trace(const SearchProblem& problem, double t_max, double dt,
                                    bool keep_vertex_probabilities = false) {
  return success_trace(diagonalize_search(problem), problem.marked, t_max, dt,
                       keep_vertex_probabilities);
}

/// First local maximum whose height reaches half the global maximum, refined
/// by a parabola through the three surrounding samples. Monotone or constant
/// traces report the final sample with at_endpoint set.
inline PeakReport first_peak(const EvolutionTrace& trace) {
  const std::vector<double>& s = trace.success;
  if (s.empty()) throw InvalidParameterError("first_peak: empty trace");
  if (s.size() < 3) return {trace.times.back(), s.back(), true};

  const double threshold = 0.5 * *std::max_element(s.begin(), s.end());
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (!(s[k] >= threshold && s[k] > s[k - 1] && s[k] >= s[k + 1])) continue;
    const double spacing = trace.times[k + 1] - trace.times[k];
    const double curvature = s[k - 1] - 2.0 * s[k] + s[k + 1];
    if (std::abs(curvature) < 1e-300) return {trace.times[k], s[k], false};
    const double shift = 0.5 * (s[k - 1] - s[k + 1]) / curvature;  // in grid units
    const double slope = 0.5 * (s[k + 1] - s[k - 1]);
    return {trace.times[k] + shift * spacing, s[k] + 0.5 * slope * shift, false};
  }
  return {trace.times.back(), s.back(), true};
}

/// Largest per-vertex difference between the probability distributions at
/// +t and -t when walking (no marking term) from the given start state.
/// Zero for theta in {0, pi/2-closure cases where L is real}; strictly
/// positive in between, witnessing the broken symmetry.
inline double time_reversal_asymmetry(const ChiralCompleteGraph& g, const Eigen::VectorXcd& start,
                                      double gamma, double t) {
  if (!(t > 0.0)) throw InvalidParameterError("time_reversal_asymmetry: t must be positive");
  const SpectralEvolver evolver(build_walk_hamiltonian(g, gamma));
  const Eigen::VectorXd forward = evolver.evolve(start, t).cwiseAbs2();
  const Eigen::VectorXd backward = evolver.evolve(start, -t).cwiseAbs2();
  return (forward - backward).cwiseAbs().maxCoeff();
}

inline double time_reversal_asymmetry(const ChiralCompleteGraph& g, int start_vertex, double gamma,
                                      double t) {
  if (start_vertex < 0 || start_vertex >= g.n()) {
    throw InvalidParameterError("time_reversal_asymmetry: start vertex out of range");
  }
  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(g.n());
  start(start_vertex) = 1.0;
  return time_reversal_asymmetry(g, start, gamma, t);
}

}  // namespace chiralwalk
