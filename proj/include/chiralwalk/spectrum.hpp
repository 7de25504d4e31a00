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
#include <cmath>
#include <numbers>
#include <string>

#include "chiralwalk/errors.hpp"
#include "chiralwalk/graph.hpp"

namespace chiralwalk {

/// Closed-form spectrum of -L in circulant labeling j = 0..n-1.
/// eigenvalues(0) = 0 exactly; alphas(0) is an unused placeholder.
struct WalkSpectrum {
  int n = 0;
  double theta = 0.0;
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd alphas;
};

/// alpha_j = cot(pi j / n) + csc(pi j / n) for odd j,
///           cot(pi j / n) - csc(pi j / n) for even j.
/// Evaluated through the equivalent half-angle forms cot(pi j / 2n) and
/// -tan(pi j / 2n); indices above n/2 go through the reflection
/// alpha_{n-j} = -alpha_j, which keeps the antisymmetry exact and avoids
/// tan near pi/2.
inline double alpha(int j, int n) {
  if (j < 1 || j >= n) {
    throw InvalidParameterError("alpha: index must satisfy 1 <= j <= n-1, got j=" +
                                std::to_string(j) + ", n=" + std::to_string(n));
  }
  const int k = std::min(j, n - j);
  const double half_angle = std::numbers::pi * k / (2.0 * n);
  const double value = (k % 2 != 0) ? 1.0 / std::tan(half_angle) : -std::tan(half_angle);
  return (j == k) ? value : -value;
}

/// Eigenvalue of -L for mode j: 0 for j = 0, else n cos(theta) - alpha_j sin(theta).
inline double walk_eigenvalue(int j, const ChiralCompleteGraph& g) {
  if (j == 0) return 0.0;
  return g.n() * std::cos(g.theta()) - alpha(j, g.n()) * std::sin(g.theta());
}

/// All n closed-form eigenvalues of -L with their alpha values.
inline WalkSpectrum walk_spectrum(const ChiralCompleteGraph& g) {
  WalkSpectrum spectrum;
  spectrum.n = g.n();
  spectrum.theta = g.theta();
  spectrum.eigenvalues.resize(g.n());
  spectrum.alphas.resize(g.n());
  spectrum.eigenvalues(0) = 0.0;
  spectrum.alphas(0) = 0.0;
  for (int j = 1; j < g.n(); ++j) {
    spectrum.alphas(j) = alpha(j, g.n());
    spectrum.eigenvalues(j) = g.n() * std::cos(g.theta()) - spectrum.alphas(j) * std::sin(g.theta());
  }
  return spectrum;
}

/// Validation oracle: eigenvalues of -L by dense Hermitian diagonalization,
/// sorted ascending. Independent of the closed forms above.
inline Eigen::VectorXd dense_walk_spectrum(const ChiralCompleteGraph& g) {
  const HermitianMatrix neg_laplacian = -build_laplacian(g);
  const double asym = (neg_laplacian - neg_laplacian.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw NumericalError("dense_walk_spectrum: matrix is not Hermitian, max asymmetry " +
                         std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(neg_laplacian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense_walk_spectrum: eigensolver failed for n=" +
                         std::to_string(g.n()) + ", theta=" + std::to_string(g.theta()) +
                         ", |L|_max=" + std::to_string(neg_laplacian.cwiseAbs().maxCoeff()));
  }
  return solver.eigenvalues();
}

}  // namespace chiralwalk
