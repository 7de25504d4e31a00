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
#include <complex>
#include <numbers>
#include <string>

#include "chiralwalk/errors.hpp"

namespace chiralwalk {

using Complex = std::complex<double>;

/// Dense complex square matrix. Every builder in this library fills both
/// triangles from conjugate pairs, so the result is Hermitian to the bit.
using HermitianMatrix = Eigen::MatrixXcd;

/// Result of reducing an arbitrary real phase into [0, pi/2].
///
/// The reduced walk reproduces the original one after undoing the recorded
/// transformations: `arrows_reversed` exchanges the two hop directions
/// (L -> L^T, equivalently a reflection relabeling of the vertices) and
/// `gamma_sign = -1` negates the Laplacian (absorbed into the jumping rate).
struct CanonicalWalkParams {
  double theta_canonical = 0.0;
  bool arrows_reversed = false;
  int gamma_sign = +1;
};

/// Reduce any finite phase to the fundamental interval [0, pi/2].
///
/// After taking theta modulo 2*pi:
///   theta > pi:    every entry of L carries e^{+-i*theta} = -e^{+-i(theta-pi)}
///                  and the diagonal negates with cos, so L(theta) = -L(theta-pi);
///                  the sign moves into gamma.
///   theta > pi/2:  e^{+-i*theta} = -e^{-+i(pi-theta)}, which conjugates the hop
///                  phases on top of the negation, so L(theta) = -L(pi-theta)^T;
///                  both flags toggle.
inline CanonicalWalkParams canonicalize_theta(double theta_raw) {
  if (!std::isfinite(theta_raw)) {
    throw InvalidParameterError("canonicalize_theta: phase must be finite");
  }
  constexpr double pi = std::numbers::pi;
  double t = std::fmod(theta_raw, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;

  CanonicalWalkParams params;
  params.theta_canonical = t;
  if (params.theta_canonical > pi) {
    params.theta_canonical -= pi;
    params.gamma_sign = -params.gamma_sign;
  }
  if (params.theta_canonical > pi / 2.0) {
    params.theta_canonical = pi - params.theta_canonical;
    params.arrows_reversed = !params.arrows_reversed;
    params.gamma_sign = -params.gamma_sign;
  }
  return params;
}

/// Complete graph on an odd number of vertices with chiral hop phases.
///
/// Vertices sit on a circle, indexed 0..n-1; each vertex couples to the
/// (n-1)/2 vertices ahead of it (increasing index mod n) with weight
/// e^{i*theta} and to the (n-1)/2 behind with e^{-i*theta}. The phase passed
/// to the constructor may be any finite real; it is canonicalized on entry.
class ChiralCompleteGraph {
 public:
  ChiralCompleteGraph(int n, double theta) : n_(n), params_(canonicalize_theta(theta)) {
    if (n < 3 || n % 2 == 0) {
      throw InvalidParameterError("ChiralCompleteGraph: vertex count must be odd and >= 3, got " +
                                  std::to_string(n));
    }
  }

  int n() const { return n_; }
  double theta() const { return params_.theta_canonical; }
  const CanonicalWalkParams& canonical_params() const { return params_; }

 private:
  int n_;
  CanonicalWalkParams params_;
};

/// Equal superposition over all vertices, (1/sqrt(n)) * sum_i |i>.
inline Eigen::VectorXcd equal_superposition(int n) {
  if (n < 1) throw InvalidParameterError("equal_superposition: n must be positive");
  return Eigen::VectorXcd::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

/// First column of the graph Laplacian L:
/// [-(n-1)cos(theta), e^{i*theta} x (n-1)/2, e^{-i*theta} x (n-1)/2].
/// Every other column is a cyclic shift of this one.
inline Eigen::VectorXcd laplacian_first_column(const ChiralCompleteGraph& g) {
  const int n = g.n();
  const int half = (n - 1) / 2;
  Eigen::VectorXcd col(n);
  col(0) = Complex(-(n - 1) * std::cos(g.theta()), 0.0);
  const Complex ahead = std::polar(1.0, g.theta());
  const Complex behind = std::conj(ahead);
  for (int m = 1; m <= half; ++m) col(m) = ahead;
  for (int m = half + 1; m < n; ++m) col(m) = behind;
  return col;
}

/// Dense circulant Laplacian: column k is the first column shifted down by k.
/// Row sums vanish, so the all-ones vector spans the kernel.
inline HermitianMatrix build_laplacian(const ChiralCompleteGraph& g) {
  const int n = g.n();
  const Eigen::VectorXcd col = laplacian_first_column(g);
  HermitianMatrix laplacian(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      laplacian(j, k) = col((j - k + n) % n);
    }
  }
  return laplacian;
}

}  // namespace chiralwalk
