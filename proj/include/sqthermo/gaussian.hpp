// Copyright 2026 The sqthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Exact Gaussian-state algebra for one or two bosonic modes.
//
// Quadratures are x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)) with
// [x, p] = i, ordered (x1, p1, x2, p2). The covariance holds symmetrized
// central second moments, so the vacuum has cov = diag(1/2, 1/2).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sqthermo/reservoir.hpp"
#include "sqthermo/types.hpp"

namespace sqt {

using PhaseVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using PhaseMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

class GaussianState {
 public:
  // Validates shape and symmetry (1e-12). Physicality is checked separately
  // by min_symplectic_eigenvalue / entropy_gaussian.
  GaussianState(PhaseVec mean, PhaseMat cov);

  static GaussianState vacuum(int n_modes = 1);
  static GaussianState thermal(double n_th);

  int n_modes() const { return static_cast<int>(mean_.size()) / 2; }
  const PhaseVec& mean() const { return mean_; }
  const PhaseMat& cov() const { return cov_; }

  // Product state (this) x (other); both single-mode.
  GaussianState tensor(const GaussianState& other) const;
  // Reduced state of mode k of a two-mode state.
  GaussianState marginal(int k) const;

 private:
  PhaseVec mean_;
  PhaseMat cov_;
};

// Raw (non-central) moments of a single mode.
struct ModeMoments {
  std::complex<double> a;   // <a>
  std::complex<double> a2;  // <a^2>
  double n = 0.0;           // <a^dag a>
};

ModeMoments moments(const GaussianState& state);
GaussianState from_moments(const ModeMoments& m);

std::vector<double> symplectic_eigenvalues(const GaussianState& state);
double min_symplectic_eigenvalue(const GaussianState& state);

// 2x2 symplectic matrix of the squeeze S(r, theta) acting on (x, p).
Eigen::Matrix2d squeeze_symplectic(const SqueezeParams& sq);

GaussianState make_squeezed_thermal(double beta, const ModeSpec& mode, const SqueezeParams& sq);
GaussianState apply_squeeze(const GaussianState& state, const SqueezeParams& sq);

// Resonant exchange H = i g (a b^dag - a^dag b) for time tau, angle = g tau:
// a -> a cos(angle) - b sin(angle), b -> b cos(angle) + a sin(angle).
GaussianState apply_beam_splitter(const GaussianState& state2, double angle);

// Central variances of (x_phi, p_phi), x_phi = x cos(phi) + p sin(phi).
std::pair<double, double> quadrature_variances(const GaussianState& state, double phi);

double mean_photon_number(const GaussianState& state);
double mean_energy(const GaussianState& state, const ModeSpec& mode);

// (omega/2)(<p_{theta/2}^2> - <x_{theta/2}^2>) with raw second moments.
double asymmetry(const GaussianState& state, const ModeSpec& mode, double theta);

// von Neumann entropy in nats.
double entropy_gaussian(const GaussianState& state);

// Closed-form relaxation under the squeezed-reservoir master equation. The
// R = a cosh r + a^dag e^{i theta} sinh r moments decay as
// <R> ~ e^{-gamma t/2}, <R^2> ~ e^{-gamma t}, <R^dag R> - n_th ~ e^{-gamma t}.
GaussianState relax_moments_analytic(const GaussianState& initial, const ReservoirSpec& res,
                                     double t);

}  // namespace sqt
