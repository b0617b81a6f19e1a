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


// Truncated Fock-space backend for the squeezed-reservoir master equation
//
//   d rho/dt = sum_{i=+-} R_i rho R_i^dag - 1/2 {R_i^dag R_i, rho},
//   R_- = sqrt(gamma (n_th + 1)) R,  R_+ = sqrt(gamma n_th) R^dag,
//   R = a cosh r + a^dag e^{i theta} sinh r,
//
// in the interaction picture (no Hamiltonian term). Works for arbitrary,
// including non-Gaussian, initial states.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sqthermo/gaussian.hpp"
#include "sqthermo/reservoir.hpp"

namespace sqt {

using CMatrix = Eigen::MatrixXcd;

inline constexpr double kEigenFloor = 1e-14;
inline constexpr double kTopPopulationLimit = 1e-8;

class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(CMatrix data);

  static FockDensityMatrix number_state(int dim, int n);

  int dim() const { return static_cast<int>(data_.rows()); }
  const CMatrix& data() const { return data_; }

  double trace() const { return data_.trace().real(); }
  double top_population() const { return data_(dim() - 1, dim() - 1).real(); }
  double hermiticity_error() const;
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrix data_;
};

// Truncation for the given Gaussian state: the estimated population tail
// beyond it is below 1e-20, so coherences with the top levels stay below
// 1e-10 even for nearly pure states (never less than 40).
int default_dim(const GaussianState& state);
int default_dim(const ReservoirSpec& res);

// Fock representation of a single-mode Gaussian state. The squeeze and
// displacement unitaries are exponentiated exactly on a padded space and the
// result is cut to dim. Throws TruncationError if the top level holds more than
// kTopPopulationLimit.
FockDensityMatrix gaussian_to_fock(const GaussianState& state, int dim);

// Squeeze unitary S(r, theta) truncated to dim x dim (computed on a padded
// space of size work_dim >= dim).
CMatrix squeeze_unitary(const SqueezeParams& sq, int dim, int work_dim);

class LindbladGenerator {
 public:
  LindbladGenerator(int dim, const ReservoirSpec& res);

  int dim() const { return dim_; }
  const ReservoirSpec& reservoir() const { return res_; }
  const CMatrix& jump_minus() const { return jump_minus_; }
  const CMatrix& jump_plus() const { return jump_plus_; }

  // L(rho). Banded kernel, parallel over columns.
  CMatrix apply(const CMatrix& rho) const;
  // L(rho) from dense matrix products; serial reference for apply().
  CMatrix apply_reference(const CMatrix& rho) const;

  // ||sum R_i^dag R_i||_inf, an upper estimate of the generator's spectral radius.
  double stiffness() const { return stiffness_; }

 private:
  int dim_;
  ReservoirSpec res_;
  CMatrix jump_minus_;
  CMatrix jump_plus_;
  CMatrix decay_;  // sum_i R_i^dag R_i
  // Coefficients of sum_i J rho J^dag for J = u a + v a^dag.
  double coef_uu_ = 0.0;
  std::complex<double> coef_uv_;
  double coef_vv_ = 0.0;
  Eigen::VectorXcd k0_;  // diagonal of decay_
  Eigen::VectorXcd k2_;  // decay_(m, m+2)
  double stiffness_ = 0.0;
};

LindbladGenerator build_generator(int dim, const ReservoirSpec& res);

struct EvolveStats {
  long steps = 0;
  double dt = 0.0;
  double max_trace_drift = 0.0;        // |Tr rho - 1| before renormalization
  double max_hermiticity_drift = 0.0;  // max |rho - rho^dag| before re-Hermitization
  double max_top_population = 0.0;
};

using StepObserver = std::function<void(double t, const FockDensityMatrix&)>;

// Fixed-step RK4 to time t with step <= min(dt_max, 0.01/gamma, 1/stiffness).
// The observer sees every accepted step.
FockDensityMatrix evolve(const FockDensityMatrix& rho, const LindbladGenerator& gen, double t,
                         double dt_max, const StepObserver& observer = {},
                         EvolveStats* stats = nullptr);

// States at each of the ascending times (first entry may be 0).
std::vector<FockDensityMatrix> sample_trajectory(const FockDensityMatrix& rho,
                                                 const LindbladGenerator& gen,
                                                 const std::vector<double>& times, double dt_max,
                                                 EvolveStats* stats = nullptr);

// S e^{-beta H}/Z S^dag in the truncated basis; checks ||L(pi)|| <= 1e-6 gamma.
FockDensityMatrix steady_state_fock(int dim, const ReservoirSpec& res);

double von_neumann_entropy(const FockDensityMatrix& rho, double floor = kEigenFloor);

// Tr[rho (ln rho - ln sigma)] with eigenvalues floored at `floor`. Returns
// +infinity when rho has weight > 1e-10 outside the floored support of sigma.
double relative_entropy(const FockDensityMatrix& rho, const FockDensityMatrix& sigma,
                        double floor = kEigenFloor);

// D(rho || pi_S) with ln pi_S = -ln(1 + n_th) - beta omega R^dag R taken in
// closed form. Stays accurate when pi_S has eigenvalues below the floor that
// rho still populates (e.g. phase-averaged squeezed states).
double relative_entropy_to_steady(const FockDensityMatrix& rho, const ReservoirSpec& res,
                                  double floor = kEigenFloor);

CMatrix annihilation(int dim);
CMatrix energy_operator(int dim, const ModeSpec& mode);
CMatrix asymmetry_operator(int dim, const ModeSpec& mode, double theta);

// Re Tr[op rho]
double expectation(const CMatrix& op, const CMatrix& rho);

ModeMoments fock_moments(const FockDensityMatrix& rho);

struct FockObservables {
  double energy = 0.0;
  double asymmetry = 0.0;
  double entropy = 0.0;
};

FockObservables observables(const FockDensityMatrix& rho, const ModeSpec& mode, double theta);

}  // namespace sqt
