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


// Entropy bookkeeping for a mode relaxing in a squeezed thermal reservoir:
//
//   Sigma_dot = S_dot - Phi_dot >= 0,
//   Phi_dot   = beta (cosh 2r Q_dot - sinh 2r A_dot),
//
// and the single-reservoir work-extraction protocol (unitary stroke followed
// by full relaxation back to pi_S).

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sqthermo/fock.hpp"
#include "sqthermo/gaussian.hpp"
#include "sqthermo/reservoir.hpp"

namespace sqt {

struct Rates {
  double Sdot = 0.0;
  double Qdot = 0.0;
  double Adot = 0.0;
  double Phidot = 0.0;
  double Sigmadot = 0.0;
};

struct Fluxes {
  double Qdot = 0.0;
  double Adot = 0.0;
};

// beta (cosh 2r dQ - sinh 2r dA)
double entropy_flow(const ReservoirSpec& res, double dQ, double dA);

// Closed form. Sdot is +infinity for a pure state that is being mixed.
Rates rates(const GaussianState& state, const ReservoirSpec& res);

// Q_dot = Tr[H L(rho)], A_dot = Tr[A L(rho)], S_dot from centered differences of
// the von Neumann entropy over single RK4 steps of size h and h/2, Richardson
// combined (default h: the evolve step).
Rates rates(const FockDensityMatrix& rho, const LindbladGenerator& gen, double h = 0.0);

// -gamma (U - omega N), -gamma (A - omega |M|)
Fluxes closed_form_fluxes(const GaussianState& state, const ReservoirSpec& res);

struct ThermoLedger {
  std::vector<double> times;
  std::vector<double> S;
  std::vector<double> Q;
  std::vector<double> A;
  std::vector<double> Phi;
  std::vector<double> Sigma;

  std::size_t size() const { return times.size(); }
  // Largest decrease of Sigma between consecutive samples (0 if monotone).
  double max_sigma_decrease() const;
  // max |Sigma - (S - S0) + Phi|
  double max_balance_error() const;
};

// n_samples equally spaced times on [0, t_end], n_samples >= 2.
std::vector<double> sample_times(double t_end, int n_samples);

ThermoLedger gaussian_ledger(const GaussianState& initial, const ReservoirSpec& res, double t_end,
                             int n_samples = 201);

struct FockRun {
  ThermoLedger ledger;
  std::vector<double> energy;
  std::vector<double> asymmetry;
  std::vector<double> rel_entropy;  // D(rho(t) || pi_S)
  std::vector<double> trace_drift;  // worst pre-renormalization drift since the previous sample
  std::vector<ModeMoments> moments;
  EvolveStats stats;
};

// Samples the Fock trajectory on sample_times(t_end, n_samples).
FockRun fock_ledger(const FockDensityMatrix& rho0, const LindbladGenerator& gen, double t_end,
                    int n_samples = 201,
                    double dt_max = 0.01, double eigen_floor = kEigenFloor);

// Diagonal populations of pi_S with all coherences removed.
FockDensityMatrix dephased_steady_state(int dim, const ReservoirSpec& res);

// tanh(2r) dA
double single_reservoir_work_bound(const ReservoirSpec& res, double deltaA);

struct MaxWork {
  double W_max = 0.0;
  double Sigma = 0.0;  // beta W_max
};

// omega (2 n_th + 1) sinh^2 r
MaxWork max_extractable_work(const ReservoirSpec& res);

// Single-mode Gaussian unitary: (x, p) -> symplectic (x, p) + displacement.
struct GaussianUnitary {
  Eigen::Matrix2d symplectic = Eigen::Matrix2d::Identity();
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();

  static GaussianUnitary identity() { return {}; }
  static GaussianUnitary squeeze(const SqueezeParams& sq);
  static GaussianUnitary rotation(double phi);
  static GaussianUnitary displacement_op(std::complex<double> alpha);

  // this after other
  GaussianUnitary compose(const GaussianUnitary& other) const;
  GaussianState apply(const GaussianState& state) const;
};

struct ProtocolResult {
  double W_out = 0.0;
  double Q = 0.0;
  double Sigma = 0.0;
  double deltaA = 0.0;  // asymmetry change during relaxation
  double bound = 0.0;   // tanh(2r) deltaA
};

// Unitary stroke on pi_S, then complete relaxation back to pi_S. Throws
// ConsistencyError if W_out exceeds the bound by more than 1e-9.
ProtocolResult two_stroke_protocol(const ReservoirSpec& res, const GaussianUnitary& u);

}  // namespace sqt
