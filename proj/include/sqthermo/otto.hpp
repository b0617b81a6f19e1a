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


// Quantum Otto cycle with a squeezed hot reservoir. Strokes:
//   A->B adiabatic compression omega1 -> omega2 (occupation n1 kept),
//   B->C relaxation with the squeezed hot bath (beta2, omega2, r, theta),
//   C->D unsqueeze, then adiabatic expansion omega2 -> omega1,
//   D->A relaxation with the cold thermal bath (beta1, omega1).
// Sign convention: W > 0 is work extracted, Q > 0 is heat entering the mode.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqthermo/gaussian.hpp"
#include "sqthermo/types.hpp"

namespace sqt {

struct CycleParams {
  double beta1 = 1.0;
  double beta2 = 0.2;
  double omega1 = 1.0;
  double omega2 = 3.0;
  SqueezeParams sq;

  // Throws DomainError unless all positive, beta2 <= beta1, omega2 >= omega1.
  void validate() const;
};

enum class Region { I, II, III, IV, Infeasible };

std::string to_string(Region r);
Region region_from_string(const std::string& s);

struct Boundaries {
  double omega2_star = 0.0;
  std::optional<double> r_q;  // omega2 >= omega2_star
  std::optional<double> r_w;  // omega2 >= omega2_star
  std::optional<double> r_c;  // omega2 <= omega2_star
};

struct CycleReport {
  double n1 = 0.0;
  double n2 = 0.0;
  double W_AB = 0.0;
  double Q_BC = 0.0;
  double W_CD = 0.0;
  double Q_DA = 0.0;
  double W_out = 0.0;
  double DeltaA_BC = 0.0;
  std::optional<double> eta;      // absent in region II
  std::optional<double> eta_max;  // absent in region II
  double eta_c = 0.0;
  double eta_ht = 0.0;
  double Sigma_cyc = 0.0;
  Region region = Region::I;
  std::string signs;  // sign pattern of (W_out, Q_BC, Q_DA), e.g. "+-+"
  Boundaries boundaries;
};

struct RegionCall {
  Region region;
  std::string signs;
};

// Lower-numbered region wins inside the 1e-12 tie band. (W_out < 0, Q_BC > 0)
// gives Region::Infeasible.
RegionCall classify_region(double W_out, double Q_BC, double Q_DA);
Region classify_region(const CycleReport& report);

CycleReport analyze_cycle(const CycleParams& p);

// Uses p.beta1, p.beta2, p.omega1, p.omega2; ignores p.sq.
Boundaries region_boundaries(const CycleParams& p);

double eta_ht(const CycleParams& p);
double max_power_frequency_ht(const CycleParams& p);

struct FreeEnergySplit {
  double carnot_term = 0.0;
  double squeezing_term = 0.0;
  double DeltaF2 = 0.0;
  bool asymmetry_exceeds_tanh_r = false;  // DeltaA_BC >= tanh(r) Q_BC
};

// Throws ConsistencyError if W_out > DeltaF2 + 1e-12.
FreeEnergySplit free_energy_decomposition(const CycleParams& p);

struct CycleStates {
  GaussianState A = GaussianState::vacuum();
  GaussianState B = GaussianState::vacuum();
  GaussianState C = GaussianState::vacuum();
  GaussianState D = GaussianState::vacuum();
};

// Builds the four corner states with gaussian_core and recomputes all energies
// from mean_energy differences. Throws ConsistencyError on a mismatch > 1e-8
// with analyze_cycle.
CycleReport verify_cycle_numeric(const CycleParams& p, CycleStates* states = nullptr);

struct PhaseGrid {
  double omega2_min = 1.0;
  double omega2_max = 8.0;
  int n_omega2 = 200;
  double r_min = 0.0;
  double r_max = 1.5;
  int n_r = 200;

  void validate() const;
  double omega2(int i) const;
  double r(int j) const;
};

struct PhaseCell {
  double omega2 = 0.0;
  double r = 0.0;
  Region region = Region::I;
  std::optional<double> eta;
  double W_out = 0.0;
  double Q_BC = 0.0;
  double Q_DA = 0.0;
  double Sigma_cyc = 0.0;
  double DeltaF2 = 0.0;
};

// Row-major in r: cell (j, i) at index j * n_omega2 + i. base supplies the
// betas, omega1 and theta.
std::vector<PhaseCell> phase_diagram(const PhaseGrid& grid, const CycleParams& base);
std::vector<PhaseCell> phase_diagram_serial(const PhaseGrid& grid, const CycleParams& base);

// Maximizer of W_out(omega2) on [lo, hi] by golden-section search.
double argmax_work(const CycleParams& base, double lo, double hi, double tol = 1e-10);

}  // namespace sqt
