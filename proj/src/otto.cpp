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


#include "sqthermo/otto.hpp"

#include <algorithm>
#include <cmath>

#include "sqthermo/errors.hpp"
#include "sqthermo/reservoir.hpp"

namespace sqt {

namespace {

constexpr double kTie = 1e-12;

double sinh2(double r) {
  const double s = std::sinh(r);
  return s * s;
}

std::optional<double> asinh_sqrt(double s2) {
  if (!(s2 >= 0.0)) return std::nullopt;
  return std::asinh(std::sqrt(s2));
}

char sign_char(double v) {
  if (std::abs(v) <= kTie) return '0';
  return v > 0.0 ? '+' : '-';
}

}  // namespace

void CycleParams::validate() const {
  if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw DomainError("cycle: beta1 and beta2 must be > 0");
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw DomainError("cycle: omega1 and omega2 must be > 0");
  if (beta2 > beta1) throw DomainError("cycle: beta2 must be <= beta1");
  if (omega2 < omega1) throw DomainError("cycle: omega2 must be >= omega1");
}

std::string to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::Infeasible: return "infeasible";
  }
  return "infeasible";
}

Region region_from_string(const std::string& s) {
  if (s == "I") return Region::I;
  if (s == "II") return Region::II;
  if (s == "III") return Region::III;
  if (s == "IV") return Region::IV;
  if (s == "infeasible") return Region::Infeasible;
  throw DomainError("unknown region label '" + s + "'");
}

RegionCall classify_region(double W_out, double Q_BC, double Q_DA) {
  const bool w_pos = W_out >= -kTie, w_neg = W_out <= kTie;
  const bool qh_pos = Q_BC >= -kTie, qh_neg = Q_BC <= kTie;
  const bool qc_pos = Q_DA >= -kTie, qc_neg = Q_DA <= kTie;
  std::string signs{sign_char(W_out), sign_char(Q_BC), sign_char(Q_DA)};
  Region reg = Region::Infeasible;
  if (w_pos && qh_pos && qc_neg) {
    reg = Region::I;
  } else if (w_neg && qh_neg && qc_pos) {
    reg = Region::II;
  } else if (w_pos && qh_neg && qc_pos) {
    reg = Region::III;
  } else if (w_pos && qh_pos && qc_pos) {
    reg = Region::IV;
  }
  return {reg, signs};
}

Region classify_region(const CycleReport& report) {
  return classify_region(report.W_out, report.Q_BC, report.Q_DA).region;
}

Boundaries region_boundaries(const CycleParams& p) {
  p.validate();
  const double n1 = thermal_occupation(p.beta1, p.omega1);
  const double n2 = thermal_occupation(p.beta2, p.omega2);
  Boundaries b;
  b.omega2_star = p.omega1 * p.beta1 / p.beta2;
  if (p.omega2 >= b.omega2_star) {
    const double sq = std::max(0.0, (n1 - n2) / (2.0 * n2 + 1.0));
    b.r_q = asinh_sqrt(sq);
    b.r_w = asinh_sqrt((1.0 - p.omega1 / p.omega2) * sq);
  }
  if (p.omega2 <= b.omega2_star) {
    b.r_c = asinh_sqrt(std::max(0.0, (b.omega2_star / p.omega2 - 1.0) * (n2 - n1) / (2.0 * n2 + 1.0)));
  }
  return b;
}

double eta_ht(const CycleParams& p) {
  p.validate();
  return 1.0 - p.beta2 / (p.beta1 * (1.0 + 2.0 * sinh2(p.sq.r())));
}

double max_power_frequency_ht(const CycleParams& p) {
  if (!(p.beta1 > 0.0) || !(p.beta2 > 0.0) || !(p.omega1 > 0.0)) {
    throw DomainError("max_power_frequency_ht: parameters must be > 0");
  }
  return p.omega1 * std::sqrt(p.beta1 * (1.0 + 2.0 * sinh2(p.sq.r())) / p.beta2);
}

CycleReport analyze_cycle(const CycleParams& p) {
  p.validate();
  const double r = p.sq.r();
  const double w1 = p.omega1, w2 = p.omega2;
  const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r), s2 = sinh2(r);

  CycleReport c;
  c.n1 = thermal_occupation(p.beta1, w1);
  c.n2 = thermal_occupation(p.beta2, w2);
  const double n1 = c.n1, n2 = c.n2;
  c.W_AB = -(w2 - w1) * n1;
  c.Q_BC = w2 * (n2 * ch + s2 - n1);
  c.W_CD = w2 * (n2 * ch + s2) - w1 * n2;
  c.Q_DA = w1 * (n1 - n2);
  c.W_out = c.W_AB + c.W_CD;
  c.DeltaA_BC = w2 * sh * (n2 + 0.5);
  c.Sigma_cyc = -p.beta1 * c.Q_DA - p.beta2 * (ch * c.Q_BC - sh * c.DeltaA_BC);
  c.eta_c = 1.0 - p.beta2 / p.beta1;
  c.eta_ht = eta_ht(p);
  c.boundaries = region_boundaries(p);

  const RegionCall call = classify_region(c.W_out, c.Q_BC, c.Q_DA);
  c.region = call.region;
  c.signs = call.signs;
  const double ratio = p.beta2 / p.beta1;
  switch (c.region) {
    case Region::I: {
      // W/Q_BC written so that the r = 0, n1 = n2 corner keeps its limit.
      const double den = (2.0 * n2 + 1.0) * s2 + n2 - n1;
      c.eta = den != 0.0 ? 1.0 - (w1 / w2) * (n2 - n1) / den : 1.0 - w1 / w2;
      c.eta_max = c.Q_BC > 0.0 ? 1.0 - ratio * (ch - sh * c.DeltaA_BC / c.Q_BC) : c.eta_c;
      break;
    }
    case Region::III:
      c.eta = c.W_out / c.Q_DA;
      c.eta_max = 1.0 - p.beta1 / (p.beta2 * ch) + std::tanh(2.0 * r) * c.DeltaA_BC / c.Q_DA;
      break;
    case Region::IV:
      c.eta = 1.0;
      c.eta_max = 1.0;
      break;
    case Region::II:
    case Region::Infeasible:
      break;
  }
  return c;
}

namespace {

FreeEnergySplit split_from_report(const CycleParams& p, const CycleReport& c) {
  const double r = p.sq.r();
  const double ratio = p.beta2 / p.beta1;  // T1 / T2
  FreeEnergySplit f;
  f.carnot_term = (1.0 - ratio) * c.Q_BC;
  f.squeezing_term = ratio * (std::sinh(2.0 * r) * c.DeltaA_BC - 2.0 * sinh2(r) * c.Q_BC);
  f.DeltaF2 = f.carnot_term + f.squeezing_term;
  f.asymmetry_exceeds_tanh_r = c.DeltaA_BC >= std::tanh(r) * c.Q_BC;
  return f;
}

}  // namespace

FreeEnergySplit free_energy_decomposition(const CycleParams& p) {
  const CycleReport c = analyze_cycle(p);
  const FreeEnergySplit f = split_from_report(p, c);
  if (c.W_out > f.DeltaF2 + 1e-12) {
    throw ConsistencyError("free_energy_decomposition: W_out exceeds DeltaF2");
  }
  return f;
}

CycleReport verify_cycle_numeric(const CycleParams& p, CycleStates* states) {
  const CycleReport ref = analyze_cycle(p);
  const ModeSpec m1(p.omega1), m2(p.omega2);
  const double theta = p.sq.theta();

  // A: equilibrium with the cold bath. B: same state, frequency relabeled
  // (quantum adiabatic stroke keeps the occupation).
  const GaussianState a = GaussianState::thermal(thermal_occupation(p.beta1, p.omega1));
  const GaussianState b = a;
  // C: complete relaxation with the hot squeezed bath.
  const ReservoirSpec hot(p.beta2, p.omega2, p.sq, 1.0);
  const GaussianState c = relax_moments_analytic(b, hot, 60.0);
  // D: unsqueeze at omega2, then relabel to omega1.
  const GaussianState d = apply_squeeze(c, p.sq.inverse());

  CycleReport out = ref;
  out.W_AB = mean_energy(a, m1) - mean_energy(b, m2);
  out.Q_BC = mean_energy(c, m2) - mean_energy(b, m2);
  out.W_CD = mean_energy(c, m2) - mean_energy(d, m1);
  out.Q_DA = mean_energy(a, m1) - mean_energy(d, m1);
  out.W_out = out.W_AB + out.W_CD;
  out.DeltaA_BC = asymmetry(c, m2, theta) - asymmetry(b, m2, theta);

  const double errs[] = {out.W_AB - ref.W_AB, out.Q_BC - ref.Q_BC, out.W_CD - ref.W_CD,
                         out.Q_DA - ref.Q_DA, out.W_out - ref.W_out, out.DeltaA_BC - ref.DeltaA_BC};
  for (double e : errs) {
    if (!(std::abs(e) <= 1e-8)) {
      throw ConsistencyError("verify_cycle_numeric: stroke energies disagree with closed form by " +
                             std::to_string(e));
    }
  }
  if (states) *states = {a, b, c, d};
  return out;
}

void PhaseGrid::validate() const {
  if (n_omega2 < 2 || n_r < 2) throw DomainError("phase grid: resolution must be >= 2");
  if (!(omega2_max > omega2_min) || !(r_max > r_min)) throw DomainError("phase grid: empty range");
  if (r_min < 0.0) throw DomainError("phase grid: r_min must be >= 0");
}

double PhaseGrid::omega2(int i) const {
  return omega2_min + (omega2_max - omega2_min) * i / (n_omega2 - 1);
}

double PhaseGrid::r(int j) const { return r_min + (r_max - r_min) * j / (n_r - 1); }

namespace {

PhaseCell evaluate_cell(const PhaseGrid& grid, const CycleParams& base, int i, int j) {
  CycleParams p = base;
  p.omega2 = grid.omega2(i);
  p.sq = SqueezeParams(grid.r(j), base.sq.theta());
  const CycleReport c = analyze_cycle(p);
  PhaseCell cell;
  cell.omega2 = p.omega2;
  cell.r = p.sq.r();
  cell.region = c.region;
  cell.eta = c.eta;
  cell.W_out = c.W_out;
  cell.Q_BC = c.Q_BC;
  cell.Q_DA = c.Q_DA;
  cell.Sigma_cyc = c.Sigma_cyc;
  cell.DeltaF2 = split_from_report(p, c).DeltaF2;
  return cell;
}

}  // namespace

std::vector<PhaseCell> phase_diagram(const PhaseGrid& grid, const CycleParams& base) {
  grid.validate();
  base.validate();
  if (grid.omega2_min < base.omega1) throw DomainError("phase grid: omega2_min must be >= omega1");
  const int n = grid.n_omega2 * grid.n_r;
  std::vector<PhaseCell> cells(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) cells[k] = evaluate_cell(grid, base, k % grid.n_omega2, k / grid.n_omega2);
  return cells;
}

std::vector<PhaseCell> phase_diagram_serial(const PhaseGrid& grid, const CycleParams& base) {
  grid.validate();
  base.validate();
  if (grid.omega2_min < base.omega1) throw DomainError("phase grid: omega2_min must be >= omega1");
  std::vector<PhaseCell> cells;
  cells.reserve(static_cast<std::size_t>(grid.n_omega2) * grid.n_r);
  for (int j = 0; j < grid.n_r; ++j) {
    for (int i = 0; i < grid.n_omega2; ++i) cells.push_back(evaluate_cell(grid, base, i, j));
  }
  return cells;
}

double argmax_work(const CycleParams& base, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto work = [&](double w2) {
    CycleParams p = base;
    p.omega2 = w2;
    return analyze_cycle(p).W_out;
  };
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = work(x1), f2 = work(x2);
  while (b - a > tol * std::max(1.0, std::abs(a))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = work(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = work(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace sqt
