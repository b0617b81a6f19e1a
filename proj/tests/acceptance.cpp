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


// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sqthermo/collisional.hpp"
#include "sqthermo/errors.hpp"
#include "sqthermo/fock.hpp"
#include "sqthermo/otto.hpp"
#include "sqthermo/thermo.hpp"

namespace {

using namespace sqt;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const PhaseGrid kGrid;  // 200 x 200, omega2 in [1, 8], r in [0, 1.5]

CycleParams cycle_at(double omega2, double r) {
  CycleParams p;
  p.omega2 = omega2;
  p.sq = SqueezeParams(r, 0.0);
  return p;
}

// Grid points within one spacing of the reversibility point (omega2 = 5, r = 0).
bool near_reversibility(const PhaseCell& c) {
  const double dw = (kGrid.omega2_max - kGrid.omega2_min) / (kGrid.n_omega2 - 1);
  const double dr = (kGrid.r_max - kGrid.r_min) / (kGrid.n_r - 1);
  return std::abs(c.omega2 - 5.0) <= dw && c.r <= dr;
}

Outcome first_law() {
  double worst = 0.0;
  for (const PhaseCell& c : phase_diagram(kGrid, CycleParams())) {
    worst = std::max(worst, std::abs(c.W_out - c.Q_BC - c.Q_DA));
  }
  return {worst <= 1e-12, fmt("max |W_out - Q_BC - Q_DA| = %.3g", worst)};
}

Outcome second_law() {
  double min_sigma = 1e300;
  int small = 0, stray = 0;
  for (const PhaseCell& c : phase_diagram(kGrid, CycleParams())) {
    min_sigma = std::min(min_sigma, c.Sigma_cyc);
    if (c.Sigma_cyc < 1e-6) {
      ++small;
      if (!near_reversibility(c)) ++stray;
    }
  }
  return {min_sigma >= -1e-12 && stray == 0,
          fmt("min Sigma_cyc = %.3g; %g cells below 1e-6, %g outside the reversibility cell",
              min_sigma, small, stray)};
}

Outcome carnot_values() {
  const CycleReport base = analyze_cycle(cycle_at(3.0, 0.0));
  double worst = 0.0;
  int missing = 0;
  for (int k = 1; k <= 20; ++k) {
    const double w2 = 1.0 + 4.0 * k / 21.0;
    const Boundaries b = region_boundaries(cycle_at(w2, 0.0));
    if (!b.r_c) {
      ++missing;
      continue;
    }
    const CycleReport c = analyze_cycle(cycle_at(w2, *b.r_c));
    if (!c.eta) {
      ++missing;
      continue;
    }
    worst = std::max(worst, std::abs(*c.eta - c.eta_c));
  }
  const bool ok = std::abs(base.eta_c - 0.8) <= 1e-15 && missing == 0 && worst <= 1e-10;
  return {ok, fmt("eta_c = %.17g; max |eta(r_c) - eta_c| = %.3g over 20 omega2", base.eta_c, worst)};
}

Outcome unit_efficiency_regions() {
  int n3 = 0, n4 = 0;
  double worst = 0.0;
  for (const PhaseCell& c : phase_diagram(kGrid, CycleParams())) {
    if (!(c.omega2 > 5.0 && c.omega2 < 8.0)) continue;
    if (c.region == Region::III) ++n3;
    if (c.region == Region::IV) {
      ++n4;
      worst = std::max(worst, c.eta ? std::abs(*c.eta - 1.0) : 1.0);
    }
  }
  return {n3 > 0 && n4 > 0 && worst == 0.0,
          fmt("region III cells %g, region IV cells %g, max |eta - 1| in IV = %.3g", n3, n4, worst)};
}

Outcome numeric_cycle() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    CycleParams p;
    p.beta1 = 0.5 + 1.5 * u(rng);
    p.beta2 = p.beta1 * (0.1 + 0.9 * u(rng));
    p.omega1 = 0.5 + u(rng);
    p.omega2 = p.omega1 * (1.0 + 7.0 * u(rng));
    p.sq = SqueezeParams(1.5 * u(rng), 6.283185307179586 * u(rng));
    const CycleReport a = analyze_cycle(p);
    const CycleReport n = verify_cycle_numeric(p);
    for (double d : {n.W_AB - a.W_AB, n.Q_BC - a.Q_BC, n.W_CD - a.W_CD, n.Q_DA - a.Q_DA,
                     n.W_out - a.W_out, n.DeltaA_BC - a.DeltaA_BC}) {
      worst = std::max(worst, std::abs(d));
    }
  }
  return {worst <= 1e-10, fmt("max energy-field deviation over 50 points = %.3g", worst)};
}

Outcome backend_equivalence() {
  const int dim = 80;
  const ReservoirSpec res(1.0, 1.0, SqueezeParams(0.5, 0.3), 1.0);
  const LindbladGenerator gen(dim, res);
  const std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int truncated = 0, lyapunov = 0;
  double worst = 0.0;
  int worst_needed = dim;
  for (int k = 0; k < 20; ++k) {
    const double n_th = 2.0 * u(rng);
    const SqueezeParams sq(u(rng), 6.283185307179586 * u(rng));
    const GaussianState state = apply_squeeze(GaussianState::thermal(n_th), sq);
    worst_needed = std::max(worst_needed, std::max(default_dim(state), default_dim(res)));
    try {
      const auto traj = sample_trajectory(gaussian_to_fock(state, dim), gen, times, 0.01);
      double prev = 1e300;
      for (std::size_t j = 0; j < times.size(); ++j) {
        const ModeMoments f = fock_moments(traj[j]);
        const ModeMoments g = moments(relax_moments_analytic(state, res, times[j]));
        worst = std::max({worst, std::abs(f.a - g.a), std::abs(f.a2 - g.a2), std::abs(f.n - g.n)});
        const double D = relative_entropy_to_steady(traj[j], res);
        if (D > prev + 1e-12) ++lyapunov;
        prev = D;
      }
    } catch (const TruncationError&) {
      ++truncated;
    }
  }
  const bool ok = truncated == 0 && lyapunov == 0 && worst <= 1e-6;
  return {ok, fmt("dim %g: %g/20 states exceed the truncation, max moment deviation %.3g on the rest, "
                  "%g D increases",
                  dim, truncated, worst, lyapunov) +
                  fmt("; largest dim needed %g", worst_needed)};
}

Outcome illustrative_relaxation() {
  const ReservoirSpec res(1.0, 1.0, SqueezeParams(0.5, 0.0), 1.0);
  const int dim = 80;
  const LindbladGenerator gen(dim, res);
  const FockRun run = fock_ledger(dephased_steady_state(dim, res), gen, 10.0, 201, 0.01);
  const ThermoLedger& l = run.ledger;
  double q = 0.0;
  for (double v : l.Q) q = std::max(q, std::abs(v));
  const double dPhi = l.Phi.back(), dS = l.S.back() - l.S.front(), sigma = l.Sigma.back();
  const bool ok = q <= 1e-8 && dPhi < 0.0 && dS < 0.0 && sigma > 0.0 &&
                  std::abs(sigma - (dS - dPhi)) <= 1e-12;
  return {ok, fmt("max|Q| = %.3g, dPhi = %.6f, dS = %.6f, Sigma = %.6f", q, dPhi, dS, sigma)};
}

Outcome single_reservoir_work() {
  double worst = 0.0, zero = 0.0;
  for (double beta : {0.3, 1.0, 2.5}) {
    for (double r : {0.0, 0.25, 0.5, 1.0}) {
      for (double theta : {0.0, 1.3}) {
        const ReservoirSpec res(beta, 1.0, SqueezeParams(r, theta), 1.0);
        const MaxWork w = max_extractable_work(res);
        const ProtocolResult p = two_stroke_protocol(res, GaussianUnitary::squeeze(res.squeeze().inverse()));
        worst = std::max(worst, std::abs(w.W_max - p.W_out));
        if (r == 0.0) zero = std::max(zero, std::abs(w.W_max));
      }
    }
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const ReservoirSpec res(0.2 + 3.0 * u(rng), 0.5 + u(rng), SqueezeParams(1.2 * u(rng), 6.283185307179586 * u(rng)), 1.0);
    const GaussianUnitary g = GaussianUnitary::displacement_op({u(rng) - 0.5, u(rng) - 0.5})
                                  .compose(GaussianUnitary::rotation(6.283185307179586 * u(rng)))
                                  .compose(GaussianUnitary::squeeze(
                                      SqueezeParams(1.5 * u(rng), 6.283185307179586 * u(rng))));
    try {
      const ProtocolResult p = two_stroke_protocol(res, g);
      if (p.W_out > p.bound + 1e-9) ++violations;
    } catch (const ConsistencyError&) {
      ++violations;
    }
  }
  return {worst <= 1e-12 && zero == 0.0 && violations == 0,
          fmt("max |W_max - protocol W_out| = %.3g, |W_max(r=0)| = %.3g, %g/200 bound violations", worst, zero,
              violations)};
}

Outcome fig2_structure() {
  const std::vector<double> rs{0.0, 0.5, 0.7, 0.8, 0.9};
  int order_breaks = 0, r0_sign = 0;
  for (int i = 0; i < 400; ++i) {
    const double w2 = 1.0 + 7.0 * i / 399.0;
    double prev = -1e300;
    for (double r : rs) {
      const double w = analyze_cycle(cycle_at(w2, r)).W_out;
      if (!(w > prev)) ++order_breaks;
      prev = w;
    }
    const double w0 = analyze_cycle(cycle_at(w2, 0.0)).W_out;
    if (i == 0 && std::abs(w0) > 1e-12) ++r0_sign;
    if (w2 > 5.0 && !(w0 < 0.0)) ++r0_sign;
  }
  double worst = 0.0;
  std::string per_r;
  for (double r : rs) {
    CycleParams p = cycle_at(3.0, r);
    p.beta1 = 0.02;
    p.beta2 = 0.004;
    const double pred = max_power_frequency_ht(p);
    const double dev = std::abs(argmax_work(p, 1.0, 20.0) / pred - 1.0);
    worst = std::max(worst, dev);
    per_r += fmt(" r=%.1f:%.4f", r, dev);
  }
  return {order_breaks == 0 && r0_sign == 0 && worst <= 0.02,
          fmt("%g ordering breaks, %g r=0 sign breaks; high-T argmax rel. dev.", order_breaks, r0_sign) + per_r};
}

Outcome fig4() {
  int above_max = 0;
  bool beats_ht = false;
  for (int k = 0; k <= 240; ++k) {
    const CycleReport c = analyze_cycle(cycle_at(3.0, 1.2 * k / 240.0));
    if (!c.eta || !c.eta_max) {
      ++above_max;
      continue;
    }
    if (*c.eta > *c.eta_max + 1e-12) ++above_max;
    beats_ht = beats_ht || *c.eta > c.eta_ht;
  }
  const CycleReport small = analyze_cycle(cycle_at(3.0, 1e-6));
  const double gap = std::abs(*small.eta_max - small.eta_c);
  return {above_max == 0 && beats_ht && gap <= 1e-9,
          fmt("%g points with eta > eta_max, eta > eta_ht somewhere: %g, |eta_max(1e-6) - eta_c| = %.3g",
              above_max, beats_ht ? 1.0 : 0.0, gap)};
}

Outcome collisional_limit() {
  EnsembleOptions opt;
  opt.n_traj = 4096;
  opt.t_end = 200.0;
  opt.n_samples = 41;
  const double gamma = 0.01;
  const LimitReport rep = lindblad_limit_check(gamma, {0.1, 0.05, 0.025}, 1.0, 1.0, SqueezeParams(0.5, 0.0),
                                               GaussianState::vacuum(), opt, 1);
  bool ok = true;
  double prev = 1e300;
  std::string detail;
  for (const LimitPoint& p : rep.points) {
    const double err = std::abs(p.rel_error);
    const double stat = 3.0 * p.fit.sigma / gamma;
    const bool rate_ok = err <= 3.0 * p.g_tau * p.g_tau + stat && p.regime_ok && err < prev;
    const double bound = 5.0 * p.g_tau * p.g_tau * std::abs(p.minus_Phi) + 3.0 * p.discrepancy_sigma;
    const bool entropy_ok = std::abs(p.discrepancy) <= bound;
    ok = ok && rate_ok && entropy_ok;
    prev = err;
    detail += fmt(" [gt=%.3f rel=%.2e stat=%.1e", p.g_tau, p.rel_error, stat) +
              fmt(" dS_R+dPhi=%.2e bound=%.1e]", p.discrepancy, bound);
  }
  return {ok, "4096 traj/point, seed 1:" + detail};
}

Outcome free_energy_bound() {
  int violations = 0, equal = 0, stray = 0;
  for (const PhaseCell& c : phase_diagram(kGrid, CycleParams())) {
    const double gap = c.DeltaF2 - c.W_out;
    if (gap < -1e-12) ++violations;
    if (gap < 1e-6) {
      ++equal;
      if (!near_reversibility(c)) ++stray;
    }
  }
  return {violations == 0 && stray == 0,
          fmt("%g violations; %g cells with DeltaF2 - W_out < 1e-6, %g outside the reversibility cell",
              violations, equal, stray)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "first law on the phase grid", 5.0, first_law},
      {2, "second law on the phase grid", 5.0, second_law},
      {3, "Carnot values", 0.0, carnot_values},
      {4, "unit-efficiency and Carnot-beating regions", 0.0, unit_efficiency_regions},
      {5, "analytic vs numeric cycle", 1.0, numeric_cycle},
      {6, "Fock vs Gaussian backends", 60.0, backend_equivalence},
      {7, "illustrative relaxation", 10.0, illustrative_relaxation},
      {8, "single-reservoir work", 2.0, single_reservoir_work},
      {9, "work curves vs frequency", 0.0, fig2_structure},
      {10, "efficiency vs squeezing", 0.0, fig4},
      {11, "collisional limit", 120.0, collisional_limit},
      {12, "free-energy bound", 0.0, free_energy_bound},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || dt < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s [%2d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), dt,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
