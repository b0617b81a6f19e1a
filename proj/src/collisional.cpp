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


#include "sqthermo/collisional.hpp"

#include <algorithm>
#include <cmath>

#include "sqthermo/errors.hpp"
#include "sqthermo/thermo.hpp"

namespace sqt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

CollisionConfig::CollisionConfig(double g, double tau, double rate, long n_collisions,
                                 std::uint64_t seed, double beta, double omega, SqueezeParams sq)
    : g_(g), tau_(tau), rate_(rate), n_collisions_(n_collisions), seed_(seed), beta_(beta),
      omega_(omega), sq_(sq) {
  if (!(g > 0.0) || !(tau > 0.0) || !(rate > 0.0)) {
    throw DomainError("collision config: g, tau and rate must be > 0");
  }
  if (g * tau > 0.1 + 1e-15) throw DomainError("collision config: g*tau must be <= 0.1");
  if (rate * tau > 0.1 + 1e-15) throw DomainError("collision config: rate*tau must be <= 0.1");
  if (n_collisions < 0) throw DomainError("collision config: n_collisions must be >= 0");
  if (!(beta > 0.0) || !(omega > 0.0)) throw DomainError("collision config: beta, omega must be > 0");
}

CollisionConfig CollisionConfig::for_gamma(double gamma, double g_tau, long n_collisions,
                                           std::uint64_t seed, double beta, double omega,
                                           SqueezeParams sq) {
  if (!(gamma > 0.0) || !(g_tau > 0.0)) throw DomainError("collision config: gamma, g*tau must be > 0");
  const double rate = gamma / (g_tau * g_tau);
  const double tau = 0.01 / rate;
  return CollisionConfig(g_tau / tau, tau, rate, n_collisions, seed, beta, omega, sq);
}

ReservoirSpec CollisionConfig::ancilla() const { return ReservoirSpec(beta_, omega_, sq_, gamma_eff()); }

GaussianState CollisionConfig::ancilla_state() const {
  return make_squeezed_thermal(beta_, ModeSpec(omega_), sq_);
}

CollisionConfig CollisionConfig::with_seed(std::uint64_t seed) const {
  CollisionConfig c = *this;
  c.seed_ = seed;
  return c;
}

CollisionConfig CollisionConfig::with_collisions(long n) const {
  if (n < 0) throw DomainError("collision config: n_collisions must be >= 0");
  CollisionConfig c = *this;
  c.n_collisions_ = n;
  return c;
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

double bath_mode_occupation(const GaussianState& state, const SqueezeParams& sq) {
  // <R^dag R> = cosh^2 r n + sinh^2 r (n + 1) + sinh 2r Re(e^{-i theta} <a^2>)
  const ModeMoments m = moments(state);
  const double c = std::cosh(sq.r()), s = std::sinh(sq.r());
  return c * c * m.n + s * s * (m.n + 1.0) +
         2.0 * c * s * std::real(std::polar(1.0, -sq.theta()) * m.a2);
}

GaussianState collide(const GaussianState& sys, const GaussianState& ancilla,
                      const CollisionConfig& cfg, CollisionRecord* rec) {
  const GaussianState joint = apply_beam_splitter(sys.tensor(ancilla), cfg.angle());
  GaussianState sys_after = joint.marginal(0);
  if (rec) {
    const ReservoirSpec res = cfg.ancilla();
    const ModeSpec mode = res.mode();
    const double theta = res.squeeze().theta();
    const GaussianState anc_after = joint.marginal(1);
    rec->S_anc_before = entropy_gaussian(ancilla);
    rec->S_anc_after = entropy_gaussian(anc_after);
    rec->dS_ancilla = rec->S_anc_after - rec->S_anc_before;
    rec->dE_sys = mean_energy(sys_after, mode) - mean_energy(sys, mode);
    rec->dE_anc = mean_energy(anc_after, mode) - mean_energy(ancilla, mode);
    const double dA = asymmetry(sys_after, mode, theta) - asymmetry(sys, mode, theta);
    rec->dPhi = entropy_flow(res, rec->dE_sys, dA);
    rec->n_sys = mean_photon_number(sys_after);
    const auto [vx, vp] = quadrature_variances(sys_after, 0.5 * theta);
    rec->var_sq = vx;
    rec->var_anti = vp;
  }
  return sys_after;
}

CollisionTrace run_collisions(const GaussianState& initial, const CollisionConfig& cfg) {
  if (initial.n_modes() != 1) throw DomainError("run_collisions: single-mode initial state required");
  const GaussianState ancilla = cfg.ancilla_state();
  std::mt19937_64 rng = trajectory_rng(cfg.seed(), 0);
  std::exponential_distribution<double> wait(cfg.rate());

  CollisionTrace trace;
  trace.initial = initial;
  trace.final_state = initial;
  trace.records.reserve(static_cast<std::size_t>(cfg.n_collisions()));
  double t = 0.0;
  std::vector<double> dsr, dphi;
  for (long k = 0; k < cfg.n_collisions(); ++k) {
    t += wait(rng);
    CollisionRecord rec;
    rec.index = k;
    rec.t = t;
    trace.final_state = collide(trace.final_state, ancilla, cfg, &rec);
    dsr.push_back(rec.dS_ancilla);
    dphi.push_back(rec.dPhi);
    trace.records.push_back(rec);
  }
  trace.sum_dSR = compensated_sum(dsr);
  trace.Phi = compensated_sum(dphi);
  return trace;
}

EntropyBalance reservoir_entropy_balance(const CollisionTrace& trace) {
  EntropyBalance b;
  b.sum_dSR = trace.sum_dSR;
  b.minus_Phi = -trace.Phi;
  b.discrepancy = b.sum_dSR - b.minus_Phi;
  return b;
}

double compensated_sum(const std::vector<double>& v) {
  double sum = 0.0, c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

namespace {

struct TrajectoryResult {
  std::vector<double> occupation;
  double sum_dSR = 0.0;
  double minus_Phi = 0.0;
  long n_collisions = 0;
};

TrajectoryResult simulate(const GaussianState& initial, const GaussianState& ancilla,
                          const CollisionConfig& cfg, const std::vector<double>& times,
                          std::uint64_t index) {
  std::mt19937_64 rng = trajectory_rng(cfg.seed(), index);
  std::exponential_distribution<double> wait(cfg.rate());
  const SqueezeParams sq = cfg.ancilla().squeeze();
  const double t_end = times.back();

  TrajectoryResult out;
  out.occupation.reserve(times.size());
  std::vector<double> dsr, dphi;
  GaussianState state = initial;
  std::size_t next_sample = 0;
  double t = wait(rng);
  while (true) {
    while (next_sample < times.size() && times[next_sample] < t) {
      out.occupation.push_back(bath_mode_occupation(state, sq));
      ++next_sample;
    }
    if (t > t_end) break;
    CollisionRecord rec;
    state = collide(state, ancilla, cfg, &rec);
    dsr.push_back(rec.dS_ancilla);
    dphi.push_back(-rec.dPhi);
    ++out.n_collisions;
    t += wait(rng);
  }
  out.sum_dSR = compensated_sum(dsr);
  out.minus_Phi = compensated_sum(dphi);
  return out;
}

EnsembleResult assemble(std::vector<TrajectoryResult>& runs, const std::vector<double>& times) {
  EnsembleResult ens;
  ens.times = times;
  ens.mean_occupation.resize(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::vector<double> col(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) col[i] = runs[i].occupation[j];
    ens.mean_occupation[j] = compensated_sum(col) / static_cast<double>(runs.size());
  }
  for (auto& r : runs) {
    ens.occupation.push_back(std::move(r.occupation));
    ens.sum_dSR.push_back(r.sum_dSR);
    ens.minus_Phi.push_back(r.minus_Phi);
    ens.n_collisions.push_back(r.n_collisions);
  }
  return ens;
}

void check_ensemble_inputs(const GaussianState& initial, const EnsembleOptions& opt) {
  if (initial.n_modes() != 1) throw DomainError("ensemble: single-mode initial state required");
  if (opt.n_traj < 1) throw DomainError("ensemble: n_traj must be >= 1");
}

}  // namespace

EnsembleResult run_ensemble(const GaussianState& initial, const CollisionConfig& cfg,
                            const EnsembleOptions& opt) {
  check_ensemble_inputs(initial, opt);
  const std::vector<double> times = sample_times(opt.t_end, opt.n_samples);
  const GaussianState ancilla = cfg.ancilla_state();
  std::vector<TrajectoryResult> runs(opt.n_traj);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < opt.n_traj; ++i) runs[i] = simulate(initial, ancilla, cfg, times, i);
  return assemble(runs, times);
}

EnsembleResult run_ensemble_serial(const GaussianState& initial, const CollisionConfig& cfg,
                                   const EnsembleOptions& opt) {
  check_ensemble_inputs(initial, opt);
  const std::vector<double> times = sample_times(opt.t_end, opt.n_samples);
  const GaussianState ancilla = cfg.ancilla_state();
  std::vector<TrajectoryResult> runs;
  for (int i = 0; i < opt.n_traj; ++i) runs.push_back(simulate(initial, ancilla, cfg, times, i));
  return assemble(runs, times);
}

namespace {

struct LogFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

LogFit log_linear_fit(const std::vector<double>& t, const std::vector<double>& y, double offset) {
  std::vector<double> xs, ls;
  const double sign = (y.front() - offset) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double d = sign * (y[j] - offset);
    if (d > 0.0) {
      xs.push_back(t[j]);
      ls.push_back(std::log(d));
    }
  }
  if (xs.size() < 3) throw RegimeError("fit_relaxation_rate: too few points above steady state");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j];
    my += ls[j];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxx += (xs[j] - mx) * (xs[j] - mx);
    sxy += (xs[j] - mx) * (ls[j] - my);
    syy += (ls[j] - my) * (ls[j] - my);
  }
  LogFit f;
  f.slope = sxy / sxx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace

RateFit fit_relaxation_rate(const EnsembleResult& ens, double n_th, int n_batches) {
  RateFit out;
  const LogFit all = log_linear_fit(ens.times, ens.mean_occupation, n_th);
  out.rate = -all.slope;
  out.r_squared = all.r_squared;

  const int n_traj = static_cast<int>(ens.occupation.size());
  n_batches = std::min(n_batches, n_traj);
  if (n_batches < 2) return out;
  std::vector<double> batch_rates;
  for (int b = 0; b < n_batches; ++b) {
    const int lo = b * n_traj / n_batches, hi = (b + 1) * n_traj / n_batches;
    std::vector<double> mean(ens.times.size());
    for (std::size_t j = 0; j < ens.times.size(); ++j) {
      std::vector<double> col;
      for (int i = lo; i < hi; ++i) col.push_back(ens.occupation[i][j]);
      mean[j] = compensated_sum(col) / (hi - lo);
    }
    try {
      batch_rates.push_back(-log_linear_fit(ens.times, mean, n_th).slope);
    } catch (const RegimeError&) {
    }
  }
  if (batch_rates.size() < 2) return out;
  double m = 0.0;
  for (double r : batch_rates) m += r;
  m /= batch_rates.size();
  double v = 0.0;
  for (double r : batch_rates) v += (r - m) * (r - m);
  v /= (batch_rates.size() - 1);
  out.sigma = std::sqrt(v / batch_rates.size());
  return out;
}

LimitReport lindblad_limit_check(double gamma, const std::vector<double>& g_taus, double beta,
                                 double omega, SqueezeParams sq, const GaussianState& initial,
                                 const EnsembleOptions& opt, std::uint64_t seed) {
  LimitReport rep;
  rep.gamma = gamma;
  for (double gt : g_taus) {
    const CollisionConfig cfg = CollisionConfig::for_gamma(gamma, gt, 0, seed, beta, omega, sq);
    const EnsembleResult ens = run_ensemble(initial, cfg, opt);
    LimitPoint pt;
    pt.g_tau = gt;
    pt.rate = cfg.rate();
    pt.gamma_eff = cfg.gamma_eff();
    pt.fit = fit_relaxation_rate(ens, cfg.ancilla().n_th());
    pt.rel_error = (pt.fit.rate - gamma) / gamma;
    pt.expected_rel_error = std::pow(std::sin(gt) / gt, 2) - 1.0;
    pt.regime_ok = pt.fit.r_squared >= 0.99;

    const double n = static_cast<double>(ens.sum_dSR.size());
    pt.sum_dSR = compensated_sum(ens.sum_dSR) / n;
    pt.minus_Phi = compensated_sum(ens.minus_Phi) / n;
    pt.discrepancy = pt.sum_dSR - pt.minus_Phi;
    std::vector<double> d(ens.sum_dSR.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = ens.sum_dSR[i] - ens.minus_Phi[i];
    double var = 0.0;
    for (double x : d) var += (x - pt.discrepancy) * (x - pt.discrepancy);
    pt.discrepancy_sigma = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace sqt
