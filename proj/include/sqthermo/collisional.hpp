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


// Repeated-interaction model of the squeezed reservoir. At Poisson times with
// rate R the mode meets a fresh ancilla prepared in the squeezed thermal
// state and exchanges excitations through a beam splitter of angle g tau.
// Collisions are instantaneous events; the effective damping rate is
// gamma = R (g tau)^2.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sqthermo/gaussian.hpp"
#include "sqthermo/reservoir.hpp"

namespace sqt {

class CollisionConfig {
 public:
  // Throws DomainError unless g, tau, rate > 0, g tau <= 0.1, rate tau <= 0.1
  // and n_collisions >= 0.
  CollisionConfig(double g, double tau, double rate, long n_collisions, std::uint64_t seed,
                  double beta, double omega, SqueezeParams sq);

  // Picks tau = 0.01 / rate and g = g_tau / tau for the requested (gamma, g tau).
  static CollisionConfig for_gamma(double gamma, double g_tau, long n_collisions,
                                   std::uint64_t seed, double beta, double omega,
                                   SqueezeParams sq);

  double g() const { return g_; }
  double tau() const { return tau_; }
  double rate() const { return rate_; }
  long n_collisions() const { return n_collisions_; }
  std::uint64_t seed() const { return seed_; }
  double angle() const { return g_ * tau_; }
  double gamma_eff() const { return rate_ * angle() * angle(); }
  // Ancilla bath with gamma = gamma_eff.
  ReservoirSpec ancilla() const;
  GaussianState ancilla_state() const;

  CollisionConfig with_seed(std::uint64_t seed) const;
  CollisionConfig with_collisions(long n) const;

 private:
  double g_, tau_, rate_;
  long n_collisions_;
  std::uint64_t seed_;
  double beta_, omega_;
  SqueezeParams sq_;
};

// Independent stream for trajectory `index` of an ensemble.
std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index);

struct CollisionRecord {
  long index = 0;
  double t = 0.0;
  double n_sys = 0.0;     // after the collision
  double var_sq = 0.0;    // variance of x_{theta/2} after the collision
  double var_anti = 0.0;  // variance of p_{theta/2} after the collision
  double S_anc_before = 0.0;
  double S_anc_after = 0.0;
  double dS_ancilla = 0.0;
  double dE_sys = 0.0;
  double dE_anc = 0.0;
  double dPhi = 0.0;  // entropy flow into the mode during this collision
};

struct CollisionTrace {
  GaussianState initial = GaussianState::vacuum();
  GaussianState final_state = GaussianState::vacuum();
  std::vector<CollisionRecord> records;
  double sum_dSR = 0.0;
  double Phi = 0.0;
};

// One collision; returns the new system state and fills rec (except index, t).
GaussianState collide(const GaussianState& sys, const GaussianState& ancilla,
                      const CollisionConfig& cfg, CollisionRecord* rec);

CollisionTrace run_collisions(const GaussianState& initial, const CollisionConfig& cfg);

struct EntropyBalance {
  double sum_dSR = 0.0;
  double minus_Phi = 0.0;
  double discrepancy = 0.0;  // sum_dSR - minus_Phi
};

EntropyBalance reservoir_entropy_balance(const CollisionTrace& trace);

// <R^dag R> of the mode for the reservoir squeeze (equals n_th at pi_S).
double bath_mode_occupation(const GaussianState& state, const SqueezeParams& sq);

struct EnsembleOptions {
  int n_traj = 256;
  double t_end = 200.0;
  int n_samples = 41;  // sample times for the relaxation fit, including t = 0
};

struct EnsembleResult {
  std::vector<double> times;
  std::vector<double> mean_occupation;  // ensemble mean of <R^dag R>(t)
  std::vector<std::vector<double>> occupation;  // [traj][sample]
  std::vector<double> sum_dSR;                  // per trajectory
  std::vector<double> minus_Phi;                // per trajectory
  std::vector<long> n_collisions;               // per trajectory
};

// Trajectories run until t_end; cfg.n_collisions is ignored. Results are
// identical for any thread count.
EnsembleResult run_ensemble(const GaussianState& initial, const CollisionConfig& cfg,
                            const EnsembleOptions& opt);
EnsembleResult run_ensemble_serial(const GaussianState& initial, const CollisionConfig& cfg,
                                   const EnsembleOptions& opt);

struct RateFit {
  double rate = 0.0;
  double sigma = 0.0;  // batch-means standard error
  double r_squared = 0.0;
};

// Log-linear least squares of |<R^dag R> - n_th| against t.
RateFit fit_relaxation_rate(const EnsembleResult& ens, double n_th, int n_batches = 16);

struct LimitPoint {
  double g_tau = 0.0;
  double rate = 0.0;  // collision rate R
  double gamma_eff = 0.0;
  RateFit fit;
  double rel_error = 0.0;           // (fitted - gamma) / gamma
  double expected_rel_error = 0.0;  // sin^2(g tau) / (g tau)^2 - 1
  bool regime_ok = true;            // fit R^2 >= 0.99
  double sum_dSR = 0.0;
  double minus_Phi = 0.0;
  double discrepancy = 0.0;
  double discrepancy_sigma = 0.0;
};

struct LimitReport {
  double gamma = 0.0;
  std::vector<LimitPoint> points;
};

// Ensembles at each g tau with R = gamma / (g tau)^2.
LimitReport lindblad_limit_check(double gamma, const std::vector<double>& g_taus, double beta,
                                 double omega, SqueezeParams sq, const GaussianState& initial,
                                 const EnsembleOptions& opt, std::uint64_t seed);

// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& v);

}  // namespace sqt
