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


#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sqthermo/collisional.hpp"
#include "sqthermo/errors.hpp"

namespace sqt {
namespace {

constexpr double kSin2_01 = 0.00996671107937918444;

CollisionConfig config(double g_tau = 0.1, long n = 200, double r = 0.5) {
  return CollisionConfig::for_gamma(0.01, g_tau, n, 7, 1.0, 1.0, SqueezeParams(r, 0.4));
}

TEST(Config, Invariants) {
  const CollisionConfig c = config();
  EXPECT_NEAR(c.angle(), 0.1, 1e-15);
  EXPECT_NEAR(c.rate() * c.tau(), 0.01, 1e-15);
  EXPECT_NEAR(c.gamma_eff(), 0.01, 1e-15);
  EXPECT_NEAR(c.ancilla().gamma(), c.gamma_eff(), 1e-18);
  EXPECT_THROW(CollisionConfig(2.0, 0.1, 0.5, 10, 1, 1.0, 1.0, SqueezeParams()), DomainError);
  EXPECT_THROW(CollisionConfig(0.5, 0.1, 2.0, 10, 1, 1.0, 1.0, SqueezeParams()), DomainError);
  EXPECT_THROW(CollisionConfig(0.5, 0.1, 0.5, -1, 1, 1.0, 1.0, SqueezeParams()), DomainError);
  EXPECT_THROW(CollisionConfig(0.0, 0.1, 0.5, 1, 1, 1.0, 1.0, SqueezeParams()), DomainError);
}

TEST(Collide, SingleCollisionExchangesSinSquaredOfOccupation) {
  const CollisionConfig c = CollisionConfig::for_gamma(0.01, 0.1, 1, 1, 50.0, 1.0, SqueezeParams());
  const GaussianState out = collide(GaussianState::thermal(3.0), c.ancilla_state(), c, nullptr);
  EXPECT_NEAR(mean_photon_number(out), 3.0 * (1.0 - kSin2_01) + c.ancilla().n_th() * kSin2_01, 1e-14);
}

TEST(Collide, ZeroCollisionsLeaveStateUntouched) {
  const GaussianState s = apply_squeeze(GaussianState::thermal(0.3), SqueezeParams(0.2, 1.0));
  const CollisionTrace t = run_collisions(s, config(0.1, 0));
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.final_state.cov(), s.cov());
  EXPECT_EQ(t.sum_dSR, 0.0);
  EXPECT_EQ(t.Phi, 0.0);
}

TEST(Collide, DeterministicForSeed) {
  const CollisionTrace a = run_collisions(GaussianState::vacuum(), config());
  const CollisionTrace b = run_collisions(GaussianState::vacuum(), config());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) EXPECT_EQ(a.records[k].t, b.records[k].t);
  const CollisionTrace c = run_collisions(GaussianState::vacuum(), config().with_seed(8));
  EXPECT_NE(a.records.back().t, c.records.back().t);
}

TEST(Collide, AncillaIsFreshEveryCollision) {
  const CollisionConfig c = config();
  const double s0 = entropy_gaussian(c.ancilla_state());
  const CollisionTrace t = run_collisions(GaussianState::thermal(2.0), c);
  for (const CollisionRecord& r : t.records) EXPECT_EQ(r.S_anc_before, s0);
}

TEST(Collide, EnergyConservedPerCollision) {
  const CollisionTrace t = run_collisions(GaussianState::thermal(2.0), config());
  for (const CollisionRecord& r : t.records) EXPECT_NEAR(r.dE_sys + r.dE_anc, 0.0, 1e-12);
}

TEST(Collide, ZeroMeanIsPreserved) {
  const CollisionTrace t = run_collisions(GaussianState::thermal(1.0), config());
  EXPECT_NEAR(t.final_state.mean().norm(), 0.0, 1e-15);
}

TEST(Collide, BathOccupationContractsGeometrically) {
  const CollisionConfig c = config(0.1, 300, 0.7);
  const SqueezeParams sq(0.7, 0.4);
  const GaussianState s0 = apply_squeeze(GaussianState::thermal(1.5), SqueezeParams(0.3, 2.0));
  const double n_th = c.ancilla().n_th();
  const CollisionTrace t = run_collisions(s0, c);
  const double expected =
      n_th + std::pow(std::cos(0.1), 600) * (bath_mode_occupation(s0, sq) - n_th);
  EXPECT_NEAR(bath_mode_occupation(t.final_state, sq), expected, 1e-11);
}

TEST(Collide, ThermalAncillaDrivesToThermalState) {
  const CollisionConfig c =
      CollisionConfig::for_gamma(0.01, 0.1, 8000, 3, 0.7, 1.0, SqueezeParams());
  const CollisionTrace t = run_collisions(GaussianState::thermal(4.0), c);
  EXPECT_NEAR(mean_photon_number(t.final_state), thermal_occupation(0.7, 1.0), 1e-9);
}

TEST(EntropyBalance, SignsAndSmallDiscrepancy) {
  const CollisionTrace t = run_collisions(GaussianState::vacuum(), config(0.05, 2000));
  const EntropyBalance b = reservoir_entropy_balance(t);
  EXPECT_GT(t.Phi, 0.0);  // vacuum is driven out toward a state the reservoir favours
  EXPECT_LT(b.sum_dSR, 0.0);
  EXPECT_LT(std::abs(b.discrepancy), 0.01 * std::abs(b.minus_Phi));
  for (const CollisionRecord& r : t.records) EXPECT_GE(r.var_sq * r.var_anti, 0.25 - 1e-12);
}

TEST(EntropyBalance, DiscrepancyShrinksQuadratically) {
  double prev = 0.0;
  for (double g_tau : {0.1, 0.05, 0.025}) {
    const CollisionConfig c = config(g_tau, static_cast<long>(0.02 / (g_tau * g_tau) * 100));
    const EntropyBalance b = reservoir_entropy_balance(run_collisions(GaussianState::vacuum(), c));
    const double d = std::abs(b.discrepancy);
    if (prev > 0.0) EXPECT_NEAR(prev / d, 4.0, 0.4);
    prev = d;
  }
}

TEST(Ensemble, ParallelMatchesSerial) {
  EnsembleOptions opt;
  opt.n_traj = 16;
  opt.t_end = 50.0;
  opt.n_samples = 11;
  const CollisionConfig c = config(0.1, 0);
  const EnsembleResult a = run_ensemble(GaussianState::vacuum(), c, opt);
  const EnsembleResult b = run_ensemble_serial(GaussianState::vacuum(), c, opt);
  EXPECT_EQ(a.mean_occupation, b.mean_occupation);
  EXPECT_EQ(a.n_collisions, b.n_collisions);
  EXPECT_EQ(a.sum_dSR, b.sum_dSR);
  EXPECT_EQ(a.times.front(), 0.0);
  EXPECT_EQ(a.times.back(), 50.0);
  std::set<long> distinct(a.n_collisions.begin(), a.n_collisions.end());
  EXPECT_GT(distinct.size(), 1u);
}

TEST(Ensemble, FittedRateNearSinSquaredRate) {
  EnsembleOptions opt;
  opt.n_traj = 512;
  const CollisionConfig c = config(0.1, 0);
  const EnsembleResult e = run_ensemble(GaussianState::vacuum(), c, opt);
  const RateFit f = fit_relaxation_rate(e, c.ancilla().n_th());
  EXPECT_NEAR(f.rate, c.rate() * kSin2_01, 5.0 * f.sigma);
  EXPECT_GT(f.r_squared, 0.99);
}

TEST(CompensatedSum, RecoversSmallTerms) {
  std::vector<double> v{1.0, 1e-16, 1e-16, -1.0};
  EXPECT_NEAR(compensated_sum(v), 2e-16, 1e-30);
}

}  // namespace
}  // namespace sqt
