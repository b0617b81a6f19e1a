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


#include "sqthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqthermo/errors.hpp"

namespace sqt {

namespace {

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return r;
}

CMatrix rk4_step(const LindbladGenerator& gen, const CMatrix& rho, double h) {
  const CMatrix k1 = gen.apply(rho);
  const CMatrix k2 = gen.apply(rho + 0.5 * h * k1);
  const CMatrix k3 = gen.apply(rho + 0.5 * h * k2);
  const CMatrix k4 = gen.apply(rho + h * k3);
  CMatrix out = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out = 0.5 * (out + out.adjoint()).eval();
  return out / out.trace().real();
}

}  // namespace

double entropy_flow(const ReservoirSpec& res, double dQ, double dA) {
  const double r2 = 2.0 * res.squeeze().r();
  return res.beta() * (std::cosh(r2) * dQ - std::sinh(r2) * dA);
}

Rates rates(const GaussianState& state, const ReservoirSpec& res) {
  if (state.n_modes() != 1) throw DomainError("rates: single-mode state required");
  const double g = res.gamma();
  const double w = res.omega();
  const GaussianState pi = make_squeezed_thermal(res.beta(), res.mode(), res.squeeze());
  const Eigen::Matrix2d cov = state.cov();
  const Eigen::Vector2d mean = state.mean();
  const Eigen::Matrix2d cov_dot = -g * (cov - Eigen::Matrix2d(pi.cov()));
  const Eigen::Vector2d mean_dot = -0.5 * g * mean;

  Rates out;
  // n = (tr cov + |mean|^2 - 1) / 2
  out.Qdot = w * 0.5 * (cov_dot.trace() + 2.0 * mean.dot(mean_dot));

  const Eigen::Matrix2d rot = rotation(0.5 * res.squeeze().theta());
  const Eigen::Matrix2d cd = rot * cov_dot * rot.transpose();
  const Eigen::Vector2d m = rot * mean;
  const Eigen::Vector2d md = rot * mean_dot;
  out.Adot = 0.5 * w * (cd(1, 1) - cd(0, 0) + 2.0 * (m(1) * md(1) - m(0) * md(0)));

  const double det = cov.determinant();
  const double nu = std::sqrt(std::max(det, 0.25));
  const double det_dot =
      cov(1, 1) * cov_dot(0, 0) + cov(0, 0) * cov_dot(1, 1) - 2.0 * cov(0, 1) * cov_dot(0, 1);
  const double nu_dot = det_dot / (2.0 * nu);
  if (nu - 0.5 < 1e-12) {
    out.Sdot = nu_dot > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    out.Sdot = std::log((nu + 0.5) / (nu - 0.5)) * nu_dot;
  }
  out.Phidot = entropy_flow(res, out.Qdot, out.Adot);
  out.Sigmadot = out.Sdot - out.Phidot;
  return out;
}

Rates rates(const FockDensityMatrix& rho, const LindbladGenerator& gen, double h) {
  if (rho.dim() != gen.dim()) throw DomainError("rates: dimension mismatch");
  const ReservoirSpec& res = gen.reservoir();
  if (h <= 0.0) h = std::min(0.01 / res.gamma(), 1.0 / gen.stiffness());
  const CMatrix drho = gen.apply(rho.data());

  Rates out;
  out.Qdot = expectation(energy_operator(rho.dim(), res.mode()), drho);
  out.Adot = expectation(asymmetry_operator(rho.dim(), res.mode(), res.squeeze().theta()), drho);
  auto central = [&](double step) {
    const double s_plus = von_neumann_entropy(FockDensityMatrix(rk4_step(gen, rho.data(), step)));
    const double s_minus = von_neumann_entropy(FockDensityMatrix(rk4_step(gen, rho.data(), -step)));
    return (s_plus - s_minus) / (2.0 * step);
  };
  // Richardson combination of the h and h/2 central differences.
  out.Sdot = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  out.Phidot = entropy_flow(res, out.Qdot, out.Adot);
  out.Sigmadot = out.Sdot - out.Phidot;
  return out;
}

Fluxes closed_form_fluxes(const GaussianState& state, const ReservoirSpec& res) {
  const double theta = res.squeeze().theta();
  return {-res.gamma() * (mean_energy(state, res.mode()) - res.steady_energy()),
          -res.gamma() * (asymmetry(state, res.mode(), theta) - res.steady_asymmetry())};
}

double ThermoLedger::max_sigma_decrease() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < Sigma.size(); ++i) worst = std::max(worst, Sigma[i - 1] - Sigma[i]);
  return worst;
}

double ThermoLedger::max_balance_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    worst = std::max(worst, std::abs(Sigma[i] - (S[i] - S[0]) + Phi[i]));
  }
  return worst;
}

std::vector<double> sample_times(double t_end, int n_samples) {
  if (!(t_end > 0.0)) throw DomainError("sample_times: t_end must be > 0");
  if (n_samples < 2) throw DomainError("sample_times: need at least 2 samples");
  std::vector<double> t(n_samples);
  for (int i = 0; i < n_samples; ++i) t[i] = t_end * i / (n_samples - 1);
  return t;
}

ThermoLedger gaussian_ledger(const GaussianState& initial, const ReservoirSpec& res, double t_end,
                             int n_samples) {
  ThermoLedger l;
  const double theta = res.squeeze().theta();
  const double e0 = mean_energy(initial, res.mode());
  const double a0 = asymmetry(initial, res.mode(), theta);
  const double s0 = entropy_gaussian(initial);
  for (double t : sample_times(t_end, n_samples)) {
    const GaussianState st = relax_moments_analytic(initial, res, t);
    const double s = entropy_gaussian(st);
    const double q = mean_energy(st, res.mode()) - e0;
    const double a = asymmetry(st, res.mode(), theta);
    const double phi = entropy_flow(res, q, a - a0);
    l.times.push_back(t);
    l.S.push_back(s);
    l.Q.push_back(q);
    l.A.push_back(a);
    l.Phi.push_back(phi);
    l.Sigma.push_back((s - s0) - phi);
  }
  return l;
}

FockRun fock_ledger(const FockDensityMatrix& rho0, const LindbladGenerator& gen, double t_end,
                    int n_samples, double dt_max, double eigen_floor) {
  const ReservoirSpec& res = gen.reservoir();
  const double theta = res.squeeze().theta();
  const CMatrix h_op = energy_operator(gen.dim(), res.mode());
  const CMatrix a_op = asymmetry_operator(gen.dim(), res.mode(), theta);

  FockRun run;
  FockDensityMatrix rho = rho0;
  double now = 0.0;
  double e0 = 0.0, a0 = 0.0, s0 = 0.0;
  for (double t : sample_times(t_end, n_samples)) {
    EvolveStats seg;
    rho = evolve(rho, gen, t - now, dt_max, {}, &seg);
    now = t;
    const double e = expectation(h_op, rho.data());
    const double a = expectation(a_op, rho.data());
    const double s = von_neumann_entropy(rho, eigen_floor);
    if (run.ledger.size() == 0) {
      e0 = e;
      a0 = a;
      s0 = s;
    }
    const double phi = entropy_flow(res, e - e0, a - a0);
    run.ledger.times.push_back(t);
    run.ledger.S.push_back(s);
    run.ledger.Q.push_back(e - e0);
    run.ledger.A.push_back(a);
    run.ledger.Phi.push_back(phi);
    run.ledger.Sigma.push_back((s - s0) - phi);
    run.energy.push_back(e);
    run.asymmetry.push_back(a);
    run.rel_entropy.push_back(relative_entropy_to_steady(rho, res, eigen_floor));
    run.trace_drift.push_back(seg.max_trace_drift);
    run.moments.push_back(fock_moments(rho));
    run.stats.steps += seg.steps;
    if (seg.steps > 0) run.stats.dt = seg.dt;
    run.stats.max_trace_drift = std::max(run.stats.max_trace_drift, seg.max_trace_drift);
    run.stats.max_hermiticity_drift =
        std::max(run.stats.max_hermiticity_drift, seg.max_hermiticity_drift);
    run.stats.max_top_population = std::max(run.stats.max_top_population, seg.max_top_population);
  }
  return run;
}

FockDensityMatrix dephased_steady_state(int dim, const ReservoirSpec& res) {
  const FockDensityMatrix pi = steady_state_fock(dim, res);
  CMatrix d = CMatrix::Zero(dim, dim);
  d.diagonal() = pi.data().diagonal().real().cast<std::complex<double>>();
  return FockDensityMatrix(d);
}

double single_reservoir_work_bound(const ReservoirSpec& res, double deltaA) {
  return std::tanh(2.0 * res.squeeze().r()) * deltaA;
}

MaxWork max_extractable_work(const ReservoirSpec& res) {
  const double sh = std::sinh(res.squeeze().r());
  MaxWork out;
  out.W_max = res.omega() * (2.0 * res.n_th() + 1.0) * sh * sh;
  out.Sigma = res.beta() * out.W_max;
  return out;
}

GaussianUnitary GaussianUnitary::squeeze(const SqueezeParams& sq) {
  GaussianUnitary u;
  u.symplectic = squeeze_symplectic(sq);
  return u;
}

GaussianUnitary GaussianUnitary::rotation(double phi) {
  // a -> a e^{-i phi}
  GaussianUnitary u;
  u.symplectic << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return u;
}

GaussianUnitary GaussianUnitary::displacement_op(std::complex<double> alpha) {
  GaussianUnitary u;
  u.displacement << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return u;
}

GaussianUnitary GaussianUnitary::compose(const GaussianUnitary& other) const {
  GaussianUnitary u;
  u.symplectic = symplectic * other.symplectic;
  u.displacement = symplectic * other.displacement + displacement;
  return u;
}

GaussianState GaussianUnitary::apply(const GaussianState& state) const {
  if (state.n_modes() != 1) throw DomainError("GaussianUnitary: single-mode state required");
  if (std::abs(symplectic.determinant() - 1.0) > 1e-10) {
    throw DomainError("GaussianUnitary: transformation is not symplectic (unsupported unitary)");
  }
  PhaseVec mean = symplectic * Eigen::Vector2d(state.mean()) + displacement;
  PhaseMat cov = symplectic * Eigen::Matrix2d(state.cov()) * symplectic.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(mean, cov);
}

ProtocolResult two_stroke_protocol(const ReservoirSpec& res, const GaussianUnitary& u) {
  const double theta = res.squeeze().theta();
  const GaussianState pi = make_squeezed_thermal(res.beta(), res.mode(), res.squeeze());
  const GaussianState driven = u.apply(pi);

  ProtocolResult out;
  out.W_out = mean_energy(pi, res.mode()) - mean_energy(driven, res.mode());
  out.Q = out.W_out;
  out.deltaA = asymmetry(pi, res.mode(), theta) - asymmetry(driven, res.mode(), theta);
  // The relaxation stroke returns to pi_S; the unitary stroke leaves S fixed,
  // so Sigma = -Delta Phi over the relaxation.
  out.Sigma = -entropy_flow(res, out.Q, out.deltaA);
  out.bound = single_reservoir_work_bound(res, out.deltaA);
  if (out.W_out > out.bound + 1e-9) {
    throw ConsistencyError("two_stroke_protocol: W_out exceeds tanh(2r) dA");
  }
  return out;
}

}  // namespace sqt
