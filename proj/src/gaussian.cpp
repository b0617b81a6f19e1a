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


#include "sqthermo/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "sqthermo/errors.hpp"

namespace sqt {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUnphysicalTol = 1e-9;
constexpr double kPureCutoff = 1e-12;

void require_single_mode(const GaussianState& s, const char* where) {
  if (s.n_modes() != 1) throw DomainError(std::string(where) + ": single-mode state required");
}

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return r;
}

// (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2)
double mode_entropy(double nu) {
  if (nu < 0.5 - kUnphysicalTol) {
    throw UnphysicalStateError("symplectic eigenvalue " + std::to_string(nu) + " < 1/2");
  }
  const double excess = nu - 0.5;
  if (excess < kPureCutoff) return 0.0;
  return (nu + 0.5) * std::log(nu + 0.5) - excess * std::log(excess);
}

}  // namespace

GaussianState::GaussianState(PhaseVec mean, PhaseMat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto n = mean_.size();
  if (n != 2 && n != 4) throw DomainError("GaussianState: 1 or 2 modes supported");
  if (cov_.rows() != n || cov_.cols() != n) throw DomainError("GaussianState: cov shape mismatch");
  if (!mean_.allFinite() || !cov_.allFinite()) throw DomainError("GaussianState: non-finite entries");
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw DomainError("GaussianState: cov not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes != 1 && n_modes != 2) throw DomainError("vacuum: 1 or 2 modes supported");
  const int n = 2 * n_modes;
  return {PhaseVec::Zero(n), PhaseMat::Identity(n, n) * 0.5};
}

GaussianState GaussianState::thermal(double n_th) {
  if (!(n_th >= 0.0)) throw DomainError("thermal: occupation must be >= 0");
  return {PhaseVec::Zero(2), PhaseMat::Identity(2, 2) * (n_th + 0.5)};
}

GaussianState GaussianState::tensor(const GaussianState& other) const {
  require_single_mode(*this, "tensor");
  require_single_mode(other, "tensor");
  PhaseVec m(4);
  m << mean_, other.mean_;
  PhaseMat c = PhaseMat::Zero(4, 4);
  c.topLeftCorner(2, 2) = cov_;
  c.bottomRightCorner(2, 2) = other.cov_;
  return {m, c};
}

GaussianState GaussianState::marginal(int k) const {
  if (n_modes() != 2 || k < 0 || k > 1) throw DomainError("marginal: two-mode state, k in {0,1}");
  return {mean_.segment(2 * k, 2), cov_.block(2 * k, 2 * k, 2, 2)};
}

ModeMoments moments(const GaussianState& s) {
  require_single_mode(s, "moments");
  const auto& m = s.mean();
  const auto& v = s.cov();
  const double xx = v(0, 0) + m(0) * m(0);
  const double pp = v(1, 1) + m(1) * m(1);
  const double xp = v(0, 1) + m(0) * m(1);
  ModeMoments out;
  out.a = std::complex<double>(m(0), m(1)) / std::sqrt(2.0);
  out.a2 = std::complex<double>(0.5 * (xx - pp), xp);
  out.n = 0.5 * (xx + pp - 1.0);
  return out;
}

GaussianState from_moments(const ModeMoments& mo) {
  PhaseVec m(2);
  m << std::sqrt(2.0) * mo.a.real(), std::sqrt(2.0) * mo.a.imag();
  PhaseMat v(2, 2);
  const double xx = mo.n + 0.5 + mo.a2.real();
  const double pp = mo.n + 0.5 - mo.a2.real();
  const double xp = mo.a2.imag();
  v << xx - m(0) * m(0), xp - m(0) * m(1), xp - m(0) * m(1), pp - m(1) * m(1);
  return {m, v};
}

std::vector<double> symplectic_eigenvalues(const GaussianState& s) {
  const auto& v = s.cov();
  if (s.n_modes() == 1) return {std::sqrt(std::max(0.0, v.determinant()))};
  const Eigen::Matrix2d a = v.topLeftCorner(2, 2);
  const Eigen::Matrix2d b = v.bottomRightCorner(2, 2);
  const Eigen::Matrix2d c = v.topRightCorner(2, 2);
  const double delta = a.determinant() + b.determinant() + 2.0 * c.determinant();
  const double det = v.determinant();
  const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
  const double hi = std::sqrt(std::max(0.0, 0.5 * (delta + disc)));
  const double lo = std::sqrt(std::max(0.0, 0.5 * (delta - disc)));
  return {lo, hi};
}

double min_symplectic_eigenvalue(const GaussianState& s) {
  const auto nu = symplectic_eigenvalues(s);
  return *std::min_element(nu.begin(), nu.end());
}

Eigen::Matrix2d squeeze_symplectic(const SqueezeParams& sq) {
  const Eigen::Matrix2d rot = rotation(0.5 * sq.theta());
  const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(-sq.r()), std::exp(sq.r())).asDiagonal();
  return rot.transpose() * d * rot;
}

GaussianState make_squeezed_thermal(double beta, const ModeSpec& mode, const SqueezeParams& sq) {
  return apply_squeeze(GaussianState::thermal(thermal_occupation(beta, mode.omega())), sq);
}

GaussianState apply_squeeze(const GaussianState& state, const SqueezeParams& sq) {
  require_single_mode(state, "apply_squeeze");
  if (sq.r() == 0.0) return state;
  const Eigen::Matrix2d s = squeeze_symplectic(sq);
  return {s * state.mean(), s * state.cov() * s.transpose()};
}

GaussianState apply_beam_splitter(const GaussianState& state2, double angle) {
  if (state2.n_modes() != 2) throw DomainError("apply_beam_splitter: two-mode state required");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix4d t;
  t << c, 0, -s, 0,  //
      0, c, 0, -s,   //
      s, 0, c, 0,    //
      0, s, 0, c;
  return {t * state2.mean(), t * state2.cov() * t.transpose()};
}

std::pair<double, double> quadrature_variances(const GaussianState& s, double phi) {
  require_single_mode(s, "quadrature_variances");
  const Eigen::Matrix2d r = rotation(phi);
  const Eigen::Matrix2d v = r * s.cov() * r.transpose();
  return {v(0, 0), v(1, 1)};
}

double mean_photon_number(const GaussianState& s) { return moments(s).n; }

double mean_energy(const GaussianState& s, const ModeSpec& mode) {
  return mode.omega() * mean_photon_number(s);
}

double asymmetry(const GaussianState& s, const ModeSpec& mode, double theta) {
  require_single_mode(s, "asymmetry");
  const Eigen::Matrix2d r = rotation(0.5 * theta);
  const Eigen::Vector2d m = r * s.mean();
  const Eigen::Matrix2d raw = r * s.cov() * r.transpose() + m * m.transpose();
  return 0.5 * mode.omega() * (raw(1, 1) - raw(0, 0));
}

double entropy_gaussian(const GaussianState& s) {
  double total = 0.0;
  for (double nu : symplectic_eigenvalues(s)) total += mode_entropy(nu);
  return total;
}

GaussianState relax_moments_analytic(const GaussianState& initial, const ReservoirSpec& res, double t) {
  require_single_mode(initial, "relax_moments_analytic");
  if (!(t >= 0.0)) throw DomainError("relax_moments_analytic: t must be >= 0");
  if (t == 0.0) return initial;

  const double c = std::cosh(res.squeeze().r());
  const double s = std::sinh(res.squeeze().r());
  const std::complex<double> e = std::polar(1.0, res.squeeze().theta());
  const ModeMoments m0 = moments(initial);

  // Moments of R = a c + a^dag e s.
  std::complex<double> r1 = c * m0.a + s * e * std::conj(m0.a);
  std::complex<double> r2 = c * c * m0.a2 + s * s * e * e * std::conj(m0.a2) + c * s * e * (2.0 * m0.n + 1.0);
  double rn = c * c * m0.n + s * s * (m0.n + 1.0) + 2.0 * c * s * std::real(std::conj(e) * m0.a2);

  const double gt = res.gamma() * t;
  r1 *= std::exp(-0.5 * gt);
  r2 *= std::exp(-gt);
  rn = res.n_th() + std::exp(-gt) * (rn - res.n_th());

  // a = R c - R^dag e s.
  ModeMoments mt;
  mt.a = c * r1 - s * e * std::conj(r1);
  mt.a2 = c * c * r2 + s * s * e * e * std::conj(r2) - c * s * e * (2.0 * rn + 1.0);
  mt.n = c * c * rn + s * s * (rn + 1.0) - 2.0 * c * s * std::real(std::conj(e) * r2);
  return from_moments(mt);
}

}  // namespace sqt
