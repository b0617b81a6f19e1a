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


#include "sqthermo/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqthermo/errors.hpp"

namespace sqt {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// exp(T) for a real antisymmetric tridiagonal T with T(k, k+1) = u_k.
// With E = diag(i^k), E^dag T E = i B, B real symmetric with off-diagonal u.
CMatrix expm_antisymmetric_tridiagonal(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size() + 1;
  if (n == 1) return CMatrix::Identity(1, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(Eigen::VectorXd::Zero(n), u, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::VectorXcd phase(n);
  for (Eigen::Index k = 0; k < n; ++k) phase(k) = std::polar(1.0, eig.eigenvalues()(k));
  CMatrix out = v.cast<cplx>() * phase.asDiagonal() * v.transpose().cast<cplx>();
  // i^j on rows, i^-l on columns
  const cplx powers[4] = {1.0, kI, -1.0, -kI};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) out(j, l) *= powers[((j - l) % 4 + 4) % 4];
  }
  return out;
}

CMatrix displacement_unitary(cplx alpha, int work_dim) {
  // D = exp(alpha a^dag - alpha^* a) = P exp(|alpha| (a^dag - a)) P^dag, P = diag(e^{i k phi})
  const double mag = std::abs(alpha);
  const double phi = std::arg(alpha);
  Eigen::VectorXd u(work_dim - 1);
  for (int k = 0; k < work_dim - 1; ++k) u(k) = -mag * std::sqrt(k + 1.0);
  CMatrix d = expm_antisymmetric_tridiagonal(u);
  for (int j = 0; j < work_dim; ++j) {
    for (int l = 0; l < work_dim; ++l) d(j, l) *= std::polar(1.0, (j - l) * phi);
  }
  return d;
}

double thermal_ratio(double nu) {
  const double n = std::max(0.0, nu - 0.5);
  return n / (n + 1.0);
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(CMatrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) throw DomainError("FockDensityMatrix: matrix must be square");
  if (data_.rows() < 2) throw DomainError("FockDensityMatrix: dim must be >= 2");
}

FockDensityMatrix FockDensityMatrix::number_state(int dim, int n) {
  if (n < 0 || n >= dim) throw DomainError("number_state: level outside truncation");
  CMatrix d = CMatrix::Zero(dim, dim);
  d(n, n) = 1.0;
  return FockDensityMatrix(d);
}

double FockDensityMatrix::hermiticity_error() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd FockDensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(data_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

int default_dim(const GaussianState& state) {
  if (state.n_modes() != 1) throw DomainError("default_dim: single-mode state required");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(Eigen::Matrix2d(state.cov()));
  const double lam = std::max(0.5, eig.eigenvalues()(1));
  const double q = std::max((lam - 0.5) / (lam + 0.5), 1e-3);
  const ModeMoments m = moments(state);
  const double alpha = std::abs(m.a);
  const double levels = m.n + std::log(1e20) / -std::log(q) + 12.0 * alpha * std::sqrt(lam);
  return std::max(40, static_cast<int>(std::ceil(levels)));
}

int default_dim(const ReservoirSpec& res) {
  return default_dim(make_squeezed_thermal(res.beta(), res.mode(), res.squeeze()));
}

CMatrix squeeze_unitary(const SqueezeParams& sq, int dim, int work_dim) {
  if (work_dim < dim) throw DomainError("squeeze_unitary: work_dim < dim");
  CMatrix s = CMatrix::Zero(work_dim, work_dim);
  // S = P exp((r/2)(a^2 - a^dag^2)) P^dag with P = diag(e^{i k theta/2}); even
  // and odd levels decouple into two tridiagonal chains.
  for (int start = 0; start < 2; ++start) {
    const int len = (work_dim - start + 1) / 2;
    if (len <= 0) continue;
    Eigen::VectorXd u(std::max(0, len - 1));
    for (int j = 0; j + 1 < len; ++j) {
      const double k = start + 2.0 * j;
      u(j) = 0.5 * sq.r() * std::sqrt((k + 1.0) * (k + 2.0));
    }
    const CMatrix chain = expm_antisymmetric_tridiagonal(u);
    for (int j = 0; j < len; ++j) {
      for (int l = 0; l < len; ++l) {
        const int m = start + 2 * j;
        const int n = start + 2 * l;
        s(m, n) = chain(j, l) * std::polar(1.0, 0.5 * (m - n) * sq.theta());
      }
    }
  }
  return s.topLeftCorner(dim, dim);
}

FockDensityMatrix gaussian_to_fock(const GaussianState& state, int dim) {
  if (state.n_modes() != 1) throw DomainError("gaussian_to_fock: single-mode state required");
  if (dim < 2) throw DomainError("gaussian_to_fock: dim must be >= 2");

  // cov = nu * Ssym Ssym^T with Ssym the symplectic matrix of S(r, theta).
  const Eigen::Matrix2d cov = state.cov();
  const double nu = std::sqrt(std::max(0.25, cov.determinant()));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov / nu);
  const double lam_min = std::min(1.0, eig.eigenvalues()(0));
  const double r = -0.5 * std::log(lam_min);
  const Eigen::Vector2d axis = eig.eigenvectors().col(0);
  const SqueezeParams sq(r, 2.0 * std::atan2(axis(1), axis(0)));
  const cplx alpha = moments(state).a;

  const double q = thermal_ratio(nu);
  int n_terms = 1;
  if (q > 0.0) n_terms = static_cast<int>(std::ceil(std::log(1e-18) / std::log(q))) + 1;
  const int work_dim = dim + std::max(40, dim / 2) + (std::abs(alpha) > 0.0 ? dim / 2 : 0);
  n_terms = std::min(n_terms, work_dim);

  CMatrix u = squeeze_unitary(sq, work_dim, work_dim);
  if (std::abs(alpha) > 0.0) u = displacement_unitary(alpha, work_dim) * u;

  const CMatrix cols = u.topLeftCorner(dim, n_terms);
  Eigen::VectorXd weights(n_terms);
  double w = 1.0 - q;
  for (int n = 0; n < n_terms; ++n, w *= q) weights(n) = w;
  CMatrix rho = cols * weights.asDiagonal() * cols.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();

  const double top = rho(dim - 1, dim - 1).real();
  if (top > kTopPopulationLimit) {
    throw TruncationError("gaussian_to_fock: top-level population " + std::to_string(top) +
                              " exceeds limit at dim " + std::to_string(dim),
                          default_dim(state));
  }
  rho /= rho.trace().real();
  return FockDensityMatrix(rho);
}

CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) a(k, k + 1) = std::sqrt(k + 1.0);
  return a;
}

CMatrix energy_operator(int dim, const ModeSpec& mode) {
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) h(k, k) = mode.omega() * k;
  return h;
}

CMatrix asymmetry_operator(int dim, const ModeSpec& mode, double theta) {
  const CMatrix a = annihilation(dim);
  const CMatrix a2 = a * a;
  const cplx e = std::polar(1.0, theta);
  return -0.5 * mode.omega() * (a2.adjoint() * e + a2 * std::conj(e));
}

double expectation(const CMatrix& op, const CMatrix& rho) {
  // Tr[op rho] = sum_{mn} op(m,n) rho(n,m)
  return (op.transpose().cwiseProduct(rho)).sum().real();
}

LindbladGenerator::LindbladGenerator(int dim, const ReservoirSpec& res) : dim_(dim), res_(res) {
  if (dim < 2) throw DomainError("build_generator: dim must be >= 2");
  const double c = std::cosh(res.squeeze().r());
  const double s = std::sinh(res.squeeze().r());
  const cplx e = std::polar(1.0, res.squeeze().theta());
  const double g_minus = std::sqrt(res.gamma() * (res.n_th() + 1.0));
  const double g_plus = std::sqrt(res.gamma() * res.n_th());

  // J = u a + v a^dag for both jumps.
  const cplx u1 = g_minus * c;
  const cplx v1 = g_minus * s * e;
  const cplx u2 = g_plus * s * std::conj(e);
  const cplx v2 = g_plus * c;

  const CMatrix a = annihilation(dim);
  jump_minus_ = u1 * a + v1 * a.adjoint();
  jump_plus_ = u2 * a + v2 * a.adjoint();
  decay_ = jump_minus_.adjoint() * jump_minus_ + jump_plus_.adjoint() * jump_plus_;

  coef_uu_ = std::norm(u1) + std::norm(u2);
  coef_uv_ = u1 * std::conj(v1) + u2 * std::conj(v2);
  coef_vv_ = std::norm(v1) + std::norm(v2);

  k0_ = decay_.diagonal();
  k2_ = Eigen::VectorXcd::Zero(dim);
  for (int m = 0; m + 2 < dim; ++m) k2_(m) = decay_(m, m + 2);
  stiffness_ = decay_.cwiseAbs().rowwise().sum().maxCoeff();
}

CMatrix LindbladGenerator::apply(const CMatrix& rho) const {
  const int d = dim_;
  CMatrix out(d, d);
  const cplx uv = coef_uv_;
  const cplx vu = std::conj(coef_uv_);
#pragma omp parallel for schedule(static)
  for (int n = 0; n < d; ++n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double sn1 = std::sqrt(n + 1.0);
    for (int m = 0; m < d; ++m) {
      const double sm = std::sqrt(static_cast<double>(m));
      const double sm1 = std::sqrt(m + 1.0);
      cplx acc = 0.0;
      if (m + 1 < d && n + 1 < d) acc += coef_uu_ * sm1 * sn1 * rho(m + 1, n + 1);
      if (m + 1 < d && n >= 1) acc += uv * sm1 * sn * rho(m + 1, n - 1);
      if (m >= 1 && n + 1 < d) acc += vu * sm * sn1 * rho(m - 1, n + 1);
      if (m >= 1 && n >= 1) acc += coef_vv_ * sm * sn * rho(m - 1, n - 1);

      cplx anti = (k0_(m) + k0_(n)) * rho(m, n);
      if (m + 2 < d) anti += k2_(m) * rho(m + 2, n);
      if (m >= 2) anti += std::conj(k2_(m - 2)) * rho(m - 2, n);
      if (n >= 2) anti += rho(m, n - 2) * k2_(n - 2);
      if (n + 2 < d) anti += rho(m, n + 2) * std::conj(k2_(n));
      out(m, n) = acc - 0.5 * anti;
    }
  }
  return out;
}

CMatrix LindbladGenerator::apply_reference(const CMatrix& rho) const {
  CMatrix out = jump_minus_ * rho * jump_minus_.adjoint() + jump_plus_ * rho * jump_plus_.adjoint();
  out -= 0.5 * (decay_ * rho + rho * decay_);
  return out;
}

LindbladGenerator build_generator(int dim, const ReservoirSpec& res) { return {dim, res}; }

namespace {

int suggested_dim(const CMatrix& rho, int dim) {
  try {
    const int g = default_dim(from_moments(fock_moments(FockDensityMatrix(rho))));
    return std::max(g, dim + dim / 2);
  } catch (const std::exception&) {
    return dim + dim / 2;
  }
}

}  // namespace

FockDensityMatrix evolve(const FockDensityMatrix& rho0, const LindbladGenerator& gen, double t,
                         double dt_max, const StepObserver& observer, EvolveStats* stats) {
  if (!(t >= 0.0)) throw DomainError("evolve: t must be >= 0");
  if (!(dt_max > 0.0)) throw DomainError("evolve: dt_max must be > 0");
  if (rho0.dim() != gen.dim()) throw DomainError("evolve: dimension mismatch");
  if (t == 0.0) return rho0;

  const double bound = std::min({dt_max, 0.01 / gen.reservoir().gamma(), 1.0 / gen.stiffness()});
  const long steps = static_cast<long>(std::ceil(t / bound - 1e-12));
  const double dt = t / static_cast<double>(steps);

  CMatrix rho = rho0.data();
  EvolveStats local;
  local.steps = steps;
  local.dt = dt;
  for (long i = 1; i <= steps; ++i) {
    const CMatrix k1 = gen.apply(rho);
    const CMatrix k2 = gen.apply(rho + 0.5 * dt * k1);
    const CMatrix k3 = gen.apply(rho + 0.5 * dt * k2);
    const CMatrix k4 = gen.apply(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    local.max_hermiticity_drift =
        std::max(local.max_hermiticity_drift, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    local.max_trace_drift = std::max(local.max_trace_drift, std::abs(tr - 1.0));
    rho /= tr;

    const double top = rho(gen.dim() - 1, gen.dim() - 1).real();
    local.max_top_population = std::max(local.max_top_population, top);
    if (top > kTopPopulationLimit) {
      throw TruncationError("evolve: top-level population " + std::to_string(top) + " at dim " +
                                std::to_string(gen.dim()),
                            suggested_dim(rho, gen.dim()));
    }
    if (observer) observer(dt * static_cast<double>(i), FockDensityMatrix(rho));
  }
  if (stats) {
    stats->steps += local.steps;
    stats->dt = local.dt;
    stats->max_trace_drift = std::max(stats->max_trace_drift, local.max_trace_drift);
    stats->max_hermiticity_drift = std::max(stats->max_hermiticity_drift, local.max_hermiticity_drift);
    stats->max_top_population = std::max(stats->max_top_population, local.max_top_population);
  }
  return FockDensityMatrix(rho);
}

std::vector<FockDensityMatrix> sample_trajectory(const FockDensityMatrix& rho,
                                                 const LindbladGenerator& gen,
                                                 const std::vector<double>& times, double dt_max,
                                                 EvolveStats* stats) {
  std::vector<FockDensityMatrix> out;
  out.reserve(times.size());
  FockDensityMatrix cur = rho;
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw DomainError("sample_trajectory: times must be ascending and >= 0");
    cur = evolve(cur, gen, t - now, dt_max, {}, stats);
    now = t;
    out.push_back(cur);
  }
  return out;
}

FockDensityMatrix steady_state_fock(int dim, const ReservoirSpec& res) {
  FockDensityMatrix pi = gaussian_to_fock(make_squeezed_thermal(res.beta(), res.mode(), res.squeeze()), dim);
  const LindbladGenerator gen(dim, res);
  const double residual = gen.apply(pi.data()).norm();
  if (residual > 1e-6 * res.gamma()) {
    throw TruncationError("steady_state_fock: residual ||L(pi)|| = " + std::to_string(residual),
                          std::max(default_dim(res), dim + dim / 2));
  }
  return pi;
}

double von_neumann_entropy(const FockDensityMatrix& rho, double floor) {
  double s = 0.0;
  for (double p : rho.eigenvalues()) {
    if (p > floor) s -= p * std::log(p);
  }
  return s;
}

double relative_entropy(const FockDensityMatrix& rho, const FockDensityMatrix& sigma, double floor) {
  if (rho.dim() != sigma.dim()) throw DomainError("relative_entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.data());
  const CMatrix& v = es.eigenvectors();
  // weights <v_j| rho |v_j>
  const Eigen::VectorXd w = (v.adjoint() * rho.data() * v).diagonal().real();
  double cross = 0.0;
  double deficit = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const double lam = es.eigenvalues()(j);
    if (lam < floor) deficit += std::max(0.0, w(j));
    cross += w(j) * std::log(std::max(lam, floor));
  }
  if (deficit > 1e-10) return std::numeric_limits<double>::infinity();
  double neg_s = 0.0;
  for (double p : rho.eigenvalues()) {
    if (p > floor) neg_s += p * std::log(p);
  }
  return neg_s - cross;
}

double relative_entropy_to_steady(const FockDensityMatrix& rho, const ReservoirSpec& res,
                                  double floor) {
  const double c = std::cosh(res.squeeze().r());
  const double s = std::sinh(res.squeeze().r());
  const CMatrix a = annihilation(rho.dim());
  const CMatrix r_op = c * a + (s * std::polar(1.0, res.squeeze().theta())) * a.adjoint();
  const double rr = expectation(r_op.adjoint() * r_op, rho.data());
  return -von_neumann_entropy(rho, floor) + std::log1p(res.n_th()) + res.beta() * res.omega() * rr;
}

ModeMoments fock_moments(const FockDensityMatrix& rho) {
  const CMatrix a = annihilation(rho.dim());
  const CMatrix& d = rho.data();
  ModeMoments m;
  m.a = (a.transpose().cwiseProduct(d)).sum();
  const CMatrix a2 = a * a;
  m.a2 = (a2.transpose().cwiseProduct(d)).sum();
  double n = 0.0;
  for (int k = 0; k < rho.dim(); ++k) n += k * d(k, k).real();
  m.n = n;
  return m;
}

FockObservables observables(const FockDensityMatrix& rho, const ModeSpec& mode, double theta) {
  FockObservables o;
  o.energy = expectation(energy_operator(rho.dim(), mode), rho.data());
  o.asymmetry = expectation(asymmetry_operator(rho.dim(), mode, theta), rho.data());
  o.entropy = von_neumann_entropy(rho);
  return o;
}

}  // namespace sqt
