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


#include <cmath>
#include <numbers>

#include "sqthermo/errors.hpp"
#include "sqthermo/reservoir.hpp"
#include "sqthermo/types.hpp"

namespace sqt {

double thermal_occupation(double beta, double omega) {
  if (!(beta > 0.0)) throw DomainError("thermal_occupation: beta must be > 0");
  if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be > 0");
  return 1.0 / std::expm1(beta * omega);
}

ModeSpec::ModeSpec(double omega, std::string label) : omega_(omega), label_(std::move(label)) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("ModeSpec: omega must be > 0");
}

SqueezeParams::SqueezeParams(double r, double theta) : r_(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("SqueezeParams: r must be >= 0");
  if (!std::isfinite(theta)) throw DomainError("SqueezeParams: theta must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta_ = std::fmod(theta, two_pi);
  if (theta_ < 0.0) theta_ += two_pi;
  if (theta_ >= two_pi) theta_ = 0.0;
}

SqueezeParams SqueezeParams::inverse() const { return {r_, theta_ + std::numbers::pi}; }

ReservoirSpec::ReservoirSpec(double beta, double omega, SqueezeParams sq, double gamma)
    : beta_(beta), omega_(omega), sq_(sq), gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("ReservoirSpec: gamma must be > 0");
  n_th_ = thermal_occupation(beta, omega);
}

double ReservoirSpec::N() const {
  const double r = sq_.r();
  return n_th_ * std::cosh(2.0 * r) + std::sinh(r) * std::sinh(r);
}

std::complex<double> ReservoirSpec::M() const {
  const double r = sq_.r();
  return -std::sinh(r) * std::cosh(r) * (2.0 * n_th_ + 1.0) * std::polar(1.0, sq_.theta());
}

}  // namespace sqt
