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


#pragma once

#include <complex>

#include "sqthermo/types.hpp"

namespace sqt {

// Squeezed thermal environment of a single resonant mode plus its coupling
// rate. N and M are the reservoir moments <b^dag b> and <b^2> at resonance.
class ReservoirSpec {
 public:
  ReservoirSpec(double beta, double omega, SqueezeParams sq, double gamma);

  double beta() const { return beta_; }
  double omega() const { return omega_; }
  const SqueezeParams& squeeze() const { return sq_; }
  double gamma() const { return gamma_; }
  ModeSpec mode() const { return ModeSpec(omega_); }

  double n_th() const { return n_th_; }
  double N() const;
  std::complex<double> M() const;

  // Steady-state values omega N and omega |M| of energy and asymmetry.
  double steady_energy() const { return omega_ * N(); }
  double steady_asymmetry() const { return omega_ * std::abs(M()); }

 private:
  double beta_;
  double omega_;
  SqueezeParams sq_;
  double gamma_;
  double n_th_;
};

}  // namespace sqt
