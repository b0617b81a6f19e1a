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


// Scalar parameter types shared by every module. Units: hbar = k_B = 1 and
// the cold-bath frequency omega_1 = 1 sets the energy scale.

#pragma once

#include <string>

namespace sqt {

// Bose-Einstein occupation (e^{beta omega} - 1)^{-1}.
double thermal_occupation(double beta, double omega);

class ModeSpec {
 public:
  ModeSpec() = default;
  explicit ModeSpec(double omega, std::string label = {});

  double omega() const { return omega_; }
  const std::string& label() const { return label_; }

 private:
  double omega_ = 1.0;
  std::string label_;
};

// Squeeze S = exp(r/2 (a^2 e^{-i theta} - a^dag^2 e^{i theta})). The quadrature
// x_{theta/2} is squeezed by e^{-r}.
class SqueezeParams {
 public:
  SqueezeParams() = default;
  SqueezeParams(double r, double theta);

  double r() const { return r_; }
  double theta() const { return theta_; }

  // Same squeeze axis, opposite strength: S(r, theta + pi) = S(r, theta)^dag.
  SqueezeParams inverse() const;

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

}  // namespace sqt
