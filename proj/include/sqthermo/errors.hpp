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

#include <stdexcept>
#include <string>

namespace sqt {

// Parameter outside the domain of a formula or a type invariant.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Covariance matrix violates the uncertainty relation.
class UnphysicalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fock truncation too small for the state being represented.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_dim)
      : std::runtime_error(what), required_dim_(required_dim) {}
  int required_dim() const noexcept { return required_dim_; }

 private:
  int required_dim_;
};

// Collisional parameters outside the perturbative regime, or a fit that is
// not exponential.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes to the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqt
