// Copyright 2026 The qfprint Authors
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

namespace qfp {

// Bad sizes, indices, probabilities or names. Raised before any work starts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DecompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The gains do not separate equal from different inputs for the requested
// referee strategy.
class FeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Photon number per slot is too large for the small-photon click model.
class ValidityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string &what, double gap)
      : std::runtime_error(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

}  // namespace qfp
