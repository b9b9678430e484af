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

#include <cstdint>

namespace qfp {

// Bits per user of the best known two-user classical protocol.
double best_two_user(double N, double p_error);

// Bits per user of the best known K-user classical protocol.
double best_k_user(int K, double N, double p_error);

// Information-theoretic lower bound on bits per user for K users.
double classical_limit(int K, double N, double p_error);

// Photons per user of a classical protocol that sends one photon per bit at
// the limit, for large K and combined efficiency eta.
double energy_limit_photons(int K, double N, double p_error, double eta);

// Both pairwise conditions that any classical protocol with Alice sending
// Ma bits on Na-bit inputs and Bob Mb bits on Nb-bit inputs must meet.
bool claim_c1_check(double Na, double Nb, double Ma, double Mb, double p_error);

// The loosened K-party condition behind the limit: true when M bits per user
// are not excluded for N-bit inputs.
bool limit_condition_holds(int K, double N, double M, double p_error);

struct ClassicalCosts {
  double c_best_2 = 0.0;
  double c_best_k = 0.0;
  double c_limit = 0.0;
  double energy_limit_photons = 0.0;
};

ClassicalCosts classical_costs(int K, double N, double p_error, double eta);

}  // namespace qfp
