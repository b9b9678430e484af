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

#include "qfprint/classical.hpp"

#include <cmath>

#include "qfprint/errors.hpp"

namespace qfp {

namespace {

void check_inputs(double N, double p_error) {
  if (!(N >= 1.0)) throw ParameterError("message length N must be at least 1");
  if (!(p_error > 0.0 && p_error < 1.0)) throw ParameterError("p_error must lie in (0, 1)");
}

double repetitions(double p_error, double per_round_failure) {
  return std::ceil(std::log(p_error) / std::log(per_round_failure));
}

double limit_coefficient(double p_error) { return 1.0 - 2.0 * std::sqrt(p_error); }

}  // namespace

double best_two_user(double N, double p_error) {
  check_inputs(N, p_error);
  return repetitions(p_error, 0.75) * 2.0 * std::sqrt(N);
}

double best_k_user(int K, double N, double p_error) {
  if (K < 2) throw ParameterError("classical protocol needs at least two users");
  check_inputs(N, p_error);
  const auto three_n = static_cast<std::int64_t>(std::llround(3.0 * N));
  const std::int64_t block = (three_n + K - 1) / K;
  // Smallest e with block * 2^e >= 3N, i.e. ceil(log2(3N / block)).
  int label_bits = 0;
  while ((block << label_bits) < three_n) ++label_bits;
  const double rounds = repetitions(p_error, 1.0 - (1.0 - std::exp(-0.5)) / 9.0);
  return rounds * (8.0 * std::sqrt(2.0 * static_cast<double>(block)) + 4.0 * label_bits);
}

double classical_limit(int K, double N, double p_error) {
  if (K < 2) throw ParameterError("classical protocol needs at least two users");
  check_inputs(N, p_error);
  if (p_error > 0.25) throw ParameterError("the classical limit needs p_error <= 1/4");
  return limit_coefficient(p_error) * std::sqrt(N) / (2.0 * std::sqrt(K * std::log(2.0))) - 1.0 / K;
}

double energy_limit_photons(int K, double N, double p_error, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0, 1]");
  return (classical_limit(K, N, p_error) + 1.0 / K) / eta;
}

bool claim_c1_check(double Na, double Nb, double Ma, double Mb, double p_error) {
  if (!(p_error > 0.0 && p_error < 0.25)) throw ParameterError("p_error must lie in (0, 1/4)");
  const double c = 8.0 * std::log(2.0) / std::pow(limit_coefficient(p_error), 2);
  const bool alice = Na <= Ma * std::ceil(c * (1.0 + Mb));
  const bool bob = Nb <= Mb * std::ceil(c * (1.0 + Ma));
  return alice && bob;
}

bool limit_condition_holds(int K, double N, double M, double p_error) {
  if (K < 2) throw ParameterError("classical protocol needs at least two users");
  const double c = 4.0 * std::log(2.0) / std::pow(limit_coefficient(p_error), 2);
  const double s = M * std::sqrt(static_cast<double>(K)) + 1.0 / std::sqrt(static_cast<double>(K));
  return N <= c * s * s;
}

ClassicalCosts classical_costs(int K, double N, double p_error, double eta) {
  return ClassicalCosts{best_two_user(N, p_error), best_k_user(K, N, p_error), classical_limit(K, N, p_error),
                        energy_limit_photons(K, N, p_error, eta)};
}

}  // namespace qfp
