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
#include <optional>
#include <string>
#include <utility>

#include "qfprint/gains.hpp"

namespace qfp {

// Error-correcting code seen through its distance fraction delta and its
// expansion c = M / N.
struct EccParams {
  double delta = 0.78;
  double c = 4.17;

  // c from the binary-entropy rate relation.
  static EccParams from_delta(double delta);
  void validate() const;
};

double ecc_expansion(double delta);

struct ProtocolParams {
  int K = 2;
  double N = 1e6;
  EccParams ecc;
  double p_error = 1e-5;
  double eta = 0.5;
  double p_dark = 0.0;
  double epsilon = 1e-6;

  // Code length round(c * N), at least 1.
  std::int64_t M() const;
  void validate() const;
};

enum class Strategy { first_k_minus_1, last_only, ideal, two_user_xu, naive };

std::string strategy_name(Strategy strategy);
Strategy parse_strategy(const std::string &name);

struct BoundResult {
  Strategy strategy = Strategy::ideal;
  int K = 2;
  std::int64_t M = 1;
  // Mean photon number sent per user over the whole pulse train.
  double alpha2 = 0.0;
  double threshold_r = 0.0;
  bool feasible = true;
  bool dominant_dark_term = false;
  // K * alpha2 / M and whether it stays below 0.1.
  double photons_per_slot = 0.0;
  bool within_validity = true;
  double q_qubits = 0.0;
  double delta_cap = 0.0;
};

struct QubitCost {
  double q_qubits = 0.0;
  double delta_cap = 0.0;
};

// Log of the left side minus log of the right side of the qubit-count
// accuracy condition; nonpositive means Delta is admissible.
double qubit_condition(double alpha2, double delta, double epsilon);

QubitCost qubit_cost(double alpha2, double M, double epsilon);

double ideal_alpha2(int K, const EccParams &ecc, double p_error);

// Lossless, noiseless, dark-count free reference (eta = 1).
BoundResult ideal_bound(const ProtocolParams &params);

BoundResult bound_first_detectors(const ProtocolParams &params, const GainSet &gains);
BoundResult bound_last_detector(const ProtocolParams &params, const GainSet &gains);
BoundResult strategy_bound(Strategy strategy, const ProtocolParams &params, const GainSet &gains);

enum class StepSearch {
  // Visit every step from zero, as the iteration is usually written.
  linear,
  // Gallop then bisect over step indices; same stopping point when the stop
  // condition is monotone in the photon number.
  bracketed,
};

struct TwoUserOptions {
  double step = 1.0;
  // Largest detected photon number tried before giving up.
  double alpha2_cap = 1e9;
  StepSearch search = StepSearch::bracketed;
  // Separate error targets for the equal and the different test; both
  // default to params.p_error.
  std::optional<double> p_error_equal;
  std::optional<double> p_error_different;
};

struct TwoUserThresholds {
  std::int64_t r_equal = 0;
  std::int64_t r_different = 0;
};

// Thresholds at one detected photon number for a two-user run.
TwoUserThresholds two_user_thresholds(const ProtocolParams &params, double v, double detected_alpha2,
                                      double p_equal, double p_different);

BoundResult algorithm_2_1(const ProtocolParams &params, double v, const TwoUserOptions &options = {});

// Per-link error target of the chained two-user protocol.
double naive_link_error(int K, double p_error);
std::pair<double, double> naive_asymmetric_probs(int K, double p_error);

BoundResult naive_protocol(const ProtocolParams &params, double v, const TwoUserOptions &options = {});
BoundResult naive_asymmetric_protocol(const ProtocolParams &params, double v, TwoUserOptions options = {});

double eta_scaling(double alpha2_at_half, double eta);

double max_users_energy_advantage(const EccParams &ecc, double v_K, double p_error, double mu_dark);

}  // namespace qfp
