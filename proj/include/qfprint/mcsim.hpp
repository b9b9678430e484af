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
#include <string>
#include <vector>

#include "qfprint/bounds.hpp"

namespace qfp {

enum class Scenario { all_equal, worst_different };

std::string scenario_name(Scenario scenario);

struct SimConfig {
  int trials = 1000;
  Scenario scenario = Scenario::all_equal;
  Strategy strategy = Strategy::first_k_minus_1;
  ProtocolParams params;
  TransferMatrix transfer;
  // Output that carries the sum of the inputs.
  int last_label = 0;
  // Input flipped in the differing slots.
  int worst_flip = 0;
  // Mean photon number per user over the whole train, before eta.
  double alpha2 = 0.0;
  double threshold_r = 0.0;
  std::uint64_t seed = 0;
};

struct ClickSummary {
  double mean = 0.0;
  double sd = 0.0;
};

struct SimOutcome {
  int trials = 0;
  int errors = 0;
  double error_rate = 0.0;
  double wilson_upper_95 = 0.0;
  // Per output port, click totals over the M slots.
  std::vector<ClickSummary> click_histogram;
};

// One-sided 95% Wilson score upper bound on a binomial rate.
double wilson_upper_95(int errors, int trials);

// Number of slots whose inputs differ in the worst different case.
std::int64_t differing_slots(std::int64_t M, double delta);

SimOutcome simulate(const SimConfig &config);

struct ScenarioReport {
  Scenario scenario = Scenario::all_equal;
  SimOutcome outcome;
  bool pass = false;
};

struct VerifyOptions {
  int trials = 0;  // 0 picks min(5000, 50 / p_error)
  std::uint64_t seed = 0;
  // Sabotage knobs: scale the photon number while keeping the bound's threshold,
  // or scale the threshold.
  double alpha2_scale = 1.0;
  double threshold_scale = 1.0;
};

struct VerifyReport {
  Strategy strategy = Strategy::first_k_minus_1;
  BoundResult bound;
  std::vector<ScenarioReport> scenarios;
  bool pass = false;
};

int default_trials(double p_error);

VerifyReport verify_bound(Strategy strategy, const ProtocolParams &params, const GainSet &gains,
                          const TransferMatrix &transfer, const VerifyOptions &options = {});

}  // namespace qfp
