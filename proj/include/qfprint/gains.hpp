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

#include <cstddef>
#include <span>
#include <vector>

#include "qfprint/circuits.hpp"
#include "qfprint/noise.hpp"

namespace qfp {

// Input phase labels (+1 / -1), one per user.
struct PhasePattern {
  std::vector<int> labels;

  int dim() const { return static_cast<int>(labels.size()); }
  // Size of the minority group; 0 for the all-equal pattern.
  int minority() const;

  static PhasePattern equal(int K);
  static PhasePattern single_flip(int K, int position);
  static PhasePattern from_labels(std::vector<int> labels);
};

struct PatternGains {
  PhasePattern pattern;
  double g_d_first = 0.0;
  double g_d_last = 0.0;
};

// Gains of one transfer matrix. "first" is the group of all outputs except
// last_label; "last" is the single output last_label.
struct GainSet {
  int dim = 0;
  int last_label = 0;
  double g_e_first = 0.0;
  double g_d_first_min = 0.0;
  double g_e_last = 0.0;
  double g_d_last_max = 0.0;
  // Flip positions attaining the extremes; -1 for averaged gain sets.
  int worst_first = -1;
  int worst_last = -1;
  // Single-flip patterns in flip order, then any extra patterns requested.
  std::vector<PatternGains> per_pattern;
};

struct Visibilities {
  double first = 0.0;
  double last = 0.0;
};

Eigen::VectorXd output_photon_numbers(const TransferMatrix &T, const PhasePattern &pattern, double mu_in);

GainSet gain_set(const TransferMatrix &T, int last_label, const std::vector<PhasePattern> &extra = {});

// Gains of the closed-form ideal circuit.
GainSet ideal_gains(int K);

Visibilities visibilities(const GainSet &gains, int K);

std::vector<PatternGains> worst_case_pattern_scan(const TransferMatrix &T, int last_label, int max_L,
                                                  std::size_t pattern_budget = 1u << 22);

// Sum with pairwise splitting so the rounding error grows like log(n).
double pairwise_sum(std::span<const double> values);

struct BatchGains {
  GainSet mean;
  Visibilities mean_visibility;
  Visibilities sd_visibility;
  std::vector<Visibilities> per_realization;
};

// Averages gains first and derives visibilities from the averages; the
// per-realization visibilities feed the standard deviations.
BatchGains summarize_gains(const std::vector<GainSet> &gains);

BatchGains batch_gains(const RealizationBatch &batch, int last_label);

}  // namespace qfp
