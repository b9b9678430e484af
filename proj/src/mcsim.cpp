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

#include "qfprint/mcsim.hpp"

#include <cmath>
#include <random>

#include "qfprint/errors.hpp"
#include "qfprint/noise.hpp"

namespace qfp {

namespace {

constexpr double kZ95 = 1.6448536269514722;

// Click probability per slot for each output under one input pattern.
Eigen::VectorXd click_probabilities(const TransferMatrix &T, const PhasePattern &pattern, double mu_in, double eta,
                                    double p_dark) {
  Eigen::VectorXd p(T.dim());
  if (mu_in > 0.0) {
    const Eigen::VectorXd mu = output_photon_numbers(T, pattern, mu_in);
    for (int k = 0; k < T.dim(); ++k) p(k) = 1.0 - std::exp(-eta * mu(k)) * (1.0 - p_dark);
  } else {
    p.setConstant(p_dark);
  }
  return p;
}

std::int64_t draw(std::mt19937_64 &rng, std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::int64_t> bin(n, p);
  return bin(rng);
}

}  // namespace

std::string scenario_name(Scenario s) { return s == Scenario::all_equal ? "all-equal" : "worst-different"; }

double wilson_upper_95(int errors, int trials) {
  if (trials <= 0) throw ParameterError("Wilson bound needs at least one trial");
  const double n = trials;
  const double p = errors / n;
  const double z2 = kZ95 * kZ95;
  const double centre = p + z2 / (2.0 * n);
  const double spread = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (centre + spread) / (1.0 + z2 / n));
}

std::int64_t differing_slots(std::int64_t M, double delta) {
  // The small offset keeps exact products such as 0.22 * 1e4 from rounding down.
  return static_cast<std::int64_t>(std::floor((1.0 - delta) * static_cast<double>(M) + 1e-9));
}

SimOutcome simulate(const SimConfig &c) {
  c.params.validate();
  const int K = c.transfer.dim();
  if (K != c.params.K) throw ParameterError("transfer matrix dimension does not match K");
  if (c.trials < 1) throw ParameterError("simulation needs at least one trial");
  if (c.last_label < 0 || c.last_label >= K) throw ParameterError("last_label outside the output range");
  if (c.worst_flip < 0 || c.worst_flip >= K) throw ParameterError("flip position outside the input range");
  if (c.strategy != Strategy::first_k_minus_1 && c.strategy != Strategy::last_only) {
    throw ParameterError("simulation supports the first and last referee strategies");
  }
  if (!(c.alpha2 >= 0.0)) throw ParameterError("alpha2 must be nonnegative");
  const std::int64_t M = c.params.M();
  const double load = K * c.alpha2 / static_cast<double>(M);
  if (!(load < 0.1)) {
    throw ValidityError("K * alpha2 / M = " + std::to_string(load) + " is outside the small-photon regime (< 0.1)");
  }

  const double mu_in = c.alpha2 / static_cast<double>(M);
  const Eigen::VectorXd p_equal =
      click_probabilities(c.transfer, PhasePattern::equal(K), mu_in, c.params.eta, c.params.p_dark);
  const Eigen::VectorXd p_diff = click_probabilities(c.transfer, PhasePattern::single_flip(K, c.worst_flip), mu_in,
                                                     c.params.eta, c.params.p_dark);
  const std::int64_t n_diff = c.scenario == Scenario::worst_different ? differing_slots(M, c.params.ecc.delta) : 0;
  const std::int64_t n_equal = M - n_diff;

  SimOutcome out;
  out.trials = c.trials;
  std::vector<double> sum(K, 0.0), sum_sq(K, 0.0);
  const std::uint64_t tag = c.scenario == Scenario::all_equal ? 1 : 2;
  for (int trial = 0; trial < c.trials; ++trial) {
    std::mt19937_64 rng = stream_rng(c.seed, static_cast<std::uint64_t>(trial), tag);
    std::int64_t first = 0, last = 0;
    for (int k = 0; k < K; ++k) {
      const std::int64_t clicks = draw(rng, n_equal, p_equal(k)) + draw(rng, n_diff, p_diff(k));
      (k == c.last_label ? last : first) += clicks;
      sum[k] += static_cast<double>(clicks);
      sum_sq[k] += static_cast<double>(clicks) * static_cast<double>(clicks);
    }
    const bool says_different = c.strategy == Strategy::first_k_minus_1
                                    ? static_cast<double>(first) > c.threshold_r
                                    : static_cast<double>(last) <= c.threshold_r;
    const bool is_different = c.scenario == Scenario::worst_different;
    if (says_different != is_different) ++out.errors;
  }
  out.error_rate = static_cast<double>(out.errors) / c.trials;
  out.wilson_upper_95 = wilson_upper_95(out.errors, c.trials);
  for (int k = 0; k < K; ++k) {
    const double mean = sum[k] / c.trials;
    const double var = c.trials > 1 ? std::max(0.0, (sum_sq[k] - c.trials * mean * mean) / (c.trials - 1)) : 0.0;
    out.click_histogram.push_back(ClickSummary{mean, std::sqrt(var)});
  }
  return out;
}

int default_trials(double p_error) {
  if (!(p_error > 0.0)) throw ParameterError("p_error must be positive");
  return static_cast<int>(std::min(5000.0, std::ceil(50.0 / p_error)));
}

VerifyReport verify_bound(Strategy strategy, const ProtocolParams &params, const GainSet &gains,
                          const TransferMatrix &transfer, const VerifyOptions &options) {
  VerifyReport report;
  report.strategy = strategy;
  report.bound = strategy_bound(strategy, params, gains);

  SimConfig c;
  c.trials = options.trials > 0 ? options.trials : default_trials(params.p_error);
  c.strategy = strategy;
  c.params = params;
  c.transfer = transfer;
  c.last_label = gains.last_label;
  c.worst_flip = strategy == Strategy::first_k_minus_1 ? gains.worst_first : gains.worst_last;
  if (c.worst_flip < 0) throw ParameterError("gain set carries no worst-case pattern");
  c.alpha2 = report.bound.alpha2 * options.alpha2_scale;
  c.threshold_r = report.bound.threshold_r * options.threshold_scale;
  c.seed = options.seed;

  report.pass = true;
  for (Scenario s : {Scenario::all_equal, Scenario::worst_different}) {
    c.scenario = s;
    ScenarioReport sr{s, simulate(c), false};
    sr.pass = sr.outcome.wilson_upper_95 <= params.p_error;
    report.pass = report.pass && sr.pass;
    report.scenarios.push_back(std::move(sr));
  }
  return report;
}

}  // namespace qfp
