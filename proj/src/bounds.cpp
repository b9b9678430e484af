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

#include "qfprint/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "qfprint/binomial.hpp"
#include "qfprint/errors.hpp"

namespace qfp {

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

// Fills the derived fields shared by every bound.
BoundResult finish(BoundResult r, const ProtocolParams &params) {
  r.M = params.M();
  r.photons_per_slot = r.K * r.alpha2 / static_cast<double>(r.M);
  r.within_validity = r.photons_per_slot < 0.1;
  const QubitCost qc = qubit_cost(r.alpha2, static_cast<double>(r.M), params.epsilon);
  r.q_qubits = qc.q_qubits;
  r.delta_cap = qc.delta_cap;
  if (r.M >= 2 && r.q_qubits < 0.5 * r.alpha2 * std::log2(static_cast<double>(r.M))) {
    throw std::logic_error("qubit count fell below half of alpha2 * log2(M)");
  }
  return r;
}

struct ChernoffTerms {
  double q;
  double margin;
  double dark_detectors;
};

BoundResult chernoff_bound(Strategy strategy, const ProtocolParams &params, const ChernoffTerms &t,
                           double light_weight) {
  const double delta = params.ecc.delta;
  const double ln_p = std::log(1.0 / params.p_error);
  const double a = (1.0 - delta) * (1.0 - delta) * t.margin * t.margin;
  const double M = static_cast<double>(params.M());
  const double q_term = 4.0 * t.q * t.q;
  const double dark_term = 2.0 * a * t.dark_detectors * M * params.p_dark * ln_p;
  const double detected = (4.0 * t.q + 2.0 * std::sqrt(q_term + dark_term)) / a;

  BoundResult r;
  r.strategy = strategy;
  r.K = params.K;
  r.alpha2 = detected / params.eta;
  // The threshold sits halfway between the two expected click totals, which
  // scale with the detected photon number.
  r.threshold_r = 0.5 * detected * light_weight + t.dark_detectors * M * params.p_dark;
  r.dominant_dark_term = dark_term > 10.0 * q_term;
  return finish(r, params);
}

}  // namespace

double ecc_expansion(double delta) {
  if (!in_open_unit(delta)) throw ParameterError("ECC distance parameter must lie in (0, 1)");
  return 1.0 / (1.0 + delta * std::log2(delta) + (1.0 - delta) * std::log2(1.0 - delta));
}

EccParams EccParams::from_delta(double delta) { return EccParams{delta, ecc_expansion(delta)}; }

void EccParams::validate() const {
  if (!in_open_unit(delta)) throw ParameterError("ECC distance parameter must lie in (0, 1)");
  if (!(c > 1.0)) throw ParameterError("ECC expansion c must exceed 1");
}

std::int64_t ProtocolParams::M() const {
  return std::max<std::int64_t>(1, std::llround(ecc.c * N));
}

void ProtocolParams::validate() const {
  if (K < 2) throw ParameterError("protocol needs at least two users");
  if (!(N >= 1.0)) throw ParameterError("message length N must be at least 1");
  ecc.validate();
  if (!in_open_unit(p_error)) throw ParameterError("p_error must lie in (0, 1)");
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0, 1]");
  if (!(p_dark >= 0.0 && p_dark < 1.0)) throw ParameterError("p_dark must lie in [0, 1)");
  if (!in_open_unit(epsilon)) throw ParameterError("epsilon must lie in (0, 1)");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::first_k_minus_1: return "first";
    case Strategy::last_only: return "last";
    case Strategy::ideal: return "ideal";
    case Strategy::two_user_xu: return "two-user";
    case Strategy::naive: return "naive";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string &name) {
  for (Strategy s : {Strategy::first_k_minus_1, Strategy::last_only, Strategy::ideal, Strategy::two_user_xu,
                     Strategy::naive}) {
    if (strategy_name(s) == name) return s;
  }
  throw ParameterError("unknown strategy '" + name + "' (expected first, last, ideal, two-user or naive)");
}

double qubit_condition(double alpha2, double delta, double epsilon) {
  const double s = alpha2 + delta;
  return std::log(2.0) - alpha2 + s * (1.0 + std::log(alpha2) - std::log(s)) - 2.0 * std::log(epsilon / 2.0);
}

QubitCost qubit_cost(double alpha2, double M, double epsilon) {
  if (!in_open_unit(epsilon)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(alpha2 > 0.0)) throw ParameterError("alpha2 must be positive");
  if (!(M >= 1.0)) throw ParameterError("M must be at least 1");
  // The condition is decreasing in Delta and positive at Delta = 0.
  double lo = 0.0, hi = 50.0 * (1.0 + alpha2);
  while (qubit_condition(alpha2, hi, epsilon) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (qubit_condition(alpha2, mid, epsilon) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = alpha2 + hi;
  return QubitCost{s * std::log2(M + s - 1.0) + std::log2(2.0 * hi), hi};
}

double ideal_alpha2(int K, const EccParams &ecc, double p_error) {
  if (K < 2) throw ParameterError("protocol needs at least two users");
  ecc.validate();
  if (!in_open_unit(p_error)) throw ParameterError("p_error must lie in (0, 1)");
  return K / (4.0 * (1.0 - ecc.delta) * (K - 1)) * std::log(1.0 / p_error);
}

BoundResult ideal_bound(const ProtocolParams &params) {
  params.validate();
  BoundResult r;
  r.strategy = Strategy::ideal;
  r.K = params.K;
  r.alpha2 = ideal_alpha2(params.K, params.ecc, params.p_error);
  return finish(r, params);
}

BoundResult bound_first_detectors(const ProtocolParams &params, const GainSet &gains) {
  params.validate();
  const double margin = gains.g_d_first_min - gains.g_e_first;
  if (!(margin > 0.0)) {
    throw FeasibilityError("first-detector strategy needs min g_D > g_E, got g_D = " +
                           std::to_string(gains.g_d_first_min) + ", g_E = " + std::to_string(gains.g_e_first));
  }
  const double delta = params.ecc.delta;
  const double ln_p = std::log(1.0 / params.p_error);
  const ChernoffTerms t{(delta * gains.g_e_first + (1.0 - delta) * gains.g_d_first_min) * ln_p, margin,
                        static_cast<double>(params.K - 1)};
  return chernoff_bound(Strategy::first_k_minus_1, params, t,
                        (1.0 + delta) * gains.g_e_first + (1.0 - delta) * gains.g_d_first_min);
}

BoundResult bound_last_detector(const ProtocolParams &params, const GainSet &gains) {
  params.validate();
  const double margin = gains.g_e_last - gains.g_d_last_max;
  if (!(margin > 0.0)) {
    throw FeasibilityError("last-detector strategy needs g_E > max g_D, got g_E = " +
                           std::to_string(gains.g_e_last) + ", g_D = " + std::to_string(gains.g_d_last_max));
  }
  const double delta = params.ecc.delta;
  const ChernoffTerms t{gains.g_e_last * std::log(1.0 / params.p_error), margin, 1.0};
  return chernoff_bound(Strategy::last_only, params, t,
                        (1.0 + delta) * gains.g_e_last + (1.0 - delta) * gains.g_d_last_max);
}

BoundResult strategy_bound(Strategy strategy, const ProtocolParams &params, const GainSet &gains) {
  switch (strategy) {
    case Strategy::first_k_minus_1: return bound_first_detectors(params, gains);
    case Strategy::last_only: return bound_last_detector(params, gains);
    case Strategy::ideal: return ideal_bound(params);
    default: throw ParameterError("strategy '" + strategy_name(strategy) + "' has no gain-based bound");
  }
}

TwoUserThresholds two_user_thresholds(const ProtocolParams &params, double v, double detected_alpha2,
                                      double p_equal, double p_different) {
  const std::int64_t M = params.M();
  const double Md = static_cast<double>(M);
  const double p_e = std::min(1.0, -std::expm1(-2.0 * (1.0 - v) * detected_alpha2 / Md) + params.p_dark);
  const double p_d = std::min(1.0, -std::expm1(-2.0 * v * detected_alpha2 / Md) + params.p_dark);
  const double delta = params.ecc.delta;
  TwoUserThresholds t;
  t.r_equal = binomial_inv_cdf(1.0 - p_equal, M, p_e);
  t.r_different = binomial_inv_cdf(p_different, M, (1.0 - delta) * p_d + delta * p_e) - 1;
  return t;
}

BoundResult algorithm_2_1(const ProtocolParams &params, double v, const TwoUserOptions &options) {
  params.validate();
  if (params.K != 2) throw ParameterError("the two-user iteration needs K = 2");
  if (!(v > 0.5 && v <= 1.0)) throw ParameterError("visibility must lie in (1/2, 1]");
  if (!(options.step > 0.0)) throw ParameterError("step must be positive");
  const double p_equal = options.p_error_equal.value_or(params.p_error);
  const double p_different = options.p_error_different.value_or(params.p_error);
  if (!in_open_unit(p_equal) || !in_open_unit(p_different)) throw ParameterError("error targets must lie in (0, 1)");

  auto thresholds = [&](std::int64_t n) {
    return two_user_thresholds(params, v, static_cast<double>(n) * options.step, p_equal, p_different);
  };
  auto done = [&](std::int64_t n) {
    const TwoUserThresholds t = thresholds(n);
    return t.r_different >= t.r_equal;
  };
  const auto cap = static_cast<std::int64_t>(std::floor(options.alpha2_cap / options.step));
  auto diverge = [&]() {
    const TwoUserThresholds t = thresholds(cap);
    throw DivergenceError("two-user iteration did not converge below the photon-number cap",
                          static_cast<double>(t.r_equal - t.r_different));
  };

  std::int64_t n = 0;
  if (options.search == StepSearch::linear) {
    while (!done(n)) {
      if (++n > cap) diverge();
    }
  } else if (!done(0)) {
    std::int64_t lo = 0, hi = 1;
    while (!done(hi)) {
      if (hi >= cap) diverge();
      lo = hi;
      hi = std::min(cap, 2 * hi);
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (done(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    n = hi;
  }

  const double detected = static_cast<double>(n) * options.step;
  BoundResult r;
  r.strategy = Strategy::two_user_xu;
  r.K = 2;
  r.alpha2 = detected / params.eta;
  r.threshold_r = static_cast<double>(thresholds(n).r_different);
  if (!(r.alpha2 > 0.0)) throw DivergenceError("two-user iteration stopped at zero photons", 0.0);
  return finish(r, params);
}

double naive_link_error(int K, double p_error) {
  if (K < 2) throw ParameterError("protocol needs at least two users");
  if (!in_open_unit(p_error)) throw ParameterError("p_error must lie in (0, 1)");
  return -std::expm1(std::log1p(-p_error) / (K - 1));
}

std::pair<double, double> naive_asymmetric_probs(int K, double p_error) {
  const double p_equal = naive_link_error(K, p_error);
  const double p_different = p_error / std::exp(std::log1p(-p_error) * (K - 2) / (K - 1));
  return {p_equal, p_different};
}

namespace {

BoundResult chain_two_user(const ProtocolParams &params, double v, const TwoUserOptions &options) {
  ProtocolParams link = params;
  link.K = 2;
  BoundResult r = algorithm_2_1(link, v, options);
  // Every user except the two at the chain ends sends its train twice.
  r.strategy = Strategy::naive;
  r.K = params.K;
  r.alpha2 *= 2.0 * (params.K - 1) / params.K;
  return finish(r, params);
}

}  // namespace

BoundResult naive_protocol(const ProtocolParams &params, double v, const TwoUserOptions &options) {
  params.validate();
  ProtocolParams link = params;
  link.p_error = naive_link_error(params.K, params.p_error);
  return chain_two_user(link, v, options);
}

BoundResult naive_asymmetric_protocol(const ProtocolParams &params, double v, TwoUserOptions options) {
  params.validate();
  const auto [p_equal, p_different] = naive_asymmetric_probs(params.K, params.p_error);
  options.p_error_equal = p_equal;
  options.p_error_different = p_different;
  return chain_two_user(params, v, options);
}

double eta_scaling(double alpha2_at_half, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0, 1]");
  return alpha2_at_half / (2.0 * eta);
}

double max_users_energy_advantage(const EccParams &ecc, double v_K, double p_error, double mu_dark) {
  ecc.validate();
  if (!(v_K >= 0.5 && v_K <= 1.0)) throw ParameterError("visibility must lie in [1/2, 1]");
  if (!in_open_unit(p_error)) throw ParameterError("p_error must lie in (0, 1)");
  if (!(mu_dark > 0.0)) throw ParameterError("dark count probability must be positive");
  const double one_minus_delta = 1.0 - ecc.delta;
  const double contrast = 2.0 * v_K - 1.0;
  const double classical = 1.0 - 2.0 * std::sqrt(p_error);
  return one_minus_delta * one_minus_delta * contrast * contrast * classical * classical /
         (2.0 * mu_dark * ecc.c * std::log(2.0 + 1.0 / p_error));
}

}  // namespace qfp
