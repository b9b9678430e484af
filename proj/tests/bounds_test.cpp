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
#include <random>

#include "gtest/gtest.h"

#include "qfprint/binomial.hpp"
#include "qfprint/errors.hpp"

using namespace qfp;

namespace {

ProtocolParams clean(int K, double N = 1e6) {
  ProtocolParams p;
  p.K = K;
  p.N = N;
  p.eta = 1.0;
  p.p_dark = 0.0;
  return p;
}

GainSet gains_with_visibility(int K, double v) {
  // Shrinks the ideal gain gaps symmetrically to reach visibility v.
  GainSet g = ideal_gains(K);
  const double gap = 4.0 * (K - 1) / K * (2.0 * v - 1.0);
  g.g_e_first = 0.5 * (4.0 * (K - 1) / K - gap);
  g.g_d_first_min = g.g_e_first + gap;
  g.g_d_last_max = g.g_e_last - gap;
  return g;
}

double direct_cdf(std::int64_t k, std::int64_t n, double q) {
  double s = 0.0;
  for (std::int64_t i = 0; i <= k; ++i) {
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(q) +
                  (n - i) * std::log1p(-q));
  }
  return s;
}

}  // namespace

TEST(ecc, expansion_from_entropy) {
  EXPECT_NEAR(ecc_expansion(0.78), 4.169576735222051, 1e-12);
  EXPECT_NEAR(EccParams::from_delta(0.78).c, 4.17, 5e-3);
  EXPECT_THROW(ecc_expansion(1.0), ParameterError);
  EXPECT_THROW((EccParams{0.5, 0.9}.validate()), ParameterError);
}

TEST(protocol_params, code_length_rounds) {
  ProtocolParams p;
  p.N = 1e6;
  EXPECT_EQ(p.M(), 4170000);
  p.N = 1.0;
  EXPECT_EQ(p.M(), 4);
  p.ecc.c = 1.5;
  EXPECT_EQ(p.M(), 2);
  p.N = 0.5;
  EXPECT_THROW(p.validate(), ParameterError);
  p = ProtocolParams{};
  p.eta = 0.0;
  EXPECT_THROW(p.validate(), ParameterError);
}

TEST(ideal_alpha2, two_users_match_two_party_formula) {
  for (double delta : {0.5, 0.78}) {
    for (double p : {1e-3, 1e-5}) {
      const double two_party = std::log(1.0 / p) / (2.0 * (1.0 - delta));
      EXPECT_NEAR(ideal_alpha2(2, EccParams{delta, 4.17}, p), two_party, 4e-15 * two_party);
    }
  }
  EXPECT_NEAR(ideal_alpha2(2, EccParams{}, 1e-5), 26.166, 1e-3);
  EXPECT_NEAR(ideal_alpha2(4, EccParams{}, 1e-5), 17.444, 1e-3);
}

TEST(bound_first_detectors, ideal_gains_dark_free) {
  for (int K : {2, 3, 7}) {
    const ProtocolParams p = clean(K);
    const double q = (1.0 - 0.78) * 4.0 * (K - 1) / K * std::log(1e5);
    const double a = 0.22 * 0.22 * std::pow(4.0 * (K - 1) / K, 2);
    const BoundResult b = bound_first_detectors(p, ideal_gains(K));
    EXPECT_NEAR(b.alpha2, 8.0 * q / a, 1e-10 * b.alpha2) << K;
    EXPECT_GT(b.alpha2, ideal_alpha2(K, p.ecc, p.p_error));
    EXPECT_FALSE(b.dominant_dark_term);
    EXPECT_EQ(b.strategy, Strategy::first_k_minus_1);
  }
}

TEST(bound_last_detector, ideal_gains_dark_free) {
  const BoundResult b = bound_last_detector(clean(4), ideal_gains(4));
  const double want = 8.0 * 4.0 * std::log(1e5) / (0.22 * 0.22 * 9.0);
  EXPECT_NEAR(b.alpha2, want, 1e-10 * want);
  // Halfway between equal (K) and worst different ((K-2)^2/K) click means.
  EXPECT_NEAR(b.threshold_r, 0.5 * want * (1.78 * 4.0 + 0.22 * 1.0), 1e-9);
}

TEST(bounds, feasibility_boundaries) {
  GainSet g = ideal_gains(3);
  g.g_e_first = g.g_d_first_min;
  EXPECT_THROW(bound_first_detectors(clean(3), g), FeasibilityError);
  g = ideal_gains(3);
  g.g_d_last_max = g.g_e_last;
  EXPECT_THROW(bound_last_detector(clean(3), g), FeasibilityError);
  EXPECT_THROW(strategy_bound(Strategy::naive, clean(3), g), ParameterError);
}

TEST(bounds, dark_term_raises_photon_number) {
  ProtocolParams p = clean(7, 1e10);
  const GainSet g = gains_with_visibility(7, 0.95);
  const BoundResult quiet = bound_last_detector(p, g);
  p.p_dark = 1e-9;
  const BoundResult dark = bound_last_detector(p, g);
  EXPECT_GT(dark.alpha2, quiet.alpha2);
  EXPECT_GT(dark.threshold_r, quiet.threshold_r);
}

TEST(bounds, dominance_flag_matches_addends) {
  const GainSet g = gains_with_visibility(5, 0.95);
  for (double N : {1e2, 1e4, 1e6, 1e8, 1e10, 1e12}) {
    ProtocolParams p = clean(5, N);
    p.p_dark = 1e-9;
    p.eta = 0.5;
    const double ln_p = std::log(1e5);
    const double a = 0.22 * 0.22 * std::pow(g.g_d_first_min - g.g_e_first, 2);
    const double q = (0.78 * g.g_e_first + 0.22 * g.g_d_first_min) * ln_p;
    const double dark = 2.0 * a * 4.0 * static_cast<double>(p.M()) * 1e-9 * ln_p;
    EXPECT_EQ(bound_first_detectors(p, g).dominant_dark_term, dark > 10.0 * 4.0 * q * q) << N;
    const double a_last = 0.22 * 0.22 * std::pow(g.g_e_last - g.g_d_last_max, 2);
    const double q_last = g.g_e_last * ln_p;
    const double dark_last = 2.0 * a_last * static_cast<double>(p.M()) * 1e-9 * ln_p;
    EXPECT_EQ(bound_last_detector(p, g).dominant_dark_term, dark_last > 10.0 * 4.0 * q_last * q_last) << N;
  }
}

TEST(bounds, eta_enters_as_prefactor) {
  ProtocolParams p = clean(6, 1e9);
  p.p_dark = 1e-9;
  const GainSet g = gains_with_visibility(6, 0.93);
  p.eta = 0.5;
  const double half = bound_last_detector(p, g).alpha2;
  for (double eta : {1.0, 0.3, 0.05}) {
    p.eta = eta;
    EXPECT_NEAR(bound_last_detector(p, g).alpha2, eta_scaling(half, eta), 1e-12 * half);
  }
  EXPECT_DOUBLE_EQ(eta_scaling(10.0, 0.5), 10.0);
  EXPECT_DOUBLE_EQ(eta_scaling(10.0, 0.25), 20.0);
  EXPECT_THROW(eta_scaling(1.0, 0.0), ParameterError);
}

TEST(bounds, monotone_in_margin_length_dark_and_error) {
  for (Strategy s : {Strategy::first_k_minus_1, Strategy::last_only}) {
    ProtocolParams p = clean(5, 1e8);
    p.p_dark = 1e-10;
    double prev = INFINITY;
    for (double v : {0.7, 0.8, 0.9, 0.95, 0.99, 1.0}) {
      const double a = strategy_bound(s, p, gains_with_visibility(5, v)).alpha2;
      EXPECT_LE(a, prev);
      prev = a;
    }
    const GainSet g = gains_with_visibility(5, 0.95);
    prev = 0.0;
    for (double N : {1e2, 1e4, 1e6, 1e8, 1e10}) {
      p.N = N;
      const double a = strategy_bound(s, p, g).alpha2;
      EXPECT_GE(a, prev);
      prev = a;
    }
    prev = 0.0;
    for (double pd : {0.0, 1e-12, 1e-10, 1e-8}) {
      p.p_dark = pd;
      const double a = strategy_bound(s, p, g).alpha2;
      EXPECT_GE(a, prev);
      prev = a;
    }
    prev = 0.0;
    for (double pe : {1e-1, 1e-3, 1e-5, 1e-9}) {
      p.p_error = pe;
      const double a = strategy_bound(s, p, g).alpha2;
      EXPECT_GE(a, prev);
      prev = a;
    }
  }
}

TEST(bounds, validity_flag) {
  ProtocolParams p = clean(4, 10);
  const BoundResult b = bound_first_detectors(p, ideal_gains(4));
  EXPECT_DOUBLE_EQ(b.photons_per_slot, 4.0 * b.alpha2 / static_cast<double>(b.M));
  EXPECT_FALSE(b.within_validity);
  p.N = 1e6;
  EXPECT_TRUE(bound_first_detectors(p, ideal_gains(4)).within_validity);
}

TEST(qubit_cost, reference_point) {
  const QubitCost c = qubit_cost(26.166, 4.17e6, 1e-6);
  EXPECT_NEAR(c.delta_cap, 48.4221, 1e-3);
  EXPECT_NEAR(c.q_qubits, 1646.91, 1e-2);
  EXPECT_NEAR(c.q_qubits / (26.166 * std::log2(4.17e6)), 2.862, 1e-3);
}

TEST(qubit_cost, minimal_delta) {
  for (double a : {0.5, 26.166, 300.0, 1e4}) {
    for (double eps : {1e-3, 1e-6}) {
      const QubitCost c = qubit_cost(a, 1e6, eps);
      EXPECT_LE(qubit_condition(a, c.delta_cap, eps), 1e-9 * (a + c.delta_cap));
      EXPECT_GT(qubit_condition(a, c.delta_cap * (1.0 - 1e-3), eps), 0.0);
    }
  }
}

TEST(qubit_cost, simple_approximation_band) {
  // The factor-2 band only holds once the photon number is large.
  for (double a : {100.0, 1000.0, 1e4}) {
    for (double M : {4.17e6, 4.17e9}) {
      const double ratio = qubit_cost(a, M, 1e-6).q_qubits / (a * std::log2(M));
      EXPECT_GT(ratio, 0.5);
      EXPECT_LT(ratio, 2.0) << a << " " << M;
    }
  }
  EXPECT_NEAR(qubit_cost(100.0, 4.17e6, 1e-6).q_qubits / (100.0 * std::log2(4.17e6)), 1.868, 2e-3);
}

TEST(qubit_cost, strictly_increasing) {
  double prev = 0.0;
  for (double a : {0.1, 1.0, 10.0, 100.0, 1e3}) {
    const double q = qubit_cost(a, 1e6, 1e-6).q_qubits;
    EXPECT_GT(q, prev);
    prev = q;
  }
  prev = 0.0;
  for (double M : {1.0, 10.0, 1e3, 1e6, 1e12}) {
    const double q = qubit_cost(20.0, M, 1e-6).q_qubits;
    EXPECT_GT(q, prev);
    prev = q;
  }
  EXPECT_THROW(qubit_cost(1.0, 10.0, 1.0), ParameterError);
  EXPECT_THROW(qubit_cost(0.0, 10.0, 0.5), ParameterError);
}

TEST(binomial, cdf_matches_direct_sum) {
  for (auto [k, n, q] : std::vector<std::tuple<int, int, double>>{{2, 5, 0.5}, {0, 10, 0.1}, {7, 40, 0.3}}) {
    EXPECT_NEAR(binomial_cdf(k, n, q), direct_cdf(k, n, q), 1e-13);
  }
  EXPECT_DOUBLE_EQ(binomial_cdf(5, 5, 0.3), 1.0);
}

TEST(binomial, inverse_cdf_examples) {
  EXPECT_EQ(binomial_inv_cdf(1.0, 17, 0.2), 17);
  EXPECT_EQ(binomial_inv_cdf(0.5, 5, 0.5), 2);
  EXPECT_EQ(binomial_inv_cdf(0.3, 100, 0.0), 0);
  EXPECT_EQ(binomial_inv_cdf(0.3, 100, 1.0), 100);
  EXPECT_EQ(binomial_inv_cdf(1.0 - 1e-5, 1000000000, 3e-7), 377);
}

TEST(binomial, inverse_cdf_definition) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::int64_t>(std::pow(10.0, 9.0 * u(rng))) + 1;
    const double q = std::pow(10.0, -9.0 * u(rng));
    const double p = i % 3 == 0 ? 1e-5 : (i % 3 == 1 ? 1.0 - 1e-5 : u(rng));
    const std::int64_t k = binomial_inv_cdf(p, n, q);
    EXPECT_GE(binomial_cdf(k, n, q), p) << n << " " << q << " " << p;
    if (k > 0) EXPECT_LT(binomial_cdf(k - 1, n, q), p) << n << " " << q << " " << p;
  }
}

TEST(algorithm_2_1, ideal_limit_near_two_party_formula) {
  ProtocolParams p = clean(2, 1000);
  const BoundResult b = algorithm_2_1(p, 1.0);
  const double ideal = ideal_alpha2(2, p.ecc, p.p_error);
  EXPECT_NEAR(b.alpha2, ideal, 0.1 * ideal);
}

TEST(algorithm_2_1, step_granularity_and_search_modes) {
  ProtocolParams p = clean(2, 1e6);
  p.p_dark = 1e-9;
  p.eta = 0.5;
  TwoUserOptions one, half, linear;
  half.step = 0.5;
  linear.search = StepSearch::linear;
  const BoundResult a = algorithm_2_1(p, 0.98, one), b = algorithm_2_1(p, 0.98, half);
  EXPECT_LE(std::abs(a.alpha2 * p.eta - b.alpha2 * p.eta), 1.0);
  const BoundResult c = algorithm_2_1(p, 0.98, linear);
  EXPECT_EQ(a.alpha2, c.alpha2);
  EXPECT_EQ(a.threshold_r, c.threshold_r);
}

TEST(algorithm_2_1, stops_at_first_crossing) {
  ProtocolParams p = clean(2, 1e5);
  p.p_dark = 1e-9;
  const BoundResult b = algorithm_2_1(p, 0.95);
  const double n = b.alpha2 * p.eta;
  const TwoUserThresholds at = two_user_thresholds(p, 0.95, n, p.p_error, p.p_error);
  const TwoUserThresholds before = two_user_thresholds(p, 0.95, n - 1.0, p.p_error, p.p_error);
  EXPECT_GE(at.r_different, at.r_equal);
  EXPECT_LT(before.r_different, before.r_equal);
}

TEST(algorithm_2_1, errors) {
  ProtocolParams p = clean(3);
  EXPECT_THROW(algorithm_2_1(p, 0.98), ParameterError);
  p.K = 2;
  EXPECT_THROW(algorithm_2_1(p, 0.5), ParameterError);
  TwoUserOptions capped;
  capped.alpha2_cap = 5.0;
  try {
    algorithm_2_1(p, 0.98, capped);
    FAIL() << "expected divergence";
  } catch (const DivergenceError &e) {
    EXPECT_GT(e.gap(), 0.0);
  }
}

TEST(naive, link_error_probabilities) {
  EXPECT_NEAR(naive_link_error(5, 1e-5), 2.5000093750546879e-06, 1e-20);
  EXPECT_DOUBLE_EQ(naive_link_error(2, 1e-5), 1e-5);
  const auto [pe, pd] = naive_asymmetric_probs(5, 1e-5);
  EXPECT_NEAR(pe, 2.5000093750546879e-06, 1e-20);
  EXPECT_NEAR(pd, 1.0000075000656256e-05, 1e-19);
  EXPECT_NEAR(naive_asymmetric_probs(5, 1e-12).second / 1e-12, 1.0, 1e-11);
}

TEST(naive, two_users_reduce_to_iteration) {
  ProtocolParams p = clean(2, 1e6);
  p.p_dark = 1e-9;
  const BoundResult a = naive_protocol(p, 0.98), b = algorithm_2_1(p, 0.98);
  EXPECT_DOUBLE_EQ(a.alpha2, b.alpha2);
  EXPECT_EQ(a.strategy, Strategy::naive);
}

TEST(naive, asymmetric_close_on_log_scale) {
  // A looser different-input target never costs photons. The saving peaks
  // near a factor 1.27 for many users at short inputs.
  for (int K : {3, 5, 20}) {
    for (double N : {1e2, 1e6, 1e10, 1e14}) {
      ProtocolParams p;
      p.K = K;
      p.N = N;
      p.p_dark = 1e-9;
      const double sym = naive_protocol(p, 0.97).alpha2;
      const double asym = naive_asymmetric_protocol(p, 0.97).alpha2;
      EXPECT_LE(asym, sym);
      EXPECT_LT(sym / asym, 1.3) << K << " " << N;
    }
  }
}

TEST(naive, chain_factor) {
  ProtocolParams p;
  p.K = 6;
  p.N = 1e7;
  p.p_dark = 1e-9;
  ProtocolParams link = p;
  link.K = 2;
  link.p_error = naive_link_error(6, p.p_error);
  EXPECT_NEAR(naive_protocol(p, 0.97).alpha2, algorithm_2_1(link, 0.97).alpha2 * 2.0 * 5.0 / 6.0, 1e-9);
}

TEST(max_users, reference_values) {
  const EccParams ecc{0.78, 4.17};
  const std::vector<std::pair<double, double>> want{
      {0.98, 458695.46}, {0.95, 403150.31}, {0.90, 318538.52}, {0.85, 243881.05}};
  for (const auto &[v, k] : want) EXPECT_NEAR(max_users_energy_advantage(ecc, v, 1e-5, 1e-9), k, 0.01) << v;
  EXPECT_DOUBLE_EQ(max_users_energy_advantage(ecc, 0.5, 1e-5, 1e-9), 0.0);
  EXPECT_THROW(max_users_energy_advantage(ecc, 0.4, 1e-5, 1e-9), ParameterError);
}

TEST(max_users, monotone) {
  const EccParams ecc{0.78, 4.17};
  double prev = -1.0;
  for (double v = 0.5; v <= 1.0; v += 0.01) {
    const double k = max_users_energy_advantage(ecc, v, 1e-5, 1e-9);
    EXPECT_GT(k, prev);
    prev = k;
  }
  prev = INFINITY;
  for (double mu : {1e-12, 1e-11, 1e-10, 1e-9, 1e-8}) {
    const double k = max_users_energy_advantage(ecc, 0.9, 1e-5, mu);
    EXPECT_LT(k, prev);
    prev = k;
  }
}

TEST(strategy_names, parse_round_trip) {
  for (Strategy s : {Strategy::first_k_minus_1, Strategy::last_only, Strategy::ideal, Strategy::two_user_xu,
                     Strategy::naive}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_THROW(parse_strategy("middle"), ParameterError);
}
