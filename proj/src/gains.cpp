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

#include "qfprint/gains.hpp"

#include <cmath>
#include <numeric>

#include "qfprint/errors.hpp"

namespace qfp {

namespace {

double first_group(const Eigen::VectorXd &mu, int last_label) { return mu.sum() - mu(last_label); }

void check_label(const TransferMatrix &T, int last_label) {
  if (last_label < 0 || last_label >= T.dim()) throw ParameterError("last_label outside the output range");
}

// Visits every minority set of size L (as a sorted index list).
template <typename F>
void for_each_subset(int K, int L, F &&visit) {
  std::vector<int> idx(L);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = L - 1;
    while (i >= 0 && idx[i] == K - L + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < L; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int PhasePattern::minority() const {
  int minus = 0;
  for (int l : labels) minus += l < 0 ? 1 : 0;
  return std::min(minus, dim() - minus);
}

PhasePattern PhasePattern::equal(int K) { return PhasePattern{std::vector<int>(K, 1)}; }

PhasePattern PhasePattern::single_flip(int K, int position) {
  if (position < 0 || position >= K) throw ParameterError("flip position outside the pattern");
  PhasePattern p = equal(K);
  p.labels[position] = -1;
  return p;
}

PhasePattern PhasePattern::from_labels(std::vector<int> labels) {
  for (int l : labels) {
    if (l != 1 && l != -1) throw ParameterError("phase labels must be +1 or -1");
  }
  return PhasePattern{std::move(labels)};
}

Eigen::VectorXd output_photon_numbers(const TransferMatrix &T, const PhasePattern &pattern, double mu_in) {
  if (pattern.dim() != T.dim()) throw ParameterError("pattern length does not match the matrix dimension");
  if (!(mu_in > 0.0)) throw ParameterError("input photon number must be positive");
  Eigen::VectorXcd a(T.dim());
  const double amp = std::sqrt(mu_in);
  for (int k = 0; k < T.dim(); ++k) a(k) = amp * pattern.labels[k];
  return (T.entries() * a).cwiseAbs2();
}

GainSet gain_set(const TransferMatrix &T, int last_label, const std::vector<PhasePattern> &extra) {
  check_label(T, last_label);
  const int K = T.dim();
  GainSet g;
  g.dim = K;
  g.last_label = last_label;

  const Eigen::VectorXcd b_eq = T.row_sums();
  const Eigen::VectorXd mu_eq = b_eq.cwiseAbs2();
  g.g_e_first = first_group(mu_eq, last_label);
  g.g_e_last = mu_eq(last_label);

  for (int j = 0; j < K; ++j) {
    // Flipping input j subtracts twice its column from the equal output.
    const Eigen::VectorXd mu = (b_eq - 2.0 * T.entries().col(j)).cwiseAbs2();
    PatternGains pg{PhasePattern::single_flip(K, j), first_group(mu, last_label), mu(last_label)};
    if (j == 0 || pg.g_d_first < g.g_d_first_min) {
      g.g_d_first_min = pg.g_d_first;
      g.worst_first = j;
    }
    if (j == 0 || pg.g_d_last > g.g_d_last_max) {
      g.g_d_last_max = pg.g_d_last;
      g.worst_last = j;
    }
    g.per_pattern.push_back(std::move(pg));
  }
  for (const PhasePattern &p : extra) {
    const Eigen::VectorXd mu = output_photon_numbers(T, p, 1.0);
    g.per_pattern.push_back(PatternGains{p, first_group(mu, last_label), mu(last_label)});
  }
  return g;
}

GainSet ideal_gains(int K) {
  if (K < 2) throw ParameterError("gains need K >= 2");
  GainSet g;
  g.dim = K;
  g.last_label = K - 1;
  g.g_e_first = 0.0;
  g.g_d_first_min = 4.0 * (K - 1) / K;
  g.g_e_last = K;
  g.g_d_last_max = static_cast<double>(K - 2) * (K - 2) / K;
  return g;
}

Visibilities visibilities(const GainSet &gains, int K) {
  if (K < 2) throw ParameterError("visibilities need K >= 2");
  const double scale = K / (4.0 * (K - 1));
  return Visibilities{0.5 * (1.0 + scale * (gains.g_d_first_min - gains.g_e_first)),
                      0.5 * (1.0 + scale * (gains.g_e_last - gains.g_d_last_max))};
}

std::vector<PatternGains> worst_case_pattern_scan(const TransferMatrix &T, int last_label, int max_L,
                                                  std::size_t pattern_budget) {
  check_label(T, last_label);
  const int K = T.dim();
  if (max_L < 1 || max_L > K / 2) throw ParameterError("max_L must lie in [1, K/2]");
  double total = 0.0;
  for (int L = 1; L <= max_L; ++L) total += binomial(K, L);
  if (total > static_cast<double>(pattern_budget)) {
    throw ParameterError("pattern scan exceeds the budget of " + std::to_string(pattern_budget) + " patterns");
  }
  std::vector<PatternGains> out;
  for (int L = 1; L <= max_L; ++L) {
    for_each_subset(K, L, [&](const std::vector<int> &minus) {
      // With L = K/2 a set and its complement give the same pattern up to sign.
      if (2 * L == K && minus.front() != 0) return;
      PhasePattern p = PhasePattern::equal(K);
      for (int i : minus) p.labels[i] = -1;
      const Eigen::VectorXd mu = output_photon_numbers(T, p, 1.0);
      out.push_back(PatternGains{std::move(p), first_group(mu, last_label), mu(last_label)});
    });
  }
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) return std::accumulate(v.begin(), v.end(), 0.0);
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

BatchGains summarize_gains(const std::vector<GainSet> &gains) {
  if (gains.empty()) throw ParameterError("no gain sets to summarize");
  const int K = gains.front().dim;
  const std::size_t n = gains.size();
  std::vector<double> e_first(n), d_first(n), e_last(n), d_last(n), v_first(n), v_last(n);
  BatchGains out;
  out.per_realization.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GainSet &g = gains[i];
    e_first[i] = g.g_e_first;
    d_first[i] = g.g_d_first_min;
    e_last[i] = g.g_e_last;
    d_last[i] = g.g_d_last_max;
    const Visibilities v = visibilities(g, K);
    v_first[i] = v.first;
    v_last[i] = v.last;
    out.per_realization.push_back(v);
  }
  const double dn = static_cast<double>(n);
  out.mean.dim = K;
  out.mean.last_label = gains.front().last_label;
  out.mean.g_e_first = pairwise_sum(e_first) / dn;
  out.mean.g_d_first_min = pairwise_sum(d_first) / dn;
  out.mean.g_e_last = pairwise_sum(e_last) / dn;
  out.mean.g_d_last_max = pairwise_sum(d_last) / dn;
  out.mean_visibility = visibilities(out.mean, K);

  auto sd = [&](const std::vector<double> &x, double mean) {
    if (n < 2) return 0.0;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (x[i] - mean) * (x[i] - mean);
    return std::sqrt(pairwise_sum(sq) / (dn - 1.0));
  };
  out.sd_visibility = Visibilities{sd(v_first, out.mean_visibility.first), sd(v_last, out.mean_visibility.last)};
  return out;
}

BatchGains batch_gains(const RealizationBatch &batch, int last_label) {
  std::vector<GainSet> gains;
  gains.reserve(batch.matrices.size());
  for (const TransferMatrix &T : batch.matrices) gains.push_back(gain_set(T, last_label));
  return summarize_gains(gains);
}

}  // namespace qfp
