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

#include "qfprint/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfprint/errors.hpp"

namespace qfp {

namespace {

Eigen::Matrix2cd noisy_splitter(double tau) {
  tau = std::clamp(tau, 0.0, 1.0);
  const cplx c(0.0, std::sqrt(1.0 - tau * tau));
  Eigen::Matrix2cd b;
  b << tau, c, c, tau;
  return b;
}

void apply_rows(Eigen::MatrixXcd &m, int a, int b, const Eigen::Matrix2cd &blk) {
  Eigen::RowVectorXcd ra = m.row(a);
  Eigen::RowVectorXcd rb = m.row(b);
  m.row(a) = blk(0, 0) * ra + blk(0, 1) * rb;
  m.row(b) = blk(1, 0) * ra + blk(1, 1) * rb;
}

}  // namespace

NoiseModel NoiseModel::uniform(double sigma, double bs_loss_db, std::uint64_t seed) {
  NoiseModel m;
  m.sigma_t = m.sigma_p = sigma;
  m.bs_loss_db = bs_loss_db;
  m.seed = seed;
  return m;
}

void NoiseModel::validate() const {
  if (!(sigma_t >= 0.0) || !(sigma_p >= 0.0)) throw ParameterError("noise levels must be nonnegative");
  if (!(bs_loss_db <= 0.0)) throw ParameterError("beamsplitter loss must be given as a nonpositive dB value");
}

double NoiseModel::splitter_amplitude() const {
  const double block_db = loss_convention == LossConvention::per_block ? bs_loss_db / 2.0 : bs_loss_db;
  return std::pow(10.0, block_db / 20.0);
}

double NoiseModel::block_amplitude() const {
  const double a = splitter_amplitude();
  return a * a;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
  return std::mt19937_64(seq);
}

Eigen::Matrix2cd noisy_block(double t, const NoiseModel &model, std::mt19937_64 &rng) {
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("block transmittance outside [0, 1]");
  std::normal_distribution<double> randn(0.0, 1.0);
  const double n_tau1 = randn(rng), n_tau2 = randn(rng);
  const double n_phase1 = randn(rng), n_phase2 = randn(rng);

  const double omega = std::asin(std::sqrt(t));
  const double amp = model.block_amplitude();
  Eigen::Matrix2cd flip;
  flip << 0, amp, amp, 0;
  Eigen::Matrix2cd phases = Eigen::Matrix2cd::Zero();
  phases(0, 0) = std::polar(1.0, omega + std::numbers::pi + model.sigma_p * n_phase1);
  phases(1, 1) = std::polar(1.0, -omega + model.sigma_p * n_phase2);
  const double tau1 = std::numbers::sqrt2 / 2.0 * (1.0 + model.sigma_t * n_tau1);
  const double tau2 = std::numbers::sqrt2 / 2.0 * (1.0 + model.sigma_t * n_tau2);
  return flip * noisy_splitter(tau1) * phases * noisy_splitter(tau2);
}

TransferMatrix realize_circuit(const CircuitLayout &layout, const NoiseModel &model, std::mt19937_64 &rng) {
  check_layout(layout);
  model.validate();
  std::normal_distribution<double> randn(0.0, 1.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(layout.dim, layout.dim);
  for (const CircuitElement &e : layout.elements) {
    const int a = e.port_min - 1, b = e.port_max - 1;
    switch (e.kind) {
      case ElementKind::unbalanced_beamsplitter:
        apply_rows(m, a, b, noisy_block(e.transmittance, model, rng));
        break;
      case ElementKind::symmetric_beamsplitter: {
        const double tau = std::numbers::sqrt2 / 2.0 * (1.0 + model.sigma_t * randn(rng));
        apply_rows(m, a, b, model.splitter_amplitude() * noisy_splitter(tau));
        break;
      }
      case ElementKind::phase_shifter:
        m.row(a) *= std::polar(1.0, e.phase + model.sigma_p * randn(rng));
        break;
    }
  }
  return apply_output_order(layout, m);
}

TransferMatrix realize_circuit(const CircuitLayout &layout, const NoiseModel &model, std::uint64_t index) {
  std::mt19937_64 rng = stream_rng(model.seed, index);
  return realize_circuit(layout, model, rng);
}

RealizationBatch realize_batch(const CircuitLayout &layout, const NoiseModel &model, int n) {
  if (n < 1) throw ParameterError("batch needs at least one realization");
  RealizationBatch batch;
  batch.n_realizations = n;
  batch.matrices.reserve(n);
  for (int i = 0; i < n; ++i) batch.matrices.push_back(realize_circuit(layout, model, static_cast<std::uint64_t>(i)));
  return batch;
}

}  // namespace qfp
