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
#include <random>
#include <vector>

#include "qfprint/circuits.hpp"

namespace qfp {

// How the dB loss figure is spread over the two symmetric splitters of a block.
enum class LossConvention {
  // The figure is the power loss of a whole unbalanced block; each symmetric
  // splitter carries half of it.
  per_block,
  // The figure is the power loss of each symmetric splitter, so a block loses
  // twice the figure.
  per_symmetric_splitter,
};

struct NoiseModel {
  double sigma_t = 0.0;
  double sigma_p = 0.0;
  double bs_loss_db = 0.0;
  std::uint64_t seed = 0;
  LossConvention loss_convention = LossConvention::per_block;

  static NoiseModel uniform(double sigma, double bs_loss_db, std::uint64_t seed);
  void validate() const;

  // Amplitude factor of one symmetric splitter.
  double splitter_amplitude() const;
  // Amplitude factor of a whole unbalanced block (two splitters).
  double block_amplitude() const;
};

// Generator for realization `index`. The map (seed, index) -> stream goes
// through std::seed_seq, so streams do not depend on evaluation order.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0);

// Lossy, noisy unbalanced block on (port_min, port_max). Draws four standard
// normals in the order: tau_1, tau_2, first phase, second phase.
Eigen::Matrix2cd noisy_block(double t, const NoiseModel &model, std::mt19937_64 &rng);

TransferMatrix realize_circuit(const CircuitLayout &layout, const NoiseModel &model, std::mt19937_64 &rng);
TransferMatrix realize_circuit(const CircuitLayout &layout, const NoiseModel &model, std::uint64_t index);

struct RealizationBatch {
  int n_realizations = 0;
  std::vector<TransferMatrix> matrices;
};

RealizationBatch realize_batch(const CircuitLayout &layout, const NoiseModel &model, int n);

}  // namespace qfp
