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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qfp {

using cplx = std::complex<double>;

// Amplitude transfer matrix of a K-port passive network. Entry (i, j) maps
// input j to output i. Lossy networks are sub-unitary.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  explicit TransferMatrix(Eigen::MatrixXcd entries);

  static TransferMatrix identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd &entries() const { return entries_; }
  cplx operator()(int row, int col) const { return entries_(row, col); }

  bool is_unitary(double tol) const;
  Eigen::VectorXcd row_sums() const;

 private:
  Eigen::MatrixXcd entries_;
};

enum class ElementKind { unbalanced_beamsplitter, symmetric_beamsplitter, phase_shifter };

// Ports are 1-based. A phase shifter uses port_min only (port_max == port_min).
struct CircuitElement {
  ElementKind kind = ElementKind::unbalanced_beamsplitter;
  int port_min = 1;
  int port_max = 2;
  double transmittance = 1.0;
  double phase = 0.0;
  int layer = 0;

  // Angle with sin^2(omega) = t, in [0, pi/2].
  double omega() const;

  static CircuitElement beamsplitter(int lo, int hi, double t, int layer = 0);
  static CircuitElement symmetric(int lo, int hi, int layer = 0);
  static CircuitElement shifter(int port, double phase, int layer = 0);
};

enum class Design { reck, clements, extendable, optimal_tree };

std::string design_name(Design design);
Design parse_design(const std::string &name);
const std::vector<Design> &all_designs();

struct CircuitLayout {
  int dim = 0;
  Design design = Design::optimal_tree;
  std::vector<CircuitElement> elements;
  int bs_count = 0;
  int optical_depth = 0;
  // Row i of the composed matrix is physical output port output_order[i]
  // (0-based). Empty means the identity order.
  std::vector<int> output_order;
};

TransferMatrix dft_multiport(int K);
TransferMatrix extendable_matrix(int K);

CircuitLayout extendable_layout(int K);
CircuitLayout optimal_tree_layout(int K);
CircuitLayout reck_decompose(const TransferMatrix &U);
CircuitLayout clements_decompose(const TransferMatrix &U);

// Ideal layout for a design. Mesh designs decompose the DFT multiport.
CircuitLayout design_layout(Design design, int K);

// 2x2 block of one element acting on (port_min, port_max).
Eigen::Matrix2cd element_block(const CircuitElement &element);

TransferMatrix compose_layout(const CircuitLayout &layout);

// Applies a layout's output relabeling to a physically ordered matrix.
TransferMatrix apply_output_order(const CircuitLayout &layout, const Eigen::MatrixXcd &physical);

// Largest number of beamsplitters met along any input-to-output path.
int longest_path_depth(const CircuitLayout &layout);

// Index (0-based) of the row whose entries sum to sqrt(K) in magnitude; the
// row with the largest |sum| is returned for non-ideal matrices.
int sum_row(const TransferMatrix &T);

void check_layout(const CircuitLayout &layout);

}  // namespace qfp
