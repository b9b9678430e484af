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

#include "qfprint/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfprint/errors.hpp"

namespace qfp {

namespace {

void require_dim(int K) {
  if (K < 2) throw ParameterError("multiport dimension must be at least 2, got " + std::to_string(K));
}

int ceil_log2(int n) {
  int h = 0;
  while ((1 << h) < n) ++h;
  return h;
}

// Left-multiplies the rows (a, b) of m by a 2x2 block.
void apply_rows(Eigen::MatrixXcd &m, int a, int b, const Eigen::Matrix2cd &blk) {
  Eigen::RowVectorXcd ra = m.row(a);
  Eigen::RowVectorXcd rb = m.row(b);
  m.row(a) = blk(0, 0) * ra + blk(0, 1) * rb;
  m.row(b) = blk(1, 0) * ra + blk(1, 1) * rb;
}

// Right-multiplies the columns (a, b) of m by a 2x2 block.
void apply_cols(Eigen::MatrixXcd &m, int a, int b, const Eigen::Matrix2cd &blk) {
  Eigen::VectorXcd ca = m.col(a);
  Eigen::VectorXcd cb = m.col(b);
  m.col(a) = ca * blk(0, 0) + cb * blk(1, 0);
  m.col(b) = ca * blk(0, 1) + cb * blk(1, 1);
}

// Generic mesh block: phase e^{i phi} on the lower port, then the real
// 2x2 beamsplitter of transmittance t.
Eigen::Matrix2cd mesh_block(double t, double phi) {
  const double s = std::sqrt(t), c = std::sqrt(1.0 - t);
  const cplx e = std::polar(1.0, phi);
  Eigen::Matrix2cd g;
  g << s * e, c, -c * e, s;
  return g;
}

struct MeshBlock {
  int m;  // 0-based lower port; the block acts on (m, m+1)
  double t;
  double phi;
};

// Column operation that zeroes w(r, m) using columns (m, m+1).
MeshBlock null_from_right(Eigen::MatrixXcd &w, int r, int m) {
  const cplx a = w(r, m), b = w(r, m + 1);
  const double na = std::norm(a), nb = std::norm(b);
  MeshBlock blk{m, 1.0, 0.0};
  if (na + nb > 0.0) {
    blk.t = nb / (na + nb);
    if (na > 0.0 && nb > 0.0) blk.phi = std::arg(a) - std::arg(b) + std::numbers::pi;
  }
  apply_cols(w, m, m + 1, mesh_block(blk.t, blk.phi).adjoint());
  return blk;
}

// Row operation that zeroes w(m+1, c) using rows (m, m+1).
MeshBlock null_from_left(Eigen::MatrixXcd &w, int m, int c) {
  const cplx x = w(m, c), y = w(m + 1, c);
  const double nx = std::norm(x), ny = std::norm(y);
  MeshBlock blk{m, 1.0, 0.0};
  if (nx + ny > 0.0) {
    blk.t = nx / (nx + ny);
    if (nx > 0.0 && ny > 0.0) blk.phi = std::arg(y) - std::arg(x);
  }
  apply_rows(w, m, m + 1, mesh_block(blk.t, blk.phi));
  return blk;
}

void require_unitary(const TransferMatrix &U) {
  if (U.dim() < 2) throw DecompositionError("decomposition needs a matrix of dimension at least 2");
  if (!U.is_unitary(1e-10)) throw DecompositionError("decomposition target is not unitary within 1e-10");
}

// Converts blocks (in application order) plus output phases into a layout,
// assigning layers by earliest availability of both ports.
CircuitLayout mesh_layout(int K, Design design, const std::vector<MeshBlock> &blocks,
                          const Eigen::VectorXcd &output_phases) {
  CircuitLayout layout;
  layout.dim = K;
  layout.design = design;
  std::vector<int> next_free(K, 0);
  int depth = 0;
  for (const MeshBlock &b : blocks) {
    const int layer = std::max(next_free[b.m], next_free[b.m + 1]);
    next_free[b.m] = next_free[b.m + 1] = layer + 1;
    depth = std::max(depth, layer + 1);
    layout.elements.push_back(CircuitElement::shifter(b.m + 1, b.phi, layer));
    layout.elements.push_back(CircuitElement::beamsplitter(b.m + 1, b.m + 2, b.t, layer));
  }
  layout.bs_count = static_cast<int>(blocks.size());
  layout.optical_depth = design == Design::clements ? K : depth;
  for (int k = 0; k < K; ++k) {
    layout.elements.push_back(CircuitElement::shifter(k + 1, std::arg(output_phases(k)), layout.optical_depth));
  }
  return layout;
}

}  // namespace

TransferMatrix::TransferMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ParameterError("transfer matrix must be square and non-empty");
  }
}

TransferMatrix TransferMatrix::identity(int dim) {
  if (dim < 1) throw ParameterError("identity dimension must be positive");
  return TransferMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

bool TransferMatrix::is_unitary(double tol) const {
  const Eigen::MatrixXcd d = entries_.adjoint() * entries_ - Eigen::MatrixXcd::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXcd TransferMatrix::row_sums() const { return entries_.rowwise().sum(); }

double CircuitElement::omega() const { return std::asin(std::sqrt(std::clamp(transmittance, 0.0, 1.0))); }

CircuitElement CircuitElement::beamsplitter(int lo, int hi, double t, int layer) {
  return CircuitElement{ElementKind::unbalanced_beamsplitter, lo, hi, t, 0.0, layer};
}

CircuitElement CircuitElement::symmetric(int lo, int hi, int layer) {
  return CircuitElement{ElementKind::symmetric_beamsplitter, lo, hi, 0.5, 0.0, layer};
}

CircuitElement CircuitElement::shifter(int port, double phase, int layer) {
  return CircuitElement{ElementKind::phase_shifter, port, port, 1.0, phase, layer};
}

std::string design_name(Design design) {
  switch (design) {
    case Design::reck: return "gbs-reck";
    case Design::clements: return "gbs-clements";
    case Design::extendable: return "extendable";
    case Design::optimal_tree: return "optimal";
  }
  return "unknown";
}

Design parse_design(const std::string &name) {
  for (Design d : all_designs()) {
    if (design_name(d) == name) return d;
  }
  if (name == "reck") return Design::reck;
  if (name == "clements") return Design::clements;
  if (name == "optimal-tree") return Design::optimal_tree;
  throw ParameterError("unknown design '" + name + "' (expected optimal, extendable, gbs-reck or gbs-clements)");
}

const std::vector<Design> &all_designs() {
  static const std::vector<Design> designs{Design::optimal_tree, Design::extendable, Design::reck,
                                           Design::clements};
  return designs;
}

TransferMatrix dft_multiport(int K) {
  require_dim(K);
  Eigen::MatrixXcd u(K, K);
  const double norm = 1.0 / std::sqrt(static_cast<double>(K));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      // Reduce the exponent first so large K keeps full phase accuracy.
      const long long e = (static_cast<long long>(i) * j) % K;
      u(i, j) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(e) / K);
    }
  }
  return TransferMatrix(u);
}

TransferMatrix extendable_matrix(int K) {
  require_dim(K);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(K, K);
  for (int k = 1; k < K; ++k) {
    const double off = -1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int j = 0; j < k; ++j) u(k - 1, j) = off;
    u(k - 1, k) = std::sqrt(static_cast<double>(k) / (k + 1));
  }
  u.row(K - 1).setConstant(1.0 / std::sqrt(static_cast<double>(K)));
  return TransferMatrix(u);
}

CircuitLayout extendable_layout(int K) {
  require_dim(K);
  CircuitLayout layout;
  layout.dim = K;
  layout.design = Design::extendable;
  for (int k = 2; k <= K; ++k) {
    layout.elements.push_back(CircuitElement::beamsplitter(1, k, static_cast<double>(k - 1) / k, k - 2));
  }
  layout.bs_count = K - 1;
  layout.optical_depth = K - 1;
  // Port 1 carries the sum and becomes the last row; port k becomes row k-1.
  for (int k = 1; k < K; ++k) layout.output_order.push_back(k);
  layout.output_order.push_back(0);
  return layout;
}

namespace {

void build_tree(int lo, int n, std::vector<CircuitElement> &out) {
  if (n < 2) return;
  const int a = (n + 1) / 2;
  build_tree(lo, a, out);
  build_tree(lo + a, n - a, out);
  out.push_back(CircuitElement::beamsplitter(lo, lo + a, static_cast<double>(a) / n, ceil_log2(n) - 1));
}

}  // namespace

CircuitLayout optimal_tree_layout(int K) {
  require_dim(K);
  CircuitLayout layout;
  layout.dim = K;
  layout.design = Design::optimal_tree;
  build_tree(1, K, layout.elements);
  layout.bs_count = K - 1;
  layout.optical_depth = ceil_log2(K);
  return layout;
}

CircuitLayout reck_decompose(const TransferMatrix &U) {
  require_unitary(U);
  const int K = U.dim();
  Eigen::MatrixXcd w = U.entries();
  std::vector<MeshBlock> blocks;
  for (int r = K - 1; r >= 1; --r) {
    for (int m = 0; m < r; ++m) blocks.push_back(null_from_right(w, r, m));
  }
  // U = D * G_n ... G_1, so blocks apply in nulling order.
  return mesh_layout(K, Design::reck, blocks, w.diagonal());
}

CircuitLayout clements_decompose(const TransferMatrix &U) {
  require_unitary(U);
  const int K = U.dim();
  Eigen::MatrixXcd w = U.entries();
  std::vector<MeshBlock> right, left;
  for (int i = 0; i + 1 < K; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) right.push_back(null_from_right(w, K - 1 - j, i - j));
    } else {
      for (int j = 1; j <= i + 1; ++j) left.push_back(null_from_left(w, K + j - i - 3, j - 1));
    }
  }
  // U = L^dagger D R^dagger. Each G^dagger D is rewritten as D' G' so every
  // block keeps the mesh form and the phases collect at the output.
  Eigen::VectorXcd d = w.diagonal();
  std::vector<MeshBlock> pushed;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    const int m = it->m;
    const cplx dm = d(m), dn = d(m + 1);
    pushed.push_back(MeshBlock{m, it->t, std::arg(-dm / dn)});
    d(m) = -std::polar(1.0, -it->phi) * dn;
  }
  std::vector<MeshBlock> blocks = right;
  // pushed holds G'_last ... G'_first in that order, which is application order.
  blocks.insert(blocks.end(), pushed.begin(), pushed.end());
  return mesh_layout(K, Design::clements, blocks, d);
}

CircuitLayout design_layout(Design design, int K) {
  switch (design) {
    case Design::optimal_tree: return optimal_tree_layout(K);
    case Design::extendable: return extendable_layout(K);
    case Design::reck: return reck_decompose(dft_multiport(K));
    case Design::clements: return clements_decompose(dft_multiport(K));
  }
  throw ParameterError("unknown design");
}

Eigen::Matrix2cd element_block(const CircuitElement &e) {
  Eigen::Matrix2cd blk;
  switch (e.kind) {
    case ElementKind::unbalanced_beamsplitter: {
      const double s = std::sqrt(e.transmittance), c = std::sqrt(1.0 - e.transmittance);
      blk << s, c, -c, s;
      break;
    }
    case ElementKind::symmetric_beamsplitter: {
      const double h = std::numbers::sqrt2 / 2.0;
      blk << h, cplx(0, h), cplx(0, h), h;
      break;
    }
    case ElementKind::phase_shifter:
      blk << std::polar(1.0, e.phase), 0, 0, 1;
      break;
  }
  return blk;
}

void check_layout(const CircuitLayout &layout) {
  const int K = layout.dim;
  if (K < 1) throw LayoutError("layout dimension must be positive");
  for (const CircuitElement &e : layout.elements) {
    if (e.port_min < 1 || e.port_min > K || e.port_max < 1 || e.port_max > K) {
      throw LayoutError("element port out of range [1, " + std::to_string(K) + "]");
    }
    if (e.kind == ElementKind::phase_shifter) {
      if (e.port_max != e.port_min) throw LayoutError("phase shifter must use a single port");
    } else {
      if (e.port_min >= e.port_max) throw LayoutError("beamsplitter ports must satisfy port_min < port_max");
      if (!(e.transmittance >= 0.0 && e.transmittance <= 1.0)) {
        throw LayoutError("beamsplitter transmittance outside [0, 1]");
      }
    }
  }
  if (!layout.output_order.empty()) {
    if (static_cast<int>(layout.output_order.size()) != K) throw LayoutError("output order has wrong length");
    std::vector<int> sorted = layout.output_order;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < K; ++k) {
      if (sorted[k] != k) throw LayoutError("output order is not a permutation");
    }
  }
}

TransferMatrix apply_output_order(const CircuitLayout &layout, const Eigen::MatrixXcd &physical) {
  if (layout.output_order.empty()) return TransferMatrix(physical);
  Eigen::MatrixXcd out(physical.rows(), physical.cols());
  for (int i = 0; i < layout.dim; ++i) out.row(i) = physical.row(layout.output_order[i]);
  return TransferMatrix(out);
}

TransferMatrix compose_layout(const CircuitLayout &layout) {
  check_layout(layout);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(layout.dim, layout.dim);
  for (const CircuitElement &e : layout.elements) {
    const Eigen::Matrix2cd blk = element_block(e);
    if (e.kind == ElementKind::phase_shifter) {
      m.row(e.port_min - 1) *= blk(0, 0);
    } else {
      apply_rows(m, e.port_min - 1, e.port_max - 1, blk);
    }
  }
  return apply_output_order(layout, m);
}

int longest_path_depth(const CircuitLayout &layout) {
  check_layout(layout);
  std::vector<int> reach(layout.dim, 0);
  for (const CircuitElement &e : layout.elements) {
    if (e.kind == ElementKind::phase_shifter) continue;
    const int d = std::max(reach[e.port_min - 1], reach[e.port_max - 1]) + 1;
    reach[e.port_min - 1] = reach[e.port_max - 1] = d;
  }
  return *std::max_element(reach.begin(), reach.end());
}

int sum_row(const TransferMatrix &T) {
  const Eigen::VectorXcd s = T.row_sums();
  int best = 0;
  for (int i = 1; i < T.dim(); ++i) {
    if (std::abs(s(i)) > std::abs(s(best))) best = i;
  }
  return best;
}

}  // namespace qfp
