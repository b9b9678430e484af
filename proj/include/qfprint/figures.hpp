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
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfprint/bounds.hpp"
#include "qfprint/noise.hpp"

namespace qfp {

using Cell = std::variant<std::int64_t, double, std::string>;

// Tidy table: one observation per row.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::size_t column(const std::string &name) const;
  double number(std::size_t row, const std::string &column) const;
  std::string text(std::size_t row, const std::string &column) const;
};

std::string format_cell(const Cell &cell);
void write_csv(const Table &table, std::ostream &out);
// Whitespace-separated columns with a commented header, readable by gnuplot.
void write_dat(const Table &table, std::ostream &out);

// Log-spaced grid from lo to hi inclusive with a fixed number of points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);

struct FigureConfig {
  double p_error = 1e-5;
  double eta = 0.5;
  double bs_loss_db = -0.2;
  double delta = 0.78;
  double c = 4.17;
  double epsilon = 1e-6;
  std::vector<double> sigmas{0.01};
  std::vector<double> p_darks{1e-9, 1e-11};
  int realizations = 500;
  std::uint64_t seed = 1;
  Design design = Design::optimal_tree;
  LossConvention loss_convention = LossConvention::per_block;
  int points_per_decade = 25;
  // Overrides of the per-figure defaults.
  std::optional<double> n_min;
  std::optional<double> n_max;
  std::vector<int> ks;
  std::vector<double> visibilities;

  // Defaults for one figure id; throws on unknown ids.
  static FigureConfig preset(int figure_id);
};

// Mean gains over a batch of noisy realizations of a design, with the sum
// output as last label.
BatchGains realized_gains(Design design, int K, const NoiseModel &noise, int realizations);

struct VisibilityRow {
  int K = 0;
  Design design = Design::optimal_tree;
  double sigma = 0.0;
  double loss_db = 0.0;
  Visibilities mean;
  Visibilities sd;
};

std::vector<VisibilityRow> visibility_sweep(const std::vector<int> &ks, Design design, const NoiseModel &noise,
                                            int realizations);
Table visibility_table(const std::vector<VisibilityRow> &rows);

ProtocolParams figure_params(const FigureConfig &config, int K, double N, double p_dark);

std::vector<Table> figure_tables(int figure_id, const FigureConfig &config);

}  // namespace qfp
