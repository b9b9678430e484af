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

#include "qfprint/figures.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "qfprint/classical.hpp"
#include "qfprint/errors.hpp"

namespace qfp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t flag(bool b) { return b ? 1 : 0; }

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<int> k_range(int lo, int hi) {
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

NoiseModel figure_noise(const FigureConfig &config, double sigma) {
  NoiseModel n = NoiseModel::uniform(sigma, config.bs_loss_db, config.seed);
  n.loss_convention = config.loss_convention;
  return n;
}

std::vector<double> n_grid(const FigureConfig &config, double lo, double hi) {
  return log_grid(config.n_min.value_or(lo), config.n_max.value_or(hi), config.points_per_decade);
}

// Realized mean gains, cached per (K, sigma) within one figure.
class GainCache {
 public:
  explicit GainCache(const FigureConfig &config) : config_(config) {}

  const BatchGains &get(int K, double sigma) {
    const auto key = std::make_tuple(K, sigma);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, realized_gains(config_.design, K, figure_noise(config_, sigma), config_.realizations))
               .first;
    }
    return it->second;
  }

 private:
  const FigureConfig &config_;
  std::map<std::tuple<int, double>, BatchGains> cache_;
};

const std::vector<std::string> kCurveColumns{"figure", "K", "sigma", "p_dark", "N", "M", "series", "alpha2",
                                             "threshold_r", "Q", "photons_per_slot", "feasible", "dominant",
                                             "valid"};

void add_bound_row(Table &t, int fig, int K, double sigma, double p_dark, double N, const std::string &series,
                   const BoundResult &b) {
  t.add({std::int64_t{fig}, std::int64_t{K}, sigma, p_dark, N, b.M, series, b.alpha2, b.threshold_r, b.q_qubits,
         b.photons_per_slot, flag(b.feasible), flag(b.dominant_dark_term), flag(b.within_validity)});
}

void add_missing_row(Table &t, int fig, int K, double sigma, double p_dark, double N, std::int64_t M,
                     const std::string &series) {
  t.add({std::int64_t{fig}, std::int64_t{K}, sigma, p_dark, N, M, series, kNaN, kNaN, kNaN, kNaN, std::int64_t{0},
         std::int64_t{0}, std::int64_t{0}});
}

// Classical curves carry bits in Q and the one-photon-per-bit energy in alpha2.
void add_classical_row(Table &t, int fig, int K, double sigma, double p_dark, double N, std::int64_t M,
                       const std::string &series, double bits, double eta) {
  t.add({std::int64_t{fig}, std::int64_t{K}, sigma, p_dark, N, M, series, bits / eta, 0.0, bits, kNaN,
         std::int64_t{1}, std::int64_t{0}, std::int64_t{1}});
}

template <typename F>
void try_bound(Table &t, int fig, int K, double sigma, double p_dark, double N, std::int64_t M,
               const std::string &series, F &&compute) {
  try {
    add_bound_row(t, fig, K, sigma, p_dark, N, series, compute());
  } catch (const FeasibilityError &) {
    add_missing_row(t, fig, K, sigma, p_dark, N, M, series);
  } catch (const DivergenceError &) {
    add_missing_row(t, fig, K, sigma, p_dark, N, M, series);
  }
}

Table curve_table(const std::string &name) { return Table{name, kCurveColumns, {}}; }

void strategy_curves(Table &t, int fig, const FigureConfig &config, int K, double sigma, double p_dark,
                     const GainSet &gains, const std::vector<double> &grid) {
  for (double N : grid) {
    const ProtocolParams params = figure_params(config, K, N, p_dark);
    const std::int64_t M = params.M();
    try_bound(t, fig, K, sigma, p_dark, N, M, "first", [&] { return bound_first_detectors(params, gains); });
    try_bound(t, fig, K, sigma, p_dark, N, M, "last", [&] { return bound_last_detector(params, gains); });
    try_bound(t, fig, K, sigma, p_dark, N, M, "ideal", [&] { return ideal_bound(params); });
    add_classical_row(t, fig, K, sigma, p_dark, N, M, K == 2 ? "classical-best" : "classical-best-k",
                      K == 2 ? best_two_user(N, config.p_error) : best_k_user(K, N, config.p_error), config.eta);
    add_classical_row(t, fig, K, sigma, p_dark, N, M, "classical-limit", classical_limit(K, N, config.p_error),
                      config.eta);
  }
}

std::vector<Table> figure_14(const FigureConfig &config) {
  GainCache cache(config);
  Table t = curve_table("fig14");
  const double sigma = config.sigmas.front();
  const std::vector<double> grid = n_grid(config, 1e2, 1e14);
  const Visibilities two_user = cache.get(2, sigma).mean_visibility;
  for (int K : config.ks) {
    const GainSet &gains = cache.get(K, sigma).mean;
    for (double p_dark : config.p_darks) {
      strategy_curves(t, 14, config, K, sigma, p_dark, gains, grid);
      for (double N : grid) {
        const ProtocolParams params = figure_params(config, K, N, p_dark);
        if (K == 2) {
          try_bound(t, 14, K, sigma, p_dark, N, params.M(), "two-user",
                    [&] { return algorithm_2_1(params, two_user.first); });
        } else {
          try_bound(t, 14, K, sigma, p_dark, N, params.M(), "naive",
                    [&] { return naive_protocol(params, two_user.first); });
        }
      }
    }
  }
  return {t};
}

std::vector<Table> figure_curves(int fig, const FigureConfig &config, double lo, double hi) {
  GainCache cache(config);
  Table t = curve_table("fig" + std::to_string(fig));
  Table vis{"fig" + std::to_string(fig) + "_visibility", {"K", "sigma", "v_first", "v_last", "sd_first", "sd_last"}, {}};
  const std::vector<double> grid = n_grid(config, lo, hi);
  for (int K : config.ks) {
    for (double sigma : config.sigmas) {
      const BatchGains &g = cache.get(K, sigma);
      vis.add({std::int64_t{K}, sigma, g.mean_visibility.first, g.mean_visibility.last, g.sd_visibility.first,
               g.sd_visibility.last});
      for (double p_dark : config.p_darks) strategy_curves(t, fig, config, K, sigma, p_dark, g.mean, grid);
    }
  }
  return {t, vis};
}

struct Advantage {
  double best_ratio = -std::numeric_limits<double>::infinity();
  double best_n = kNaN;
  double limit_ratio = -std::numeric_limits<double>::infinity();
  double limit_n = kNaN;
};

// Classical cost columns precomputed on the N grid for one K.
struct ClassicalColumn {
  std::vector<double> limit;
  std::vector<double> best;
};

ClassicalColumn classical_column(int K, const std::vector<double> &grid, double p_error) {
  ClassicalColumn c;
  for (double N : grid) {
    c.limit.push_back(classical_limit(K, N, p_error));
    c.best.push_back(best_k_user(K, N, p_error));
  }
  return c;
}

// Largest classical-to-quantum ratio along N for the last-detector strategy.
// With energy = true the ratio compares photons instead of bits.
Advantage max_advantage(const FigureConfig &config, int K, double p_dark, const GainSet &gains,
                        const std::vector<double> &grid, const ClassicalColumn &classical, bool energy) {
  Advantage a;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BoundResult b = bound_last_detector(figure_params(config, K, grid[i], p_dark), gains);
    const double quantum = energy ? b.alpha2 : b.q_qubits;
    const double scale = energy ? 1.0 / config.eta : 1.0;
    const double limit = classical.limit[i] * scale / quantum;
    const double best = classical.best[i] * scale / quantum;
    if (limit > a.limit_ratio) {
      a.limit_ratio = limit;
      a.limit_n = grid[i];
    }
    if (best > a.best_ratio) {
      a.best_ratio = best;
      a.best_n = grid[i];
    }
  }
  return a;
}

// Largest dark-count probability that still gives a limit ratio >= 1.
double advantage_boundary(const FigureConfig &config, int K, const GainSet &gains, const std::vector<double> &grid,
                          const ClassicalColumn &classical, bool energy) {
  auto ratio = [&](double log_pd) {
    return max_advantage(config, K, std::pow(10.0, log_pd), gains, grid, classical, energy).limit_ratio;
  };
  double lo = -16.0, hi = -4.0;
  if (ratio(lo) < 1.0) return kNaN;
  if (ratio(hi) >= 1.0) return std::pow(10.0, hi);
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) >= 1.0 ? lo : hi) = mid;
  }
  return std::pow(10.0, lo);
}

std::vector<Table> advantage_figure(int fig, const FigureConfig &config) {
  const bool energy = fig == 18;
  const std::string base = "fig" + std::to_string(fig);
  GainCache cache(config);
  Table heat{base + "_advantage",
             {"K", "circuit", "p_dark", "limit_ratio", "N_at_limit_max", "best_ratio", "N_at_best_max"},
             {}};
  Table boundary{base + "_boundary", {"K", "circuit", "p_dark_boundary"}, {}};
  Table vis{base + "_visibility", {"K", "sigma", "v_first", "v_last", "sd_first", "sd_last"}, {}};
  const double sigma = config.sigmas.front();
  const std::vector<double> grid = n_grid(config, 1e2, 1e18);
  for (int K : config.ks) {
    const BatchGains &g = cache.get(K, sigma);
    vis.add({std::int64_t{K}, sigma, g.mean_visibility.first, g.mean_visibility.last, g.sd_visibility.first,
             g.sd_visibility.last});
    const ClassicalColumn classical = classical_column(K, grid, config.p_error);
    const std::pair<std::string, GainSet> circuits[] = {{"realistic", g.mean}, {"ideal", ideal_gains(K)}};
    for (const auto &[label, gains] : circuits) {
      for (double p_dark : config.p_darks) {
        const Advantage a = max_advantage(config, K, p_dark, gains, grid, classical, energy);
        heat.add({std::int64_t{K}, label, p_dark, a.limit_ratio, a.limit_n, a.best_ratio, a.best_n});
      }
      boundary.add({std::int64_t{K}, label, advantage_boundary(config, K, gains, grid, classical, energy)});
    }
  }
  std::vector<Table> out{heat, boundary, vis};
  if (energy) {
    Table kmax{base + "_kmax", {"v_K", "p_dark", "K_max"}, {}};
    const EccParams ecc{config.delta, config.c};
    for (double v : config.visibilities) {
      for (double p_dark : config.p_darks) {
        kmax.add({v, p_dark, max_users_energy_advantage(ecc, v, config.p_error, p_dark)});
      }
    }
    out.push_back(kmax);
  }
  return out;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ParameterError("row width does not match table '" + name + "'");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string &col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return i;
  }
  throw ParameterError("table '" + name + "' has no column '" + col + "'");
}

double Table::number(std::size_t row, const std::string &col) const {
  const Cell &c = rows.at(row).at(column(col));
  if (const auto *d = std::get_if<double>(&c)) return *d;
  if (const auto *i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw ParameterError("column '" + col + "' is not numeric");
}

std::string Table::text(std::size_t row, const std::string &col) const {
  return format_cell(rows.at(row).at(column(col)));
}

std::string format_cell(const Cell &cell) {
  if (const auto *s = std::get_if<std::string>(&cell)) return *s;
  if (const auto *i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  const double d = std::get<double>(cell);
  if (std::isnan(d)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", d);
  return buf;
}

void write_csv(const Table &table, std::ostream &out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
  out << "\r\n";
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
    out << "\r\n";
  }
}

void write_dat(const Table &table, std::ostream &out) {
  out << "#";
  for (const auto &c : table.columns) out << ' ' << c;
  out << '\n';
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_cell(row[i]);
    out << '\n';
  }
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi >= lo) || per_decade < 1) throw ParameterError("invalid log grid bounds");
  const double a = std::log10(lo), b = std::log10(hi);
  const int steps = static_cast<int>(std::llround((b - a) * per_decade));
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i) grid.push_back(std::pow(10.0, a + (b - a) * i / std::max(steps, 1)));
  if (steps == 0) grid.resize(1);
  return grid;
}

FigureConfig FigureConfig::preset(int figure_id) {
  FigureConfig c;
  switch (figure_id) {
    case 14:
      c.ks = {2, 5, 20};
      break;
    case 15:
      c.ks = {7, 50};
      c.sigmas = {0.01, 0.1};
      break;
    case 16:
      c.ks = {7, 15};
      c.p_darks = {1e-9};
      break;
    case 17:
    case 18:
      c.ks = k_range(2, 100);
      c.p_darks = log_grid(1e-13, 1e-7, 4);
      c.visibilities = {0.98, 0.95, 0.90, 0.85};
      break;
    default:
      throw ParameterError("unknown figure id " + std::to_string(figure_id) + " (expected 14 to 18)");
  }
  return c;
}

BatchGains realized_gains(Design design, int K, const NoiseModel &noise, int realizations) {
  if (realizations < 1) throw ParameterError("need at least one realization");
  const CircuitLayout layout = design_layout(design, K);
  const int last = sum_row(compose_layout(layout));
  std::vector<GainSet> gains;
  gains.reserve(realizations);
  for (int i = 0; i < realizations; ++i) {
    gains.push_back(gain_set(realize_circuit(layout, noise, static_cast<std::uint64_t>(i)), last));
  }
  return summarize_gains(gains);
}

std::vector<VisibilityRow> visibility_sweep(const std::vector<int> &ks, Design design, const NoiseModel &noise,
                                            int realizations) {
  std::vector<VisibilityRow> rows;
  for (int K : ks) {
    const BatchGains g = realized_gains(design, K, noise, realizations);
    rows.push_back(VisibilityRow{K, design, noise.sigma_t, noise.bs_loss_db, g.mean_visibility, g.sd_visibility});
  }
  return rows;
}

Table visibility_table(const std::vector<VisibilityRow> &rows) {
  Table t{"visibility", {"K", "design", "sigma", "loss_db", "v_first", "v_last", "sd_first", "sd_last"}, {}};
  for (const auto &r : rows) {
    t.add({std::int64_t{r.K}, design_name(r.design), r.sigma, r.loss_db, r.mean.first, r.mean.last, r.sd.first,
           r.sd.last});
  }
  return t;
}

ProtocolParams figure_params(const FigureConfig &config, int K, double N, double p_dark) {
  ProtocolParams p;
  p.K = K;
  p.N = N;
  p.ecc = EccParams{config.delta, config.c};
  p.p_error = config.p_error;
  p.eta = config.eta;
  p.p_dark = p_dark;
  p.epsilon = config.epsilon;
  return p;
}

std::vector<Table> figure_tables(int figure_id, const FigureConfig &config) {
  if (config.ks.empty() || config.sigmas.empty() || config.p_darks.empty()) {
    throw ParameterError("figure grids must be nonempty");
  }
  switch (figure_id) {
    case 14: return figure_14(config);
    case 15: return figure_curves(15, config, 1e2, 1e16);
    case 16: return figure_curves(16, config, 1e6, 1e14);
    case 17:
    case 18: return advantage_figure(figure_id, config);
    default: throw ParameterError("unknown figure id " + std::to_string(figure_id) + " (expected 14 to 18)");
  }
}

}  // namespace qfp
