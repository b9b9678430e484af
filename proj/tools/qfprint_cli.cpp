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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfprint/errors.hpp"
#include "qfprint/figures.hpp"
#include "qfprint/mcsim.hpp"
#include "qfprint/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qfp;

namespace {

// Values from the JSON config file fill in options not given on the command line.
class ConfigMerge {
 public:
  explicit ConfigMerge(const std::string &path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    config_ = json::parse(in);
    if (!config_.is_object()) throw ParameterError("config file must hold a JSON object");
  }

  template <typename T>
  void fill(const CLI::App &app, const std::string &key, T &value) const {
    if (app.get_option("--" + key)->count() == 0 && config_.contains(key)) value = config_.at(key).get<T>();
  }

  template <typename T>
  void fill(const CLI::App &app, const std::string &key, std::optional<T> &value) const {
    if (app.get_option("--" + key)->count() == 0 && config_.contains(key)) value = config_.at(key).get<T>();
  }

 private:
  json config_ = json::object();
};

std::ostream &open_out(const std::string &path, std::ofstream &file) {
  if (path.empty() || path == "-") return std::cout;
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  file.open(path, std::ios::binary);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  return file;
}

void write_json(const json &j, const std::string &path) {
  std::ofstream file;
  open_out(path, file) << j.dump(2) << "\n";
}

LossConvention parse_loss(const std::string &s) {
  if (s == "per-block") return LossConvention::per_block;
  if (s == "per-splitter") return LossConvention::per_symmetric_splitter;
  throw ParameterError("unknown loss convention '" + s + "' (expected per-block or per-splitter)");
}

struct DesignArgs {
  std::string config;
  int k = 4;
  std::string design = "optimal";
  std::string out = ".";
};

void run_design(const CLI::App &app, DesignArgs a) {
  const ConfigMerge cfg(a.config);
  cfg.fill(app, "k", a.k);
  cfg.fill(app, "design", a.design);
  cfg.fill(app, "out", a.out);
  const Design d = parse_design(a.design);
  const CircuitLayout layout = design_layout(d, a.k);
  const std::string stem = design_name(d) + "-" + std::to_string(a.k);
  fs::create_directories(a.out);
  write_json(matrix_to_json(compose_layout(layout)), (fs::path(a.out) / (stem + "-matrix.json")).string());
  write_json(layout_to_json(layout), (fs::path(a.out) / (stem + "-layout.json")).string());
  std::printf("design=%s K=%d bs_count=%d optical_depth=%d longest_path=%d\n", design_name(d).c_str(), a.k,
              layout.bs_count, layout.optical_depth, longest_path_depth(layout));
}

struct VisibilityArgs {
  std::string config;
  std::vector<int> ks;
  int k_min = 2;
  int k_max = 30;
  std::string design = "optimal";
  double sigma = 0.01;
  double bs_loss_db = -0.2;
  std::string loss_convention = "per-block";
  int realizations = 500;
  std::uint64_t seed = 1;
  std::string out;
};

void run_visibility(const CLI::App &app, VisibilityArgs a) {
  const ConfigMerge cfg(a.config);
  cfg.fill(app, "k", a.ks);
  cfg.fill(app, "k-min", a.k_min);
  cfg.fill(app, "k-max", a.k_max);
  cfg.fill(app, "design", a.design);
  cfg.fill(app, "sigma", a.sigma);
  cfg.fill(app, "bs-loss-db", a.bs_loss_db);
  cfg.fill(app, "loss-convention", a.loss_convention);
  cfg.fill(app, "realizations", a.realizations);
  cfg.fill(app, "seed", a.seed);
  cfg.fill(app, "out", a.out);
  if (a.ks.empty()) {
    for (int k = a.k_min; k <= a.k_max; ++k) a.ks.push_back(k);
  }
  if (a.ks.empty()) throw ParameterError("K grid is empty");
  NoiseModel noise = NoiseModel::uniform(a.sigma, a.bs_loss_db, a.seed);
  noise.loss_convention = parse_loss(a.loss_convention);
  std::ofstream file;
  write_csv(visibility_table(visibility_sweep(a.ks, parse_design(a.design), noise, a.realizations)),
            open_out(a.out, file));
}

struct FigureArgs {
  std::string config;
  int id = 14;
  std::string out = "figures";
  std::optional<double> p_error, eta, bs_loss_db, n_min, n_max;
  std::vector<double> p_dark, sigma, visibility;
  std::vector<int> ks;
  std::optional<std::string> design, loss_convention;
  std::optional<int> realizations, points_per_decade;
  std::optional<std::uint64_t> seed;
};

void run_figure(const CLI::App &app, FigureArgs a) {
  const ConfigMerge cfg(a.config);
  cfg.fill(app, "id", a.id);
  cfg.fill(app, "out", a.out);
  FigureConfig c = FigureConfig::preset(a.id);
  auto take = [&](const std::string &key, auto &opt, auto &field) {
    cfg.fill(app, key, opt);
    if (opt) field = *opt;
  };
  take("p-error", a.p_error, c.p_error);
  take("eta", a.eta, c.eta);
  take("bs-loss-db", a.bs_loss_db, c.bs_loss_db);
  take("realizations", a.realizations, c.realizations);
  take("points-per-decade", a.points_per_decade, c.points_per_decade);
  take("seed", a.seed, c.seed);
  cfg.fill(app, "n-min", a.n_min);
  if (a.n_min) c.n_min = a.n_min;
  cfg.fill(app, "n-max", a.n_max);
  if (a.n_max) c.n_max = a.n_max;
  cfg.fill(app, "design", a.design);
  if (a.design) c.design = parse_design(*a.design);
  cfg.fill(app, "loss-convention", a.loss_convention);
  if (a.loss_convention) c.loss_convention = parse_loss(*a.loss_convention);
  cfg.fill(app, "p-dark", a.p_dark);
  if (!a.p_dark.empty()) c.p_darks = a.p_dark;
  cfg.fill(app, "sigma", a.sigma);
  if (!a.sigma.empty()) c.sigmas = a.sigma;
  cfg.fill(app, "visibility", a.visibility);
  if (!a.visibility.empty()) c.visibilities = a.visibility;
  cfg.fill(app, "k", a.ks);
  if (!a.ks.empty()) c.ks = a.ks;

  fs::create_directories(a.out);
  for (const Table &t : figure_tables(a.id, c)) {
    std::ofstream csv(fs::path(a.out) / (t.name + ".csv"), std::ios::binary);
    write_csv(t, csv);
    std::ofstream dat(fs::path(a.out) / (t.name + ".dat"), std::ios::binary);
    write_dat(t, dat);
    std::printf("wrote %s (%zu rows)\n", (fs::path(a.out) / (t.name + ".csv")).string().c_str(), t.rows.size());
  }
}

struct VerifyArgs {
  std::string config;
  std::vector<int> ks{2, 3, 4};
  std::vector<std::string> strategy{"first", "last"};
  std::string design = "optimal";
  double p_error = 1e-2;
  double m = 1e4;
  double p_dark = 1e-6;
  double eta = 0.5;
  double sigma = 0.01;
  double bs_loss_db = -0.2;
  int trials = 0;
  std::uint64_t seed = 1;
  std::string sabotage;
  std::string out;
};

void parse_sabotage(const std::string &s, VerifyOptions &opt) {
  if (s.empty()) return;
  try {
    if (s.rfind("alpha2/", 0) == 0) {
      opt.alpha2_scale = 1.0 / std::stod(s.substr(7));
      return;
    }
    if (s.rfind("r*", 0) == 0) {
      opt.threshold_scale = std::stod(s.substr(2));
      return;
    }
  } catch (const std::logic_error &) {
  }
  throw ParameterError("sabotage must look like alpha2/X or r*X, got '" + s + "'");
}

int run_verify(const CLI::App &app, VerifyArgs a) {
  const ConfigMerge cfg(a.config);
  cfg.fill(app, "k", a.ks);
  cfg.fill(app, "strategy", a.strategy);
  cfg.fill(app, "design", a.design);
  cfg.fill(app, "p-error", a.p_error);
  cfg.fill(app, "m", a.m);
  cfg.fill(app, "p-dark", a.p_dark);
  cfg.fill(app, "eta", a.eta);
  cfg.fill(app, "sigma", a.sigma);
  cfg.fill(app, "bs-loss-db", a.bs_loss_db);
  cfg.fill(app, "trials", a.trials);
  cfg.fill(app, "seed", a.seed);
  cfg.fill(app, "sabotage", a.sabotage);
  cfg.fill(app, "out", a.out);

  VerifyOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  parse_sabotage(a.sabotage, opt);
  const Design design = parse_design(a.design);
  json cases = json::array();
  bool all_pass = true;
  for (int K : a.ks) {
    const CircuitLayout layout = design_layout(design, K);
    const TransferMatrix T = realize_circuit(layout, NoiseModel::uniform(a.sigma, a.bs_loss_db, a.seed), std::uint64_t{0});
    const GainSet g = gain_set(T, sum_row(compose_layout(layout)));
    ProtocolParams p;
    p.K = K;
    p.N = a.m / p.ecc.c;
    p.p_error = a.p_error;
    p.p_dark = a.p_dark;
    p.eta = a.eta;
    for (const std::string &name : a.strategy) {
      const Strategy s = parse_strategy(name);
      json entry{{"K", K}, {"M", p.M()}};
      try {
        entry["report"] = verify_to_json(verify_bound(s, p, g, T, opt));
        entry["pass"] = entry["report"]["pass"];
      } catch (const ValidityError &e) {
        entry["strategy"] = name;
        entry["error"] = e.what();
        entry["pass"] = false;
      } catch (const FeasibilityError &e) {
        entry["strategy"] = name;
        entry["error"] = e.what();
        entry["pass"] = false;
      }
      all_pass = all_pass && entry["pass"].get<bool>();
      cases.push_back(entry);
    }
  }
  write_json(json{{"seed", a.seed}, {"sabotage", a.sabotage}, {"cases", cases}, {"pass", all_pass}}, a.out);
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Coherent-state multiparty fingerprinting: circuits, bounds, figures and Monte Carlo checks"};
  app.require_subcommand(1);

  DesignArgs da;
  CLI::App *design = app.add_subcommand("design", "Write the transfer matrix and layout of one multiport design");
  design->add_option("--config", da.config, "JSON file with option values");
  design->add_option("--k", da.k, "Number of ports")->check(CLI::Range(2, 4096));
  design->add_option("--design", da.design, "optimal, extendable, gbs-reck or gbs-clements");
  design->add_option("--out", da.out, "Output directory");

  VisibilityArgs va;
  CLI::App *vis = app.add_subcommand("visibility", "Mean and spread of both visibilities over noisy realizations");
  vis->add_option("--config", va.config, "JSON file with option values");
  vis->add_option("--k", va.ks, "Explicit K values")->delimiter(',');
  vis->add_option("--k-min", va.k_min, "Smallest K of the range");
  vis->add_option("--k-max", va.k_max, "Largest K of the range");
  vis->add_option("--design", va.design, "Circuit design");
  vis->add_option("--sigma", va.sigma, "Fabrication noise level");
  vis->add_option("--bs-loss-db", va.bs_loss_db, "Loss per beamsplitter in dB (nonpositive)");
  vis->add_option("--loss-convention", va.loss_convention, "per-block or per-splitter");
  vis->add_option("--realizations", va.realizations, "Noisy realizations per K");
  vis->add_option("--seed", va.seed, "Seed");
  vis->add_option("--out", va.out, "CSV file (stdout if omitted)");

  FigureArgs fa;
  CLI::App *fig = app.add_subcommand("figure", "Write the data tables of one figure preset");
  fig->add_option("--config", fa.config, "JSON file with option values");
  fig->add_option("--id", fa.id, "Figure id, 14 to 18");
  fig->add_option("--out", fa.out, "Output directory");
  fig->add_option("--p-error", fa.p_error, "Target error probability");
  fig->add_option("--eta", fa.eta, "Combined channel and detector efficiency");
  fig->add_option("--bs-loss-db", fa.bs_loss_db, "Loss per beamsplitter in dB");
  fig->add_option("--p-dark", fa.p_dark, "Dark count probabilities")->delimiter(',');
  fig->add_option("--sigma", fa.sigma, "Fabrication noise levels")->delimiter(',');
  fig->add_option("--visibility", fa.visibility, "Visibilities for the user-count curves")->delimiter(',');
  fig->add_option("--k", fa.ks, "K values")->delimiter(',');
  fig->add_option("--design", fa.design, "Circuit design");
  fig->add_option("--loss-convention", fa.loss_convention, "per-block or per-splitter");
  fig->add_option("--realizations", fa.realizations, "Noisy realizations per K");
  fig->add_option("--points-per-decade", fa.points_per_decade, "N grid density");
  fig->add_option("--n-min", fa.n_min, "Smallest N");
  fig->add_option("--n-max", fa.n_max, "Largest N");
  fig->add_option("--seed", fa.seed, "Seed");

  VerifyArgs ra;
  CLI::App *ver = app.add_subcommand("verify", "Check the bounds against the click-level simulator");
  ver->add_option("--config", ra.config, "JSON file with option values");
  ver->add_option("--k", ra.ks, "K values")->delimiter(',');
  ver->add_option("--strategy", ra.strategy, "first and/or last")->delimiter(',');
  ver->add_option("--design", ra.design, "Circuit design");
  ver->add_option("--p-error", ra.p_error, "Target error probability");
  ver->add_option("--m", ra.m, "Code length M");
  ver->add_option("--p-dark", ra.p_dark, "Dark count probability");
  ver->add_option("--eta", ra.eta, "Combined efficiency");
  ver->add_option("--sigma", ra.sigma, "Fabrication noise of the realization");
  ver->add_option("--bs-loss-db", ra.bs_loss_db, "Loss per beamsplitter in dB");
  ver->add_option("--trials", ra.trials, "Trials per scenario (0 picks a default)");
  ver->add_option("--seed", ra.seed, "Seed");
  ver->add_option("--sabotage", ra.sabotage, "alpha2/X or r*X");
  ver->add_option("--out", ra.out, "JSON report file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*design) run_design(*design, da);
    if (*vis) run_visibility(*vis, va);
    if (*fig) run_figure(*fig, fa);
    if (*ver) return run_verify(*ver, ra);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
