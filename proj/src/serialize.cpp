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

#include "qfprint/serialize.hpp"

#include "qfprint/errors.hpp"

namespace qfp {

namespace {

std::string kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::unbalanced_beamsplitter: return "unbalanced-beamsplitter";
    case ElementKind::symmetric_beamsplitter: return "symmetric-beamsplitter";
    case ElementKind::phase_shifter: return "phase-shifter";
  }
  return "unknown";
}

}  // namespace

nlohmann::json matrix_to_json(const TransferMatrix &T) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < T.dim(); ++i) {
    nlohmann::json r = nlohmann::json::array(), m = nlohmann::json::array();
    for (int j = 0; j < T.dim(); ++j) {
      r.push_back(T(i, j).real());
      m.push_back(T(i, j).imag());
    }
    re.push_back(r);
    im.push_back(m);
  }
  return {{"dim", T.dim()}, {"re", re}, {"im", im}};
}

TransferMatrix matrix_from_json(const nlohmann::json &j) {
  const int K = j.at("dim").get<int>();
  if (K < 1) throw ParameterError("matrix dimension must be positive");
  const auto &re = j.at("re");
  const auto &im = j.at("im");
  if (re.size() != static_cast<std::size_t>(K) || im.size() != static_cast<std::size_t>(K)) {
    throw ParameterError("matrix JSON row count does not match dim");
  }
  Eigen::MatrixXcd m(K, K);
  for (int r = 0; r < K; ++r) {
    if (re[r].size() != static_cast<std::size_t>(K) || im[r].size() != static_cast<std::size_t>(K)) {
      throw ParameterError("matrix JSON column count does not match dim");
    }
    for (int c = 0; c < K; ++c) m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return TransferMatrix(m);
}

nlohmann::json layout_to_json(const CircuitLayout &layout) {
  nlohmann::json elements = nlohmann::json::array();
  for (const CircuitElement &e : layout.elements) {
    nlohmann::json j{{"kind", kind_name(e.kind)}, {"layer", e.layer}};
    if (e.kind == ElementKind::phase_shifter) {
      j["ports"] = {e.port_min};
      j["phase"] = e.phase;
    } else {
      j["ports"] = {e.port_min, e.port_max};
      j["t"] = e.transmittance;
      j["omega"] = e.omega();
    }
    elements.push_back(j);
  }
  nlohmann::json out{{"dim", layout.dim},
                     {"design", design_name(layout.design)},
                     {"bs_count", layout.bs_count},
                     {"optical_depth", layout.optical_depth},
                     {"elements", elements}};
  if (!layout.output_order.empty()) {
    nlohmann::json order = nlohmann::json::array();
    for (int p : layout.output_order) order.push_back(p + 1);
    out["output_ports"] = order;
  }
  return out;
}

nlohmann::json bound_to_json(const BoundResult &b) {
  return {{"strategy", strategy_name(b.strategy)},
          {"K", b.K},
          {"M", b.M},
          {"alpha2", b.alpha2},
          {"threshold_r", b.threshold_r},
          {"feasible", b.feasible},
          {"dominant_dark_term", b.dominant_dark_term},
          {"photons_per_slot", b.photons_per_slot},
          {"within_validity", b.within_validity},
          {"q_qubits", b.q_qubits},
          {"delta_cap", b.delta_cap}};
}

nlohmann::json verify_to_json(const VerifyReport &report) {
  nlohmann::json scenarios = nlohmann::json::array();
  for (const ScenarioReport &s : report.scenarios) {
    scenarios.push_back({{"strategy", strategy_name(report.strategy)},
                         {"scenario", scenario_name(s.scenario)},
                         {"trials", s.outcome.trials},
                         {"errors", s.outcome.errors},
                         {"error_rate", s.outcome.error_rate},
                         {"wilson_upper_95", s.outcome.wilson_upper_95},
                         {"pass", s.pass}});
  }
  return {{"strategy", strategy_name(report.strategy)},
          {"bound", bound_to_json(report.bound)},
          {"scenarios", scenarios},
          {"pass", report.pass}};
}

}  // namespace qfp
