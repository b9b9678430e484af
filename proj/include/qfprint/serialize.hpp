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

#include <json.hpp>

#include "qfprint/circuits.hpp"
#include "qfprint/mcsim.hpp"

namespace qfp {

// {"dim": K, "re": [[...]], "im": [[...]]}
nlohmann::json matrix_to_json(const TransferMatrix &T);
TransferMatrix matrix_from_json(const nlohmann::json &j);

// List of {kind, ports, t, omega, phase, layer} plus design metadata.
nlohmann::json layout_to_json(const CircuitLayout &layout);

nlohmann::json bound_to_json(const BoundResult &b);
nlohmann::json verify_to_json(const VerifyReport &report);

}  // namespace qfp
