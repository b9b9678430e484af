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

namespace qfp {

// P(X <= k) for X ~ Binomial(n, q).
double binomial_cdf(std::int64_t k, std::int64_t n, double q);

// Smallest k in [0, n] with P(X <= k) >= p.
std::int64_t binomial_inv_cdf(double p, std::int64_t n, double q);

}  // namespace qfp
