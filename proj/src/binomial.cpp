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

#include "qfprint/binomial.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "qfprint/errors.hpp"

namespace qfp {

double binomial_cdf(std::int64_t k, std::int64_t n, double q) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (q <= 0.0) return 1.0;
  if (q >= 1.0) return 0.0;
  return boost::math::ibetac(static_cast<double>(k + 1), static_cast<double>(n - k), q);
}

std::int64_t binomial_inv_cdf(double p, std::int64_t n, double q) {
  if (n < 1) throw ParameterError("binomial needs at least one trial");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probability outside [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("success probability outside [0, 1]");
  if (p >= 1.0) return n;
  if (p <= 0.0 || q <= 0.0) return 0;
  if (q >= 1.0) return n;

  // Bracket with a wide normal window, then widen until it provably holds.
  const double mean = static_cast<double>(n) * q;
  const double sd = std::sqrt(mean * (1.0 - q));
  const double z = std::clamp(p, 1e-300, 1.0 - 1e-16);
  const double zq = boost::math::quantile(boost::math::normal(), z);
  const double width = (std::abs(zq) + 10.0) * sd + 10.0;
  std::int64_t lo = std::max<std::int64_t>(-1, static_cast<std::int64_t>(std::floor(mean - width)));
  std::int64_t hi = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::ceil(mean + width)));
  // Invariant: cdf(lo) < p (cdf(-1) = 0) and cdf(hi) >= p.
  while (lo >= 0 && binomial_cdf(lo, n, q) >= p) lo = std::max<std::int64_t>(-1, lo - (hi - lo) - 1);
  while (binomial_cdf(hi, n, q) < p) hi = std::min<std::int64_t>(n, hi + (hi - lo) + 1);
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (binomial_cdf(mid, n, q) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace qfp
