// Copyright 2026 The dpnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPNOISE_ACCOUNTING_HPP_
#define DPNOISE_ACCOUNTING_HPP_

#include <span>
#include <string_view>

#include "dpnoise/noise.hpp"

namespace dpnoise {

enum class DpProvenance {
  kAnalytical,
  kOracle,
  kNumericSearch,
  kPostQuantization,
};

std::string_view to_string(DpProvenance provenance);

// One (epsilon, delta) point for a single counting query of sensitivity 1.
struct DpPoint {
  double epsilon = 0.0;
  double delta = 0.0;
  DpProvenance provenance = DpProvenance::kAnalytical;
};

// The integer interval [lo, hi] of noise values whose forward likelihood
// ratio p(z)/p(z-1) exceeds e^epsilon. Always contains -D (the ratio at
// -D is infinite), so lo = -D and hi = max(-D, floor(0.5 - eps/(2 gamma))).
struct ViolationSet {
  int lo = 0;
  int hi = 0;
};

// Both directional sums of the brute-force delta computation:
//   forward = sum_z max(0, p(z) - e^eps p(z-1))
//   reverse = sum_z max(0, p(z) - e^eps p(z+1))
// Out-of-support masses count as zero; positions where both masses are
// zero contribute nothing.
struct DeltaOracleSums {
  double forward = 0.0;
  double reverse = 0.0;
};

// Evaluation grid for the numeric best-delta search.
struct GammaGrid {
  double lo = 1e-4;
  double hi = 0.3;
  double step = 1e-4;
};

// Requires pmf.gamma > 0 and epsilon > 0.
ViolationSet violation_set(const NoisePmf& pmf, double epsilon);

// Exact analytical delta(epsilon) of the noise pmf:
//   delta = p(-D)                                     if zstar <= -D
//   delta = p(-D) + sum_{z=-D+1..zstar} (p(z) - e^eps p(z-1))   otherwise
// with zstar = floor(0.5 - eps/(2 gamma)). Requires gamma > 0.
DpPoint delta_of_epsilon(const NoisePmf& pmf, double epsilon);

// Brute-force delta over an arbitrary mass vector indexed z = -D..D
// (size must be odd). Audits both neighbour directions and returns both
// sums; valid for asymmetric (e.g. quantized) pmfs as well.
DeltaOracleSums delta_oracle_sums(std::span<const double> masses,
                                  double epsilon);

// max(forward, reverse) of delta_oracle_sums, as a DpPoint.
DpPoint delta_oracle(const NoisePmf& pmf, double epsilon);
DpPoint delta_oracle(std::span<const double> masses, double epsilon);

// p(-D): delta(epsilon) can never fall below the endpoint mass.
double delta_lower_bound(const NoisePmf& pmf);

// Minimum analytical delta over pmf_from_gamma(D, gamma) for gamma on the
// grid lo, lo+step, ..., hi. Each grid pmf is built directly from gamma.
DpPoint best_delta_numeric(int half_width, double epsilon,
                           const GammaGrid& grid = GammaGrid{});

}  // namespace dpnoise

#endif  // DPNOISE_ACCOUNTING_HPP_
