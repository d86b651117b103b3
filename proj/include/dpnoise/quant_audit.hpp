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
#ifndef DPNOISE_QUANT_AUDIT_HPP_
#define DPNOISE_QUANT_AUDIT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dpnoise/calibration.hpp"
#include "dpnoise/sampler.hpp"

namespace dpnoise {

// The post-quantization pmf: rationals with denominator KEYSIZE, stored
// as exact integer numerators. Numerators sum to KEYSIZE exactly.
struct QuantizedPmf {
  int half_width = 1;
  int keysize_log2 = 8;
  std::vector<std::uint64_t> numerators;    // size 2D + 1
  bool full_support = false;

  std::uint64_t keysize() const { return std::uint64_t{1} << keysize_log2; }
  // Exact: numerator / 2^k (a power-of-two division).
  double mass(int z) const;
  std::vector<double> masses() const;
};

struct QuantMoments {
  double bias = 0.0;        // sum z p^Q(z)
  double variance = 0.0;    // sum z^2 p^Q(z) - bias^2
};

// Post-quantization audit of one (epsilon, D, KEYSIZE) cell. For rows
// without full support, epsilon_q and epsilon_q_two_sided carry the
// maximum over the finite ratios only and full_support flags the row.
struct QuantAudit {
  double epsilon_design = 0.0;
  double delta_design = 0.0;
  int keysize_log2 = 8;
  bool full_support = false;
  double bias_q = 0.0;
  double variance_q = 0.0;
  double var_rel_err = 0.0;          // (V^Q - V) / V against the design pmf
  double epsilon_q = 0.0;            // forward ratios only
  double epsilon_q_two_sided = 0.0;  // max of forward and reverse
  double delta_q = 0.0;              // max(p^Q(-D), p^Q(D))
};

struct EpsilonGrid {
  double lo = 0.1;
  double hi = 2.5;
  double step = 0.1;
};

// Differences of consecutive cumulative entries; exact integer arithmetic.
QuantizedPmf quantized_pmf(const LookupTable& table);

// Bias and variance of the quantized pmf. Integer moment sums keep the
// results exact up to the final subtraction.
QuantMoments bias_variance(const QuantizedPmf& qpmf);

// Smallest epsilon with p^Q(z)/p^Q(z-1) <= e^eps for all z in [-D+1, D]:
// the maximum forward log-ratio, with the logarithm applied to exact
// integer numerator quotients. Throws SupportFailureError when an interior
// zero makes a ratio infinite.
double epsilon_q(const QuantizedPmf& qpmf);

// Conservative variant: the larger of the forward and reverse maxima.
// The quantized pmf is not exactly symmetric, so the directions differ.
double epsilon_q_two_sided(const QuantizedPmf& qpmf);

// max(p^Q(-D), p^Q(D)).
double delta_q(const QuantizedPmf& qpmf);

// Full audit row for a table quantized from the given design pmf.
QuantAudit audit_quantization(const NoisePmf& design, double epsilon_design,
                              const LookupTable& table);

// The KEYSIZE sweep: for every (epsilon, keysize) cell, calibrate the
// noise with the kappa rule, quantize, audit. Rows ordered by
// (keysize_log2 ascending, epsilon ascending).
std::vector<QuantAudit> keysize_sweep(int half_width, const EpsilonGrid& grid,
                                      std::span<const int> keysize_log2s,
                                      const KappaRule& kappa_rule = {});

}  // namespace dpnoise

#endif  // DPNOISE_QUANT_AUDIT_HPP_
