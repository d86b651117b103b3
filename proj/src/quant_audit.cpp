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
#include "dpnoise/quant_audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "dpnoise/accounting.hpp"

namespace dpnoise {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LogRatioMaxima {
  double forward = -kInf;       // +inf if some p^Q(z) > 0 sits above a zero
  double reverse = -kInf;
  double forward_finite = -kInf;
  double reverse_finite = -kInf;
};

// Scans the numerator pairs (z, z-1) for z in [-D+1, D]. Pairs where both
// numerators are zero contribute nothing.
LogRatioMaxima log_ratio_maxima(const QuantizedPmf& qpmf) {
  LogRatioMaxima maxima;
  const std::size_t n = qpmf.numerators.size();
  for (std::size_t i = 1; i < n; ++i) {
    const std::uint64_t upper = qpmf.numerators[i];
    const std::uint64_t lower = qpmf.numerators[i - 1];
    if (upper > 0 && lower > 0) {
      const double log_ratio =
          std::log(static_cast<double>(upper) / static_cast<double>(lower));
      maxima.forward = std::max(maxima.forward, log_ratio);
      maxima.reverse = std::max(maxima.reverse, -log_ratio);
      maxima.forward_finite = std::max(maxima.forward_finite, log_ratio);
      maxima.reverse_finite = std::max(maxima.reverse_finite, -log_ratio);
    } else if (upper > 0) {
      maxima.forward = kInf;
    } else if (lower > 0) {
      maxima.reverse = kInf;
    }
  }
  return maxima;
}

void check_full_support_input(const QuantizedPmf& qpmf) {
  if (!qpmf.full_support) {
    throw SupportFailureError(
        "quantized pmf lacks full support: an interior zero mass makes a "
        "likelihood ratio infinite");
  }
}

}  // namespace

double QuantizedPmf::mass(int z) const {
  if (z < -half_width || z > half_width) {
    throw std::out_of_range("noise value outside [-D, D]");
  }
  return static_cast<double>(numerators[static_cast<std::size_t>(z + half_width)]) /
         static_cast<double>(keysize());
}

std::vector<double> QuantizedPmf::masses() const {
  std::vector<double> out;
  out.reserve(numerators.size());
  const double denom = static_cast<double>(keysize());
  for (const std::uint64_t numerator : numerators) {
    out.push_back(static_cast<double>(numerator) / denom);
  }
  return out;
}

QuantizedPmf quantized_pmf(const LookupTable& table) {
  QuantizedPmf qpmf;
  qpmf.half_width = table.half_width;
  qpmf.keysize_log2 = table.keysize_log2;
  qpmf.numerators.reserve(table.cumulative.size());
  std::uint64_t previous = 0;
  for (const std::uint64_t value : table.cumulative) {
    qpmf.numerators.push_back(value - previous);
    previous = value;
  }
  qpmf.full_support =
      std::ranges::all_of(qpmf.numerators, [](std::uint64_t n) { return n > 0; });
  return qpmf;
}

QuantMoments bias_variance(const QuantizedPmf& qpmf) {
  __int128 first_moment = 0;
  __int128 second_moment = 0;
  const int d = qpmf.half_width;
  for (int z = -d; z <= d; ++z) {
    const auto numerator = static_cast<__int128>(
        qpmf.numerators[static_cast<std::size_t>(z + d)]);
    first_moment += numerator * z;
    second_moment += numerator * z * z;
  }
  const double denom = static_cast<double>(qpmf.keysize());
  const double bias = static_cast<double>(static_cast<long double>(first_moment)) / denom;
  const double m2 = static_cast<double>(static_cast<long double>(second_moment)) / denom;
  return QuantMoments{bias, m2 - bias * bias};
}

double epsilon_q(const QuantizedPmf& qpmf) {
  check_full_support_input(qpmf);
  return log_ratio_maxima(qpmf).forward;
}

double epsilon_q_two_sided(const QuantizedPmf& qpmf) {
  check_full_support_input(qpmf);
  const LogRatioMaxima maxima = log_ratio_maxima(qpmf);
  return std::max(maxima.forward, maxima.reverse);
}

double delta_q(const QuantizedPmf& qpmf) {
  const std::uint64_t endpoint =
      std::max(qpmf.numerators.front(), qpmf.numerators.back());
  return static_cast<double>(endpoint) / static_cast<double>(qpmf.keysize());
}

QuantAudit audit_quantization(const NoisePmf& design, double epsilon_design,
                              const LookupTable& table) {
  const QuantizedPmf qpmf = quantized_pmf(table);
  const QuantMoments moments = bias_variance(qpmf);

  QuantAudit audit;
  audit.epsilon_design = epsilon_design;
  audit.delta_design = delta_of_epsilon(design, epsilon_design).delta;
  audit.keysize_log2 = table.keysize_log2;
  audit.full_support = qpmf.full_support;
  audit.bias_q = moments.bias;
  audit.variance_q = moments.variance;
  audit.var_rel_err = (moments.variance - design.variance) / design.variance;
  audit.delta_q = delta_q(qpmf);
  const LogRatioMaxima maxima = log_ratio_maxima(qpmf);
  if (qpmf.full_support) {
    audit.epsilon_q = maxima.forward;
    audit.epsilon_q_two_sided = std::max(maxima.forward, maxima.reverse);
  } else {
    // Infinite ratios are excluded; full_support = false is the sentinel.
    const double finite =
        std::max(maxima.forward_finite, maxima.reverse_finite);
    audit.epsilon_q = finite;
    audit.epsilon_q_two_sided = finite;
  }
  return audit;
}

std::vector<QuantAudit> keysize_sweep(int half_width, const EpsilonGrid& grid,
                                      std::span<const int> keysize_log2s,
                                      const KappaRule& kappa_rule) {
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) ||
      !std::isfinite(grid.step) || grid.lo <= 0.0 || grid.step <= 0.0 ||
      grid.hi < grid.lo) {
    throw std::invalid_argument("epsilon grid is empty or invalid");
  }
  if (keysize_log2s.empty()) {
    throw std::invalid_argument("keysize list is empty");
  }
  const KappaRule& rule =
      kappa_rule ? kappa_rule : KappaRule(default_kappa_rule);
  std::vector<int> keysizes(keysize_log2s.begin(), keysize_log2s.end());
  std::ranges::sort(keysizes);

  const auto points =
      static_cast<long long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
  std::vector<QuantAudit> rows;
  rows.reserve(static_cast<std::size_t>(points) * keysizes.size());
  for (const int keysize_log2 : keysizes) {
    for (long long i = 0; i < points; ++i) {
      const double epsilon = grid.lo + static_cast<double>(i) * grid.step;
      const double kappa = rule(epsilon, half_width);
      const NoisePmf pmf = prop3_pmf(epsilon, half_width, kappa);
      const LookupTable table = build_lookup(pmf, keysize_log2);
      rows.push_back(audit_quantization(pmf, epsilon, table));
    }
  }
  return rows;
}

}  // namespace dpnoise
