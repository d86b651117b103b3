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
#include "dpnoise/accounting.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace dpnoise {
namespace {

void check_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("epsilon must be finite and > 0");
  }
}

void check_positive_gamma(const NoisePmf& pmf) {
  if (pmf.gamma() <= 0.0) {
    throw std::invalid_argument(
        "gamma must be > 0: the violation-set cutoff 0.5 - eps/(2 gamma) "
        "is undefined for the uniform pmf");
  }
}

}  // namespace

std::string_view to_string(DpProvenance provenance) {
  switch (provenance) {
    case DpProvenance::kAnalytical:
      return "analytical";
    case DpProvenance::kOracle:
      return "oracle";
    case DpProvenance::kNumericSearch:
      return "numeric-search";
    case DpProvenance::kPostQuantization:
      return "post-quantization";
  }
  return "unknown";
}

ViolationSet violation_set(const NoisePmf& pmf, double epsilon) {
  check_epsilon(epsilon);
  check_positive_gamma(pmf);
  const int d = pmf.half_width();
  const double cutoff = 0.5 - epsilon / (2.0 * pmf.gamma());
  // Compare in double before casting: the cutoff can be far below any int.
  if (cutoff < static_cast<double>(-d) + 1.0) {
    return ViolationSet{-d, -d};
  }
  const int zstar = static_cast<int>(std::floor(cutoff));
  return ViolationSet{-d, zstar};
}

DpPoint delta_of_epsilon(const NoisePmf& pmf, double epsilon) {
  const ViolationSet violations = violation_set(pmf, epsilon);
  const int d = pmf.half_width();
  double delta = pmf.mass(-d);
  if (violations.hi > -d) {
    const double ratio_bound = std::exp(epsilon);
    for (int z = -d + 1; z <= violations.hi; ++z) {
      delta += pmf.mass(z) - ratio_bound * pmf.mass(z - 1);
    }
  }
  return DpPoint{epsilon, delta, DpProvenance::kAnalytical};
}

DeltaOracleSums delta_oracle_sums(std::span<const double> masses,
                                  double epsilon) {
  check_epsilon(epsilon);
  if (masses.empty() || masses.size() % 2 == 0) {
    throw std::invalid_argument("mass vector must have odd size 2D+1");
  }
  const int d = static_cast<int>(masses.size() / 2);
  const auto mass = [&](int z) -> double {
    if (z < -d || z > d) return 0.0;
    return masses[static_cast<std::size_t>(z + d)];
  };
  const double ratio_bound = std::exp(epsilon);
  DeltaOracleSums sums;
  for (int z = -d; z <= d + 1; ++z) {
    const double gain = mass(z) - ratio_bound * mass(z - 1);
    if (gain > 0.0) sums.forward += gain;
  }
  for (int z = -d - 1; z <= d; ++z) {
    const double gain = mass(z) - ratio_bound * mass(z + 1);
    if (gain > 0.0) sums.reverse += gain;
  }
  return sums;
}

DpPoint delta_oracle(std::span<const double> masses, double epsilon) {
  const DeltaOracleSums sums = delta_oracle_sums(masses, epsilon);
  return DpPoint{epsilon, std::max(sums.forward, sums.reverse),
                 DpProvenance::kOracle};
}

DpPoint delta_oracle(const NoisePmf& pmf, double epsilon) {
  return delta_oracle(std::span<const double>(pmf.masses), epsilon);
}

double delta_lower_bound(const NoisePmf& pmf) {
  return pmf.mass(-pmf.half_width());
}

DpPoint best_delta_numeric(int half_width, double epsilon,
                           const GammaGrid& grid) {
  check_epsilon(epsilon);
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) ||
      !std::isfinite(grid.step) || grid.lo <= 0.0 || grid.step <= 0.0 ||
      grid.hi < grid.lo) {
    throw std::invalid_argument("gamma grid is empty or invalid");
  }
  const auto points =
      static_cast<long long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
  double best = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < points; ++i) {
    const double gamma = grid.lo + static_cast<double>(i) * grid.step;
    const NoisePmf pmf = pmf_from_gamma(half_width, gamma);
    const double delta = delta_of_epsilon(pmf, epsilon).delta;
    if (delta < best) best = delta;
  }
  return DpPoint{epsilon, best, DpProvenance::kNumericSearch};
}

}  // namespace dpnoise
