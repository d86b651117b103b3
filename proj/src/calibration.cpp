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
#include "dpnoise/calibration.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

namespace dpnoise {
namespace {

void check_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("epsilon must be finite and > 0");
  }
}

void check_half_width(int half_width) {
  if (half_width < 1) {
    throw std::invalid_argument("support half-width D must be >= 1");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TargetUnreachableError::TargetUnreachableError(double delta_target, int d_max,
                                               double best_delta)
    : std::runtime_error("delta target " + format_double(delta_target) +
                         " unreachable with D <= " + std::to_string(d_max) +
                         "; best achievable delta " +
                         format_double(best_delta)),
      delta_target_(delta_target),
      d_max_(d_max),
      best_delta_(best_delta) {}

double max_kappa(double epsilon, int half_width) {
  check_epsilon(epsilon);
  check_half_width(half_width);
  const double d = half_width;
  return 2.0 * epsilon / (4.0 * d * d - 1.0);
}

double default_kappa_rule(double epsilon, int half_width) {
  check_epsilon(epsilon);
  check_half_width(half_width);
  const double d = half_width;
  return 2.0 * epsilon / (10.0 * (4.0 * d * d - 1.0));
}

std::pair<double, double> gamma_range(double epsilon, int half_width) {
  check_epsilon(epsilon);
  check_half_width(half_width);
  return {epsilon / (2.0 * half_width + 1.0),
          epsilon / (2.0 * half_width - 1.0)};
}

std::pair<double, double> variance_range(double epsilon, int half_width) {
  const auto [gamma_lo, gamma_hi] = gamma_range(epsilon, half_width);
  return {variance_from_gamma(half_width, gamma_hi),
          variance_from_gamma(half_width, gamma_lo)};
}

NoisePmf prop3_pmf(double epsilon, int half_width, double kappa) {
  const double kappa_max = max_kappa(epsilon, half_width);
  if (!std::isfinite(kappa) || kappa <= 0.0 || kappa > kappa_max) {
    throw std::invalid_argument("kappa must lie in (0, " +
                                format_double(kappa_max) + "], got " +
                                format_double(kappa));
  }
  const double gamma = epsilon / (2.0 * half_width - 1.0) - kappa;
  return pmf_from_gamma(half_width, gamma);
}

double delta_from_prop3(double epsilon, int half_width, double kappa) {
  return prop3_pmf(epsilon, half_width, kappa).mass(-half_width);
}

CalibrationResult design_guide(const CalibrationInput& input) {
  check_epsilon(input.epsilon);
  if (!std::isfinite(input.delta_target) || input.delta_target <= 0.0 ||
      input.delta_target >= 1.0) {
    throw std::invalid_argument("delta target must lie in (0, 1)");
  }
  if (input.d_max < 1) {
    throw std::invalid_argument("d_max must be >= 1");
  }
  const KappaRule& rule =
      input.kappa_rule ? input.kappa_rule : KappaRule(default_kappa_rule);

  double best_delta = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= input.d_max; ++d) {
    const double kappa = rule(input.epsilon, d);
    NoisePmf pmf = prop3_pmf(input.epsilon, d, kappa);
    const double delta = pmf.mass(-d);
    if (delta < best_delta) best_delta = delta;
    if (delta <= input.delta_target) {
      CalibrationResult result;
      result.d_star = d;
      result.kappa = kappa;
      result.gamma = pmf.gamma();
      result.variance = pmf.variance;
      result.delta_achieved = delta;
      result.pmf = std::move(pmf);
      return result;
    }
  }
  throw TargetUnreachableError(input.delta_target, input.d_max, best_delta);
}

}  // namespace dpnoise
