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
#ifndef DPNOISE_CALIBRATION_HPP_
#define DPNOISE_CALIBRATION_HPP_

#include <functional>
#include <stdexcept>
#include <utility>

#include "dpnoise/noise.hpp"

namespace dpnoise {

// Rule choosing the positive offset kappa that places gamma just below
// eps/(2D-1), as a function of (epsilon, D).
using KappaRule = std::function<double(double epsilon, int half_width)>;

// Largest admissible kappa: 2 eps / (4D^2 - 1). At this value gamma lands
// exactly on the lower end of the admissible range, eps/(2D+1).
double max_kappa(double epsilon, int half_width);

// Default rule: one tenth of the admissible maximum, 2 eps / (10 (4D^2-1)).
double default_kappa_rule(double epsilon, int half_width);

struct CalibrationInput {
  double epsilon = 0.0;
  double delta_target = 0.0;    // in (0, 1)
  KappaRule kappa_rule;          // empty means default_kappa_rule
  int d_max = 200;               // support search cap
};

struct CalibrationResult {
  int d_star = 0;            // smallest D meeting the target
  double kappa = 0.0;
  double gamma = 0.0;        // eps/(2 d_star - 1) - kappa
  double variance = 0.0;     // realised variance of the pmf
  NoisePmf pmf;
  double delta_achieved = 0.0;
};

// Thrown by design_guide when no D <= d_max reaches the delta target.
class TargetUnreachableError : public std::runtime_error {
 public:
  TargetUnreachableError(double delta_target, int d_max, double best_delta);
  double delta_target() const { return delta_target_; }
  int d_max() const { return d_max_; }
  double best_delta() const { return best_delta_; }

 private:
  double delta_target_;
  int d_max_;
  double best_delta_;
};

// [eps/(2D+1), eps/(2D-1)): every gamma here makes
// floor(0.5 - eps/(2 gamma)) = -D. Closed at the lower end, open above.
std::pair<double, double> gamma_range(double epsilon, int half_width);

// Variance interval induced by gamma_range (V is decreasing in gamma):
// open below, closed above.
std::pair<double, double> variance_range(double epsilon, int half_width);

// The calibrated pmf with gamma = eps/(2D-1) - kappa. Requires
// 0 < kappa <= max_kappa(eps, D); then delta(eps) = p(-D).
NoisePmf prop3_pmf(double epsilon, int half_width, double kappa);

// delta achieved by the calibrated pmf at its design epsilon. Equals
// prop3_pmf(...).mass(-D) exactly (same computation path).
double delta_from_prop3(double epsilon, int half_width, double kappa);

// Scans D = 1..d_max and returns the smallest D whose calibrated delta
// meets the target; throws TargetUnreachableError otherwise.
CalibrationResult design_guide(const CalibrationInput& input);

}  // namespace dpnoise

#endif  // DPNOISE_CALIBRATION_HPP_
