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
#ifndef DPNOISE_NOISE_HPP_
#define DPNOISE_NOISE_HPP_

#include <vector>

namespace dpnoise {

// Parameters of the maximum-entropy symmetric integer noise distribution
// p(z) = C * exp(-gamma * z^2) on the support z in [-D, D].
struct NoiseParams {
  int half_width = 1;    // D >= 1
  double gamma = 0.0;    // shape exponent, >= 0; 0 is the uniform limit
};

// A fully materialised noise pmf. Masses are indexed by z + half_width,
// i.e. masses[0] is p(-D) and masses[2D] is p(D). Symmetric by
// construction: each exp(-gamma z^2) is computed once per |z|.
struct NoisePmf {
  NoiseParams params;
  double normaliser = 1.0;       // C = 1 / (2 * sum_{z=1..D} e^{-g z^2} + 1)
  std::vector<double> masses;    // size 2D + 1
  double variance = 0.0;         // sum z^2 p(z), computed from the masses

  int half_width() const { return params.half_width; }
  double gamma() const { return params.gamma; }

  // Mass at integer z; throws std::out_of_range outside [-D, D].
  double mass(int z) const;
  // Mass at integer z, zero outside the support.
  double mass_or_zero(int z) const;
};

// Admissible variance interval for a pmf that strictly decreases in |z|:
// (0, D(D+1)/3), both ends exclusive. The upper end is the variance of
// the uniform distribution on [-D, D].
struct VarianceBound {
  int half_width = 1;
  double upper = 0.0;    // D(D+1)/3
};

VarianceBound variance_bound(int half_width);

// Solves sum_{z=1..D} (2z^2 - 2V) x^{z^2} - V = 0 for the unique root
// x in (0, 1) and returns gamma = -ln x. Requires 0 < V < D(D+1)/3.
// Bisection brackets the root to width <= 1e-15 (or stops early once
// |f| <= 1e-13); a Newton polish in extended precision then picks the
// representable x with the smallest residual.
double solve_gamma(int half_width, double variance);

// Builds the pmf p(z) = C e^{-gamma z^2} for gamma >= 0. gamma = 0 yields
// the uniform distribution on [-D, D].
NoisePmf pmf_from_gamma(int half_width, double gamma);

// V(gamma) = (sum 2 z^2 e^{-gamma z^2}) / (2 sum e^{-gamma z^2} + 1),
// strictly decreasing in gamma. Round-trips with solve_gamma.
double variance_from_gamma(int half_width, double gamma);

}  // namespace dpnoise

#endif  // DPNOISE_NOISE_HPP_
