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
#include "dpnoise/noise.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpnoise {
namespace {

void check_half_width(int half_width) {
  if (half_width < 1) {
    throw std::invalid_argument("support half-width D must be >= 1, got " +
                                std::to_string(half_width));
  }
}

// f(x) = sum_{z=1..D} (2z^2 - 2V) x^{z^2} - V, accumulated from the
// largest degree down so the small tail terms are added first.
double poly_f(int half_width, double variance, double x) {
  double acc = 0.0;
  for (int z = half_width; z >= 1; --z) {
    const double zsq = static_cast<double>(z) * z;
    acc += (2.0 * zsq - 2.0 * variance) * std::pow(x, zsq);
  }
  return acc - variance;
}

long double poly_f_ext(int half_width, double variance, long double x) {
  long double acc = 0.0L;
  const long double v = variance;
  for (int z = half_width; z >= 1; --z) {
    const long double zsq = static_cast<long double>(z) * z;
    acc += (2.0L * zsq - 2.0L * v) * std::pow(x, zsq);
  }
  return acc - v;
}

long double poly_fprime_ext(int half_width, double variance, long double x) {
  long double acc = 0.0L;
  const long double v = variance;
  for (int z = half_width; z >= 1; --z) {
    const long double zsq = static_cast<long double>(z) * z;
    acc += (2.0L * zsq - 2.0L * v) * zsq * std::pow(x, zsq - 1.0L);
  }
  return acc;
}

#ifndef NDEBUG
// Root uniqueness on (0,1) is assumed, not proven; a coarse scan guards
// against an admissible V sneaking in more than one sign change.
void assert_single_sign_change(int half_width, double variance) {
  int changes = 0;
  double prev = poly_f(half_width, variance, 0.001);
  for (int i = 2; i <= 999; ++i) {
    const double cur = poly_f(half_width, variance, 0.001 * i);
    if ((prev < 0.0) != (cur < 0.0)) ++changes;
    prev = cur;
  }
  assert(changes <= 1 && "polynomial has multiple sign changes on (0,1)");
}
#endif

}  // namespace

double NoisePmf::mass(int z) const {
  const int d = params.half_width;
  if (z < -d || z > d) {
    throw std::out_of_range("noise value outside [-D, D]");
  }
  return masses[static_cast<std::size_t>(z + d)];
}

double NoisePmf::mass_or_zero(int z) const {
  const int d = params.half_width;
  if (z < -d || z > d) return 0.0;
  return masses[static_cast<std::size_t>(z + d)];
}

VarianceBound variance_bound(int half_width) {
  check_half_width(half_width);
  const double d = half_width;
  return VarianceBound{half_width, d * (d + 1.0) / 3.0};
}

double solve_gamma(int half_width, double variance) {
  const VarianceBound bound = variance_bound(half_width);
  if (!std::isfinite(variance) || variance <= 0.0) {
    throw std::invalid_argument(
        "variance must satisfy V > 0 (lower admissibility bound violated)");
  }
  if (variance >= bound.upper) {
    throw std::invalid_argument(
        "variance must satisfy V < D(D+1)/3 = " + std::to_string(bound.upper) +
        " (upper admissibility bound violated)");
  }
#ifndef NDEBUG
  assert_single_sign_change(half_width, variance);
#endif

  // f(0) = -V < 0 and f(1) = (2D+1)(D(D+1)/3 - V) > 0, so the bracket
  // [lo, hi] always holds a sign change.
  double lo = 0.0;
  double hi = 1.0;
  double x = 0.5;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    x = 0.5 * (lo + hi);
    const double fx = poly_f(half_width, variance, x);
    if (std::abs(fx) <= 1e-13 || (hi - lo) <= 1e-15) {
      converged = true;
      break;
    }
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  if (!converged) {
    throw std::runtime_error(
        "gamma solve did not converge within the iteration cap");
  }

  // Newton polish in extended precision; keep the representable x with
  // the smallest |f|.
  double best = x;
  long double best_abs = std::abs(poly_f_ext(half_width, variance, best));
  double cur = x;
  for (int it = 0; it < 8; ++it) {
    const long double fx = poly_f_ext(half_width, variance, cur);
    const long double dfx = poly_fprime_ext(half_width, variance, cur);
    if (dfx == 0.0L) break;
    double next = static_cast<double>(static_cast<long double>(cur) - fx / dfx);
    if (!(next > 0.0 && next < 1.0)) break;
    const long double fn = std::abs(poly_f_ext(half_width, variance, next));
    if (fn < best_abs) {
      best_abs = fn;
      best = next;
    }
    if (next == cur) break;
    cur = next;
  }
  for (double cand : {std::nextafter(best, 0.0), std::nextafter(best, 1.0)}) {
    if (!(cand > 0.0 && cand < 1.0)) continue;    // keep gamma strictly positive
    const long double fc = std::abs(poly_f_ext(half_width, variance, cand));
    if (fc < best_abs) {
      best_abs = fc;
      best = cand;
    }
  }
  return -std::log(best);
}

NoisePmf pmf_from_gamma(int half_width, double gamma) {
  check_half_width(half_width);
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("gamma must be finite and >= 0");
  }
  const int d = half_width;
  std::vector<double> tail(static_cast<std::size_t>(d));
  for (int z = 1; z <= d; ++z) {
    const double zsq = static_cast<double>(z) * z;
    tail[static_cast<std::size_t>(z - 1)] = std::exp(-gamma * zsq);
  }
  double tail_sum = 0.0;
  for (int z = d; z >= 1; --z) tail_sum += tail[static_cast<std::size_t>(z - 1)];
  const double normaliser = 1.0 / (2.0 * tail_sum + 1.0);

  NoisePmf pmf;
  pmf.params = NoiseParams{half_width, gamma};
  pmf.normaliser = normaliser;
  pmf.masses.assign(static_cast<std::size_t>(2 * d + 1), 0.0);
  pmf.masses[static_cast<std::size_t>(d)] = normaliser;
  for (int z = 1; z <= d; ++z) {
    const double m = normaliser * tail[static_cast<std::size_t>(z - 1)];
    pmf.masses[static_cast<std::size_t>(d + z)] = m;
    pmf.masses[static_cast<std::size_t>(d - z)] = m;
  }
  double var = 0.0;
  for (int z = d; z >= 1; --z) {
    const double zsq = static_cast<double>(z) * z;
    var += 2.0 * zsq * pmf.masses[static_cast<std::size_t>(d + z)];
  }
  pmf.variance = var;
  return pmf;
}

double variance_from_gamma(int half_width, double gamma) {
  check_half_width(half_width);
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("gamma must be finite and >= 0");
  }
  double num = 0.0;
  double den = 0.0;
  for (int z = half_width; z >= 1; --z) {
    const double zsq = static_cast<double>(z) * z;
    const double t = std::exp(-gamma * zsq);
    num += 2.0 * zsq * t;
    den += t;
  }
  return num / (2.0 * den + 1.0);
}

}  // namespace dpnoise
