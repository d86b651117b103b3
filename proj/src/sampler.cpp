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
#include "dpnoise/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "dpnoise/serialize.hpp"

namespace dpnoise {

LookupTable build_lookup(const NoisePmf& pmf, int keysize_log2) {
  if (keysize_log2 < 1 || keysize_log2 > 32) {
    throw std::invalid_argument("keysize_log2 must lie in [1, 32], got " +
                                std::to_string(keysize_log2));
  }
  const int d = pmf.half_width();
  const std::uint64_t keysize_int = std::uint64_t{1} << keysize_log2;
  const double keysize = std::ldexp(1.0, keysize_log2);

  LookupTable table;
  table.half_width = d;
  table.keysize_log2 = keysize_log2;
  table.source_pmf_digest = pmf_digest(pmf);
  table.cumulative.resize(static_cast<std::size_t>(2 * d + 1));

  double cmf = 0.0;
  for (std::size_t i = 0; i < table.cumulative.size(); ++i) {
    cmf += pmf.masses[i];
    const double scaled = std::ceil(cmf * keysize);
    table.cumulative[i] =
        std::min(static_cast<std::uint64_t>(scaled), keysize_int);
  }
  // cmf(D) = 1, so the last entry is the key size exactly even if the
  // accumulated sum fell an ulp short of 1.
  table.cumulative.back() = keysize_int;
  table.full_support = check_full_support(table);
  return table;
}

bool check_full_support(const LookupTable& table) {
  std::uint64_t previous = 0;
  for (const std::uint64_t value : table.cumulative) {
    if (value <= previous) return false;
    previous = value;
  }
  return true;
}

Sample sample(const LookupTable& table, CellKey cell_key) {
  if (cell_key.value >= table.keysize()) {
    throw std::invalid_argument("cell key " + std::to_string(cell_key.value) +
                                " outside [0, KEYSIZE)");
  }
  if (!table.full_support) {
    throw SupportFailureError(
        "lookup table lacks full support: KEYSIZE = 2^" +
        std::to_string(table.keysize_log2) +
        " is insufficient for this pmf; increase the key size or adjust "
        "the noise parameters");
  }
  const auto it = std::upper_bound(table.cumulative.begin(),
                                   table.cumulative.end(), cell_key.value);
  const auto index = static_cast<int>(it - table.cumulative.begin());
  return Sample{index - table.half_width};
}

std::int64_t perturb(std::int64_t true_count, const LookupTable& table,
                     CellKey cell_key) {
  if (true_count < table.half_width) {
    throw std::invalid_argument(
        "true count " + std::to_string(true_count) + " is below D = " +
        std::to_string(table.half_width) +
        "; the non-negativity assumption on the perturbed count would be "
        "violated");
  }
  return true_count + sample(table, cell_key).value;
}

}  // namespace dpnoise
