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
#ifndef DPNOISE_SAMPLER_HPP_
#define DPNOISE_SAMPLER_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpnoise/cellkey.hpp"
#include "dpnoise/noise.hpp"

namespace dpnoise {

// Scaled, ceiled cumulative masses: cumulative[z + D] = ceil(cmf(z) * 2^k).
// The final entry is 2^k exactly. Immutable once built; concurrent
// sampling from a shared table is safe.
struct LookupTable {
  int half_width = 1;
  int keysize_log2 = 8;
  std::vector<std::uint64_t> cumulative;    // size 2D + 1, non-decreasing
  bool full_support = false;                // strictly increasing cumulative
  std::string source_pmf_digest;            // content hash of the source pmf

  std::uint64_t keysize() const { return std::uint64_t{1} << keysize_log2; }
};

// One noise draw, in [-D, D].
struct Sample {
  int value = 0;
};

// Thrown when sampling is attempted from a table whose KEYSIZE cannot
// realise every support value.
class SupportFailureError : public std::runtime_error {
 public:
  explicit SupportFailureError(const std::string& what)
      : std::runtime_error(what) {}
};

// Quantizes the pmf's cmf onto [0, 2^k]. A table without full support is
// still returned (flag false); refusing to use it is the caller's policy.
LookupTable build_lookup(const NoisePmf& pmf, int keysize_log2);

// True iff the cumulative values are strictly increasing (with an implicit
// 0 before the first entry), i.e. every z in [-D, D] is realisable.
bool check_full_support(const LookupTable& table);

// Inverse-cmf lookup: returns z + 1 where cumulative(z) <= key <
// cumulative(z+1), taking cumulative(-D-1) = 0. Binary search over the
// 2D+1 entries. Throws SupportFailureError on a non-full-support table.
Sample sample(const LookupTable& table, CellKey cell_key);

// true_count + sample. Requires true_count >= D so the perturbed count
// stays non-negative.
std::int64_t perturb(std::int64_t true_count, const LookupTable& table,
                     CellKey cell_key);

}  // namespace dpnoise

#endif  // DPNOISE_SAMPLER_HPP_
