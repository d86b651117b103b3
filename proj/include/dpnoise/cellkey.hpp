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
#ifndef DPNOISE_CELLKEY_HPP_
#define DPNOISE_CELLKEY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dpnoise {

// Per-record pseudo-random key, uniform on [0, 2^32).
struct RecordKey {
  std::uint32_t value = 0;
};

struct CellKeyConfig {
  int keysize_log2 = 8;                    // KEYSIZE = 2^keysize_log2, in [1, 32]
  std::uint64_t big_n = 4294967291ull;     // largest prime below 2^32

  std::uint64_t keysize() const { return std::uint64_t{1} << keysize_log2; }
  // Throws std::invalid_argument if keysize_log2 is out of [1, 32] or
  // big_n is not prime.
  void validate() const;
};

// Deterministic aggregate of a cell's record keys, in [0, KEYSIZE).
struct CellKey {
  std::uint64_t value = 0;
};

// SplitMix64 stream (Steele, Lea, Flood 2014); record key i is the low
// 32 bits of the i-th output for the given seed. Identical across
// platforms for a given (count, seed).
std::vector<RecordKey> generate_record_keys(std::size_t count,
                                            std::uint64_t seed);

// Sums byte j of every record key modulo big_n (j = 0..3, least
// significant first), XORs the four component sums and reduces the result
// modulo KEYSIZE. Order-independent: component sums commute.
CellKey aggregate_cell_key(std::span<const RecordKey> keys,
                           const CellKeyConfig& config);

}  // namespace dpnoise

#endif  // DPNOISE_CELLKEY_HPP_
