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
#include "dpnoise/cellkey.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace dpnoise {
namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

void CellKeyConfig::validate() const {
  if (keysize_log2 < 1 || keysize_log2 > 32) {
    throw std::invalid_argument("keysize_log2 must lie in [1, 32], got " +
                                std::to_string(keysize_log2));
  }
  if (!is_prime_u64(big_n)) {
    throw std::invalid_argument("big_n must be prime, got " +
                                std::to_string(big_n));
  }
}

std::vector<RecordKey> generate_record_keys(std::size_t count,
                                            std::uint64_t seed) {
  if (count == 0) {
    throw std::invalid_argument("record key count must be >= 1");
  }
  std::vector<RecordKey> keys;
  keys.reserve(count);
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < count; ++i) {
    keys.push_back(RecordKey{static_cast<std::uint32_t>(splitmix64_next(state))});
  }
  return keys;
}

CellKey aggregate_cell_key(std::span<const RecordKey> keys,
                           const CellKeyConfig& config) {
  config.validate();
  if (keys.empty()) {
    throw std::invalid_argument("cannot aggregate an empty cell");
  }
  // Component j accumulates byte j of every key; reduced each step, so
  // intermediates never exceed big_n - 1 + 255.
  std::array<std::uint64_t, 4> component{};
  for (const RecordKey key : keys) {
    for (int j = 0; j < 4; ++j) {
      component[static_cast<std::size_t>(j)] =
          (component[static_cast<std::size_t>(j)] +
           ((key.value >> (8 * j)) & 0xFFu)) %
          config.big_n;
    }
  }
  const std::uint64_t mixed =
      component[0] ^ component[1] ^ component[2] ^ component[3];
  return CellKey{mixed & (config.keysize() - 1)};
}

}  // namespace dpnoise
