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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "dpnoise/calibration.hpp"
#include "dpnoise/quant_audit.hpp"

namespace dpnoise {
namespace {

NoisePmf worked_example_pmf() {
  return prop3_pmf(0.5, 25, default_kappa_rule(0.5, 25));
}

TEST_CASE("build_lookup quantizes the worked pmf at 2^32") {
  const LookupTable table = build_lookup(worked_example_pmf(), 32);
  REQUIRE(table.cumulative.size() == 51);
  CHECK(table.cumulative[0] == 425760);
  CHECK(table.cumulative[1] == 1126343);
  CHECK(table.cumulative[2] == 2255949);
  CHECK(table.cumulative[49] == 4294541537ull);
  CHECK(table.cumulative[50] == (std::uint64_t{1} << 32));
  CHECK(table.full_support);
  CHECK(check_full_support(table));
  CHECK(table.source_pmf_digest.size() == 16);
}

TEST_CASE("build_lookup flags a too-small key space") {
  const LookupTable table = build_lookup(worked_example_pmf(), 8);
  CHECK_FALSE(table.full_support);
  // The three leftmost tail masses all collapse onto the same entry.
  CHECK(table.cumulative[0] == 1);
  CHECK(table.cumulative[1] == 1);
  CHECK(table.cumulative[2] == 1);
  CHECK(table.cumulative.back() == 256);
}

TEST_CASE("build_lookup uniform D=1 at keysize 8") {
  const LookupTable table = build_lookup(pmf_from_gamma(1, 0.0), 3);
  REQUIRE(table.cumulative.size() == 3);
  CHECK(table.cumulative[0] == 3);
  CHECK(table.cumulative[1] == 6);
  CHECK(table.cumulative[2] == 8);
  CHECK(table.full_support);
}

TEST_CASE("build_lookup validation") {
  CHECK_THROWS_AS(build_lookup(worked_example_pmf(), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_lookup(worked_example_pmf(), 33), std::invalid_argument);
}

TEST_CASE("sample reproduces the worked lookups") {
  const LookupTable table = build_lookup(worked_example_pmf(), 32);
  CHECK(sample(table, CellKey{2552}).value == -25);
  CHECK(sample(table, CellKey{1200124}).value == -23);
  CHECK(sample(table, CellKey{0}).value == -25);
  CHECK(sample(table, CellKey{table.keysize() - 1}).value == 25);
  // Interval edges belong to the next value up.
  CHECK(sample(table, CellKey{425760}).value == -24);
  CHECK(sample(table, CellKey{425759}).value == -25);
}

TEST_CASE("sample refuses a non-full-support table") {
  const LookupTable table = build_lookup(worked_example_pmf(), 8);
  CHECK_THROWS_AS(sample(table, CellKey{7}), SupportFailureError);
}

TEST_CASE("sample validates the key range") {
  const LookupTable table = build_lookup(pmf_from_gamma(1, 0.0), 3);
  CHECK_THROWS_AS(sample(table, CellKey{8}), std::invalid_argument);
  CHECK_THROWS_AS(sample(table, CellKey{12345}), std::invalid_argument);
}

TEST_CASE("sample is monotone in the key") {
  const LookupTable table =
      build_lookup(prop3_pmf(1.0, 5, default_kappa_rule(1.0, 5)), 10);
  REQUIRE(table.full_support);
  int previous = sample(table, CellKey{0}).value;
  CHECK(previous == -5);
  for (std::uint64_t key = 1; key < table.keysize(); ++key) {
    const int current = sample(table, CellKey{key}).value;
    CHECK(current >= previous);
    previous = current;
  }
  CHECK(previous == 5);
}

TEST_CASE("exhaustive keys reproduce the quantized pmf exactly") {
  const LookupTable table =
      build_lookup(prop3_pmf(1.0, 5, default_kappa_rule(1.0, 5)), 10);
  REQUIRE(table.full_support);
  std::vector<std::uint64_t> counts(11, 0);
  for (std::uint64_t key = 0; key < table.keysize(); ++key) {
    ++counts[static_cast<std::size_t>(sample(table, CellKey{key}).value + 5)];
  }
  CHECK(counts == quantized_pmf(table).numerators);
}

TEST_CASE("perturb adds the sampled noise") {
  const LookupTable table = build_lookup(worked_example_pmf(), 32);
  CHECK(perturb(100, table, CellKey{2552}) == 75);
  // Boundary: the smallest admissible count with the leftmost noise.
  CHECK(perturb(25, table, CellKey{0}) == 0);
  // Determinism: the same cell gives the same perturbed count.
  CHECK(perturb(100, table, CellKey{2552}) ==
        perturb(100, table, CellKey{2552}));
}

TEST_CASE("perturb rejects counts below D") {
  const LookupTable table = build_lookup(worked_example_pmf(), 32);
  CHECK_THROWS_WITH_AS(perturb(24, table, CellKey{2552}),
                       doctest::Contains("non-negativity"),
                       std::invalid_argument);
}

TEST_CASE("pigeonhole: keysize below the support size cannot be full") {
  // 2D+1 = 11 strictly increasing positives cannot fit below 2^3 = 8.
  const LookupTable table = build_lookup(pmf_from_gamma(5, 0.1), 3);
  CHECK_FALSE(table.full_support);
}

TEST_CASE("digest tracks the pmf content") {
  const LookupTable a = build_lookup(pmf_from_gamma(3, 0.25), 16);
  const LookupTable b = build_lookup(pmf_from_gamma(3, 0.25), 16);
  const LookupTable c = build_lookup(pmf_from_gamma(3, 0.26), 16);
  CHECK(a.source_pmf_digest == b.source_pmf_digest);
  CHECK(a.source_pmf_digest != c.source_pmf_digest);
}

}  // namespace
}  // namespace dpnoise
