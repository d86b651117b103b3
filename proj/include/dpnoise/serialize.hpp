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
#ifndef DPNOISE_SERIALIZE_HPP_
#define DPNOISE_SERIALIZE_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpnoise/accounting.hpp"
#include "dpnoise/calibration.hpp"
#include "dpnoise/cellkey.hpp"
#include "dpnoise/noise.hpp"
#include "dpnoise/quant_audit.hpp"
#include "dpnoise/sampler.hpp"

namespace dpnoise {

// Field order in every document is fixed; ordered_json preserves it.
using json = nlohmann::ordered_json;

// FNV-1a 64 over the pmf's content (D, gamma, C, variance, masses as
// little-endian binary64), as 16 hex characters.
std::string pmf_digest(const NoisePmf& pmf);

// {"D":, "gamma":, "C":, "variance":, "masses":[...]}
json pmf_to_json(const NoisePmf& pmf);
// Validates the type invariants: size, symmetry (exact), mass sum and
// variance consistency within 1e-12.
NoisePmf pmf_from_json(const json& doc);

// {"version":1, "D":, "keysize_log2":, "full_support":,
//  "source_pmf_digest":, "cumulative":[...]}
json table_to_json(const LookupTable& table);
LookupTable table_from_json(const json& doc);

// {"epsilon":, "delta":, "provenance":}
json dp_point_to_json(const DpPoint& point);

// {"epsilon":, "delta_target":, "D_star":, "kappa":, "gamma":, "V":,
//  "delta_achieved":, "pmf": {...}}
json calibration_to_json(double epsilon, double delta_target,
                         const CalibrationResult& result);

// One row of the delta-sweep CSV; numeric_min is blank when the numeric
// search was not requested.
struct DeltaSweepRow {
  double epsilon = 0.0;
  double delta_analytical = 0.0;
  std::optional<double> delta_numeric_min;
  int half_width = 1;
  double gamma = 0.0;
  double variance = 0.0;
};

// "epsilon,delta_analytical,delta_numeric_min,D,gamma,V"; one row per
// epsilon, ascending. Numbers carry 17 significant digits.
std::string delta_sweep_csv(std::span<const DeltaSweepRow> rows);

// "epsilon_design,delta_design,keysize_log2,full_support,bias_q,
//  variance_q,var_rel_err,epsilon_q,epsilon_q_twosided,delta_q"
std::string audit_csv(std::span<const QuantAudit> rows);

// Newline-delimited unsigned integers < 2^32; blank lines are skipped.
std::vector<RecordKey> read_record_keys(std::istream& in);

}  // namespace dpnoise

#endif  // DPNOISE_SERIALIZE_HPP_
