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
#include "dpnoise/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <stdexcept>

namespace dpnoise {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

void fnv1a_bytes(std::uint64_t& hash, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= kFnvPrime;
  }
}

void fnv1a_double(std::uint64_t& hash, double value) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof(bits));
  fnv1a_bytes(hash, &bits, sizeof(bits));
}

std::string format17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void require_field(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + '"');
  }
}

}  // namespace

std::string pmf_digest(const NoisePmf& pmf) {
  std::uint64_t hash = kFnvOffset;
  const auto d = static_cast<std::int64_t>(pmf.half_width());
  fnv1a_bytes(hash, &d, sizeof(d));
  fnv1a_double(hash, pmf.gamma());
  fnv1a_double(hash, pmf.normaliser);
  fnv1a_double(hash, pmf.variance);
  for (const double mass : pmf.masses) fnv1a_double(hash, mass);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

json pmf_to_json(const NoisePmf& pmf) {
  json doc;
  doc["D"] = pmf.half_width();
  doc["gamma"] = pmf.gamma();
  doc["C"] = pmf.normaliser;
  doc["variance"] = pmf.variance;
  doc["masses"] = pmf.masses;
  return doc;
}

NoisePmf pmf_from_json(const json& doc) {
  for (const char* key : {"D", "gamma", "C", "variance", "masses"}) {
    require_field(doc, key);
  }
  NoisePmf pmf;
  pmf.params.half_width = doc["D"].get<int>();
  pmf.params.gamma = doc["gamma"].get<double>();
  pmf.normaliser = doc["C"].get<double>();
  pmf.variance = doc["variance"].get<double>();
  pmf.masses = doc["masses"].get<std::vector<double>>();

  const int d = pmf.params.half_width;
  if (d < 1) throw std::invalid_argument("pmf document: D must be >= 1");
  if (!std::isfinite(pmf.params.gamma) || pmf.params.gamma < 0.0) {
    throw std::invalid_argument("pmf document: gamma must be finite and >= 0");
  }
  if (!(pmf.normaliser > 0.0 && pmf.normaliser <= 1.0)) {
    throw std::invalid_argument("pmf document: C must lie in (0, 1]");
  }
  if (pmf.masses.size() != static_cast<std::size_t>(2 * d + 1)) {
    throw std::invalid_argument("pmf document: masses must have 2D+1 entries");
  }
  double sum = 0.0;
  for (int z = d; z >= 1; --z) {
    const double upper = pmf.masses[static_cast<std::size_t>(d + z)];
    const double lower = pmf.masses[static_cast<std::size_t>(d - z)];
    if (upper != lower) {
      throw std::invalid_argument("pmf document: masses are not symmetric");
    }
    if (!(upper >= 0.0)) {
      throw std::invalid_argument("pmf document: masses must be >= 0");
    }
    sum += 2.0 * upper;
  }
  sum += pmf.masses[static_cast<std::size_t>(d)];
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("pmf document: masses do not sum to 1");
  }
  double variance = 0.0;
  for (int z = d; z >= 1; --z) {
    variance += 2.0 * (static_cast<double>(z) * z) *
                pmf.masses[static_cast<std::size_t>(d + z)];
  }
  if (std::abs(variance - pmf.variance) > 1e-12 * std::max(1.0, variance)) {
    throw std::invalid_argument(
        "pmf document: variance field disagrees with the masses");
  }
  return pmf;
}

json table_to_json(const LookupTable& table) {
  json doc;
  doc["version"] = 1;
  doc["D"] = table.half_width;
  doc["keysize_log2"] = table.keysize_log2;
  doc["full_support"] = table.full_support;
  doc["source_pmf_digest"] = table.source_pmf_digest;
  doc["cumulative"] = table.cumulative;
  return doc;
}

LookupTable table_from_json(const json& doc) {
  for (const char* key : {"version", "D", "keysize_log2", "full_support",
                          "source_pmf_digest", "cumulative"}) {
    require_field(doc, key);
  }
  if (doc["version"].get<int>() != 1) {
    throw std::invalid_argument("table document: unsupported version");
  }
  LookupTable table;
  table.half_width = doc["D"].get<int>();
  table.keysize_log2 = doc["keysize_log2"].get<int>();
  table.full_support = doc["full_support"].get<bool>();
  table.source_pmf_digest = doc["source_pmf_digest"].get<std::string>();
  table.cumulative = doc["cumulative"].get<std::vector<std::uint64_t>>();

  if (table.half_width < 1) {
    throw std::invalid_argument("table document: D must be >= 1");
  }
  if (table.keysize_log2 < 1 || table.keysize_log2 > 32) {
    throw std::invalid_argument(
        "table document: keysize_log2 must lie in [1, 32]");
  }
  if (table.cumulative.size() !=
      static_cast<std::size_t>(2 * table.half_width + 1)) {
    throw std::invalid_argument(
        "table document: cumulative must have 2D+1 entries");
  }
  std::uint64_t previous = 0;
  for (const std::uint64_t value : table.cumulative) {
    if (value < previous) {
      throw std::invalid_argument(
          "table document: cumulative entries must be non-decreasing");
    }
    previous = value;
  }
  if (table.cumulative.back() != table.keysize()) {
    throw std::invalid_argument(
        "table document: final cumulative entry must equal KEYSIZE");
  }
  if (table.full_support != check_full_support(table)) {
    throw std::invalid_argument(
        "table document: full_support flag disagrees with the cumulative "
        "entries");
  }
  return table;
}

json dp_point_to_json(const DpPoint& point) {
  json doc;
  doc["epsilon"] = point.epsilon;
  doc["delta"] = point.delta;
  doc["provenance"] = std::string(to_string(point.provenance));
  return doc;
}

json calibration_to_json(double epsilon, double delta_target,
                         const CalibrationResult& result) {
  json doc;
  doc["epsilon"] = epsilon;
  doc["delta_target"] = delta_target;
  doc["D_star"] = result.d_star;
  doc["kappa"] = result.kappa;
  doc["gamma"] = result.gamma;
  doc["V"] = result.variance;
  doc["delta_achieved"] = result.delta_achieved;
  doc["pmf"] = pmf_to_json(result.pmf);
  return doc;
}

std::string delta_sweep_csv(std::span<const DeltaSweepRow> rows) {
  std::string out = "epsilon,delta_analytical,delta_numeric_min,D,gamma,V\n";
  for (const DeltaSweepRow& row : rows) {
    out += format17(row.epsilon);
    out += ',';
    out += format17(row.delta_analytical);
    out += ',';
    if (row.delta_numeric_min) out += format17(*row.delta_numeric_min);
    out += ',';
    out += std::to_string(row.half_width);
    out += ',';
    out += format17(row.gamma);
    out += ',';
    out += format17(row.variance);
    out += '\n';
  }
  return out;
}

std::string audit_csv(std::span<const QuantAudit> rows) {
  std::string out =
      "epsilon_design,delta_design,keysize_log2,full_support,bias_q,"
      "variance_q,var_rel_err,epsilon_q,epsilon_q_twosided,delta_q\n";
  for (const QuantAudit& row : rows) {
    out += format17(row.epsilon_design);
    out += ',';
    out += format17(row.delta_design);
    out += ',';
    out += std::to_string(row.keysize_log2);
    out += ',';
    out += row.full_support ? '1' : '0';
    out += ',';
    out += format17(row.bias_q);
    out += ',';
    out += format17(row.variance_q);
    out += ',';
    out += format17(row.var_rel_err);
    out += ',';
    out += format17(row.epsilon_q);
    out += ',';
    out += format17(row.epsilon_q_two_sided);
    out += ',';
    out += format17(row.delta_q);
    out += '\n';
  }
  return out;
}

std::vector<RecordKey> read_record_keys(std::istream& in) {
  std::vector<RecordKey> keys;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    std::uint64_t value = 0;
    try {
      std::size_t consumed = 0;
      value = std::stoull(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("record key file line " +
                                  std::to_string(line_number) +
                                  ": not an unsigned integer: " + token);
    }
    if (value >= (std::uint64_t{1} << 32)) {
      throw std::invalid_argument("record key file line " +
                                  std::to_string(line_number) +
                                  ": value must be < 2^32");
    }
    keys.push_back(RecordKey{static_cast<std::uint32_t>(value)});
  }
  return keys;
}

}  // namespace dpnoise
