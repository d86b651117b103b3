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
//
// Command-line front end. Subcommands: design, pmf, delta, delta-sweep,
// quantize, sample, cellkey, audit. All outputs go to stdout or --out;
// re-running with the same flags produces byte-identical output.
//
// Exit codes: 0 success, 2 validation failure, 3 unreachable delta
// target, 4 insufficient key size (support failure), 1 unexpected error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpnoise/accounting.hpp"
#include "dpnoise/calibration.hpp"
#include "dpnoise/cellkey.hpp"
#include "dpnoise/noise.hpp"
#include "dpnoise/quant_audit.hpp"
#include "dpnoise/sampler.hpp"
#include "dpnoise/serialize.hpp"

namespace {

using namespace dpnoise;

constexpr int kExitValidation = 2;
constexpr int kExitUnreachable = 3;
constexpr int kExitSupport = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + out_path);
  }
  out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  return json::parse(in);
}

std::vector<RecordKey> load_record_keys(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open record key file: " + path);
  }
  const std::vector<RecordKey> keys = read_record_keys(in);
  if (keys.empty()) {
    throw std::invalid_argument("record key file is empty: " + path);
  }
  return keys;
}

KappaRule make_kappa_rule(const std::optional<double>& fraction) {
  if (!fraction) return KappaRule(default_kappa_rule);
  const double f = *fraction;
  if (!(f > 0.0 && f <= 1.0)) {
    throw std::invalid_argument("--kappa-frac must lie in (0, 1]");
  }
  return [f](double epsilon, int d) { return f * max_kappa(epsilon, d); };
}

struct CliOptions {
  double epsilon = 0.0;
  double delta = 0.0;
  int d = 0;
  int d_max = 200;
  std::optional<double> kappa_frac;
  std::optional<double> gamma;
  std::optional<double> variance;
  bool calibrated = false;
  double eps_lo = 0.0, eps_hi = 0.0, eps_step = 0.0;
  bool numeric_min = false;
  double grid_lo = 1e-4, grid_hi = 0.3, grid_step = 1e-4;
  std::string pmf_path;
  std::string table_path;
  std::string keys_path;
  std::string method = "analytical";
  std::optional<std::uint64_t> cell_key;
  std::optional<std::int64_t> true_count;
  int keysize_log2 = 8;
  std::vector<int> keysizes = {8, 16, 32};
  std::uint64_t big_n = 4294967291ull;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::string out;
};

int run_design(const CliOptions& opt) {
  CalibrationInput input;
  input.epsilon = opt.epsilon;
  input.delta_target = opt.delta;
  input.kappa_rule = make_kappa_rule(opt.kappa_frac);
  input.d_max = opt.d_max;
  const CalibrationResult result = design_guide(input);
  emit(dump(calibration_to_json(opt.epsilon, opt.delta, result)), opt.out);
  return 0;
}

int run_pmf(const CliOptions& opt) {
  if (opt.gamma.has_value() == opt.variance.has_value()) {
    throw std::invalid_argument("pass exactly one of --gamma or --variance");
  }
  const double gamma =
      opt.gamma ? *opt.gamma : solve_gamma(opt.d, *opt.variance);
  emit(dump(pmf_to_json(pmf_from_gamma(opt.d, gamma))), opt.out);
  return 0;
}

int run_delta(const CliOptions& opt) {
  const NoisePmf pmf = pmf_from_json(load_json(opt.pmf_path));
  DpPoint point;
  if (opt.method == "analytical") {
    point = delta_of_epsilon(pmf, opt.epsilon);
  } else if (opt.method == "oracle") {
    point = delta_oracle(pmf, opt.epsilon);
  } else {
    throw std::invalid_argument("--method must be analytical or oracle");
  }
  emit(dump(dp_point_to_json(point)), opt.out);
  return 0;
}

int run_delta_sweep(const CliOptions& opt) {
  const int modes = int(opt.gamma.has_value()) + int(opt.variance.has_value()) +
                    int(opt.calibrated);
  if (modes != 1) {
    throw std::invalid_argument(
        "pass exactly one of --gamma, --variance or --calibrated");
  }
  if (!(opt.eps_step > 0.0) || !(opt.eps_lo > 0.0) || opt.eps_hi < opt.eps_lo) {
    throw std::invalid_argument("invalid epsilon grid");
  }
  const KappaRule rule = make_kappa_rule(opt.kappa_frac);
  const GammaGrid grid{opt.grid_lo, opt.grid_hi, opt.grid_step};

  std::optional<NoisePmf> fixed;
  if (opt.gamma) fixed = pmf_from_gamma(opt.d, *opt.gamma);
  if (opt.variance) fixed = pmf_from_gamma(opt.d, solve_gamma(opt.d, *opt.variance));

  const auto points = static_cast<long long>(
      std::floor((opt.eps_hi - opt.eps_lo) / opt.eps_step + 1e-9)) + 1;
  std::vector<DeltaSweepRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (long long i = 0; i < points; ++i) {
    const double epsilon = opt.eps_lo + static_cast<double>(i) * opt.eps_step;
    DeltaSweepRow row;
    row.epsilon = epsilon;
    row.half_width = opt.d;
    if (fixed) {
      row.delta_analytical = delta_of_epsilon(*fixed, epsilon).delta;
      row.gamma = fixed->gamma();
      row.variance = fixed->variance;
    } else {
      const double kappa = rule(epsilon, opt.d);
      const NoisePmf pmf = prop3_pmf(epsilon, opt.d, kappa);
      row.delta_analytical = pmf.mass(-opt.d);
      row.gamma = pmf.gamma();
      row.variance = pmf.variance;
    }
    if (opt.numeric_min) {
      row.delta_numeric_min = best_delta_numeric(opt.d, epsilon, grid).delta;
    }
    rows.push_back(row);
  }
  emit(delta_sweep_csv(rows), opt.out);
  return 0;
}

int run_quantize(const CliOptions& opt) {
  const NoisePmf pmf = pmf_from_json(load_json(opt.pmf_path));
  const LookupTable table = build_lookup(pmf, opt.keysize_log2);
  if (!table.full_support) {
    std::cerr << "warning: KEYSIZE = 2^" << opt.keysize_log2
              << " cannot realise every support value; sampling from this "
                 "table will be refused\n";
  }
  emit(dump(table_to_json(table)), opt.out);
  return 0;
}

CellKey resolve_cell_key(const CliOptions& opt, int keysize_log2) {
  if (opt.cell_key.has_value() == !opt.keys_path.empty()) {
    throw std::invalid_argument(
        "pass exactly one of --cell-key or --keys <file>");
  }
  if (opt.cell_key) return CellKey{*opt.cell_key};
  const std::vector<RecordKey> keys = load_record_keys(opt.keys_path);
  const CellKeyConfig config{keysize_log2, opt.big_n};
  return aggregate_cell_key(keys, config);
}

int run_sample(const CliOptions& opt) {
  const LookupTable table = table_from_json(load_json(opt.table_path));
  const CellKey key = resolve_cell_key(opt, table.keysize_log2);
  std::int64_t value = 0;
  if (opt.true_count) {
    value = perturb(*opt.true_count, table, key);
  } else {
    value = sample(table, key).value;
  }
  emit(std::to_string(value) + "\n", opt.out);
  return 0;
}

int run_cellkey(const CliOptions& opt) {
  std::vector<RecordKey> keys;
  if (!opt.keys_path.empty()) {
    if (opt.count != 0) {
      throw std::invalid_argument("pass either --keys or --count, not both");
    }
    keys = load_record_keys(opt.keys_path);
  } else if (opt.count != 0) {
    keys = generate_record_keys(opt.count, opt.seed);
  } else {
    throw std::invalid_argument("pass --keys <file> or --count/--seed");
  }
  const CellKeyConfig config{opt.keysize_log2, opt.big_n};
  emit(std::to_string(aggregate_cell_key(keys, config).value) + "\n", opt.out);
  return 0;
}

int run_audit(const CliOptions& opt) {
  const EpsilonGrid grid{opt.eps_lo, opt.eps_hi, opt.eps_step};
  const std::vector<QuantAudit> rows = keysize_sweep(
      opt.d, grid, opt.keysizes, make_kappa_rule(opt.kappa_frac));
  emit(audit_csv(rows), opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Maximum-entropy integer perturbation noise for counting queries: "
      "design, privacy accounting, cell-key sampling, quantization audit"};
  app.require_subcommand(1);
  CliOptions opt;
  std::function<int(const CliOptions&)> action;

  auto* design = app.add_subcommand(
      "design", "Choose (D*, V, pmf) for a target (epsilon, delta)");
  design->add_option("--epsilon", opt.epsilon, "privacy budget epsilon")
      ->required();
  design->add_option("--delta", opt.delta, "delta target in (0, 1)")
      ->required();
  design->add_option("--d-max", opt.d_max, "largest support half-width probed");
  design->add_option("--kappa-frac", opt.kappa_frac,
                     "kappa as a fraction of its admissible maximum");
  design->add_option("--out", opt.out, "output path (default stdout)");
  design->callback([&] { action = run_design; });

  auto* pmf = app.add_subcommand(
      "pmf", "Materialise the noise pmf from (D, V) or (D, gamma)");
  pmf->add_option("--d", opt.d, "support half-width D")->required();
  pmf->add_option("--gamma", opt.gamma, "shape exponent");
  pmf->add_option("--variance", opt.variance, "target variance");
  pmf->add_option("--out", opt.out, "output path (default stdout)");
  pmf->callback([&] { action = run_pmf; });

  auto* delta = app.add_subcommand(
      "delta", "Evaluate delta(epsilon) for a stored pmf");
  delta->add_option("--pmf", opt.pmf_path, "pmf JSON file")->required();
  delta->add_option("--epsilon", opt.epsilon, "privacy budget epsilon")
      ->required();
  delta->add_option("--method", opt.method, "analytical (default) or oracle");
  delta->add_option("--out", opt.out, "output path (default stdout)");
  delta->callback([&] { action = run_delta; });

  auto* sweep = app.add_subcommand(
      "delta-sweep",
      "CSV of delta over an epsilon grid, fixed-noise or calibrated");
  sweep->add_option("--d", opt.d, "support half-width D")->required();
  sweep->add_option("--gamma", opt.gamma, "fixed shape exponent");
  sweep->add_option("--variance", opt.variance, "fixed variance");
  sweep->add_flag("--calibrated", opt.calibrated,
                  "re-calibrate gamma(epsilon) at every grid point");
  sweep->add_option("--eps-lo", opt.eps_lo, "epsilon grid start")->required();
  sweep->add_option("--eps-hi", opt.eps_hi, "epsilon grid end")->required();
  sweep->add_option("--eps-step", opt.eps_step, "epsilon grid step")
      ->required();
  sweep->add_flag("--numeric-min", opt.numeric_min,
                  "add the numeric best-delta column");
  sweep->add_option("--grid-lo", opt.grid_lo, "gamma search grid start");
  sweep->add_option("--grid-hi", opt.grid_hi, "gamma search grid end");
  sweep->add_option("--grid-step", opt.grid_step, "gamma search grid step");
  sweep->add_option("--kappa-frac", opt.kappa_frac,
                    "kappa as a fraction of its admissible maximum");
  sweep->add_option("--out", opt.out, "output path (default stdout)");
  sweep->callback([&] { action = run_delta_sweep; });

  auto* quantize = app.add_subcommand(
      "quantize", "Build the cell-key lookup table for a stored pmf");
  quantize->add_option("--pmf", opt.pmf_path, "pmf JSON file")->required();
  quantize->add_option("--keysize-log2", opt.keysize_log2,
                       "log2 of the cell key space, 1..32")
      ->required();
  quantize->add_option("--out", opt.out, "output path (default stdout)");
  quantize->callback([&] { action = run_quantize; });

  auto* sample_cmd = app.add_subcommand(
      "sample", "Draw the noise value (or perturbed count) for a cell key");
  sample_cmd->add_option("--table", opt.table_path, "lookup table JSON file")
      ->required();
  sample_cmd->add_option("--cell-key", opt.cell_key, "cell key in [0, KEYSIZE)");
  sample_cmd->add_option("--keys", opt.keys_path,
                         "record key file to aggregate into a cell key");
  sample_cmd->add_option("--count", opt.true_count,
                         "true count; output becomes count + noise");
  sample_cmd->add_option("--big-n", opt.big_n,
                         "prime modulus for aggregation");
  sample_cmd->add_option("--out", opt.out, "output path (default stdout)");
  sample_cmd->callback([&] { action = run_sample; });

  auto* cellkey_cmd = app.add_subcommand(
      "cellkey", "Aggregate record keys into a cell key");
  cellkey_cmd->add_option("--keys", opt.keys_path,
                          "newline-delimited record key file");
  cellkey_cmd->add_option("--count", opt.count,
                          "generate this many record keys instead");
  cellkey_cmd->add_option("--seed", opt.seed, "generator seed");
  cellkey_cmd->add_option("--keysize-log2", opt.keysize_log2,
                          "log2 of the cell key space, 1..32")
      ->required();
  cellkey_cmd->add_option("--big-n", opt.big_n, "prime modulus");
  cellkey_cmd->add_option("--out", opt.out, "output path (default stdout)");
  cellkey_cmd->callback([&] { action = run_cellkey; });

  auto* audit = app.add_subcommand(
      "audit", "KEYSIZE sweep CSV of post-quantization metrics");
  audit->add_option("--d", opt.d, "support half-width D")->default_val(10);
  audit->add_option("--eps-lo", opt.eps_lo, "epsilon grid start")
      ->default_val(0.1);
  audit->add_option("--eps-hi", opt.eps_hi, "epsilon grid end")
      ->default_val(2.5);
  audit->add_option("--eps-step", opt.eps_step, "epsilon grid step")
      ->default_val(0.1);
  audit->add_option("--keysizes", opt.keysizes,
                    "keysize_log2 values to sweep");
  audit->add_option("--kappa-frac", opt.kappa_frac,
                    "kappa as a fraction of its admissible maximum");
  audit->add_option("--out", opt.out, "output path (default stdout)");
  audit->callback([&] { action = run_audit; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    return action(opt);
  } catch (const TargetUnreachableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnreachable;
  } catch (const SupportFailureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSupport;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input document: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
