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
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dpnoise/accounting.hpp"
#include "dpnoise/calibration.hpp"
#include "dpnoise/cellkey.hpp"
#include "dpnoise/noise.hpp"
#include "dpnoise/quant_audit.hpp"
#include "dpnoise/sampler.hpp"
#include "dpnoise/serialize.hpp"

namespace py = pybind11;
using namespace dpnoise;

namespace {

KappaRule rule_or_default(const std::optional<KappaRule>& rule) {
  return rule ? *rule : KappaRule(default_kappa_rule);
}

std::vector<RecordKey> to_record_keys(const std::vector<std::uint64_t>& raw) {
  std::vector<RecordKey> keys;
  keys.reserve(raw.size());
  for (const std::uint64_t value : raw) {
    if (value >= (std::uint64_t{1} << 32)) {
      throw std::invalid_argument("record keys must be < 2^32");
    }
    keys.push_back(RecordKey{static_cast<std::uint32_t>(value)});
  }
  return keys;
}

}  // namespace

PYBIND11_MODULE(_dpnoise, m) {
  m.doc() =
      "Maximum-entropy integer perturbation noise for counting queries: "
      "design, (epsilon, delta) accounting, cell-key lookup sampling and "
      "post-quantization audits.";

  py::register_exception<TargetUnreachableError>(m, "TargetUnreachableError");
  py::register_exception<SupportFailureError>(m, "SupportFailureError");

  py::class_<NoisePmf>(m, "NoisePmf")
      .def_property_readonly("d", &NoisePmf::half_width)
      .def_property_readonly("gamma", &NoisePmf::gamma)
      .def_readonly("normaliser", &NoisePmf::normaliser)
      .def_readonly("variance", &NoisePmf::variance)
      .def_readonly("masses", &NoisePmf::masses)
      .def("mass", &NoisePmf::mass, py::arg("z"))
      .def("to_json", [](const NoisePmf& pmf) { return pmf_to_json(pmf).dump(2); })
      .def("__repr__", [](const NoisePmf& pmf) {
        return "NoisePmf(D=" + std::to_string(pmf.half_width()) +
               ", gamma=" + std::to_string(pmf.gamma()) + ")";
      });

  py::class_<DpPoint>(m, "DpPoint")
      .def_readonly("epsilon", &DpPoint::epsilon)
      .def_readonly("delta", &DpPoint::delta)
      .def_property_readonly("provenance",
                             [](const DpPoint& point) {
                               return std::string(to_string(point.provenance));
                             })
      .def("__repr__", [](const DpPoint& point) {
        return "DpPoint(epsilon=" + std::to_string(point.epsilon) +
               ", delta=" + std::to_string(point.delta) + ", provenance='" +
               std::string(to_string(point.provenance)) + "')";
      });

  py::class_<ViolationSet>(m, "ViolationSet")
      .def_readonly("lo", &ViolationSet::lo)
      .def_readonly("hi", &ViolationSet::hi);

  py::class_<CalibrationResult>(m, "CalibrationResult")
      .def_readonly("d_star", &CalibrationResult::d_star)
      .def_readonly("kappa", &CalibrationResult::kappa)
      .def_readonly("gamma", &CalibrationResult::gamma)
      .def_readonly("variance", &CalibrationResult::variance)
      .def_readonly("pmf", &CalibrationResult::pmf)
      .def_readonly("delta_achieved", &CalibrationResult::delta_achieved);

  py::class_<LookupTable>(m, "LookupTable")
      .def_property_readonly("d",
                             [](const LookupTable& t) { return t.half_width; })
      .def_readonly("keysize_log2", &LookupTable::keysize_log2)
      .def_readonly("cumulative", &LookupTable::cumulative)
      .def_readonly("full_support", &LookupTable::full_support)
      .def_readonly("source_pmf_digest", &LookupTable::source_pmf_digest)
      .def("to_json",
           [](const LookupTable& t) { return table_to_json(t).dump(2); });

  py::class_<QuantizedPmf>(m, "QuantizedPmf")
      .def_property_readonly("d",
                             [](const QuantizedPmf& q) { return q.half_width; })
      .def_readonly("keysize_log2", &QuantizedPmf::keysize_log2)
      .def_readonly("numerators", &QuantizedPmf::numerators)
      .def_readonly("full_support", &QuantizedPmf::full_support)
      .def("mass", &QuantizedPmf::mass, py::arg("z"))
      .def("masses", &QuantizedPmf::masses);

  py::class_<QuantAudit>(m, "QuantAudit")
      .def_readonly("epsilon_design", &QuantAudit::epsilon_design)
      .def_readonly("delta_design", &QuantAudit::delta_design)
      .def_readonly("keysize_log2", &QuantAudit::keysize_log2)
      .def_readonly("full_support", &QuantAudit::full_support)
      .def_readonly("bias_q", &QuantAudit::bias_q)
      .def_readonly("variance_q", &QuantAudit::variance_q)
      .def_readonly("var_rel_err", &QuantAudit::var_rel_err)
      .def_readonly("epsilon_q", &QuantAudit::epsilon_q)
      .def_readonly("epsilon_q_two_sided", &QuantAudit::epsilon_q_two_sided)
      .def_readonly("delta_q", &QuantAudit::delta_q);

  m.def("variance_bound",
        [](int d) { return variance_bound(d).upper; }, py::arg("d"),
        "Exclusive upper bound D(D+1)/3 on the admissible variance.");
  m.def("solve_gamma", &solve_gamma, py::arg("d"), py::arg("variance"));
  m.def("pmf_from_gamma", &pmf_from_gamma, py::arg("d"), py::arg("gamma"));
  m.def("variance_from_gamma", &variance_from_gamma, py::arg("d"),
        py::arg("gamma"));

  m.def("violation_set", &violation_set, py::arg("pmf"), py::arg("epsilon"));
  m.def("delta_of_epsilon", &delta_of_epsilon, py::arg("pmf"),
        py::arg("epsilon"));
  m.def("delta_oracle",
        [](const NoisePmf& pmf, double epsilon) {
          return delta_oracle(pmf, epsilon);
        },
        py::arg("pmf"), py::arg("epsilon"));
  m.def("delta_oracle_masses",
        [](const std::vector<double>& masses, double epsilon) {
          return delta_oracle(std::span<const double>(masses), epsilon);
        },
        py::arg("masses"), py::arg("epsilon"),
        "Brute-force delta over an arbitrary odd-length mass vector.");
  m.def("delta_lower_bound", &delta_lower_bound, py::arg("pmf"));
  m.def("best_delta_numeric",
        [](int d, double epsilon, double lo, double hi, double step) {
          return best_delta_numeric(d, epsilon, GammaGrid{lo, hi, step});
        },
        py::arg("d"), py::arg("epsilon"), py::arg("grid_lo") = 1e-4,
        py::arg("grid_hi") = 0.3, py::arg("grid_step") = 1e-4);

  m.def("gamma_range", &gamma_range, py::arg("epsilon"), py::arg("d"));
  m.def("variance_range", &variance_range, py::arg("epsilon"), py::arg("d"));
  m.def("max_kappa", &max_kappa, py::arg("epsilon"), py::arg("d"));
  m.def("default_kappa_rule", &default_kappa_rule, py::arg("epsilon"),
        py::arg("d"));
  m.def("prop3_pmf", &prop3_pmf, py::arg("epsilon"), py::arg("d"),
        py::arg("kappa"));
  m.def("delta_from_prop3", &delta_from_prop3, py::arg("epsilon"),
        py::arg("d"), py::arg("kappa"));
  m.def("design_guide",
        [](double epsilon, double delta, int d_max,
           std::optional<KappaRule> kappa_rule) {
          return design_guide(CalibrationInput{epsilon, delta,
                                               rule_or_default(kappa_rule),
                                               d_max});
        },
        py::arg("epsilon"), py::arg("delta"), py::arg("d_max") = 200,
        py::arg("kappa_rule") = py::none());

  m.def("generate_record_keys",
        [](std::size_t count, std::uint64_t seed) {
          std::vector<std::uint64_t> out;
          for (const RecordKey key : generate_record_keys(count, seed)) {
            out.push_back(key.value);
          }
          return out;
        },
        py::arg("count"), py::arg("seed"));
  m.def("aggregate_cell_key",
        [](const std::vector<std::uint64_t>& keys, int keysize_log2,
           std::uint64_t big_n) {
          const std::vector<RecordKey> records = to_record_keys(keys);
          return aggregate_cell_key(records,
                                    CellKeyConfig{keysize_log2, big_n})
              .value;
        },
        py::arg("keys"), py::arg("keysize_log2"),
        py::arg("big_n") = 4294967291ull);

  m.def("build_lookup", &build_lookup, py::arg("pmf"),
        py::arg("keysize_log2"));
  m.def("check_full_support", &check_full_support, py::arg("table"));
  m.def("sample",
        [](const LookupTable& table, std::uint64_t cell_key) {
          return sample(table, CellKey{cell_key}).value;
        },
        py::arg("table"), py::arg("cell_key"));
  m.def("perturb",
        [](std::int64_t true_count, const LookupTable& table,
           std::uint64_t cell_key) {
          return perturb(true_count, table, CellKey{cell_key});
        },
        py::arg("true_count"), py::arg("table"), py::arg("cell_key"));

  m.def("quantized_pmf", &quantized_pmf, py::arg("table"));
  m.def("bias_variance",
        [](const QuantizedPmf& qpmf) {
          const QuantMoments moments = bias_variance(qpmf);
          return py::make_tuple(moments.bias, moments.variance);
        },
        py::arg("qpmf"));
  m.def("epsilon_q", &epsilon_q, py::arg("qpmf"));
  m.def("epsilon_q_two_sided", &epsilon_q_two_sided, py::arg("qpmf"));
  m.def("delta_q", &delta_q, py::arg("qpmf"));
  m.def("keysize_sweep",
        [](int d, double eps_lo, double eps_hi, double eps_step,
           const std::vector<int>& keysizes,
           std::optional<KappaRule> kappa_rule) {
          return keysize_sweep(d, EpsilonGrid{eps_lo, eps_hi, eps_step},
                               keysizes, rule_or_default(kappa_rule));
        },
        py::arg("d") = 10, py::arg("eps_lo") = 0.1, py::arg("eps_hi") = 2.5,
        py::arg("eps_step") = 0.1,
        py::arg("keysizes") = std::vector<int>{8, 16, 32},
        py::arg("kappa_rule") = py::none());

  m.def("pmf_from_json",
        [](const std::string& text) { return pmf_from_json(json::parse(text)); },
        py::arg("text"));
  m.def("table_from_json",
        [](const std::string& text) {
          return table_from_json(json::parse(text));
        },
        py::arg("text"));
  m.def("audit_csv",
        [](const std::vector<QuantAudit>& rows) {
          return audit_csv(std::span<const QuantAudit>(rows));
        },
        py::arg("rows"));
  m.def("pmf_digest", &pmf_digest, py::arg("pmf"));

  m.attr("__version__") = "0.1.0";
}
