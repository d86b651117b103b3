# Copyright 2026 The dpnoise Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the python bindings."""

import json
import math

import pytest

import dpnoise


def test_design_guide_worked_example():
    result = dpnoise.design_guide(epsilon=0.5, delta=1e-4)
    assert result.d_star == 25
    assert abs(result.delta_achieved - 9.9129808160e-5) <= 1e-9
    assert abs(result.variance - 49.00) <= 0.01
    assert abs(result.pmf.mass(0) - 0.056895481243871) <= 1e-12
    assert abs(result.pmf.mass(11) - 0.016632589297126) <= 1e-12
    assert result.pmf.mass(-25) == result.pmf.mass(25)


def test_design_guide_unreachable():
    with pytest.raises(dpnoise.TargetUnreachableError):
        dpnoise.design_guide(epsilon=0.5, delta=1e-30, d_max=50)


def test_design_guide_custom_rule():
    result = dpnoise.design_guide(
        epsilon=0.5, delta=1e-4,
        kappa_rule=lambda eps, d: 0.5 * dpnoise.max_kappa(eps, d))
    assert result.delta_achieved <= 1e-4


def test_noise_roundtrip():
    gamma = dpnoise.solve_gamma(7, 5.0)
    assert abs(dpnoise.variance_from_gamma(7, gamma) - 5.0) <= 1e-9
    assert dpnoise.solve_gamma(1, 0.5) == pytest.approx(math.log(2.0), abs=1e-14)
    with pytest.raises(ValueError):
        dpnoise.solve_gamma(2, 7.0)
    assert dpnoise.variance_bound(25) == pytest.approx(650.0 / 3.0)


def test_accounting():
    pmf = dpnoise.pmf_from_gamma(1, math.log(2.0))
    point = dpnoise.delta_of_epsilon(pmf, 0.1)
    assert point.delta == pytest.approx(0.75 - 0.25 * math.exp(0.1), abs=1e-15)
    assert point.provenance == "analytical"
    oracle = dpnoise.delta_oracle(pmf, 0.1)
    assert oracle.delta == pytest.approx(point.delta, abs=1e-15)
    violations = dpnoise.violation_set(pmf, 1.0)
    assert (violations.lo, violations.hi) == (-1, -1)
    assert dpnoise.delta_lower_bound(pmf) == pmf.mass(-1)


def test_sampling_pipeline():
    pmf = dpnoise.prop3_pmf(0.5, 25, dpnoise.default_kappa_rule(0.5, 25))
    table = dpnoise.build_lookup(pmf, 32)
    assert table.full_support
    assert table.cumulative[0] == 425760
    assert dpnoise.sample(table, 2552) == -25
    assert dpnoise.sample(table, 1200124) == -23
    assert dpnoise.perturb(100, table, 2552) == 75

    small = dpnoise.build_lookup(pmf, 8)
    assert not small.full_support
    with pytest.raises(dpnoise.SupportFailureError):
        dpnoise.sample(small, 7)
    with pytest.raises(ValueError):
        dpnoise.perturb(24, table, 2552)


def test_quant_audit():
    pmf = dpnoise.prop3_pmf(0.5, 25, dpnoise.default_kappa_rule(0.5, 25))
    qpmf = dpnoise.quantized_pmf(dpnoise.build_lookup(pmf, 32))
    bias, variance = dpnoise.bias_variance(qpmf)
    assert bias == -25.0 / 2**32
    assert abs(variance - 49.002167175291106) <= 1e-12
    assert abs(dpnoise.epsilon_q(qpmf) - 0.498037038323823) <= 1e-9
    assert dpnoise.delta_q(qpmf) == 425760 / 2**32
    assert dpnoise.epsilon_q_two_sided(qpmf) >= dpnoise.epsilon_q(qpmf)


def test_keysize_sweep():
    rows = dpnoise.keysize_sweep(d=10, eps_lo=0.5, eps_hi=0.7, eps_step=0.1,
                                 keysizes=[8])
    assert len(rows) == 3
    assert [r.full_support for r in rows] == [True, True, False]
    csv = dpnoise.audit_csv(rows)
    assert csv.splitlines()[0].startswith("epsilon_design,delta_design")
    assert len(csv.splitlines()) == 4


def test_cellkey():
    keys = dpnoise.generate_record_keys(5, 42)
    assert keys == dpnoise.generate_record_keys(5, 42)
    assert all(k < 2**32 for k in keys)
    key = dpnoise.aggregate_cell_key(keys, keysize_log2=16)
    assert 0 <= key < 2**16
    assert key == dpnoise.aggregate_cell_key(list(reversed(keys)), keysize_log2=16)
    with pytest.raises(ValueError):
        dpnoise.aggregate_cell_key([], keysize_log2=16)
    with pytest.raises(ValueError):
        dpnoise.aggregate_cell_key([1], keysize_log2=16, big_n=4294967290)


def test_json_round_trip():
    pmf = dpnoise.pmf_from_gamma(3, 0.2)
    doc = json.loads(pmf.to_json())
    assert list(doc.keys()) == ["D", "gamma", "C", "variance", "masses"]
    back = dpnoise.pmf_from_json(pmf.to_json())
    assert back.masses == pmf.masses
    table = dpnoise.build_lookup(pmf, 12)
    again = dpnoise.table_from_json(table.to_json())
    assert again.cumulative == table.cumulative
    assert again.source_pmf_digest == dpnoise.pmf_digest(pmf)
