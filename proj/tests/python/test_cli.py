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
"""End-to-end tests of the command-line tool (path via $DPNOISE_CLI)."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("DPNOISE_CLI", "dpnoise")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True,
                          **kwargs)


def test_design_golden():
    result = run("design", "--epsilon", "0.5", "--delta", "1e-4")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["D_star"] == 25
    assert abs(doc["delta_achieved"] - 9.9129808160e-5) <= 1e-9
    assert abs(doc["V"] - 49.00) <= 0.01
    assert len(doc["pmf"]["masses"]) == 51


def test_design_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        result = run("design", "--epsilon", "1.0", "--delta", "1e-3",
                     "--out", str(path))
        assert result.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_exit_codes(tmp_path):
    assert run("design", "--epsilon", "-1", "--delta", "0.5").returncode == 2
    assert run("design", "--epsilon", "0.5", "--delta", "2").returncode == 2
    assert run("design", "--epsilon", "0.5", "--delta", "1e-30",
               "--d-max", "50").returncode == 3
    assert run("nonsense").returncode == 2
    assert run("pmf", "--d", "3").returncode == 2  # neither gamma nor variance

    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    assert run("delta", "--pmf", str(broken), "--epsilon", "0.5").returncode == 2
    missing = tmp_path / "missing.json"
    assert run("delta", "--pmf", str(missing), "--epsilon", "0.5").returncode == 2


def test_quantize_sample_pipeline(tmp_path):
    pmf_path = tmp_path / "pmf.json"
    table_path = tmp_path / "table.json"
    assert run("pmf", "--d", "25", "--gamma", "0.0101640656262505",
               "--out", str(pmf_path)).returncode == 0
    assert run("quantize", "--pmf", str(pmf_path), "--keysize-log2", "32",
               "--out", str(table_path)).returncode == 0
    doc = json.loads(table_path.read_text())
    assert doc["cumulative"][:3] == [425760, 1126343, 2255949]
    assert doc["cumulative"][-1] == 2**32

    result = run("sample", "--table", str(table_path), "--cell-key", "2552")
    assert result.returncode == 0
    assert result.stdout.strip() == "-25"
    result = run("sample", "--table", str(table_path), "--cell-key", "2552",
                 "--count", "100")
    assert result.stdout.strip() == "75"

    # Insufficient key space: quantize succeeds with a warning, sampling
    # is refused with the dedicated exit code.
    small_path = tmp_path / "small.json"
    quantize = run("quantize", "--pmf", str(pmf_path), "--keysize-log2", "8",
                   "--out", str(small_path))
    assert quantize.returncode == 0
    assert "cannot realise" in quantize.stderr
    sample = run("sample", "--table", str(small_path), "--cell-key", "7")
    assert sample.returncode == 4


def test_delta_analytical_vs_oracle(tmp_path):
    pmf_path = tmp_path / "pmf.json"
    run("pmf", "--d", "5", "--variance", "3.5", "--out", str(pmf_path))
    analytical = json.loads(
        run("delta", "--pmf", str(pmf_path), "--epsilon", "0.4").stdout)
    oracle = json.loads(
        run("delta", "--pmf", str(pmf_path), "--epsilon", "0.4",
            "--method", "oracle").stdout)
    assert analytical["provenance"] == "analytical"
    assert oracle["provenance"] == "oracle"
    assert abs(analytical["delta"] - oracle["delta"]) <= 1e-12


def test_delta_sweep_modes(tmp_path):
    fixed = run("delta-sweep", "--d", "11", "--variance", "4",
                "--eps-lo", "0.25", "--eps-hi", "3.0", "--eps-step", "0.25")
    assert fixed.returncode == 0
    lines = fixed.stdout.splitlines()
    assert lines[0] == "epsilon,delta_analytical,delta_numeric_min,D,gamma,V"
    assert len(lines) == 13
    # Fixed-noise mode leaves the numeric column blank.
    assert lines[1].split(",")[2] == ""
    # The plateau: the last rows repeat the same analytical delta.
    deltas = [float(line.split(",")[1]) for line in lines[1:]]
    assert deltas[-1] == deltas[-2]

    calibrated = run("delta-sweep", "--d", "11", "--calibrated",
                     "--eps-lo", "0.5", "--eps-hi", "1.0", "--eps-step", "0.5",
                     "--numeric-min", "--grid-lo", "0.001",
                     "--grid-hi", "0.3", "--grid-step", "0.001")
    assert calibrated.returncode == 0
    rows = [line.split(",") for line in calibrated.stdout.splitlines()[1:]]
    for row in rows:
        assert float(row[2]) <= float(row[1])  # numeric min dominates


def test_cellkey_aggregation(tmp_path):
    generated = run("cellkey", "--count", "100", "--seed", "7",
                    "--keysize-log2", "16")
    assert generated.returncode == 0
    value = int(generated.stdout)
    assert 0 <= value < 2**16
    assert int(run("cellkey", "--count", "100", "--seed", "7",
                   "--keysize-log2", "16").stdout) == value

    keys_path = tmp_path / "keys.txt"
    keys_path.write_text("1\n2\n3\n")
    from_file = run("cellkey", "--keys", str(keys_path), "--keysize-log2", "8")
    assert from_file.returncode == 0
    assert int(from_file.stdout) == (1 + 2 + 3)  # low bytes only, no wrap

    bad = run("cellkey", "--keys", str(keys_path), "--keysize-log2", "8",
              "--big-n", "4294967290")
    assert bad.returncode == 2


def test_sample_from_record_keys(tmp_path):
    pmf_path = tmp_path / "pmf.json"
    table_path = tmp_path / "table.json"
    run("pmf", "--d", "2", "--variance", "1.2", "--out", str(pmf_path))
    run("quantize", "--pmf", str(pmf_path), "--keysize-log2", "16",
        "--out", str(table_path))
    keys_path = tmp_path / "keys.txt"
    keys_path.write_text("\n".join(str(17 * i + 3) for i in range(50)) + "\n")
    result = run("sample", "--table", str(table_path), "--keys",
                 str(keys_path))
    assert result.returncode == 0
    assert -2 <= int(result.stdout) <= 2


def test_audit_csv():
    result = run("audit", "--d", "10", "--keysizes", "8", "16",
                 "--eps-lo", "0.5", "--eps-hi", "0.8", "--eps-step", "0.1")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert lines[0].startswith("epsilon_design,delta_design,keysize_log2")
    assert len(lines) == 9
    # Ordered by (keysize, epsilon); support fails at 2^8 past 0.6.
    first = lines[1].split(",")
    assert first[2] == "8"
    assert first[3] == "1"
    third = lines[3].split(",")
    assert float(third[0]) == pytest.approx(0.7)
    assert third[3] == "0"
