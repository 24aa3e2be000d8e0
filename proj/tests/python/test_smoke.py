# Copyright 2026 The Spectrum Auction Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import spectrum_auction as sa


def test_generate_and_round_trip():
    inst = sa.generate_instance("pc", n=6, k=2, seed=42)
    assert inst.bidder_count == 6
    assert inst.channels == 2
    assert inst.kind == sa.EnvironmentKind.SINR_POWER_CONTROL
    again = sa.Instance.from_json(inst.to_json())
    assert again == inst
    assert json.loads(inst.to_json())["environment"]["type"] == "sinr_power_control"


def test_examples():
    assert sa.vickrey([5.0, 3.0, 2.0]) == (0, 3.0)
    assert sa.vickrey([4.0, 4.0]) == (0, 4.0)
    assert sa.sample_price(8.0, 8, 3) == 1.0
    assert sa.admission_threshold(sa.PhysicalParams(2.0, 1.0, 1.0)) == pytest.approx(1 / 108)


def test_power_and_feasibility():
    inst = sa.generate_instance("pc", n=4, seed=3, area=200.0)
    feasible, powers, residuals = sa.solve_power_assignment(inst, [0, 1, 2, 3])
    assert feasible
    assert all(p > 0 for p in powers.values())
    assert min(residuals) > -1e-9
    for i in range(4):
        assert sa.sinr_ratio(inst, i, [0, 1, 2, 3], powers) >= 1.0 - 1e-9


def test_packers_and_oracle():
    inst = sa.generate_instance("conflict", n=8, k=2, seed=5, density=0.4)
    alloc = sa.pack("extend:oracle", inst)
    ok, messages = sa.check_feasible(inst, alloc)
    assert ok and messages == []
    best = sa.brute_force_max_cardinality(inst)
    assert len(alloc) >= (1 - math.exp(-1)) * best.best_value
    unit = sa.brute_force_max_welfare(inst, [1.0] * 8)
    assert unit.best_value == best.best_value


def test_mechanism_invariants():
    inst = sa.generate_instance("secondary", n=5, k=2, seed=9)
    values = sa.generate_values(5, seed=9)
    for seed in range(50):
        out = sa.run_mechanism(inst, values, epsilon=0.3, seed=seed)
        assert sa.check_feasible(inst, out.allocation)[0]
        assert all(u >= 0 for u in sa.utility(out, values))
        assert out.revenue() <= out.welfare(values) + 1e-12


def test_audit_and_welfare():
    inst = sa.generate_instance("fixed-power", n=6, seed=1, area=40.0)
    values = sa.generate_values(6, seed=1)
    report = sa.audit_truthfulness(inst, values, epsilon=0.2, tapes=5, seed=2)
    assert report.passed() and report.violations == 0
    stats = sa.welfare_experiment(inst, values, packer="oracle", trials=500, seed=4, oracle=True)
    assert stats.floor_met()
    assert stats.welfare.count == 500


def test_errors():
    with pytest.raises(sa.InputError):
        sa.generate_instance("pc", n=0)
    with pytest.raises(ValueError):
        sa.Instance.from_json("{}")
    with pytest.raises(sa.RefusalError):
        sa.brute_force_max_cardinality(sa.generate_instance("conflict", n=20))


def test_cli(tmp_path):
    target = tmp_path / "inst.json"
    code, _, _ = sa.run_cli(["gen", "--n", "5", "--seed", "1", "--out", str(target)])
    assert code == 0 and target.exists()
    code, out, _ = sa.run_cli(["run", "--instance", str(target), "--seed", "2"])
    assert code == 0 and "winners" in json.loads(out)
    assert sa.run_cli(["run"])[0] == 2
