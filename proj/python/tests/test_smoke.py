# Copyright 2026 The migsim Authors
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

import math

import numpy as np
import pytest

import migsim


def test_static_values():
    p = migsim.PhysicalParams.reference_defaults()
    assert migsim.v_c(p) / (2 * math.pi) == pytest.approx(663.9344262295083, rel=1e-12)
    assert migsim.shadow_radius(p.c6_s, 6, p) == pytest.approx(0.712687285139079, rel=1e-12)
    assert migsim.rabi_period(20.0, p.c3) == pytest.approx(1.2353304508956144, rel=1e-14)
    table = migsim.interaction_table(5, 20.0, 1.0, p)
    assert table.shape == (5, 5)
    assert table[0, 0] == pytest.approx(-6484.247245633795, rel=1e-12)


def test_profile_and_calibration():
    kappa = migsim.calibrate_kappa(1.2353304508956144)
    assert kappa == pytest.approx(1803.438319541162, rel=1e-9)
    assert migsim.coupling_at(10.0) > migsim.coupling_at(0.0)


def test_density_matrix_helpers():
    rho = np.diag([1.0, 0.0]).astype(complex)
    mixed = np.eye(2, dtype=complex) / 2
    assert migsim.purity(mixed) == pytest.approx(0.5)
    assert migsim.trace_distance(rho, mixed) == pytest.approx(0.5)


def test_presets_and_validation():
    assert set(migsim.preset_names()) == {"transport2", "transport4", "switching", "baseline"}
    text = migsim.preset("switching")
    assert "OFF 3 1" in text
    assert migsim.validate(text) == []
    with pytest.raises(migsim.ConfigError):
        migsim.validate("params.c3 = 1619\n")
    with pytest.raises(migsim.MigsimError):
        migsim.preset("nope")


def test_short_run():
    text = migsim.preset("transport2").replace("run.t_final = 4.8 us", "run.t_final = 0.5 us")
    out = migsim.run(text, realizations=2, seed=3)
    pops = out["populations"]
    assert pops.shape == (len(out["times"]), 5)
    assert np.allclose(pops.sum(axis=1), 1.0, atol=1e-10)
    assert out["count"] == 2
    assert out["final_fidelity_mean"] == pytest.approx(pops[-1, 4], abs=1e-12)


def test_baseline_run_stays_coherent():
    out = migsim.run(migsim.preset("baseline"))
    assert out["final_fidelity_mean"] < 0.5
    assert out["purity"][-1] == pytest.approx(1.0, abs=1e-9)
