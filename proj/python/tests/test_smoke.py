import json
import math
import pathlib

import pytest

import equiflow as ef

ROOT = pathlib.Path(__file__).resolve().parents[2]
DISC = {"set": {"shape": "disc", "center": [0.5, 0.5], "radius": 0.25}}


def test_slope_digits():
    s = ef.Slope("invphi")
    assert s.partial_quotients[:5] == [0, 1, 1, 1, 1]
    assert math.isclose(float(s), (math.sqrt(5) - 1) / 2, rel_tol=1e-15)
    assert ef.Slope([0, 2, 3]).convergents[-1] == (3, 7)


def test_disc_area_and_occupation():
    scene = ef.Scene(DISC)
    assert math.isclose(scene.area(), math.pi / 16, rel_tol=1e-10)
    occ = ef.occupation_time(scene, "golden", 1000.0)
    assert abs(occ - 1000 * math.pi / 16) < 1.0


def test_scene_file_and_json_round_trip():
    scene = ef.Scene.load(str(ROOT / "scenes" / "boolean.json"))
    again = ef.Scene(scene.to_json())
    assert math.isclose(scene.area(), again.area(), rel_tol=1e-12)


def test_half_plane_tau_is_a_step():
    flat = {"set": {"shape": "rectangle", "x": [0, 1], "y": [0.5, 1]}}
    assert ef.tau(flat, 0.0, 0.25) == 0.0
    assert ef.tau(flat, 0.0, 0.75) == 1.0
    values = ef.tau_samples(DISC, "golden", 1 << 10)
    assert abs(sum(values) / len(values) - math.pi / 16) < 1e-4


def test_kronecker_three_gaps_and_discrepancy():
    assert ef.distinct_gap_count("sqrt2", 5000) <= 3
    pts = ef.kronecker_points("golden", 1000)
    d = ef.star_discrepancy(pts)
    assert 0.5 / 1000 <= d <= 1.0
    assert ef.lp_discrepancy(pts, 2.0) <= d
    assert math.isclose(ef.lp_discrepancy([0.5], 2.0), math.sqrt(1 / 12), rel_tol=1e-14)


def test_sobolev_verdicts():
    assert ef.sobolev_verdict(DISC, "golden", 1.5) == "convergent"
    assert ef.sobolev_verdict(DISC, "golden", 3.0) == "divergent"


def test_errors_are_translated():
    with pytest.raises(ef.EquiflowError, match="precision-exhausted"):
        ef.occupation_time(DISC, "golden", 1e80)
    with pytest.raises(ef.EquiflowError):
        ef.Slope("[1; 0]")


def test_cli_in_process(tmp_path):
    code, out, _ = ef.run_cli(["area", "--scene", str(ROOT / "scenes" / "disc.json")])
    assert code == 0 and out == "0.196349540849\n"
    code, _, _ = ef.run_cli(["cf", "--value", "[1; 0]"])
    assert code == 1
