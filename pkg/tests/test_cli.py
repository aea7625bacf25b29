import csv
import json
import subprocess
import sys

import pytest

from msbeam.cli import main

TWO_BEAMS = [{"theta_deg": 45, "phi_deg": 45}, {"theta_deg": 45, "phi_deg": 90}]


@pytest.fixture
def targets(tmp_path):
    path = tmp_path / "targets.json"
    path.write_text(json.dumps(TWO_BEAMS))
    return path


def test_code_csv_and_json(targets, tmp_path):
    out = tmp_path / "states.csv"
    assert main(["code", "--targets", str(targets), "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert len(rows) == 24 and all(len(r) == 24 for r in rows)
    assert {int(v) for r in rows for v in r} <= {0, 1, 2, 3}
    js = tmp_path / "states.json"
    assert main(["code", "--targets", str(targets), "--format", "json", "--states", "8",
                 "--method", "amp_phs", "--out", str(js)]) == 0
    doc = json.loads(js.read_text())
    assert (doc["m_count"], doc["n_count"], doc["n_states"]) == (24, 24, 8)
    assert len(doc["amplitude"]) == 24


def test_code_then_pattern_round_trip(targets, tmp_path):
    states = tmp_path / "s.json"
    assert main(["code", "--targets", str(targets), "--format", "json", "--out", str(states)]) == 0
    pattern = tmp_path / "p.csv"
    assert main(["pattern", "--profile", str(states), "--angle-res-deg", "1", "--out", str(pattern)]) == 0
    metrics = json.loads((tmp_path / "p.csv.metrics.json").read_text())
    assert metrics["n_states"] == 4
    direct = tmp_path / "m.json"
    assert main(["pattern", "--targets", str(targets), "--angle-res-deg", "1", "--format", "json",
                 "--out", str(direct)]) == 0
    assert json.loads(direct.read_text())["directivity_dbi"] == metrics["directivity_dbi"]
    header = pattern.read_text().splitlines()[0]
    assert header == "theta_deg,phi_deg,re,im,magnitude_db"


def test_outputs_are_byte_identical(targets, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"sweep{i}.csv"
        assert main(["sweep", "--k-range", "1-3", "--offsets", "0,2", "--angle-res-deg", "1",
                     "--fading", "--drops", "500", "--seed", "3", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    rows = list(csv.reader(outs[0].decode().splitlines()))
    assert tuple(rows[0]) == ("schema_version", "method", "K", "offset_m", "ue_index", "snr_db",
                              "throughput_bps")
    # 2 methods x 3 K x 2 offsets, each with K UE rows plus a total row
    assert len(rows) - 1 == 2 * 2 * (2 + 3 + 4)


def test_scenario_json_and_file(tmp_path):
    from msbeam import scenario as sc

    path = tmp_path / "scen.json"
    path.write_text(json.dumps(sc.scenario_to_dict(sc.build_umi({"angle_resolution_deg": 1.0}))))
    out = tmp_path / "rep.json"
    assert main(["scenario", "--scenario", str(path), "-K", "2", "--angle-res-deg", "1",
                 "--format", "json", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())[0]
    assert rep["K"] == 2 and rep["mcbs_throughput_bps"] > 0


def test_tdm(capsys):
    assert main(["tdm", "--groups", "10", "--ugd-us", "90", "--reconfig-us", "10", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["subframe_length_s"] == pytest.approx(1e-3) and doc["within_budget"]
    assert main(["tdm", "--groups", "10", "--ugd-us", "90", "--reconfig-us", "20"]) == 0
    assert capsys.readouterr().out.strip().endswith("False")


def test_exit_codes(tmp_path, targets):
    assert main(["code", "--targets", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["code", "--targets", str(bad)]) == 2
    bad.write_text(json.dumps([{"theta_deg": 95, "phi_deg": 0}]))
    assert main(["code", "--targets", str(bad)]) == 2
    assert main(["scenario", "-K", "9"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["code", "--targets", str(targets), "--cell-size", "0.6"]) == 2
    assert main(["code", "--targets", str(targets), "--out", str(tmp_path / "no" / "dir.csv")]) == 1
    states = tmp_path / "oob.csv"
    states.write_text("\n".join(",".join(["7"] * 24) for _ in range(24)))
    assert main(["pattern", "--profile", str(states)]) == 2
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"m_count": 2, "n_count": 2, "n_states": 4, "states": [[0, 0], [0, 0]],
                                "amplitude": [[0.0, 0.0], [0.0, 0.0]]}))
    assert main(["pattern", "--profile", str(zero), "--m-count", "2", "--n-count", "2",
                 "--angle-res-deg", "5"]) == 3


def test_module_entry_point(targets):
    proc = subprocess.run([sys.executable, "-m", "msbeam", "tdm", "--groups", "1", "--ugd-us", "1000",
                           "--reconfig-us", "0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "True" in proc.stdout
