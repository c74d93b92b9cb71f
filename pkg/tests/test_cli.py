import json
import math
from importlib.resources import files

import numpy as np
import pytest

from topdc.cli import main

TABLE1 = str(files("topdc") / "configs" / "table1.cfg")
TABLE2 = str(files("topdc") / "configs" / "table2.cfg")


def test_rate_command_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["rate", "-c", TABLE1, "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert set(payload["scenarios"]) == {
        "wg_sp_deg", "wg_st", "wg_dst", "ring_sp_deg", "ring_st", "ring_dst",
    }
    assert payload["scenarios"]["wg_sp_deg"]["rate_per_s"] == pytest.approx(
        12.0, rel=0.15
    )
    assert "assumptions" in payload


def test_rate_command_human_readable(capsys):
    assert main(["rate", "-c", TABLE1]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert all("rate =" in line for line in lines)


def test_missing_config_exits_2(capsys):
    assert main(["rate", "-c", "/does/not/exist.cfg"]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_scenario_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(
        "[device:wg]\ntype = waveguide\nsample = true\n"
        "[scenario:broken]\ndevice = wg\nprocess = st\npump_power = 100 mW\n"
    )  # seeded process without a seed power
    assert main(["rate", "-c", str(cfg)]) == 2


def test_sweep_outputs_are_deterministic(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for prefix in (a, b):
        code = main(["sweep", "-c", TABLE2, "--name", "length_st",
                     "--out", str(prefix)])
        assert code == 0
    assert a.with_suffix(".csv").read_bytes() == b.with_suffix(".csv").read_bytes()
    assert a.with_suffix(".svg").read_bytes() == b.with_suffix(".svg").read_bytes()
    header, first = a.with_suffix(".csv").read_text().splitlines()[:2]
    assert header == "parameter,rate,tau_inv,vacuum_power"
    assert len(first.split(",")) == 4
    assert "exponent = +1.5" in capsys.readouterr().out


def test_phasematch_command(capsys):
    code = main(["phasematch", "-c", TABLE1, "--device", "wg",
                 "--bracket-lo", "1.4 um", "--bracket-hi", "2.0 um"])
    assert code == 0
    out = capsys.readouterr().out
    assert "1.720000 um" in out


def test_phasematch_no_root_exits_3(capsys):
    code = main(["phasematch", "-c", TABLE1, "--device", "wg",
                 "--bracket-lo", "0.1 um", "--bracket-hi", "0.2 um"])
    assert code == 3
    assert "wg" in capsys.readouterr().err


def test_bandwidth_command_ring(tmp_path):
    out = tmp_path / "bw.json"
    code = main(["bandwidth", "-c", TABLE1, "--device", "ring", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["tau_inv_per_s"] == pytest.approx(1.29e7, rel=0.01)


def test_bandwidth_command_waveguide(tmp_path):
    out = tmp_path / "bw.json"
    code = main(["bandwidth", "-c", TABLE1, "--device", "wg", "--process", "st",
                 "--band", "G", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    ratio = payload["tau_inv_numeric_per_s"] / payload["tau_inv_analytic_per_s"]
    assert 0.8 <= ratio <= 1.3


def _write_profile(path, width=0.8e-6, n=32, extent=3e-6):
    x = np.linspace(-extent, extent, n)
    dx = (x[1] - x[0]) * 1e6
    with open(path, "w") as fh:
        fh.write(f"nx {n}\nny {n}\ndx_um {dx}\ndy_um {dx}\n")
        fh.write("lambda_um 1.72\nband F\n")
        for i in range(n):
            for j in range(n):
                e = math.exp(-(x[i] ** 2 + x[j] ** 2) / (2 * width**2))
                fh.write(f"{i} {j} {e} 0 0 0 0 0 2.0\n")


def test_overlap_command(tmp_path, capsys):
    path = tmp_path / "mode.dat"
    _write_profile(path)
    code = main(["overlap", str(path), str(path), str(path), str(path)])
    assert code == 0
    out = capsys.readouterr().out
    area_um2 = float(out.splitlines()[0].split("=")[1].split()[0])
    assert area_um2 == pytest.approx(2 * math.pi * 0.8**2, rel=0.01)
