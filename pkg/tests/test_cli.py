"""End-to-end CLI runs through subprocess: tables, exit codes, config merge, plots."""

import csv
import io
import json
import subprocess
import sys

import pytest


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "qbertrand", *argv],
        capture_output=True,
        text=True,
    )


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_potential_default_is_harmonic():
    res = run_cli("potential")
    assert res.returncode == 0
    header, rows = parse_csv(res.stdout)
    assert header == ["r", "V"]
    assert len(rows) == 50
    for r_s, v_s in rows:
        r, v = float(r_s), float(v_s)
        assert v == pytest.approx(0.5 * r * r, rel=1e-12)


def test_potential_coulomb_alpha_one():
    res = run_cli("potential", "--alpha", "1", "--grid", "0.5,4,8")
    assert res.returncode == 0
    _, rows = parse_csv(res.stdout)
    for r_s, v_s in rows:
        assert float(v_s) == pytest.approx(-1.0 / float(r_s), rel=1e-12)


def test_potential_out_file_and_json(tmp_path):
    out = tmp_path / "v.json"
    res = run_cli("potential", "--format", "json", "--grid", "1,2,3", "--out", str(out))
    assert res.returncode == 0
    assert res.stdout == ""
    data = json.loads(out.read_text())
    assert [d["r"] for d in data] == [1.0, 1.5, 2.0]
    assert data[2]["V"] == pytest.approx(2.0)


def test_spectrum_analytic_only_leaves_numeric_blank():
    res = run_cli("spectrum")
    assert res.returncode == 0
    header, rows = parse_csv(res.stdout)
    assert header == ["n", "l", "E_analytic", "E_numeric", "abs_diff"]
    # defaults: coulomb, n_max=2, l_max=1
    assert len(rows) == 6
    first = rows[0]
    assert first[0] == "0" and first[1] == "0"
    assert float(first[2]) == pytest.approx(-0.5, rel=1e-15)
    assert first[3] == "" and first[4] == ""


def test_spectrum_verify_fills_numeric_column():
    res = run_cli("spectrum", "--verify", "true", "--n-max", "0", "--l-max", "0",
                  "--grid", "1e-3,60,3000")
    assert res.returncode == 0
    _, rows = parse_csv(res.stdout)
    (row,) = rows
    assert float(row[3]) == pytest.approx(-0.5, abs=1e-3)
    assert float(row[4]) < 1e-3


def test_spectrum_numeric_case_requires_alpha():
    res = run_cli("spectrum", "--case", "numeric")
    assert res.returncode == 2
    assert "alpha" in res.stderr


def test_spectrum_coarse_grid_exits_3():
    res = run_cli("spectrum", "--verify", "true", "--n-max", "0", "--l-max", "0",
                  "--grid", "1e-3,60,45")
    assert res.returncode == 3


def test_config_file_merge_and_flag_override(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("omega = 2.0\ngrid = 1,1.5,2\n# comment\n")
    res = run_cli("potential", "--config", str(cfg))
    assert res.returncode == 0
    _, rows = parse_csv(res.stdout)
    # omega=2 doubles g1: V = 2 r^2
    assert float(rows[0][1]) == pytest.approx(2.0, rel=1e-12)
    res = run_cli("potential", "--config", str(cfg), "--omega", "1")
    _, rows = parse_csv(res.stdout)
    assert float(rows[0][1]) == pytest.approx(0.5, rel=1e-12)


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("omega = 2.0\nwavelength = 3\n")
    res = run_cli("potential", "--config", str(cfg))
    assert res.returncode == 2
    assert "wavelength" in res.stderr


def test_non_finite_value_exits_2():
    res = run_cli("potential", "--omega", "nan")
    assert res.returncode == 2
    assert "finite" in res.stderr


def test_plot_without_out_exits_2():
    res = run_cli("classify", "--plot")
    assert res.returncode == 2
    assert "--out" in res.stderr


def test_classify_table_and_plot(tmp_path):
    out = tmp_path / "cls.csv"
    res = run_cli("classify", "--alpha-min", "0.5", "--alpha-max", "2.0",
                  "--alpha-step", "0.5", "--out", str(out), "--plot")
    assert res.returncode == 0
    header, rows = parse_csv(out.read_text())
    assert header == ["alpha", "class"]
    got = {float(a): c for a, c in rows}
    assert got[1.0] == "Coulomb"
    assert got[2.0] == "Oscillator"
    assert got[0.5] == "NotConstantIndependent"
    assert got[1.5] == "NotConstantIndependent"
    png = tmp_path / "cls_classes.png"
    assert png.exists() and png.stat().st_size > 0


def test_classify_json_format():
    res = run_cli("classify", "--alpha-min", "1.0", "--alpha-max", "1.0",
                  "--alpha-step", "1.0", "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data == [{"alpha": 1.0, "class": "Coulomb"}]


def test_second_class_worked_example_csv():
    res = run_cli("second-class", "--alpha", "2", "--gamma", "1",
                  "--a", "1", "--b", "1")
    assert res.returncode == 0
    header, rows = parse_csv(res.stdout)
    assert header == ["name", "value"]
    got = {name: float(v) for name, v in rows}
    assert got["A1"] == 1.0 and got["A2"] == 1.0
    assert got["B1"] == 4.0 and got["B2"] == 0.5 and got["B3"] == 0.0
    assert got["C1"] == 2.0 and got["C2"] == 0.0 and got["C3"] == 0.0
    assert got["D1"] == -4.0 and got["D2"] == 1.0 and got["D3"] == 6.0
    assert "s_plus" in got and "s_minus" in got


def test_second_class_degenerate_exits_2():
    # b == -1 makes a derived denominator vanish
    res = run_cli("second-class", "--alpha", "2", "--gamma", "1",
                  "--a", "1", "--b", "-1")
    assert res.returncode == 2


def test_pct_json_payload_with_morse():
    res = run_cli("pct", "--alpha", "-1", "--a", "-0.5", "--format", "json",
                  "--grid", "1,2,4")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert set(data) == {"energy", "morse", "table"}
    assert data["morse"]["e2_coeff"] == pytest.approx(1.0, rel=1e-14)
    assert data["morse"]["e1_coeff"] == pytest.approx(0.0, abs=1e-14)
    assert len(data["table"]) == 4


def test_pct_csv_default_no_morse_block():
    res = run_cli("pct", "--alpha", "2", "--a", "-0.5", "--grid", "1,2,3")
    assert res.returncode == 0
    header, rows = parse_csv(res.stdout)
    assert header == ["rho", "V"]
    assert len(rows) == 3


def test_verify_only_subset_passes():
    res = run_cli("verify", "--only", "determinism")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["all_passed"] is True
    assert [c["name"] for c in report["checks"]] == ["determinism"]


def test_verify_only_known_failure_exits_4():
    res = run_cli("verify", "--only", "pct-suite")
    assert res.returncode == 4
    report = json.loads(res.stdout)
    assert report["all_passed"] is False


def test_verify_subset_byte_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        res = run_cli("verify", "--only", "classifier", "--seed", "7",
                      "--out", str(path))
        assert res.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_missing_required_option_exits_2():
    res = run_cli("pct")
    assert res.returncode == 2
    assert "alpha" in res.stderr
