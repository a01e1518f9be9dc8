import json

import pytest

from quivercoha.cli import main


def write_quiver(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def a1_path(tmp_path):
    return write_quiver(tmp_path, "a1.json", {"vertices": 1, "arrows": []})


@pytest.fixture
def loop1_path(tmp_path):
    return write_quiver(tmp_path, "loop1.json",
                        {"vertices": 1, "arrows": [[0, 0, 1]]})


@pytest.fixture
def kron_path(tmp_path):
    return write_quiver(tmp_path, "kron.json",
                        {"vertices": 2, "arrows": [[0, 1, 2], [1, 0, 2]]})


def run_to_file(tmp_path, args, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_bytes()


def test_dt_table_matches_expected_values(tmp_path, a1_path):
    code, blob = run_to_file(tmp_path, [
        "--quiver", a1_path, "--mode", "dt-table",
        "--gamma-max", "3", "--qtrunc", "16"])
    assert code == 0
    data = json.loads(blob)
    by_gamma = {tuple(r["gamma"]): r for r in data["omega"]}
    assert by_gamma[(1,)]["coeffs"] == [[1, "1"]]
    assert by_gamma[(1,)]["nonvanishing"] is True
    assert by_gamma[(2,)]["coeffs"] == []
    assert by_gamma[(3,)]["nonvanishing"] is False


def test_every_mode_is_byte_deterministic(tmp_path, a1_path, loop1_path):
    runs = {
        "dt-table": ["--quiver", a1_path, "--mode", "dt-table",
                     "--gamma-max", "2", "--qtrunc", "10"],
        "check-freeness": ["--quiver", a1_path, "--mode", "check-freeness",
                           "--gamma-max", "2", "--qtrunc", "8"],
        "check-nonvanishing": ["--quiver", loop1_path, "--mode",
                               "check-nonvanishing", "--gamma-max", "2",
                               "--qtrunc", "10"],
        "genericity": ["--quiver", a1_path, "--mode", "genericity",
                       "--gamma-max", "3", "--seed", "7"],
        "shuffle-eval": ["--quiver", a1_path, "--mode", "shuffle-eval",
                         "--gamma-max", "2", "--left", "x", "--left-gamma", "1",
                         "--right", "1", "--right-gamma", "1"],
    }
    for mode, args in runs.items():
        for fmt in ("json", "csv"):
            code1, blob1 = run_to_file(tmp_path, args + ["--format", fmt], "r1")
            code2, blob2 = run_to_file(tmp_path, args + ["--format", fmt], "r2")
            assert code1 == code2 == 0, mode
            assert blob1 == blob2, (mode, fmt)


def test_check_modes_exit_zero_on_agreement(tmp_path, loop1_path, kron_path):
    code, blob = run_to_file(tmp_path, [
        "--quiver", loop1_path, "--mode", "check-nonvanishing",
        "--gamma-max", "3", "--qtrunc", "12"])
    assert code == 0
    assert json.loads(blob)["verdict"] is True
    code, blob = run_to_file(tmp_path, [
        "--quiver", kron_path, "--mode", "check-freeness",
        "--gamma-max", "1,1", "--qtrunc", "12"])
    assert code == 0
    data = json.loads(blob)
    assert data["verdict"] is True
    assert all(cell["ok"] for cell in data["cells"])


def test_json_report_reparses_to_equal_report(tmp_path, kron_path):
    from quivercoha.dtseries import DTReport
    code, blob = run_to_file(tmp_path, [
        "--quiver", kron_path, "--mode", "dt-table",
        "--gamma-max", "1,1", "--qtrunc", "12"])
    assert code == 0
    data = json.loads(blob)
    report = DTReport.from_dict(data)
    assert report.to_dict() == data


def test_shuffle_eval_output(tmp_path, a1_path):
    code, blob = run_to_file(tmp_path, [
        "--quiver", a1_path, "--mode", "shuffle-eval", "--gamma-max", "2",
        "--left", "x", "--left-gamma", "1", "--right", "1", "--right-gamma", "1"])
    assert code == 0
    assert json.loads(blob)["product"] == {"gamma": [2], "poly": "-1"}


def test_genericity_rows_check_out(tmp_path, loop1_path):
    code, blob = run_to_file(tmp_path, [
        "--quiver", loop1_path, "--mode", "genericity",
        "--gamma-max", "3", "--seed", "11"])
    assert code == 0
    data = json.loads(blob)
    for row in data["rows"]:
        assert row["generic"] is True
        assert row["gamma_dot_lambda"] == "0"


def test_malformed_spec_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 2, "arrows": [[0, 7, 1]]}', encoding="utf-8")
    code = main(["--quiver", str(bad), "--mode", "dt-table", "--gamma-max", "1,1"])
    assert code == 2
    assert "arrows[0]" in capsys.readouterr().err
    notjson = tmp_path / "notjson.json"
    notjson.write_text("{", encoding="utf-8")
    assert main(["--quiver", str(notjson), "--mode", "dt-table",
                 "--gamma-max", "1,1"]) == 2


def test_mode_quiver_mismatch_is_exit_2(tmp_path, capsys):
    asym = write_quiver(tmp_path, "asym.json",
                        {"vertices": 2, "arrows": [[0, 1, 1]]})
    code = main(["--quiver", asym, "--mode", "dt-table", "--gamma-max", "1,1"])
    assert code == 2
    assert "symmetric" in capsys.readouterr().err


def test_gamma_max_length_mismatch_is_exit_2(a1_path):
    assert main(["--quiver", a1_path, "--mode", "dt-table",
                 "--gamma-max", "1,1"]) == 2


def test_csv_has_header_and_rows(tmp_path, a1_path):
    code, blob = run_to_file(tmp_path, [
        "--quiver", a1_path, "--mode", "dt-table", "--gamma-max", "2",
        "--qtrunc", "10", "--format", "csv"], "out.csv")
    assert code == 0
    lines = blob.decode().splitlines()
    assert any(line.startswith("#,qtrunc,10") for line in lines)
    header = next(line for line in lines if not line.startswith("#"))
    assert header.split(",") == ["coeffs", "gamma", "nonvanishing", "window"]
