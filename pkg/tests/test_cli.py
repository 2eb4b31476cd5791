import json
import subprocess
import sys

import pytest

from aggroute.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_prints_cost_13(capsys, sample_csv_path):
    code, out, err = run(capsys, "plan", "--demands", sample_csv_path)
    assert code == 0
    assert json.loads(out)["total_cost"] == 13
    assert "total cost: 13" in err


def test_baseline_prints_18(capsys, sample_csv_path):
    code, out, _ = run(capsys, "baseline", "--demands", sample_csv_path)
    assert (code, out) == (0, "18\n")


def test_validate_roundtrip_and_tamper(capsys, tmp_path, sample_csv_path):
    plan_path = tmp_path / "plan.json"
    assert run(capsys, "plan", "--demands", sample_csv_path, "--out", str(plan_path))[0] == 0
    code, out, _ = run(capsys, "validate", "--demands", sample_csv_path, "--plan", str(plan_path))
    assert code == 0 and "objective 13" in out

    doc = json.loads(plan_path.read_text())
    doc["demands"][5]["route"] = [9, 8, 2]  # drop off the shared segment
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", "--demands", sample_csv_path, "--plan", str(bad))
    assert code == 1
    assert "eq11_d5_v7_e7_1" in err


def test_validate_flags_wrong_total(capsys, tmp_path, sample_csv_path):
    plan_path = tmp_path / "plan.json"
    run(capsys, "plan", "--demands", sample_csv_path, "--out", str(plan_path))
    doc = json.loads(plan_path.read_text())
    doc["total_cost"] = 12
    plan_path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", "--demands", sample_csv_path, "--plan", str(plan_path))
    assert code == 1 and "differs" in err


def test_export_lp(capsys, tmp_path, sample_csv_path):
    out = tmp_path / "m.lp"
    assert run(capsys, "export-lp", "--demands", sample_csv_path, "--out", str(out))[0] == 0
    text = out.read_text()
    assert text.startswith("\\")
    assert "Subject To" in text and text.rstrip().endswith("End")


def test_gen_traffic(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-traffic", "--dests", "5", "--seed", "7")
    assert code == 0
    assert len([l for l in out.splitlines() if not l.startswith("#")]) == 10


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--samples", "15", "--seed", "3")
    assert code == 0 and "15/15" in out


def test_experiment(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, summary, _ = run(capsys, "experiment", "--loads", "3,4", "--samples", "2", "--out", str(out))
    assert code == 0
    assert out.read_text().startswith("load,sample,seed,cost_conventional,cost_aggregation,gain\n")
    assert summary.splitlines()[0].startswith("load,samples")


def test_custom_topology(capsys, tmp_path):
    topo = tmp_path / "t.txt"
    topo.write_text("1 2\n2 3\n")
    dem = tmp_path / "d.csv"
    dem.write_text("1,3\n2,3\n")
    code, out, _ = run(capsys, "plan", "--topology", str(topo), "--demands", str(dem))
    assert code == 0 and json.loads(out)["total_cost"] == 2


@pytest.mark.parametrize("argv", [["bogus"], [], ["plan"], ["plan", "--demands", "x", "--nope"],
                                  ["experiment", "--loads", "a,b"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "plan", "--demands", str(tmp_path / "missing.csv"))
    assert code == 3 and "missing.csv" in err


def test_invalid_input(capsys, tmp_path):
    dem = tmp_path / "d.csv"
    dem.write_text("7,7\n")
    assert run(capsys, "plan", "--demands", str(dem))[0] == 1


def test_console_script_entry(sample_csv_path):
    res = subprocess.run([sys.executable, "-m", "aggroute.cli", "baseline", "--demands", sample_csv_path],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "18\n"
