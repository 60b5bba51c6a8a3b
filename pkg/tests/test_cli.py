import csv
import io
import json
import os
import subprocess
import sys

import pytest

from hirzebruch.cli import GOLDEN_CASES, GOLDEN_VERSION, main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_seshadri_example(capsys):
    code, out, _ = run(["seshadri", "--e", "3", "--r", "6", "--L", "6,19,4,4,4,4,4,4"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["value"] == "9/2" and d["witness"] == "3,9,2,2,2,2,2,2" and d["mult_x"] == 2


def test_enumerate_candidates(capsys):
    code, out, _ = run(["enumerate", "--e", "3", "--r", "6", "--with-x", "--filter", "candidates"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["count"] == 77 and len(d["classes"]) == 77
    code, out, _ = run(["enumerate", "--e", "3", "--r", "6", "--with-x", "--filter", "candidates",
                        "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 77 and "3,9,2,2,2,2,2,2;2" in {r["csv"] for r in rows}


def test_nef_fibre(capsys):
    code, out, _ = run(["nef", "--e", "2", "--r", "0", "--D", "0,1"], capsys)
    assert code == 0 and json.loads(out)["verdict"] is True


def test_ample_and_table_format(capsys):
    code, out, _ = run(["ample", "--e", "1", "--r", "3", "--L", "3,5,2,2,2", "--format", "table"], capsys)
    assert code == 0 and "verdict" in out.splitlines()[0]


def test_exit_codes(capsys):
    code, _, err = run(["ample", "--e", "1", "--r", "1", "--points", '{"on_ce": [tr', "--L", "3,4,2"], capsys)
    assert code == 1 and "line 1, column" in err
    code, _, _ = run(["ample", "--e", "1", "--r", "9", "--L", "3,4" + ",1" * 9], capsys)
    assert code == 2
    code, _, err = run(["enumerate", "--e", "3", "--r", "8"], capsys)
    assert code == 3 and "manual" in err
    code, _, _ = run(["seshadri", "--e", "3", "--r", "2", "--L", "1,1"], capsys)
    assert code == 4
    code, _, _ = run(["seshadri", "--e", "3", "--r", "2", "--L", "1,2,3"], capsys)
    assert code == 4
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 4


def test_output_file_is_atomic(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(["nef", "--e", "2", "--r", "0", "--D", "0,1", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["verdict"] is True
    assert sorted(os.listdir(tmp_path)) == ["out.json"]
    # a failing run leaves nothing behind
    bad = tmp_path / "bad.json"
    assert main(["enumerate", "--e", "3", "--r", "8", "--output", str(bad)]) == 3
    assert not bad.exists() and sorted(os.listdir(tmp_path)) == ["out.json"]


def test_byte_identical_reruns(capsys):
    argv = ["linsys", "--e", "2", "--spec", "3,7,2,1,1", "--seeds", "0,1,2"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_scan_writes_csv_and_json(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"e": [1, 1], "r": [0, 2], "a": [0, 2], "b": [0, 4], "m": [1, 2], "seeds": [0, 1]}))
    prefix = str(tmp_path / "scan")
    assert main(["scan", "--grid", str(grid), "--out", prefix]) == 0
    summary = json.loads(open(prefix + ".json").read())
    rows = list(csv.reader(open(prefix + ".csv")))
    assert summary["n_specs"] == len(rows) - 1 > 0
    grid.write_text('{"e": [1, 1],\n "r": [0 2]}')
    code, _, err = run(["scan", "--grid", str(grid)], capsys)
    assert code == 1 and "line 2" in err


def test_golden_refuses_overwrite(tmp_path, capsys):
    assert main(["golden", "--dir", str(tmp_path)]) == 0
    capsys.readouterr()
    assert main(["golden", "--dir", str(tmp_path)]) == 4
    assert main(["golden", "--dir", str(tmp_path), "--force"]) == 0


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_files_match(name, capsys):
    path = os.path.join(ROOT, "golden", GOLDEN_VERSION, name + ".json")
    if not os.path.exists(path):
        pytest.skip("golden files not generated")
    code, out, _ = run(GOLDEN_CASES[name], capsys)
    assert code == 0
    with open(path, encoding="utf-8") as fh:
        assert out == fh.read()


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "hirzebruch.cli", "nef", "--e", "0", "--r", "0", "--D", "1,1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["verdict"] is True
