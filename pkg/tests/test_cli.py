import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from planar2.cli import main
from planar2.gf2 import ctx_new
from planar2.planar import FuncTable

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.v1.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def manifest_of(err):
    return json.loads(err.strip().splitlines()[-1])


@pytest.mark.parametrize("argv,name", [
    (["planar-search", "--n", "4"], "planar-search"),
    (["lee-table", "--n", "3", "--f", "2,0x1", "--format", "json"], "lee-table"),
    (["rds-verify", "--n", "3", "--f", "2,0x1"], "rds-verify"),
    (["min-lee", "--n", "3", "--f", "2,0x1"], "min-lee"),
    (["bset", "--t", "13", "--n", "6"], "bset"),
    (["curve-report", "--t", "11", "--n", "4", "--a", "0x2"], "curve-report"),
])
def test_outputs_match_schemas(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))
    m = manifest_of(err)
    jsonschema.validate(m, schema("manifest"))
    assert m["status"] == "ok" and m["command"] == name


def test_manifest_digest_and_file(capsys, tmp_path):
    import hashlib

    path = tmp_path / "m.json"
    code, out, err = run(capsys, "min-lee", "--n", "3", "--f", "zero", "--manifest", str(path))
    assert code == 0 and err == ""
    m = json.loads(path.read_text())
    assert m["result_digest"] == hashlib.sha256(out.encode()).hexdigest()
    assert m["modulus"] == "0xb" and m["lifted_modulus"] == [3, 1, 2, 1]


def test_planar_search_csv(capsys):
    code, out, _ = run(capsys, "planar-search", "--n", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,count,family,c"
    row5 = next(r for r in lines[1:] if r.startswith("5,"))
    assert "2^k+1-family" in row5


def test_lee_table_csv_and_check(capsys):
    code, out, _ = run(capsys, "lee-table", "--n", "3", "--f", "2,0x1", "--check-table")
    assert code == 0
    assert out.splitlines() == ["weight,frequency", "0,1", "6,112", "8,30", "10,112", "16,1"]
    code, out, err = run(capsys, "lee-table", "--n", "3", "--f", "3,0x1", "--check-table")
    assert code == 3 and out and manifest_of(err)["status"] == "error"


def test_guard_and_bad_input_exit_2(capsys):
    code, out, err = run(capsys, "planar-search", "--n", "9")
    assert code == 2 and out == "" and manifest_of(err)["error"].startswith("guard")
    code, _, _ = run(capsys, "min-lee", "--n", "3", "--f", "2,0x9")
    assert code == 2
    code, _, _ = run(capsys, "rds-verify", "--n", "3", "--f", "/nonexistent/table.txt")
    assert code == 2


def test_table_file_input(capsys, tmp_path):
    f = FuncTable.monomial(ctx_new(3), 2, 1)
    path = tmp_path / "f.txt"
    path.write_text(f.dumps())
    code, out, _ = run(capsys, "min-lee", "--n", "3", "--f", str(path))
    assert code == 0 and json.loads(out)["min_lee"] == 6
    code, _, err = run(capsys, "min-lee", "--n", "4", "--f", str(path))
    assert code == 2 and "bad input" in manifest_of(err)["error"]


def test_jobs_do_not_change_output(capsys):
    _, a, _ = run(capsys, "planar-search", "--n", "4", "--jobs", "1")
    _, b, _ = run(capsys, "planar-search", "--n", "4", "--jobs", "2")
    assert a == b


def test_curve_report_summary(capsys):
    code, out, _ = run(capsys, "curve-report", "--t", "13", "--n", "6")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 60
    assert all(rep["summary"][k] for k in ("within_bounds", "infinity_types_ok", "affine_multiplicities_ok",
                                           "cones_squarefree", "search_complete"))


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "planar2.cli", "min-lee", "--n", "3", "--f", "3,0x1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["min_lee"] == 4
