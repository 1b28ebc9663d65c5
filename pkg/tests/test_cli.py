import json
import subprocess
import sys
import time

import pytest

from dmlattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 40
    assert lines[0].split() == ["p", "k", "l", "d", "t", "mu1", "mu2..4", "mu5"]
    assert lines[3].split()[:3] == ["3", "6", "inf"]


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 39
    assert rows[0] == {"p": "3", "k": "4", "l": "-12", "d": "-2", "t": "1/3",
                       "mu1": "7/12", "mu2..4": "1/6", "mu5": "11/12"}


def test_inspect_off_table(capsys):
    code, out, _ = run(capsys, "inspect", "--p", "5", "--k", "7")
    assert code == 0 and "not a row" in out
    code, out, _ = run(capsys, "inspect", "--p", "7", "--k", "7/2", "--format", "json")
    assert json.loads(out)["params"]["theta_over_pi"] == [2, 7]


def test_k_as_fraction_parts(capsys):
    code, out, _ = run(capsys, "inspect", "--p", "9", "--k-num", "9", "--k-den", "2", "--format", "json")
    assert code == 0 and json.loads(out)["params"]["k"] == "9/2"


@pytest.mark.parametrize(
    "argv",
    [
        ["inspect", "--k", "3"],
        ["inspect", "--p", "7"],
        ["inspect", "--p", "7", "--k", "1/3"],
        ["inspect", "--p", "7", "--k", "x"],
        ["verify", "--all", "--p", "7"],
        ["octagon", "--p", "7", "--k", "3", "--z1", "abc"],
        ["inspect", "--p", "7", "--k", "3", "--k-num", "3"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_all(capsys):
    start = time.perf_counter()
    code, out, _ = run(capsys, "verify", "--all")
    assert time.perf_counter() - start < 60
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("39/39 lattices pass")


def test_verify_coset(capsys):
    code, out, _ = run(capsys, "verify", "--p", "10", "--k", "5", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    assert any(c["name"] == "relator K^4" for c in rep["checks"])


def test_verify_collapsed(capsys):
    code, out, _ = run(capsys, "verify", "--p", "4", "--k", "4", "--format", "json")
    assert code == 0 and json.loads(out)["facet_counts"] == [6, 14, 16, 8]


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--p", "8", "--k", "3", "--tol", "1e-30")
    assert code == 1 and "FAIL" in out


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert run(capsys, "verify", "--p", "9", "--k", "3", "--seed", "5", "--out", str(f))[0] == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("timestamp"), db.pop("timestamp")
    assert json.dumps(da) == json.dumps(db)
    assert da["seed"] == 5


def test_export_round_trip(tmp_path, capsys):
    f = tmp_path / "e.json"
    assert run(capsys, "export", "--p", "8", "--k", "3", "--out", str(f))[0] == 0
    data = json.loads(f.read_text())
    assert len(data["vertices"]) == 14
    code, out, _ = run(capsys, "verify", "--report", str(f))
    assert code == 0 and "0 status changes" in out


def test_export_infinite_l(tmp_path, capsys):
    f = tmp_path / "e.json"
    run(capsys, "export", "--p", "3", "--k", "6", "--out", str(f))
    assert json.loads(f.read_text())["params"]["l"] == "inf"


def test_octagon_degenerate(capsys):
    code, out, _ = run(capsys, "octagon", "--p", "10", "--k", "5", "--format", "json")
    d = json.loads(out)
    v = d["vertices"]
    assert code == 0
    assert v["v0"] == v["v1"] and v["v2"] == v["v3"]
    assert abs(d["difference"]) < 1e-12


def test_octagon_random(capsys):
    code, out, _ = run(capsys, "octagon", "--p", "8", "--k", "3", "--z1", "0.1-0.05j",
                       "--z2", "0.05+0.1i", "--format", "json")
    assert code == 0 and abs(json.loads(out)["difference"]) < 1e-8


def test_octagon_warns_when_not_positive(capsys):
    code, out, _ = run(capsys, "octagon", "--p", "10", "--k", "5", "--z1", "3")
    assert code == 0
    assert "warning" in out and "Hermitian area" in out


def test_presentation(capsys):
    code, out, _ = run(capsys, "presentation", "--p", "7", "--k", "3")
    assert out.strip() == (
        "< J, P, R1, R2 | J^3, P^42, R1^7, R2^7, (P^-1*J)^3, (R2*R1*J)^42, "
        "R2 = P*R1*P^-1, R2 = J*R1*J^-1, P = R1*R2 >"
    )
    code, out, _ = run(capsys, "presentation", "--p", "10", "--k", "5", "--gap")
    assert "FreeGroup" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dmlattice", "list", "--format", "json"],
                       capture_output=True, text=True, check=True)
    assert len(json.loads(r.stdout)) == 39
