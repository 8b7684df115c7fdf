import json
import subprocess
import sys

import pytest

from nokpoly.cli import main
from nokpoly.models import elliptic_square_model, save_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_np_examples(capsys):
    code, out, _ = run(capsys, "np", "exe:4,3,2", "--p", "1")
    assert code == 0 and out.splitlines()[0] == "Holds"
    code, out, _ = run(capsys, "np", "prod:40", "--p", "2")
    assert code == 1 and out.splitlines()[0] == "Fails (witness: A, L·A = 1)"
    code, out, _ = run(capsys, "np", "exe:4,3,2", "--p", "2")
    assert code == 2 and out.startswith("Inconclusive")


def test_gp(capsys):
    code, out, _ = run(capsys, "gp", "rho1:1,23", "--d", "23")
    assert code == 0 and out.splitlines()[0] == "Holds: ideal generated by quadrics and cubics"
    assert run(capsys, "gp", "rho1:1,9", "--d", "9")[0] == 2


def test_other_verdict_commands(capsys):
    assert run(capsys, "koszul", "exe:4,3,2")[0] == 0
    assert run(capsys, "kva", "exe:4,3,2", "--k", "2")[0] == 0
    assert run(capsys, "kva", "prod:40", "--k", "1")[0] == 1


def test_json_verdict(capsys):
    code, out, _ = run(capsys, "np", "prod:40", "--p", "2", "--json")
    d = json.loads(out)
    assert code == 1 and d["outcome"] == "Fails" and d["witness"] == "A"
    assert ["L^2", "80"] in d["trace"]


def test_polygon(capsys):
    code, out, _ = run(capsys, "polygon", "exe:4,3,2")
    assert code == 0
    assert "vertices: (0, 0), (9, 0), (7, 4), (6, 5), (5, 5)" in out and "area: 26" in out
    code, out, _ = run(capsys, "polygon", "exe:4,3,2", "--scale", "1/3", "--json")
    d = json.loads(out)
    assert d["area"] == "26/9" and d["mu_prime"] == "3"
    assert ["2", "5/3"] in d["vertices"]
    code, out, _ = run(capsys, "polygon", "rho1:1,23", "--json")
    assert json.loads(out)["mu_prime"] == "sqrt(46)"


def test_zariski(capsys):
    code, out, _ = run(capsys, "zariski", "exe:4,3,2", "--t", "8")
    assert code == 0
    assert "N = 3*F1 + 2*F2 + Delta" in out and "P.E = 2" in out
    code, out, _ = run(capsys, "zariski", "exe:4,3,2", "--t", "6", "--json")
    d = json.loads(out)
    assert d["negative"] == {"F1": "1"} and d["slice"] == "5"
    code, _, err = run(capsys, "zariski", "exe:4,3,2", "--t", "10")
    assert code == 3 and "not pseudoeffective" in err


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "np", str(tmp_path / "none.json"), "--p", "1")
    assert code == 3 and err.startswith("error:")
    with pytest.raises(SystemExit) as exc:
        main(["np", "exe:4,3,2"])
    assert exc.value.code == 4
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 4
    assert run(capsys, "np", "exe:1,1", "--p", "1")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["polygon", "exe:4,3,2", "--scale", "-1"])
    assert exc.value.code == 4


def test_model_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    save_model(elliptic_square_model(4, 3, 2), path)
    code, out, _ = run(capsys, "np", str(path), "--p", "1")
    assert code == 0 and out.startswith("Holds")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "area", "--seed", "2", "--cases", "10")
    assert code == 0 and out.strip() == "area: 10 cases, ok"
    code, out, _ = run(capsys, "verify", "--suite", "envelope", "--cases", "5", "--json")
    d = json.loads(out)
    assert code == 0 and d[0]["suite"] == "envelope" and d[0]["failures"] == []


def test_analyze_and_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "exe:4,3,2")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert ["L^2", "52"] in rows
    assert rows[2][:3] == ["seshadri", "5", "F1"]
    assert any(r[:3] == ["np", "1", "Holds"] for r in rows)
    code, out, _ = run(capsys, "analyze", "exe:4,3,2", "--json")
    d = json.loads(out)
    assert d["L^2"] == "52" and d["seshadri"] == "5" and d["envelope_ok"] is True
    outdir = tmp_path / "out"
    code, first, _ = run(capsys, "analyze", "exe:4,3,2", "--out-dir", str(outdir))
    files = sorted(p.name for p in outdir.iterdir())
    assert files == ["polygon.svg", "report.json", "verdicts.tsv"]
    svg1 = (outdir / "polygon.svg").read_bytes()
    run(capsys, "analyze", "exe:4,3,2", "--out-dir", str(outdir))
    assert (outdir / "polygon.svg").read_bytes() == svg1
    assert svg1.lstrip().startswith(b"<?xml")


def test_plot(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, "plot", "exe:4,3,2", "--out", str(a), "--lambda", "--triangles")[0] == 0
    assert run(capsys, "plot", "exe:4,3,2", "--out", str(b), "--lambda", "--triangles")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_deterministic_output(capsys):
    first = run(capsys, "analyze", "rho1:1,23", "--json")[1]
    assert run(capsys, "analyze", "rho1:1,23", "--json")[1] == first


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nokpoly", "np", "exe:4,3,2", "--p", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("Holds")
