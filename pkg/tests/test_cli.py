import csv
import io
import json

import pytest

from cvm2d.cli import main
from cvm2d.grid import random_equiprobable, read_pattern, write_pattern
from oracles import brute_force_counts


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for kind in ("stripe", "block", "random"):
        p = tmp_path / f"{kind}.txt"
        assert main(["gen-fixture", kind, "--rows", "16", "--cols", "16", "-o", str(p)]) == 0
        paths[kind] = p
    allA = tmp_path / "all_a.txt"
    allA.write_text("1111\n" * 4)
    paths["all_a"] = allA
    seed7 = tmp_path / "seed7.txt"
    write_pattern(random_equiprobable(4, 4, 7), seed7)
    paths["seed7"] = seed7
    capsys.readouterr()
    return paths


def test_gen_fixture_stdout(capsys):
    assert run(capsys, "gen-fixture", "stripe", "--rows", "4", "--cols", "4")[1] == "1111\n0000\n1111\n0000\n"
    assert run(capsys, "gen-fixture", "block", "--rows", "4", "--cols", "4")[1] == "1111\n1111\n0000\n0000\n"
    a = run(capsys, "gen-fixture", "random", "--seed", "42")[1]
    assert a == run(capsys, "gen-fixture", "random", "--seed", "42")[1]
    assert a.count("1") == 128
    assert run(capsys, "gen-fixture", "stripe", "--rows", "3")[0] == 3


def test_count(capsys, files):
    code, out, _ = run(capsys, "count", str(files["all_a"]))
    data = json.loads(out)
    assert code == 0 and data["config_vars"]["x1"] == 1.0 and data["config_vars"]["z1"] == 1.0
    assert data["equivalences"]["passed"] is True and data["equiprobable"] is False

    data = json.loads(run(capsys, "count", str(files["stripe"]))[1])
    cv = data["config_vars"]
    assert cv["y2"] == 0.5 and cv["z3"] == cv["z4"] == 0.5 and data["equiprobable"] is True

    data = json.loads(run(capsys, "count", str(files["seed7"]))[1])
    oracle = brute_force_counts(read_pattern(files["seed7"]).cells.tolist())
    assert data["config_vars"] == {k: float(v) for k, v in oracle.items()}


def test_count_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("10\n1x\n")
    code, out, err = run(capsys, "count", str(bad))
    assert code == 3 and out == "" and "line 2" in err
    assert run(capsys, "count", str(tmp_path / "missing.txt"))[0] == 3


def test_analytic(capsys):
    code, out, _ = run(capsys, "analytic", "--h-lo", "1", "--h-hi", "2", "--step", "0.5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["h", "y1", "y2", "y3", "w1", "w2", "w3", "z1", "z2", "z3", "z4", "z5", "z6"]
    assert [float(r["h"]) for r in rows] == [1.0, 1.5, 2.0]
    assert float(rows[0]["y2"]) == 0.25 and float(rows[0]["z1"]) == float(rows[0]["z3"]) == 0.125
    assert float(rows[2]["y1"]) == pytest.approx(5 / 14, abs=1e-15)
    assert float(rows[2]["z3"]) == pytest.approx(3 / 56, abs=1e-15)

    code, out, _ = run(capsys, "analytic", "--h-lo", "1")
    assert code == 0 and len(out.splitlines()) == 2


def test_analytic_root(capsys):
    code, out, err = run(capsys, "analytic", "--h-lo", "5.8", "--h-hi", "5.9", "--step", "0.05")
    assert code == 4 and out == "" and "5.828" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_envelope(capsys, tmp_path):
    core = tmp_path / "core.txt"
    core.write_text("1001\n0110\n")
    code, out, _ = run(capsys, "envelope", str(core))
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4 and all(len(l) == 8 for l in lines)
    assert lines[1] == "01100110"  # core row 0 folded
    odd = tmp_path / "odd.txt"
    odd.write_text("101\n010\n")
    assert run(capsys, "envelope", str(odd))[0] == 3


def test_minimize(capsys, files, tmp_path):
    cv_out, trace_out, pat_out = tmp_path / "cv.json", tmp_path / "trace.csv", tmp_path / "min.txt"
    argv = ["minimize", "--pattern", str(files["stripe"]), "--h", "1.65", "--flips", "50",
            "--cv-out", str(cv_out), "--trace-out", str(trace_out), "-o", str(pat_out)]
    assert run(capsys, *argv)[0] == 0
    data = json.loads(cv_out.read_text())
    assert data["F_final"] < data["F_initial"] and data["rng"] == "numpy.PCG64"
    assert trace_out.read_text().splitlines()[0] == "step,accepted,F_before,F_after"
    first = pat_out.read_text()
    assert run(capsys, *argv)[0] == 0
    assert pat_out.read_text() == first
    assert run(capsys, "minimize", "--pattern", str(files["all_a"]), "--h", "1.5")[0] == 3
    assert run(capsys, "minimize", "--pattern", str(files["stripe"]), "--h", "-1")[0] == 4


def test_energy(capsys, files):
    data = json.loads(run(capsys, "energy", str(files["stripe"]), "--h", "1")[1])
    assert data["F"] == pytest.approx(0.0, abs=1e-15) and data["S"] == pytest.approx(0.0, abs=1e-15)


def test_sweep(capsys, files, tmp_path):
    argv = ["sweep", "--pattern", str(files["random"]), "--h-lo", "1.0", "--h-hi", "1.2",
            "--flips", "20", "--trials", "2"]
    code, out, err = run(capsys, *argv)
    assert code == 0 and out.splitlines()[0] == "h,divergence,F_final,y2,z1,z3"
    assert len(out.splitlines()) == 6 and "best h" in err

    js = tmp_path / "rep.json"
    assert run(capsys, *argv, "-o", str(js))[0] == 0
    first = js.read_bytes()
    assert json.loads(first)["trials"] == 2
    assert run(capsys, *argv, "-o", str(js))[0] == 0
    assert js.read_bytes() == first

    code, out, _ = run(capsys, "sweep", "--pattern", str(files["random"]), "--auto-range", "--flips", "5",
                       "--trials", "1", "--format", "json")
    assert code == 0 and json.loads(out)["rows"]
    assert run(capsys, "sweep", "--pattern", str(files["random"]))[0] == 3
    assert run(capsys, "sweep", "--pattern", str(files["random"]), "--h-lo", "0.1", "--h-hi", "1")[0] == 4


def test_divergence(capsys, files):
    code, out, _ = run(capsys, "divergence", "--q", str(files["stripe"]), "--p-analytic", "1.0")
    data = json.loads(out)
    assert code == 0 and data["divergence"] == pytest.approx(-0.6931471805599454, abs=1e-14)
    assert data["terms"]["x"] == 0.0
    q = str(files["random"])
    assert json.loads(run(capsys, "divergence", "--q", q, "--p", q)[1])["divergence"] == 0.0
    assert run(capsys, "divergence", "--q", q, "--p", str(files["stripe"]), "--strict")[0] == 4
    assert run(capsys, "divergence", "--q", q)[0] == 3
