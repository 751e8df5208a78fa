import csv
import io
import subprocess
import sys

import pytest

from linchrom.exact import SmallGraph, treedepth
from linchrom.gridcore import format_graph, parse_graph
from linchrom.harness.cli import main
from linchrom.harness.experiment import CSV_COLUMNS, make_instance, reverify
from linchrom.witness import parse_witness


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_grid(capsys):
    code, out, _ = run(["gen-grid", "--k", 3], capsys)
    assert code == 0
    n, edges = parse_graph(out)
    assert (n, len(edges)) == (9, 12)


def test_gen_pseudogrid_and_colour(tmp_path, capsys):
    spec = tmp_path / "spec.txt"
    assert run(["gen-pseudogrid", "--k", 8, "--seed", 2, "--out", spec], capsys)[0] == 0
    code, out, _ = run(["colour-random", "--spec", spec, "--colours", 3, "--seed", 2], capsys)
    assert code == 0 and out.startswith("colouring")


def test_exact_path(tmp_path, capsys):
    p7 = tmp_path / "p7.txt"
    p7.write_text(format_graph({i: [j for j in (i - 1, i + 1) if 0 <= j < 7] for i in range(7)}))
    for what, want in (("treedepth", 3), ("chicen", 3), ("chilin", 3)):
        code, out, _ = run(["exact", what, p7], capsys)
        assert code == 0 and out.strip() == str(want)
    n, edges = parse_graph(p7.read_text())
    assert treedepth(SmallGraph.from_edges(n, edges)) == 3


def test_usage_errors(tmp_path, capsys):
    for argv in (["witness", "--k", 0], ["exact", "treedepth", tmp_path / "missing.txt"], ["nonsense"], []):
        with pytest.raises(SystemExit) as err:
            main([str(a) for a in argv])
        assert err.value.code == 2
    capsys.readouterr()


def test_witness_deterministic_and_verifiable(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for out in (a, b):
        assert run(["witness", "--k", 128, "--colours", 4, "--r", 9, "--seed", 7, "--out", out], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(["verify", a], capsys)
    assert code == 0 and out.strip() == "verified"
    # swap one vertex of the path for another host vertex
    lines = a.read_text().splitlines()
    path = lines[1].split()
    pg, _ = make_instance(128, 4, 7)
    stranger = next(v for v in pg.vertices() if str(v) not in set(path))
    path[len(path) // 2] = str(stranger)
    lines[1] = " ".join(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = run(["verify", bad], capsys)
    assert code == 1 and out.strip() == "rejected"


def test_witness_failure_exit_code(capsys):
    code, _, err = run(["witness", "--k", 40, "--colours", 8], capsys)
    assert code == 1 and "precondition" in err


def test_experiment_zero_trials(tmp_path, capsys):
    out = tmp_path / "e.csv"
    assert run(["experiment", "--k", 64, "--trials", 0, "--out", out], capsys)[0] == 0
    assert out.read_text().strip() == ",".join(CSV_COLUMNS)


def test_experiment_deterministic(tmp_path, capsys):
    outs = [tmp_path / "x.csv", tmp_path / "y.csv"]
    for out in outs:
        assert run(["experiment", "--k", "64", "--trials", 3, "--seed", 5, "--host", "mixed", "--out", out], capsys)[0] == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
    assert (tmp_path / "x.csv.summary.csv").read_bytes() == (tmp_path / "y.csv.summary.csv").read_bytes()


@pytest.mark.slow
def test_experiment_rows_reverify(tmp_path, capsys):
    out = tmp_path / "run.csv"
    code, stdout, _ = run(["experiment", "--k", "64,128", "--trials", 20, "--seed", 1, "--out", out], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 40
    assert {r["c"] for r in rows} == {"2", "4"}
    summary = (tmp_path / "run.csv.summary.csv").read_text()
    assert "success_rate" in summary.splitlines()[0]
    assert stdout.strip().endswith(summary.strip().splitlines()[-1])
    for r in rows:
        if r["success"] != "1":
            continue
        k, c, seed = int(r["k"]), int(r["c"]), int(r["seed"])
        wf = parse_witness((tmp_path / "run.csv.witnesses" / f"k{k}_c{c}_{seed}.txt").read_text())
        pg, phi = make_instance(k, c, seed)
        assert reverify(pg, phi, wf.path)
        assert len(wf.path) == int(r["path_length"])


def test_packing_census(capsys):
    code, out, _ = run(["packing-census", "--k", 60, "--r", 3, "--trials", 5], capsys)
    assert code == 0 and out.startswith("trials 5 max_census")


def test_sweep(capsys):
    code, out, _ = run(["sweep", "--a", 5, "--kind", "single"], capsys)
    assert code == 0 and "cases=2079 valid=2079" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "linchrom", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "witness" in res.stdout
