"""End-to-end CLI coverage through main(argv)."""

import json

from cnotsynth.cli import main
from cnotsynth.circuits import CnotCircuit, simulate
from cnotsynth.gf2 import BitMatrix, identity, mat_mul, permutation_matrix
from cnotsynth.topology import grid


def run(*argv):
    return main([str(a) for a in argv])


def write(path, text):
    path.write_text(text)
    return str(path)


def test_gen_operator_deterministic(tmp_path, capsys):
    run("gen", "operator", 6, "--gates", 30, "--seed", 4)
    first = capsys.readouterr().out
    run("gen", "operator", 6, "--gates", 30, "--seed", 4)
    assert capsys.readouterr().out == first
    a = BitMatrix.from_text(first)
    assert a.n_rows == a.n_cols == 6


def test_gen_graph(tmp_path, capsys):
    assert run("gen", "graph", "grid:2x3") == 0
    assert capsys.readouterr().out == grid(2, 3).to_text()
    assert run("gen", "graph", "all_to_all") == 2  # nothing to write


def test_synth_identity_empty_circuit(tmp_path, capsys):
    m = write(tmp_path / "m.txt", identity(5).to_text())
    out = tmp_path / "c.txt"
    stats = tmp_path / "stats.jsonl"
    assert run("synth", m, "--out", out, "--stats", stats) == 0
    circ = CnotCircuit.from_text(out.read_text())
    assert len(circ) == 0
    rec = json.loads(stats.read_text())
    assert rec["size"] == 0 and rec["n"] == 5


def test_synth_check_pipeline_unconstrained(tmp_path, capsys):
    m = tmp_path / "m.txt"
    c = tmp_path / "c.txt"
    assert run("gen", "operator", 8, "--gates", 70, "--seed", 9, "--out", m) == 0
    assert run("synth", m, "--out", c, "--solver", "greedy", "--seed", 0) == 0
    assert run("check", c, m) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_synth_exact_mode_realizes_permutation(tmp_path):
    # a pure row permutation must come back as actual gates, not a relabeling
    a = permutation_matrix((1, 2, 0))
    m = write(tmp_path / "m.txt", a.to_text())
    c = tmp_path / "c.txt"
    assert run("synth", m, "--out", c, "--solver", "greedy") == 0
    circ = CnotCircuit.from_text(c.read_text())
    assert simulate(circ) == a


def test_synth_check_pipeline_constrained(tmp_path, capsys):
    m = tmp_path / "m.txt"
    c = tmp_path / "c.txt"
    s = tmp_path / "stats.jsonl"
    run("gen", "operator", 6, "--gates", 50, "--seed", 2, "--out", m)
    code = run(
        "synth", m, "--graph", "grid:2x3", "--niter", 4, "--seed", 1,
        "--out", c, "--stats", s,
    )
    assert code == 0
    assert run("check", c, m, "--graph", "grid:2x3") == 0
    assert json.loads(s.read_text())["constrained"] is True


def test_synth_perm_mode_roundtrip(tmp_path, capsys):
    m = tmp_path / "m.txt"
    c = tmp_path / "c.txt"
    s = tmp_path / "stats.jsonl"
    run("gen", "operator", 6, "--gates", 50, "--seed", 3, "--out", m)
    run(
        "synth", m, "--graph", "line:6", "--perm", "--niter", 4, "--seed", 1,
        "--out", c, "--stats", s,
    )
    rec = json.loads(s.read_text())
    perm = rec["perm"] or list(range(6))
    assert run("check", c, m, "--graph", "line:6", "--perm", " ".join(map(str, perm))) == 0
    a = BitMatrix.from_text(m.read_text())
    circ = CnotCircuit.from_text(c.read_text())
    assert mat_mul(permutation_matrix(tuple(perm)), simulate(circ)) == a


def test_synth_bad_header_exits_nonzero(tmp_path, capsys):
    bad = write(tmp_path / "bad.txt", "not a matrix\n0101\n")
    assert run("synth", bad) == 2
    assert "error" in capsys.readouterr().err


def test_check_names_first_failing_check(tmp_path, capsys):
    m = write(tmp_path / "m.txt", identity(3).to_text())
    c = write(tmp_path / "c.txt", "3\nCNOT 0 2\nCNOT 0 2\n")  # fine, but off-graph
    assert run("check", c, m, "--graph", "line:3") == 1
    out = capsys.readouterr().out
    assert "FAIL: compliance" in out
    assert "simulation: ok" in out


def test_check_catches_wrong_matrix(tmp_path, capsys):
    m = write(tmp_path / "m.txt", identity(3).to_text())
    c = write(tmp_path / "c.txt", "3\nCNOT 0 1\n")
    assert run("check", c, m) == 1
    assert "FAIL: simulation" in capsys.readouterr().out


def test_bench_subcommand(tmp_path, capsys):
    spec = write(
        tmp_path / "spec.json",
        json.dumps(
            {
                "experiment": "ratio_pmh",
                "n_values": [6],
                "n_operators": 2,
                "config": {"solver": "greedy"},
                "seed": 1,
            }
        ),
    )
    out = tmp_path / "r.csv"
    recs = tmp_path / "r.jsonl"
    assert run("bench", spec, "--out", out, "--records", recs) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("method,n,mean_size")
    assert len(lines) == 3
    assert len(recs.read_text().splitlines()) == 4


def test_bench_unknown_experiment(tmp_path, capsys):
    spec = write(tmp_path / "spec.json", '{"experiment": "table_folklore"}')
    assert run("bench", spec) == 2


def test_isd_synth_beats_pmh_on_dense_operator(tmp_path, capsys):
    m = tmp_path / "m.txt"
    stats = tmp_path / "stats.jsonl"
    run("gen", "operator", 60, "--gates", 3600, "--seed", 12, "--out", m)
    assert run(
        "synth", m, "--solver", "isd", "--isd-iters", 500, "--seed", 0,
        "--out", tmp_path / "c1.txt", "--stats", stats,
    ) == 0
    assert run(
        "synth", m, "--solver", "pmh",
        "--out", tmp_path / "c2.txt", "--stats", stats,
    ) == 0
    isd_rec, pmh_rec = (json.loads(ln) for ln in stats.read_text().splitlines())
    assert isd_rec["size"] < pmh_rec["size"]
    assert run("check", tmp_path / "c1.txt", m) == 0
    assert run("check", tmp_path / "c2.txt", m) == 0
