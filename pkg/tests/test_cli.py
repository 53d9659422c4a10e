from __future__ import annotations

import json
import os

import pytest

from momentgraphs.cli import EXIT_FAIL, EXIT_INTERVAL, EXIT_M0, EXIT_TRUNCATION, main


STEPS = ["injective_restriction", "section_dimension", "vandermonde_rank", "kernel_section", "monomial_basis",
         "rank_one_stalk"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_dot_parabolic(capsys):
    code, out, _ = run(capsys, "graph", "--type", "A1", "--kind", "parabolic", "--interval=0..-2a", "--format", "dot")
    assert code == 0
    assert out.count(" -> ") == 10
    assert 'label="a+3c"' in out


def test_graph_single_vertex_stable(capsys):
    code, out, _ = run(capsys, "graph", "--kind", "stable", "--interval", "0")
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 1 and data["edges"] == []


def test_graph_out_matches_stdout(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "graph", "--interval=0..-2a")
    assert run(capsys, "graph", "--interval=0..-2a", "--out", str(target))[0] == 0
    assert target.read_text() == out
    assert [p.name for p in tmp_path.iterdir()] == ["g.json"]


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for t in (a, b):
        assert run(capsys, "compute", "bmp", "--type", "A2", "--kind", "regular",
                   "--interval", "e..s2.s1.s0.s2", "--out", str(t))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_invalid_interval(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, _, err = run(capsys, "graph", "--interval=-2a..0", "--out", str(target))
    assert code == EXIT_INTERVAL
    assert "invalid interval" in err
    assert not target.exists()
    assert run(capsys, "graph", "--interval", "s7")[0] == EXIT_INTERVAL


def test_bad_field(capsys):
    assert run(capsys, "compute", "bmp", "--field", "F2", "--interval=0..-a")[0] == EXIT_INTERVAL


def test_no_stabilization_offset(capsys):
    code, _, err = run(capsys, "compute", "generic", "--type", "A2", "--pair", "e,s0.s1.s2.s1", "--m-max", "0")
    assert code == EXIT_M0
    assert "no stabilization offset" in err


def test_generic_polynomial(capsys):
    code, out, _ = run(capsys, "compute", "generic", "--type", "A2", "--pair", "e,s0.s1.s2.s1",
                       "--m-max", "6", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert row["coefficients"] == [1, 1] and row["m"] == 1


def test_truncation_exit(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, _, err = run(capsys, "compute", "bmp", "--type", "A2", "--kind", "regular",
                       "--interval", "e..s2.s1.s0.s2", "--dmax", "2", "--out", str(target))
    assert code == EXIT_TRUNCATION
    assert "truncation risk" in err
    assert not target.exists()


def test_kl_table_all_ones(capsys):
    code, out, _ = run(capsys, "compute", "kl", "--type", "A1", "--max-length", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,coefficients"
    # Bruhat order here compares lengths only: each of the two y of length k
    # lies above 2k elements counting itself
    assert len(lines) - 1 == 1 + sum(2 * 2 * k for k in range(1, 9))
    assert all(line.endswith(",1") for line in lines[1:])


def test_bmp_stable_all_ones(capsys):
    code, out, _ = run(capsys, "compute", "bmp", "--kind", "stable", "--interval=0..-2a")
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 5 and all(r.endswith(",1") for r in rows)


def test_flabby_report(capsys):
    code, out, _ = run(capsys, "compute", "flabby", "--interval=0..-3a", "--dmax", "8")
    assert code == 0
    rep = json.loads(out)
    assert rep["flabby"] and rep["local_criterion"] and rep["d_max"] == 8


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# key = value\ntype = A2\nkind = regular\ninterval = e..s0.s1\nformat = dot\n")
    code, out, _ = run(capsys, "graph", "--config", str(cfg))
    assert code == 0 and out.startswith("digraph")
    assert "s0.s1" in out
    code, out, _ = run(capsys, "graph", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["root_type"] == "A2"


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    assert run(capsys, "graph", "--config", str(cfg))[0] == EXIT_INTERVAL
    assert run(capsys, "graph", "--config", str(tmp_path / "missing.cfg"))[0] == EXIT_INTERVAL
    cfg.write_text("dmax = lots\n")
    assert run(capsys, "graph", "--config", str(cfg))[0] == EXIT_INTERVAL


def test_verify_orders(capsys):
    code, out, _ = run(capsys, "verify", "orders", "--type", "A1", "--radius", "6")
    assert code == 0
    assert out.splitlines()[0].startswith("# orders: ")
    assert out.rstrip().endswith("orders: PASS")


def test_verify_appendix_per_step(capsys):
    code, out, _ = run(capsys, "verify", "appendix", "--interval=0..-2a")
    assert code == 0
    names = [line.split(":")[0] for line in out.splitlines()[1:-1]]
    assert sorted(names) == sorted(STEPS)


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "gkm", "--interval=0..-4a", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert any("F3" in r["name"] for r in data["results"])


def test_verify_stab_theorem_a2(capsys):
    code, out, _ = run(capsys, "verify", "stab-theorem", "--type", "A2", "--interval", "e..s0.s1.s2.s1", "--m", "2")
    assert code == 0
    assert out.count("stab ranks") == 2


def test_verify_stabilization_not_found(capsys):
    code = run(capsys, "verify", "stabilization", "--type", "A2", "--interval", "e..s0.s1.s2.s1", "--mmax", "0")[0]
    assert code == EXIT_M0


def test_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])


def test_bad_kind_rejected():
    with pytest.raises(SystemExit):
        main(["graph", "--kind", "weird"])


def test_flabby_failure_exit(capsys):
    code, out, _ = run(capsys, "compute", "flabby", "--type", "A2", "--kind", "regular",
                       "--interval", "e..s2.s1.s0.s2", "--dmax", "4")
    assert code == EXIT_FAIL
    assert json.loads(out)["local_criterion"] is False


def test_threads_env_does_not_change_output(capsys, monkeypatch):
    a = run(capsys, "verify", "fiebig", "--max-length", "3")
    monkeypatch.setitem(os.environ, "MG_THREADS", "2")
    b = run(capsys, "verify", "fiebig", "--max-length", "3")
    assert a == b and a[0] == 0
