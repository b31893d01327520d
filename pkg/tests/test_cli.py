import io
import json
import subprocess
import sys

import pytest

from graphchain import cli

GFA = "S\t1\tAC\nS\t2\tGT\nL\t1\t+\t2\t+\t0M\n"
CYCLE = "S\t1\tA\nS\t2\tC\nL\t2\t+\t1\t+\t0M\nL\t1\t+\t2\t+\t0M\n"
FASTA = ">q1\nAGT\n>q2\nACGTT\n>q3\nTTTT\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "g.gfa").write_text(GFA)
    (tmp_path / "cyc.gfa").write_text(CYCLE)
    (tmp_path / "q.fa").write_text(FASTA)
    (tmp_path / "one.fa").write_text(">q\nAGT\n")
    return tmp_path


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_lcs(files):
    code, out = run("lcs", "--graph", files / "g.gfa", "--query", files / "one.fa")
    assert (code, out) == (0, "3\n")


def test_lcs_equals_sym_chain_coverage(files):
    _, lcs = run("lcs", "--graph", files / "g.gfa", "--query", files / "q.fa")
    _, chain = run("chain", "--graph", files / "g.gfa", "--query", files / "q.fa", "--mode", "sym")
    records = [json.loads(line) for line in chain.splitlines()]
    assert [r["query"] for r in records] == ["q1", "q2", "q3"]
    assert [int(x) for x in lcs.split()] == [r["coverage"] for r in records]


def test_chain_record(files):
    code, out = run("chain", "--graph", files / "g.gfa", "--query", files / "one.fa")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == 1
    assert rec["mode"] == "sym"
    assert rec["coverage"] == 3
    assert rec["induced"] == "AGT"
    assert rec["chain"] == [
        {"x": 1, "y": 1, "node": "1", "i": 1, "j": 1, "contribution": 1},
        {"x": 2, "y": 3, "node": "2", "i": 1, "j": 2, "contribution": 2},
    ]


def test_mems_too_long_is_empty(files):
    code, out = run("mems", "--graph", files / "g.gfa", "--query", files / "one.fa", "--min-mem-length", 4)
    assert (code, out) == (0, "")


def test_mems_feed_chain(files):
    _, mems = run("mems", "--graph", files / "g.gfa", "--query", files / "q.fa")
    (files / "a.tsv").write_text(mems)
    _, direct = run("chain", "--graph", files / "g.gfa", "--query", files / "q.fa", "--mode", "asym")
    _, via = run(
        "chain", "--graph", files / "g.gfa", "--query", files / "q.fa", "--mode", "asym", "--anchors", files / "a.tsv"
    )
    assert direct == via


def test_cycle_is_input_error(files, capsys):
    code, out = run("chain", "--graph", files / "cyc.gfa", "--query", files / "one.fa")
    assert code == 1
    assert "cycle detected" in capsys.readouterr().err


def test_missing_file(files, capsys):
    code, _ = run("lcs", "--graph", files / "nope.gfa", "--query", files / "one.fa")
    assert code == 1
    assert "cannot read" in capsys.readouterr().err


def test_bad_flags():
    with pytest.raises(SystemExit) as e:
        cli.main(["lcs", "--graph", "g", "--query", "q", "--bogus"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        cli.main(["mems", "--graph", "g", "--query", "q", "--min-mem-length", "0"])
    assert e.value.code == 1


def test_cover_output_and_reuse(files):
    code, out = run("cover", "--graph", files / "g.gfa")
    assert (code, out) == (0, "1 2\n")
    (files / "c.txt").write_text("1\n2\n")
    code, out = run("lcs", "--graph", files / "g.gfa", "--query", files / "one.fa", "--cover", files / "c.txt")
    assert (code, out) == (0, "3\n")
    (files / "bad.txt").write_text("2 1\n")
    code, _ = run("lcs", "--graph", files / "g.gfa", "--query", files / "one.fa", "--cover", files / "bad.txt")
    assert code == 1


def test_tsv_graph_format(files):
    (files / "g.tsv").write_text("N\ta\tAC\nN\tb\tGT\nE\ta\tb\n")
    code, out = run("lcs", "--graph", files / "g.tsv", "--format", "tsv", "--query", files / "one.fa")
    assert (code, out) == (0, "3\n")


def test_verify_small():
    code, out = run("verify", "--suite", "chain", "--scale", "0.05")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_verify_failure_exit_code(monkeypatch):
    from graphchain.verify import SuiteResult

    def broken(name, seed=0, scale=1.0):
        r = SuiteResult("broken")
        r.check(False, "example")
        return [r]

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out = run("verify", "--suite", "mems")
    assert code == 2
    assert out.startswith("FAIL broken: 0/1")


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "graphchain.cli", "lcs", "--graph", str(files / "g.gfa"), "--query", str(files / "one.fa")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "3\n"
