import io
import json
import subprocess
import sys

import pytest

from evade import acceptance, cli


def run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old, sys.stdin = sys.stdin, io.StringIO(stdin)
    try:
        code = cli.run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_solve_text_and_json():
    code, out, _ = run("solve", "--h", "g6:B_", "--property", "cycle")
    assert code == 0 and "winner     Alice" in out
    code, out, _ = run("solve", "--h", "kn:4", "--property", "connected", "--json")
    rec = json.loads(out)
    assert (rec["winner"], rec["value"], rec["allowed_pairs"]) == ("Bob", 6, 6)


def test_json_is_byte_identical_across_runs():
    argv = ["play", "--h", "komega", "--seeker", "random:7", "--hider", "degree:2", "--fuel", "200", "--json"]
    assert run(*argv)[1] == run(*argv)[1]
    argv = ["omega", "--h", "turan:2", "--seeker", "braided-w:dmin:1", "--hidden", "blocks:3", "--prefix-bound", "200", "--json"]
    assert run(*argv)[1] == run(*argv)[1]


def test_play_streams_one_record_per_turn():
    code, out, _ = run("play", "--h", "komega", "--seeker", "random:7", "--hider", "degree:2", "--fuel", "50", "--json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert [r["turn"] for r in lines[:-1]] == list(range(50))
    assert lines[-1]["record"] == "summary" and lines[-1]["terminal_reason"] == "FuelExhausted"
    assert "timestamp" not in out


def test_play_human_repl():
    code, out, _ = run("play", "--h", "kn:3", "--seeker", "human", "--hider", "cycle-forest", stdin="0 1\n0 2\n1 2\n")
    assert code == 0 and out.count("probe>") == 3 and "winner" in out


def test_omega_text_output():
    code, out, _ = run("omega", "--h", "komega", "--seeker", "scorpion", "--hidden", "scorpion:0,1,2", "--prefix-bound", "300")
    assert code == 0
    assert "ForcedTrue" in out and "infinite-degree vertices: [0, 1, 2]" in out


def test_verify_runs_a_suite():
    code, out, _ = run("verify", "--suite", "strong-elusiveness")
    assert code == 0 and out.startswith("PASS [ 3]")
    code, out, _ = run("verify", "--suite", "strong-elusiveness", "--json")
    assert json.loads(out)["ok"] is True


def test_verify_exits_nonzero_on_failure(monkeypatch):
    failing = lambda **kw: acceptance.CriterionResult(3, "strong-elusiveness", False, "forced failure")
    monkeypatch.setitem(acceptance.SUITES, "strong-elusiveness", failing)
    code, out, _ = run("verify", "--suite", "strong-elusiveness")
    assert code == 1 and out.startswith("FAIL")


def test_enumerate_streams_records(tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("Bw\nC~\nzz\nCx\n")
    code, out, _ = run("enumerate", "--g6", str(f), "--property", "cycle", "--json")
    recs = [json.loads(x) for x in out.splitlines()]
    assert [r.get("winner") for r in recs] == ["Bob", "Bob", None, "Alice"]
    assert "error" in recs[2] and code == 1


def test_export_formats():
    assert run("export", "--h", "cycle:5")[1] == "Dhc\n"
    assert "0 -- 1" in run("export", "--h", "g6:Bw", "--format", "dot")[1]
    assert json.loads(run("export", "--h", "path:3", "--format", "json")[1]) == {"n": 3, "edges": [[0, 1], [1, 2]]}


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["solve", "--h", "g6:zz", "--property", "cycle"], "--h"),
        (["solve", "--h", "kn:x", "--property", "cycle"], "--h"),
        (["solve", "--h", "kn:4", "--property", "dmin"], "--property"),
        (["solve", "--h", "kn:4", "--property", "cycle", "--family", "jn"], "--family"),
        (["solve", "--h", "kn:4"], "--property"),
        (["play", "--h", "komega", "--seeker", "random:x", "--hider", "degree:2"], "--seeker"),
        (["play", "--h", "komega", "--seeker", "lex", "--hider", "degree"], "--hider"),
        (["play", "--h", "komega", "--seeker", "lex", "--hider", "degree:2", "--fuel", "0"], "--fuel"),
        (["play", "--h", "komega", "--seeker", "lex", "--hider", "degree:2", "--fuel", "ten"], "--fuel"),
        (["omega", "--h", "kn:4", "--seeker", "scorpion", "--hidden", "complete"], "--h"),
        (["omega", "--h", "komega", "--seeker", "greedy", "--hidden", "complete"], "--seeker"),
        (["omega", "--h", "komega", "--seeker", "scorpion", "--hidden", "blocks:1"], "--hidden"),
        (["omega", "--h", "komega", "--seeker", "scorpion", "--hidden", "complete", "--prefix-bound", "0"], "--prefix-bound"),
        (["verify", "--suite", "nope"], "--suite"),
        (["enumerate", "--g6", "/no/such/file", "--property", "cycle"], "--g6"),
        (["export", "--h", "kn:3", "--format", "png"], "--format"),
        (["solve", "--h", "kn:4", "--property", "cycle", "--bogus"], "--bogus"),
    ],
)
def test_errors_name_the_flag(argv, flag):
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert flag in err, err


def test_size_bound_is_reported():
    code, _, err = run("solve", "--h", "kn:7", "--property", "cycle")
    assert code == 2 and "size bound" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-c", "from evade.cli import main; main()", "solve", "--h", "kn:3", "--property", "cycle", "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 3
    bad = subprocess.run([sys.executable, "-c", "from evade.cli import main; main()", "solve"], capture_output=True, text=True)
    assert bad.returncode == 2 and "--h" in bad.stderr
