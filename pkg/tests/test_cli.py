import io
import json
import subprocess
import sys

import pytest

from coxstar import cli
from coxstar.hinv import InvariantViolation


def run(*argv, env_cache=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_ftilde5():
    code, out, _ = run("classify", "--family", "Ftilde5")
    assert code == 0 and json.loads(out)["star_reducible"] is True


def test_enumerate_b2():
    code, out, _ = run("enumerate", "--family", "B2", "--max-len", "10")
    data = json.loads(out)
    assert code == 0 and data["count"] == 7 and data["exhaustive"]


def test_positivity_b2():
    code, out, _ = run("positivity", "--family", "B2", "--max-len", "10")
    data = json.loads(out)
    assert code == 0 and data["violations"] == [] and data["pairs"] == 49


def test_positivity_jobs_identical():
    single = run("positivity", "--family", "B3", "--max-len", "10", "--format", "tsv")
    multi = run("positivity", "--family", "B3", "--max-len", "10", "--format", "tsv", "--jobs", "3")
    assert single == multi and single[0] == 0


@pytest.mark.parametrize("argv", [
    ("star-reduce", "--family", "B2", "0,1,0"),
    ("cf", "--family", "A3", "[2, 0, 1]"),
    ("h", "--family", "A2", "0 0 1 0", "--seed", "3"),
    ("reduce", "--family", "B3", "2,0,1,0,2"),
    ("cbasis", "--family", "B2", "--max-len", "4"),
    ("audit", "--family", "D4", "--max-len", "6"),
    ("counterexample", "--graph", "GRAPH"),
])
@pytest.mark.parametrize("fmt", ["json", "tsv"])
def test_commands_deterministic(argv, fmt, tmp_path):
    graph = tmp_path / "g.json"
    graph.write_text(json.dumps({"rank": 3, "edges": [[0, 1, 3], [1, 2, 6]]}))
    argv = [str(graph) if a == "GRAPH" else a for a in argv] + ["--format", fmt]
    first, second = run(*argv), run(*argv)
    assert first == second
    assert first[0] == 0 and first[1]


def test_star_reduce_irreducible(tmp_path):
    graph = tmp_path / "g.json"
    graph.write_text(json.dumps({"rank": 3, "edges": [[0, 1, 3], [1, 2, 6]]}))
    code, out, _ = run("star-reduce", "--graph", str(graph), "0,2,1,2,1,0,2")
    assert code == 0 and json.loads(out)["irreducible"] is True
    code, out, _ = run("counterexample", "--graph", str(graph))
    assert json.loads(out)["word"] == [0, 2, 1, 2, 1, 0, 2]


def test_domain_errors(tmp_path):
    assert run("cf", "--family", "A3", "0,7")[0] == 1
    assert run("cf", "--family", "Q9", "0")[0] == 1
    assert run("star-reduce", "--family", "A2", "0,1,0")[0] == 1
    assert run("h", "--family", "A2", "zz")[0] == 1
    assert run("counterexample", "--family", "B3")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 2, "edges": [[0, 1, 1]]}')
    assert run("classify", "--graph", str(bad))[0] == 1
    assert run("classify", "--graph", str(tmp_path / "missing.json"))[0] == 1
    code, out, err = run("cbasis", "--graph", str(tmp_path / "missing.json"))
    assert out == "" and err


def test_verification_failure_exit(monkeypatch):
    def boom(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "h_value", boom)
    code, out, err = run("h", "--family", "A2", "0")
    assert code == 2 and out == "" and "forced" in err


def test_cap_exit():
    code, out, err = run("enumerate", "--family", "Ctilde3", "--max-len", "8", "--cap", "20")
    assert code == 3 and out == ""


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.delenv("COXSTAR_CACHE", raising=False)
    argv = ["cbasis", "--family", "H3", "--max-len", "6", "--cache", str(tmp_path)]
    miss = run(*argv)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    assert data["version"] == cli.CACHE_VERSION and data["cbasis"]
    hit = run(*argv)
    assert miss == hit


def test_cache_mismatch_ignored(tmp_path, monkeypatch):
    env_dir = tmp_path / "env"
    monkeypatch.setenv("COXSTAR_CACHE", str(env_dir))
    code, out, _ = run("enumerate", "--family", "B2", "--max-len", "3", "--cache", str(tmp_path / "flag"))
    assert code == 0 and not (tmp_path / "flag").exists()
    (cache_file,) = env_dir.glob("*.json")
    stale = json.loads(cache_file.read_text())
    stale["version"] = -1
    stale["fc"]["3"]["elements"] = []
    cache_file.write_text(json.dumps(stale))
    assert run("enumerate", "--family", "B2", "--max-len", "3")[1] == out
    wrong = json.loads(cache_file.read_text())
    wrong["fingerprint"] = "0" * 16
    wrong["fc"]["3"]["elements"] = []
    cache_file.write_text(json.dumps(wrong))
    assert run("enumerate", "--family", "B2", "--max-len", "3")[1] == out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coxstar", "cf", "--family", "A3", "2,0,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["trace"] == [[0, 2], [1]]
