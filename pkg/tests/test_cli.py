import io
import json
import subprocess
import sys

import pytest

from splitham.cli import run
from splitham.generate import gen_family_complete_split
from splitham.graph6 import to_graph6

K13 = to_graph6(gen_family_complete_split(10, 3))


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys):
    code, out, _ = call(capsys, "check", K13)
    assert code == 0
    assert json.loads(out) == {
        "split": True, "connectivity3": True, "k14_free": True, "k14e_free": True, "order": 13,
    }


def test_check_star(capsys):
    code, out, _ = call(capsys, "check", "D?{")
    assert code == 0 and json.loads(out)["k14_free"] is False


def test_partition(capsys):
    code, out, _ = call(capsys, "partition", "Cs")
    assert json.loads(out) == {"split": True, "partition": {"S": [0, 1], "I": [2, 3]}}
    code, out, _ = call(capsys, "partition", "Cl")
    assert code == 0 and json.loads(out) == {"split": False, "partition": None}


def test_icover_variants(capsys):
    for flags in ((), ("--bounded",), ("--pseudo",), ("--pseudo", "--min-cycles")):
        code, out, _ = call(capsys, "icover", K13, *flags)
        assert code == 0
        obj = json.loads(out)
        assert obj["partition"]["I"] == [11, 12]
        assert all(item["kind"] in ("path", "cycle") for item in obj["cover"])
    code, out, _ = call(capsys, "icover", "Cl")
    assert code == 1 and "error" in json.loads(out)


def test_hampath(capsys):
    code, out, _ = call(capsys, "hampath", K13, "--u", "0", "--v", "12")
    path = json.loads(out)
    assert code == 0 and path[0] == 0 and path[-1] == 12 and sorted(path) == list(range(13))
    code, out, err = call(capsys, "hampath", K13, "--u", "3", "--v", "3")
    assert code == 2 and "differ" in err


def test_oracle(capsys):
    code, out, _ = call(capsys, "oracle", "Cs")
    obj = json.loads(out)
    assert code == 0 and not obj["connected"] and len(obj["failing_pairs"]) == 6
    code, _, err = call(capsys, "oracle", K13, "--oracle-cap", "10")
    assert code == 2 and "cap" in err


def test_verify_exit_codes(capsys):
    code, out, _ = call(capsys, "verify", K13)
    assert code == 0 and json.loads(out)["verdict"] == "VERIFIED"
    code, out, _ = call(capsys, "verify", "Cs")
    assert code == 3 and json.loads(out)["verdict"] == "HYPOTHESIS_UNMET"


def test_verify_file_with_several_graphs(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(f"{K13}\nCs\n")
    rep = tmp_path / "out.jsonl"
    code, out, _ = call(capsys, "verify", str(src), "--report", str(rep), "--pairs", "none")
    assert code == 0
    summary = json.loads(out)
    assert summary["total"] == 2 and summary["verified"] == 1 and summary["hypothesis_unmet"] == 1
    lines = [json.loads(x) for x in rep.read_text().splitlines()]
    assert [x["verdict"] for x in lines] == ["VERIFIED", "HYPOTHESIS_UNMET"]


def test_verify_json_input(capsys, tmp_path):
    src = tmp_path / "g.json"
    src.write_text(json.dumps({"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}))
    code, out, _ = call(capsys, "verify", str(src))
    assert code == 3


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(K13 + "\n"))
    code, out, _ = call(capsys, "check", "-")
    assert code == 0 and json.loads(out)["order"] == 13


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "!!!"],
        ["check", ""],
        ["verify", "D?{\n!!"],
        ["check", "Cs", "--bogus"],
        ["frobnicate"],
        ["hampath", "Cs", "--u", "0"],
        ["gen", "--p", "2"],
        ["gen", "--n", "x-y"],
        ["gen", "--spec", "/nonexistent.json"],
        ["campaign", "--count", "1", "--report", "/nonexistent/dir/x", "--jobs", "1"],
    ],
)
def test_bad_input_exits_two(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_bad_json_graph_and_spec(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text('{"n": 3, "edges": [[0, 5]]}')
    assert call(capsys, "check", str(g))[0] == 2
    spec = tmp_path / "spec.json"
    spec.write_text("{not json")
    assert call(capsys, "gen", "--spec", str(spec))[0] == 2
    spec.write_text('{"mode": "random", "n_range": [9, 9], "count": 3, "seed": 1}')
    code, out, _ = call(capsys, "gen", "--spec", str(spec))
    assert code == 0 and len(out.split()) == 3


def test_gen_is_deterministic(capsys):
    argv = ["gen", "--n", "13", "--s", "9", "--p", "0.5", "--seed", "7", "--count", "5"]
    first = call(capsys, *argv)[1]
    assert first == call(capsys, *argv)[1] and len(first.split()) == 5


def test_campaign_reports_identical(capsys, tmp_path):
    paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
    for path in paths:
        code, out, _ = call(
            capsys, "campaign", "--n", "13-14", "--i", "2-4", "--p-range", "0.5:1.0",
            "--seed", "3", "--count", "10", "--jobs", "1", "--report", str(path),
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["total"] == 10 and summary["counterexample"] == 0

    def strip(p):
        return [{k: v for k, v in json.loads(x).items() if k != "timings"} for x in p.read_text().splitlines()]

    assert strip(paths[0]) == strip(paths[1])


def test_campaign_all_unmet(capsys):
    code, _, _ = call(capsys, "campaign", "--n", "6-7", "--p", "0.2", "--count", "5", "--jobs", "1")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "splitham", "check", K13], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["split"]
