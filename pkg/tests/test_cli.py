import json
import subprocess
import sys
from pathlib import Path

import pytest

from k3lattice.cli import COMMANDS, main

HERE = Path(__file__).parent
U = str(HERE / "data" / "U.json")
DEG2 = str(HERE / "data" / "deg2.json")
GOLDEN = HERE / "golden"

GOLDEN_RUNS = {
    "reduce_U.json": ["reduce", "--lattice", U, "--v", '{"r": 4, "l": [2, 2], "s": 1}'],
    "extension_lemma.json": ["extension-lemma", "--l", "1", "--r", "2", "--beta", "7/10"],
    "partners_6.json": ["partners", "--n", "6"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden(capsys, name):
    code, out = run(capsys, *GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_golden_subprocess_stable():
    outs = {subprocess.run([sys.executable, "-m", "k3lattice", *GOLDEN_RUNS[name]],
                           capture_output=True, text=True, check=True).stdout for _ in range(2)
            for name in ["reduce_U.json"]}
    assert len(outs) == 1


def test_reduce_output(capsys):
    _, out = run_json(capsys, *GOLDEN_RUNS["reduce_U.json"])
    assert out["output"] == {"r": 3, "l": [-6, -2], "s": 4}
    assert all(out["checks"].values())


def test_pair_and_euler(capsys):
    args = ["--lattice", DEG2, "--v", '{"r": 2, "l": [1], "s": 0}', "--w", '{"r": 9, "l": [3], "s": 4}']
    assert run_json(capsys, "pair", *args) == (0, {"value": -2})
    assert run_json(capsys, "euler", *args) == (0, {"value": 2})


def test_env_lattice_fallback(capsys, monkeypatch):
    monkeypatch.setenv("MUKAI_LATTICE", DEG2)
    code, out = run_json(capsys, "charge", "--v", '{"r": 0, "l": [0], "s": 1}')
    assert code == 0 and out["re"] == "-1" and out["im"] == "0"
    monkeypatch.delenv("MUKAI_LATTICE")
    code, out = run_json(capsys, "charge", "--v", '{"r": 0, "l": [0], "s": 1}')
    assert code == 2 and out["error"]["kind"] == "validation"


@pytest.mark.parametrize("argv, code, kind", [
    (["bogus"], 64, "usage"),
    (["pair", "--lattice", U, "--v", "{bad", "--w", "{}"], 65, "malformed_json"),
    (["pair", "--lattice", str(HERE / "data" / "broken.json"), "--v", "{}", "--w", "{}"], 65, "malformed_json"),
    (["reduce", "--lattice", U, "--v", '{"r": 2, "l": [1, 1], "s": 0}'], 3, "hypothesis"),
    (["extension-lemma", "--l", "1", "--r", "2", "--beta", "1/2"], 3, "hypothesis"),
    (["partners", "--n", "0"], 2, "validation"),
    (["charge", "--lattice", U, "--omega", "[1, -1]", "--v", '{"r": 0, "l": [0, 0], "s": 1}'], 2, "validation"),
    (["pair", "--lattice", U, "--v", '{"r": 0, "l": [1], "s": 0}', "--w", '{"r": 0, "l": [0, 0], "s": 0}'],
     2, "validation"),
])
def test_error_codes(capsys, argv, code, kind):
    got, out = run_json(capsys, *argv)
    assert got == code
    assert out["error"]["kind"] == kind


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pair", "--v", "1"])
    assert exc.value.code == 2


def test_extension_lemma_fields(capsys):
    code, out = run_json(capsys, "extension-lemma", "--l", "1", "--r", "2", "--beta", "7/10", "--min-rank", "2")
    assert code == 0
    assert out == {"l'": "3", "r'": 4, "e_min": "1/4", "linearly_dependent": True, "checks": {"ineq3": True}}


def test_scan_threads_deterministic(capsys):
    base = ["scan-spherical", "--lattice", U, "--omega", "[1, 1]", "--B", '["1/2", 0]', "--bound", "6"]
    outs = {run(capsys, *base, "--threads", str(t))[1] for t in (1, 2, 4)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["count"] > 0


def test_scan_witness(capsys):
    code, out = run_json(capsys, "scan-spherical", "--lattice", DEG2, "--bound", "2")
    assert code == 0
    assert {"r": 1, "l": [0], "s": 1, "re": "0", "im": "0"} in out["violations"]


def test_heart_and_decompose(capsys):
    cx = '{"h_minus1": {"factors": [], "torsion": null}, "h0": {"factors": [], "torsion": {"c1": [0], "length": 1}}}'
    code, out = run_json(capsys, "heart", "--lattice", DEG2, "--complex", cx, "--beta", "1")
    assert code == 0 and out["member"] and out["minimal_shape"] == "point_class"
    sheaf = '{"factors": [{"rank": 1, "c1": [2]}, {"rank": 1, "c1": [0]}], "torsion": null}'
    code, out = run_json(capsys, "decompose", "--lattice", DEG2, "--sheaf", sheaf, "--beta", "1")
    assert code == 0
    assert out["T"]["rank"] == 1 and out["F"]["c1"] == [0]
    code, out = run_json(capsys, "decompose", "--lattice", DEG2, "--sheaf", sheaf, "--beta-bracket", "1.41,1.42")
    assert code == 0 and out["beta"] == {"irrational_between": ["141/100", "71/50"]}


def test_approx_and_table(capsys):
    code, out = run_json(capsys, "charge", "--lattice", U, "--B", '["1/3", 0]', "--v", '{"r": 1, "l": [0, 0], "s": 1}',
                         "--approx")
    assert code == 0 and isinstance(out["re_approx"], float)
    code, text = run(capsys, "partners", "--n", "6", "--output", "table")
    assert code == 0 and "class_count: 2" in text.splitlines()


@pytest.mark.parametrize("argv", [
    ["crucform", "--lattice", U, "--v", '{"r": 4, "l": [2, 2], "s": 1}'],
    ["twist-spherical", "--lattice", U, "--v", '{"r": 1, "l": [0, 0], "s": 1}'],
    ["twist-line", "--lattice", U, "--c", "[1, 0]", "--v", '{"r": 1, "l": [0, 0], "s": 0}'],
    ["normalize-exp", "--lattice", DEG2, "--w", '{"re": {"r": 2, "l": [0], "s": "-1/2"}, "im": {"r": 0, "l": [1], "s": 0}}'],
    ["phase", "--lattice", DEG2, "--v", '{"r": 0, "l": [0], "s": 1}'],
    ["lattice", "--lattice", U, "--x", "[2, 4]"],
    ["chern", "--lattice", DEG2, "--rank", "1", "--c1", "[0]", "--c2", "0"],
    ["sprime", "--lattice", DEG2, "--v", '{"r": 2, "l": [1], "s": 0}', "--l-prime", "[2]", "--r-prime", "7"],
    ["quadric", "--lattice", U, "--B", '["1/2", 0]'],
    ["selftest", "--n", "20"],
])
def test_subcommands_succeed(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_every_operation_has_a_subcommand():
    needed = {"pair", "euler", "crucform", "twist-spherical", "twist-line", "reduce", "normalize-exp", "charge",
              "phase", "heart", "decompose", "scan-spherical", "extension-lemma", "partners", "selftest"}
    assert needed <= COMMANDS.keys()


def test_values_from_twists(capsys):
    _, out = run_json(capsys, "twist-spherical", "--lattice", U, "--v", '{"r": 1, "l": [0, 0], "s": 1}')
    assert out["image"] == {"r": -1, "l": [0, 0], "s": -1} and out["isometry"]
    _, out = run_json(capsys, "normalize-exp", "--lattice", DEG2,
                      "--w", '{"re": {"r": 2, "l": [0], "s": "-1/2"}, "im": {"r": 0, "l": [1], "s": 0}}')
    assert out == {"lambda": "2", "B": ["0"], "omega": ["1/2"]}
