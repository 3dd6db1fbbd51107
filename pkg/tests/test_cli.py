"""Command-line surface: every documented example, byte-for-byte."""

import json

import pytest

from genpi.cli import main

# (argv, expected stdout, expected exit code): the documented examples
GOLDEN = [
    (["codim", "compute", "ut2full", "-n", "3"], "22\n", 0),
    (
        ["multiplier", "compute", "zero_mult:2"],
        "dim M(A): 8\n"
        "canonical map injective: False\n"
        "canonical map surjective: False\n"
        "permutability: False (witness basis pair (4, 1))\n"
        "inner ideal: True\n",
        0,
    ),
    (
        ["codim", "contains", "ut2F", "ut2D", "-n", "3"],
        "identities of ut2F hold in ut2D up to degree 3: False\n"
        "a multilinear identity of the first action fails in the second\n",
        1,
    ),
    (
        ["codim", "contains", "ut2full", "ut2D", "-n", "3"],
        "identities of ut2full hold in ut2D up to degree 3: True\n",
        0,
    ),
    (
        ["structure", "wm", "block_ut:1,2"],
        "radical dimension: 2\n"
        "semisimple complement dimension: 5\n"
        "block dimensions: [1, 4]\n",
        0,
    ),
    (["structure", "exponent", "ut:3"], "exponent: 3\n", 0),
    (["structure", "radical", "ut:2"], "radical dimension: 1\n", 0),
    (
        ["action", "ss-part", "ut2C"],
        "image dimension: 2 -> 1\n"
        "image radical inside inner radical pairs: True\n",
        0,
    ),
    (
        ["action", "validate", "ut2D"],
        "valid action: coefficient dim 2 on algebra dim 3\n"
        "kernel tail: True\n",
        0,
    ),
    (
        ["action", "semidirect", "ut2D"],
        "semidirect product dimension: 5\n"
        "unital: True\n"
        "labels: W.1 W.e22 A.e11 A.e22 A.e12\n",
        0,
    ),
    (
        ["codim", "kernel", "ut2D", "-n", "1", "--print-identities"],
        "kernel dimension: 1\n"
        "e22*x1 - e22*x1*e22\n",
        0,
    ),
    (["codim", "grassmann", "-k", "2", "-n", "1"], "7\n", 0),
    (["poly", "check", "ut2D", "[x1,x2]-[x1,x2,w1]"], "identity: True\n", 0),
    (
        ["poly", "check", "ut2full", "[x1,x2]"],
        "identity: False\nwitness: x1 = e11, x2 = e12\n",
        1,
    ),
    (
        ["codim", "growth", "ut2F", "--to", "4"],
        "degree codimension root\n"
        "1 1 1.0000\n"
        "2 2 1.4142\n"
        "3 6 1.8171\n"
        "4 18 2.0598\n"
        "block-linking exponent: 2\n",
        0,
    ),
    (
        ["codim", "verify-gens", "ut2D", "preset", "-n", "3"],
        "generates all identities at degree 3: True\n",
        0,
    ),
    (
        ["algebra", "info", "ut:2"],
        "dim: 3\n"
        "labels: e11 e22 e12\n"
        "unital: True\n"
        "nonzero structure constants: 4\n"
        "non_degenerate: True\n"
        "idempotent: True\n",
        0,
    ),
    (["algebra", "validate", "grassmann_unital:3"],
     "valid: dim 8, associativity and unit axioms hold\n", 0),
]


@pytest.mark.parametrize("argv,expected,code", GOLDEN, ids=[" ".join(g[0]) for g in GOLDEN])
def test_documented_examples(capsys, argv, expected, code):
    rc = main(argv)
    out = capsys.readouterr().out
    assert out == expected
    assert rc == code


def test_usage_error_exit_code(capsys):
    rc = main(["algebra", "info", "frobnicate"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("GENPI_MAX_ROWS", "10")
    rc = main(["codim", "compute", "ut2D", "-n", "3"])
    assert rc == 3
    assert "budget" in capsys.readouterr().err


def test_json_round_trip(capsys):
    rc = main(["--json", "codim", "compute", "ut2D", "-n", "2"])
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"action": "ut2D", "n": 2, "codimension": 6, "ok": True}
    assert rc == 0
    rc = main(["--json", "structure", "wm", "ut:2"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["block_dims"] == [1, 1] and payload["radical_dim"] == 1


def test_json_growth_schema(capsys):
    main(["--json", "codim", "growth", "ut2F", "--to", "3"])
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) >= {"degrees", "codimensions", "ratios", "roots", "exponent"}
    assert payload["codimensions"] == [1, 2, 6]


def test_action_file_round_trip(tmp_path, capsys):
    from genpi.actions import preset_action

    p = tmp_path / "d.json"
    preset_action("ut2D").save(p)
    rc = main(["action", "validate", str(p)])
    out = capsys.readouterr().out
    assert rc == 0 and "valid action" in out


def test_polyfile_verify(tmp_path, capsys):
    p = tmp_path / "gens.txt"
    p.write_text("# generators\nw2*x1\nx1*w2\n[x1,x2]-[x1,x2,w1]\n")
    rc = main(["codim", "verify-gens", "ut2D", str(p), "-n", "2"])
    assert rc == 0
    assert "True" in capsys.readouterr().out
