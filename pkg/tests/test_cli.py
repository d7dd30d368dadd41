import json
import os
import subprocess
import sys

import pytest

from ezkit import load_complex, representable, SimplexCategory
from ezkit.cli import EXIT_BOUND, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_UNSUPPORTED, run
from ezkit.textio import renamed


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    assert run(["examples", "--out", str(out)]) == EXIT_OK
    return out


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_examples_writes_corpus(corpus):
    names = set(os.listdir(corpus))
    assert {"empty", "simplex-2", "box-min-square-product", "maps"} <= names
    assert len(os.listdir(corpus / "maps")) >= 30


def test_describe_empty(corpus, capsys):
    code, out, _ = invoke(capsys, "describe", str(corpus / "empty"))
    assert code == EXIT_OK
    assert "cells 0" in out and "degree 0: 0" in out


def test_describe_census(corpus, capsys):
    code, out, _ = invoke(capsys, "describe", str(corpus / "simplex-2"), "--format", "records")
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["cells"] for r in records[1:]] == [3, 3, 1]


def test_homology_of_minimal_box_product(corpus, capsys):
    code, out, _ = invoke(capsys, "homology", str(corpus / "box-min-square-product"),
                          "--format", "records")
    assert code == EXIT_OK
    assert [(r["degree"], r["rank"], r["torsion"]) for r in map(json.loads, out.splitlines())] == \
        [(0, 1, []), (1, 1, []), (2, 1, [])]


def test_homology_text(corpus, capsys):
    code, out, _ = invoke(capsys, "homology", str(corpus / "simplex-boundary-2"))
    assert code == EXIT_OK
    assert out.splitlines() == ["H_0 = Z^1", "H_1 = Z^1"]


def test_skeleton_to_file(corpus, tmp_path, capsys):
    target = tmp_path / "sk"
    code, _, _ = invoke(capsys, "skeleton", str(corpus / "box-2"), "--n", "1", "--out", str(target))
    assert code == EXIT_OK
    assert load_complex(target.read_text()).census() == {0: 4, 1: 4}


def test_skeleton_of_bicomplex_uses_second_coordinate(corpus, capsys):
    code, out, _ = invoke(capsys, "skeleton", str(corpus / "bi-boundary-2-x-simplex-1"), "--n", "0")
    assert code == EXIT_OK
    K = load_complex(out)
    assert all(K.category.first.degree(K.shapes[y][1]) == 0 for y in K.cells)


def test_boundary_verb(capsys):
    code, out, _ = invoke(capsys, "boundary", "--object", "2", "--category", "simplex")
    assert code == EXIT_OK
    assert load_complex(out).census() == {0: 3, 1: 3}


@pytest.mark.parametrize("mode,expected", [("cat", {0: 4, 1: 5, 2: 2}),
                                           ("join", {0: 4, 1: 6, 2: 4, 3: 1})])
def test_diag_verb(corpus, capsys, mode, expected):
    code, out, _ = invoke(capsys, "diag", str(corpus / "bi-simplex-1-1"), "--mode", mode)
    assert code == EXIT_OK
    assert load_complex(out).census() == expected


def test_latch_file_and_sweep(corpus, capsys):
    code, out, _ = invoke(capsys, "latch", str(corpus / "bi-simplex-1-1"), "--object", "1")
    assert code == EXIT_OK
    # two copies of ⟦1⟧, one per constant map [1] -> [1]
    assert load_complex(out).census() == {0: 4, 1: 2}
    code, out, _ = invoke(capsys, "latch", "--object", "1", "--category", "simplex",
                          "--degree-bound", "1", "--format", "records")
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["ok"] for r in rows)


def test_verify_single_suite(capsys):
    code, out, _ = invoke(capsys, "verify", "--suite", "diagonal")
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith("0 failed")


def test_records_are_deterministic(corpus, capsys):
    argv = ["verify", "--suite", "latching", "--category", "simplex", "--degree-bound", "1",
            "--format", "records"]
    first = invoke(capsys, *argv)
    second = invoke(capsys, *argv)
    assert first == second and first[0] == EXIT_OK


@pytest.mark.parametrize("argv,code", [
    (["frobnicate"], EXIT_INPUT),
    (["describe"], EXIT_INPUT),
    (["describe", "/nonexistent/file"], EXIT_INPUT),
    (["verify", "--suite", "nope"], EXIT_INPUT),
    (["boundary", "--object", "2", "--category", "torus"], EXIT_INPUT),
    (["boundary", "--object", "9", "--category", "simplex"], EXIT_INPUT),
])
def test_input_errors(argv, code, capsys):
    assert invoke(capsys, *argv)[0] == code


def test_parse_error_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad"
    bad.write_text("category simplex\nbound 2\ncell x : 1\n")
    code, _, err = invoke(capsys, "describe", str(bad))
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_bound_error(corpus, capsys):
    code, _, err = invoke(capsys, "diag", str(corpus / "bi-simplex-1-1"), "--mode", "join",
                          "--degree-bound", "2")
    assert code == EXIT_BOUND
    assert "3" in err


def test_unsupported_base(corpus, capsys):
    code, _, _ = invoke(capsys, "homology", str(corpus / "bi-simplex-1-1"))
    assert code == EXIT_UNSUPPORTED
    code, _, _ = invoke(capsys, "diag", str(corpus / "bi-simplex-1-1"), "--mode", "geom")
    assert code == EXIT_UNSUPPORTED


def test_verification_failure_exit_code(monkeypatch, capsys):
    from ezkit import verify
    monkeypatch.setitem(verify.SUITES, "diagonal",
                        lambda opts: [verify.Verdict("forced", False, "forced failure")])
    assert invoke(capsys, "verify", "--suite", "diagonal")[0] == EXIT_FAIL


def test_module_entry_point(corpus):
    proc = subprocess.run([sys.executable, "-m", "ezkit", "describe", str(corpus / "simplex-1")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "degree 1: 1" in proc.stdout


def test_written_complex_matches_library(corpus):
    K = load_complex((corpus / "simplex-1").read_text())
    assert K == renamed(representable(SimplexCategory(3), 1))
