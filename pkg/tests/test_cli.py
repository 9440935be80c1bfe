from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from homfano.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(*argv: str, stdin: str = "") -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_list_everything() -> None:
    code, out, _ = run("list")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 115


def test_list_prefixes() -> None:
    assert len(run("list", "dp-")[1].splitlines()) == 10
    lines = run("list", "2-")[1].splitlines()
    assert len(lines) == 36
    assert all(line.startswith("2-") for line in lines)


def test_list_shows_alternatives_and_tags() -> None:
    out = run("list", "4-13")[1]
    assert "+1 alt" in out and "extension-bundle" in out


def test_list_machine_format() -> None:
    rows = [json.loads(line) for line in run("list", "dp-4", "--format", "machine")[1].splitlines()]
    assert rows == [{"id": "dp-4", "space": "P(2) x P(2)", "tags": [], "variants": [0, 1]}]


def test_invariants_worked_example() -> None:
    code, out, _ = run("invariants", "--space", "P(2) x Gr(2,4)", "--bundle", "dual(U2)(1,0)+O(0,2)",
                       "--fano", "--format", "machine")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["dim"] == 3 and data["anticanonical_degree"] == 22 and data["chi_anticanonical"] == 14
    assert data["hodge"][1] == [0, 2, 2, 0]
    # only the difference is forced; h0(T_Y) depends on the rank of H^0(T_X|Y) -> H^0(F|Y)
    assert data["tangent"] == {"difference": 7, "h0_F": 31, "h0_TX": 24, "h0_TY": [0, 24], "h1_TY": [7, 31]}


def test_invariants_hyperplane_text() -> None:
    code, out, _ = run("invariants", "--space", "P(4)", "--bundle", "O(1)")
    assert code == EXIT_OK
    assert "(-K)^3       64" in out
    assert "chi(-K)      35" in out


def test_invariants_quartic_surface() -> None:
    code, out, _ = run("invariants", "--space", "P(3)", "--bundle", "O(4)", "--dim", "2", "--format", "machine")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["hodge"] == [[1, 0, 1], [0, 20, 0], [1, 0, 1]]
    assert data["anticanonical_degree"] == 0


def test_invariants_intervals_print_as_pairs() -> None:
    code, out, _ = run("invariants", "--space", "P(4)", "--bundle", "O(3)", "--no-hodge-symmetry",
                       "--no-serre-duality", "--no-tangent", "--format", "machine")
    assert code == EXIT_OK
    hodge = json.loads(out)["hodge"]
    assert all(isinstance(c, int) or (isinstance(c, list) and len(c) == 2) for row in hodge for c in row)


def test_invariants_parse_error_reports_offset() -> None:
    code, _, err = run("invariants", "--space", "P(4)", "--bundle", "O(1,2")
    assert code == EXIT_USAGE
    assert "offset 5" in err


def test_invariants_codimension_error() -> None:
    code, _, err = run("invariants", "--space", "P(4)", "--bundle", "O(1)", "--dim", "2")
    assert code == EXIT_FAIL
    assert "CodimensionError" in err


def test_verify_worked_example() -> None:
    code, out, _ = run("verify", "2-16")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("PASS")
    assert "2 passed, 0 failed, 0 skipped" in out


def test_verify_weighted_skipped() -> None:
    code, out, _ = run("verify", "1-11")
    assert code == EXIT_OK
    assert out.startswith("SKIPPED")


def test_verify_unknown_id() -> None:
    code, _, err = run("verify", "11-1")
    assert code == EXIT_USAGE
    assert "unknown" in err


def test_verify_needs_ids() -> None:
    assert run("verify")[0] == EXIT_USAGE


def test_verify_reads_stdin_and_fails_on_mismatch() -> None:
    doc = "model dp-5 on Gr(2,5) cut O(1)+O(1)+O(1)+O(1) expect (4,5);\n"
    code, out, _ = run("verify", "--all", "--file", "-", stdin=doc)
    assert code == EXIT_FAIL
    assert "MISMATCH" in out


def test_verify_syntax_error_from_stdin() -> None:
    code, _, err = run("verify", "--all", "--file", "-", stdin="model dp-5 on Gr(2,5) cut O(1")
    assert code == EXIT_USAGE
    assert "DslSyntaxError" in err


def test_machine_output_is_stable_across_jobs() -> None:
    ids = ["dp-4", "2-16", "1-11", "dp-5"]
    one = run("verify", *ids, "--jobs", "1", "--format", "machine")
    two = run("verify", *ids, "--jobs", "2", "--format", "machine")
    again = run("verify", *ids, "--jobs", "1", "--format", "machine")
    assert one == two == again
    rows = [json.loads(line) for line in one[1].splitlines()]
    assert [r.get("id") for r in rows[:-1]] == ["1-11", "2-16", "2-16", "dp-4", "dp-4", "dp-5"]
    assert rows[-1] == {"summary": {"FAIL": 0, "PASS": 5, "SKIPPED": 1}, "unpinched": []}


def test_jobs_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("HOMFANO_JOBS", "2")
    assert run("verify", "dp-5", "--format", "machine")[0] == EXIT_OK


def test_console_entry_point() -> None:
    proc = subprocess.run([sys.executable, "-m", "homfano.cli", "list", "dp-"], capture_output=True, text=True,
                          check=False)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 10
