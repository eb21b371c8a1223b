import json

import pytest

from mzlab.cli import main
from mzlab.config import settings
from mzlab.errors import UnknownExample
from mzlab.providers.catalog import EXAMPLE_CATALOG
from mzlab.schemas import ClaimStatus
from mzlab.services.registry import build_check, list_examples, run_example

DUAL_NUMBERS_F2 = "dim 2 field fp:2\n0 0 0 1\n0 1 1 1\n1 0 1 1\nunit 1 0\n"
SPLIT_Q2 = "dim 2 field q\n0 0 0 1\n1 1 1 1\nunit 1 1\n"

EXAMPLE_IDS = [entry["id"] for entry in EXAMPLE_CATALOG]


def test_catalog_lists_every_check():
    assert [e.id for e in list_examples()] == EXAMPLE_IDS
    for example_id in EXAMPLE_IDS:
        assert build_check(example_id).id == example_id
    with pytest.raises(UnknownExample):
        build_check("ex9.9")


@pytest.mark.parametrize("example_id", EXAMPLE_IDS)
def test_registry_examples_are_stable_and_never_falsified(example_id, capsys):
    assert main(["verify", example_id, "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", example_id, "--format", "json"]) == 0
    assert capsys.readouterr().out == first
    claims = json.loads(first)["claims"]
    assert claims
    assert all(c["status"] != ClaimStatus.FALSIFIED.value for c in claims)


def test_run_example_report():
    report = run_example("ex3.1")
    assert report.exit_code == 0
    statuses = [c.status for c in report.claims]
    assert ClaimStatus.FALSIFIED not in statuses
    # the ideal diagnostics never count as proofs
    assert statuses[1::2] == [ClaimStatus.BOUNDED_EVIDENCE] * 3


def test_list_examples(capsys):
    assert main(["list-examples"]) == 0
    out = capsys.readouterr().out
    assert "ex2.1" in out and "thm4.5" in out
    assert main(["list-examples", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [row["id"] for row in rows] == EXAMPLE_IDS


def test_verify_json_is_byte_stable(capsys):
    assert main(["verify", "ex2.5", "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "ex2.5", "--format", "json"]) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report["command"] == "verify ex2.5"
    assert {c["status"] for c in report["claims"]} <= {"verified", "bounded-evidence", "theorem-asserted"}


def test_unknown_example_is_a_usage_error(capsys):
    assert main(["verify", "ex9.9"]) == 2
    assert "unknown example" in capsys.readouterr().err


def test_radical_probe_on_scaling_lattice(capsys):
    argv = ["radical-probe", "--ring", "z", "--vars", "x", "--max-power", "6", "--subspace-from-endo", "2*x", "x"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "FailsAt {2, 3, 4, 5, 6}" in out
    assert "[verified, exact]" in out


def test_polytope_command(capsys):
    assert main(["polytope", "--vars", "x,y", "--laurent", "x + x*y"]) == 0
    out = capsys.readouterr().out
    assert "does not lie in the polytope" in out
    assert "lies in the radical" in out


def test_ms_falsify_derivative_over_f3(capsys):
    argv = ["ms-falsify", "--ring", "fp:3", "--subspace-from-derivation", "1", "--left", "x^2", "1"]
    assert main(argv) == 0
    assert "is not a Mathieu subspace" in capsys.readouterr().out
    # powers of x leave the image at m = 2
    argv = ["ms-falsify", "--ring", "fp:3", "--subspace-from-derivation", "1", "x"]
    assert main(argv) == 1


def test_image_command(capsys):
    assert main(["image", "--subspace-from-endo", "x^-1", "--ring", "fp:2", "--laurent", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["claims"][0]["exact"] is True
    assert report["claims"][0]["status"] == "verified"


def test_ms_decide_on_dual_numbers(tmp_path, capsys):
    algebra = tmp_path / "dual.txt"
    algebra.write_text(DUAL_NUMBERS_F2)
    assert main(["ms-decide", "--algebra", str(algebra), "--subspace", "1,0"]) == 0
    out = capsys.readouterr().out
    assert "is not a two-sided Mathieu subspace" in out
    assert main(["ms-decide", "--algebra", str(algebra), "--subspace", "0,1"]) == 0
    assert "(dimension 1) is a two-sided" in capsys.readouterr().out


def test_decompose_swap(tmp_path, capsys):
    algebra = tmp_path / "split.txt"
    algebra.write_text(SPLIT_Q2)
    assert main(["decompose", "--algebra", str(algebra), "--matrix", "0,1;1,0"]) == 0
    out = capsys.readouterr().out
    assert "multiplicative grading" in out
    assert "falsified" not in out


def test_radical_probe_in_split_algebra(tmp_path, capsys):
    algebra = tmp_path / "split.txt"
    algebra.write_text(SPLIT_Q2)
    assert main(["radical-probe", "--algebra", str(algebra), "--subspace", "1,0", "3,0"]) == 0
    assert "3,0 lies in r(V)" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["image"],
        ["image", "--subspace-from-derivation", "1", "--subspace-from-endo", "x"],
        ["polytope", "x +"],
        ["polytope", "--ring", "fp:4", "x"],
        ["image", "--subspace-from-derivation", "1", "--max-degree", "-1"],
        ["ms-decide", "--algebra", "/nonexistent/algebra.txt"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_window_overflow_exits_3(capsys):
    argv = ["radical-probe", "--subspace-from-derivation", "1", "--max-degree", "4", "x^3"]
    assert main(argv) == 3
    assert "error:" in capsys.readouterr().err


def test_flag_overrides_do_not_leak():
    assert main(["radical-probe", "--subspace-from-derivation", "1", "--max-degree", "5", "--max-power", "2", "x"]) == 0
    assert settings.max_degree == 12
    assert settings.max_power == 12
