import io
import json
import subprocess
import sys

import pytest

from brauerloop.cli import main
from brauerloop.linkpat import LinkPattern
from brauerloop.polyring import Polynomial, VarSpec, parse_polynomial


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate_link_patterns():
    code, out, _ = run("enumerate", "link-patterns", "--n", "6")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 15 and lines[0] == "(1 2)(3 4)(5 6)"


def test_enumerate_involutions_json():
    code, out, _ = run("--format", "json", "enumerate", "involutions", "--n", "4")
    data = json.loads(out)
    assert code == 0 and data["v"] == 1 and data["count"] == 10


def test_psi_with_full_verification():
    code, out, _ = run("psi", "--n", "4", "--verify", "all", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["report"]["ok"]
    entries = {e["pattern"]: Polynomial.from_json(e["poly"]) for e in data["table"]["entries"]}
    want = parse_polynomial("(A+z1-z2)*(A+z2-z3)*(A+z3-z4)*(B+z4-z1)", VarSpec.brauer(4))
    assert entries["(1 3)(2 4)"] == want and len(entries) == 3


def test_psi_writes_and_reuses_a_cache(tmp_path):
    out_file = tmp_path / "psi4.json"
    code, _, _ = run("--cache", str(tmp_path / "cache"), "psi", "--n", "4", "--out", str(out_file))
    assert code == 0 and out_file.exists()
    assert (tmp_path / "cache" / "psi-N4.json").exists()
    code, out, _ = run("--cache", str(tmp_path / "cache"), "psi", "--n", "4", "--verify", "all")
    assert code == 0 and "FAIL" not in out


def test_joseph_cross_check():
    code, out, _ = run("joseph", "--n", "4", "--method", "melnikov", "--cross-check", "--verify")
    assert code == 0
    assert "(1 2)(3 4): " in out and "FAIL" not in out


def test_joseph_leading_form():
    code, out, _ = run("joseph", "--n", "4", "--method", "leading-form")
    assert code == 0 and len([l for l in out.splitlines() if l.startswith("(")]) == 3


def test_poset_text_dot_and_verify(tmp_path):
    code, out, _ = run("poset", "--n", "4", "--verify", "--dot", str(tmp_path / "p.dot"))
    assert code == 0 and "(1 2)(3 4)  dim 4" in out
    code, dot, _ = run("--format", "dot", "poset", "--n", "4")
    assert code == 0 and dot == (tmp_path / "p.dot").read_text()


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "ybe", "--n", "4"),
        ("check", "unitarity", "--n", "4", "--mode", "symbolic"),
        ("check", "qkz-residual", "--n", "4"),
        ("check", "relations", "--n", "6", "--algebra", "affine"),
        ("check", "affine", "--n", "4", "--max-word-len", "4"),
        ("check", "schubert", "--n", "2"),
        ("scheme", "check", "--n", "6", "--pattern", "(14)(26)(35)", "--seeds", "1"),
        ("scheme", "generic", "--n", "4", "--pattern", "3,_,1,_"),
    ],
)
def test_passing_commands(argv):
    code, out, err = run(*argv)
    assert code == 0, err
    assert "FAIL" not in out


def test_failed_check_exits_one_with_a_record(tmp_path):
    from brauerloop.brauer_scheme import SEED_SETS, generic_element

    M, _ = generic_element(LinkPattern.parse("(12)(34)"), SEED_SETS[0])
    M.save(tmp_path / "m.json")
    code, out, err = run("scheme", "check", "--n", "4", "--pattern", "(13)(24)", "--matrix", str(tmp_path / "m.json"))
    assert code == 1
    record = json.loads(err)
    assert record["ok"] is False and record["command"] == "scheme" and record["failures"]


def test_non_generic_seeds_exit_one():
    code, _, err = run("scheme", "generic", "--n", "4", "--pattern", "(12)(34)", "--seeds", "1,1,1,1")
    assert code == 1 and json.loads(err)["failures"][0]["name"] == "NonGenericError"


@pytest.mark.parametrize(
    "argv",
    [
        ("frobnicate",),
        ("psi",),
        ("psi", "--n", "8"),
        ("psi", "--n", "4", "--verify", "nope"),
        ("enumerate", "link-patterns", "--n", "5"),
        ("enumerate", "involutions", "--n", "9"),
        ("--jobs", "0", "enumerate", "involutions", "--n", "3"),
        ("--format", "dot", "enumerate", "involutions", "--n", "3"),
        ("scheme", "check", "--n", "4"),
    ],
)
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_allow_large_lifts_the_bound():
    code, out, _ = run("--allow-large", "enumerate", "link-patterns", "--n", "10")
    assert code == 0 and len(out.splitlines()) == 945


def test_global_flags_after_the_subcommand():
    assert run("enumerate", "involutions", "--n", "3", "--format", "json")[1].startswith("{")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "brauerloop", "enumerate", "link-patterns", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.splitlines() == ["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
