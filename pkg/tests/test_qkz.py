import json

import pytest

from brauerloop import qkz
from brauerloop.errors import IdentityViolation
from brauerloop.linkpat import LinkPattern, base_pattern, link_patterns
from brauerloop.polyring import Polynomial, VarSpec, gens, parse_polynomial

V4 = VarSpec.brauer(4)
GOLDEN_4 = {
    "(12)(34)": "(A+z2-z3)*(B+z4-z1)*(A^2+2*A*B+B*z1-A*z2-z1*z2+A*z3+z2*z3-B*z4+z1*z4-z3*z4)",
    "(14)(23)": "(A+z1-z2)*(A+z3-z4)*(A^2+A*B+B^2-B*z1+A*z2+z1*z2-A*z3-z2*z3+B*z4-z1*z4+z3*z4)",
    "(13)(24)": "(A+z1-z2)*(A+z2-z3)*(A+z3-z4)*(B+z4-z1)",
}


@pytest.mark.parametrize("pattern", sorted(GOLDEN_4))
def test_size_four_table(psi4, pattern):
    assert psi4[LinkPattern.parse(pattern)] == parse_polynomial(GOLDEN_4[pattern], V4)


def test_base_entry_is_the_weight_product():
    A, B, Z = gens(4)
    assert qkz.base_psi(4) == (A + Z[1] - Z[2]) * (A + Z[2] - Z[3]) * (A + Z[3] - Z[4]) * (B + Z[4] - Z[1])
    assert base_pattern(4) == LinkPattern.parse("(13)(24)")


def test_full_verification_at_size_four(psi4):
    report = qkz.verify_table(psi4, qkz.ALL_CHECKS)
    assert report.ok, str(report)
    assert len(report.results) == len(qkz.ALL_CHECKS) + 1


def test_exchange_step_refuses_a_little_arch(psi4):
    pi = LinkPattern.parse("(12)(34)")
    with pytest.raises(ValueError):
        qkz.theta_apply(1, pi, psi4[pi])


def test_rotation_swaps_the_two_noncrossing_entries(psi4):
    from brauerloop.polyring import sigma

    a, b = LinkPattern.parse("(12)(34)"), LinkPattern.parse("(14)(23)")
    assert sigma(psi4[a]) == psi4[b]
    assert sigma(psi4[b]) == psi4[a]


def test_json_round_trip(psi4, tmp_path):
    path = tmp_path / "t.json"
    psi4.save(path)
    data = json.loads(path.read_text())
    assert data["v"] == 1 and data["N"] == 4 and len(data["entries"]) == 3
    back = qkz.PsiTable.load(path)
    assert back.entries == psi4.entries
    assert back.derivation == psi4.derivation


def test_tie_breaks_give_the_same_table():
    assert qkz.solve(6, tie_break="high", checks=()).entries == qkz.solve(6, checks=()).entries


def test_cache_is_reused_and_revalidated(tmp_path):
    t1 = qkz.solve(4, cache_dir=tmp_path)
    path = tmp_path / "psi-N4.json"
    assert path.exists()
    assert qkz.solve(4, cache_dir=tmp_path).entries == t1.entries
    data = json.loads(path.read_text())
    data["entries"][0]["poly"] = Polynomial.var(V4, "A").to_json()
    path.write_text(json.dumps(data))
    with pytest.raises(IdentityViolation):
        qkz.solve(4, cache_dir=tmp_path)


def test_solve_rejects_bad_sizes():
    with pytest.raises(ValueError):
        qkz.solve(5)
    with pytest.raises(ValueError):
        qkz.solve(10, max_n=8)


def test_unknown_check_name(psi4):
    with pytest.raises(ValueError):
        qkz.verify_table(psi4, ["nope"])


def test_corrupted_table_fails_the_relations(psi4):
    bad = qkz.PsiTable(4, dict(psi4.entries), dict(psi4.derivation), dict(psi4.meta))
    pi = LinkPattern.parse("(12)(34)")
    bad.entries[pi] = bad.entries[pi] * 2
    report = qkz.verify_table(bad, ("f", "e", "rot"))
    assert not report.ok
    assert {r.name for r in report.failures()} >= {"f: exchange relation", "rot: Psi_{r pi} = sigma Psi_pi"}


@pytest.mark.parametrize("mode", ["sampled", "symbolic"])
def test_rmatrix_identities_at_size_four(mode):
    report = qkz.rmatrix_checks(4, mode=mode)
    assert report.ok, str(report)
    assert any(r.name.startswith("YBE") for r in report.results)


def test_qkz_residual_at_size_four(psi4):
    report = qkz.rmatrix_checks(4, table=psi4)
    residual = [r for r in report.results if r.name.startswith("qKZ residual")]
    assert residual and all(r.passed for r in residual)


def test_qkz_residual_detects_a_wrong_table(psi4):
    bad = qkz.PsiTable(4, dict(psi4.entries))
    pi = LinkPattern.parse("(14)(23)")
    bad.entries[pi] = bad.entries[pi] + bad.entries[LinkPattern.parse("(13)(24)")]
    report = qkz.rmatrix_checks(4, table=bad)
    assert any(not r.passed for r in report.results if r.name.startswith("qKZ residual"))


def test_sample_points_are_documented_and_distinct():
    assert len(qkz.SAMPLE_POINTS) >= 5
    assert len(set(map(tuple, qkz.SAMPLE_POINTS))) == len(qkz.SAMPLE_POINTS)


def test_exchange_operators_satisfy_the_braid_and_square_relations():
    report = qkz.theta_relations_check(4, npolys=4)
    assert report.ok, str(report)


def test_degrees_at_size_six(psi6):
    assert len(psi6) == len(link_patterns(6)) == 15
    assert all(p.is_homogeneous(12) for p in psi6.entries.values())
