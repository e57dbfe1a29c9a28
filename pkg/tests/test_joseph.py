import itertools

import pytest

from brauerloop import joseph
from brauerloop.errors import IdentityViolation
from brauerloop.linkpat import Involution, LinkPattern, involutions
from brauerloop.polyring import Polynomial, VarSpec, parse_polynomial
from brauerloop.qkz import PsiTable

V4 = VarSpec.brauer(4)
GOLDEN_J4 = {
    "(12)(34)": "(A+z2-z3)*(2*A+z1-z4)",
    "(14)(23)": "(A+z1-z2)*(A+z3-z4)",
    "(13)(24)": "(A+z1-z2)*(A+z2-z3)*(A+z3-z4)",
}


@pytest.mark.parametrize("pattern", sorted(GOLDEN_J4))
def test_size_four_link_pattern_entries(mel4, psi4, pattern):
    pi = Involution.parse(pattern)
    want = parse_polynomial(GOLDEN_J4[pattern], V4)
    assert mel4[pi] == want
    assert joseph.leading_form_table(psi4)[pi] == want


def test_melnikov_covers_every_involution(mel4):
    assert set(mel4.entries) == set(involutions(4))
    assert mel4[Involution(range(1, 5))] == joseph.identity_J(4)


def test_melnikov_table_properties(mel4, mel6):
    for jt in (mel4, mel6, joseph.melnikov_solve(3), joseph.melnikov_solve(5)):
        report = joseph.table_properties(jt)
        assert report.ok, str(report)


def test_methods_agree_at_size_six(psi6, mel6):
    assert joseph.cross_check(joseph.leading_form_table(psi6), mel6).ok


def test_leading_form_rejects_a_wrong_B_exponent(psi4):
    bad = PsiTable(4, dict(psi4.entries))
    pi = LinkPattern.parse("(13)(24)")
    B = Polynomial.var(V4, "B")
    bad.entries[pi] = bad.entries[pi] * B
    with pytest.raises(IdentityViolation):
        joseph.leading_form_table(bad)


def test_minimal_chords():
    assert joseph.minimal_chords(Involution.parse("(14)(23)")) == [(2, 3)]
    assert joseph.minimal_chords(Involution.parse("(13)(24)")) == [(1, 3), (2, 4)]
    assert joseph.minimal_chords(Involution.parse("(1)(2)")) == []


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_hotta_relations(N, mel4, mel6):
    jt = {4: mel4, 6: mel6}.get(N) or joseph.melnikov_solve(N)
    report = joseph.hotta_checks(jt)
    assert report.ok, str(report)


def test_hotta_preimages_example():
    # the little arch (1,2) of (12)(34) comes from the two noncrossing replacements
    pre = joseph.hotta_preimages(1, Involution.parse("(12)(34)"))
    assert Involution.parse("(14)(23)") in pre
    assert Involution.parse("(13)(24)") not in pre


def _crossing_at(pi, i):
    a, b = pi(i), pi(i + 1)
    if a in (i, i + 1) or b in (i, i + 1):
        return False
    (p, q), (r, s) = sorted((i, a)), sorted((i + 1, b))
    return p < r < q < s or r < p < s < q


def test_tilde_divided_difference_forms_agree_on_crossings(mel6):
    count = 0
    for pi in mel6.patterns():
        for i in range(1, 6):
            if _crossing_at(pi, i):
                p = mel6[pi]
                assert joseph.tilde_divided_difference(i, p) == joseph._tilde_divided_difference_alt(i, p)
                count += 1
    assert count > 0


def _x(n, k):
    return Polynomial.var(joseph.schubert_ring(n), k)


def test_small_double_schubert_polynomials():
    x1, x2, y1, y2 = (_x(3, k) for k in ("x1", "x2", "y1", "y2"))
    assert joseph.double_schubert((2, 1)).poly == _x(2, "x1") - _x(2, "y1")
    assert joseph.double_schubert((1, 2)).poly == 1
    assert joseph.double_schubert((3, 2, 1)).poly == (x1 - y1) * (x1 - y2) * (x2 - y1)
    assert joseph.double_schubert((1, 3, 2)).poly == x1 + x2 - y1 - y2
    assert joseph.double_schubert((2, 3, 1)).poly == (x1 - y1) * (x2 - y1)
    assert joseph.double_schubert((3, 1, 2)).poly == (x1 - y1) * (x1 - y2)
    with pytest.raises(ValueError):
        joseph.double_schubert((1, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_schubert_word_independence(n):
    assert joseph.schubert_word_independence(n).ok


def test_permutation_sector():
    assert joseph.permutation_sector((1, 2)) == Involution.parse("(14)(23)")
    assert joseph.permutation_sector((2, 1)) == Involution.parse("(13)(24)")


@pytest.mark.parametrize("n", [2, 3])
def test_schubert_identity(n, mel4, mel6):
    report = joseph.doubschub_check({2: mel4, 3: mel6}[n], n)
    assert report.ok, str(report)


def test_json_round_trip(mel4, tmp_path):
    path = tmp_path / "j.json"
    mel4.save(path)
    back = joseph.JTable.load(path)
    assert back.entries == mel4.entries and back.method == "melnikov"


def test_melnikov_degrees_match_the_orbit_dimension(mel6):
    from brauerloop.orbit_poset import dim_orbit

    for pi, p in mel6.entries.items():
        assert p.is_homogeneous(15 - dim_orbit(pi))
