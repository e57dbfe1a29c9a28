import pytest
from hypothesis import given, settings, strategies as st

from brauerloop.linkpat import (
    BETA,
    Involution,
    LinCombo,
    LinkPattern,
    base_pattern,
    check_brauer_relations,
    crossings,
    e_preimages,
    enumerate_patterns,
    generator_action,
    involutions,
    link_patterns,
    rotate,
)


@pytest.mark.parametrize("N, count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26), (6, 76), (7, 232), (8, 764)])
def test_involution_counts(N, count):
    assert len(involutions(N)) == count


@pytest.mark.parametrize("N, count", [(2, 1), (4, 3), (6, 15), (8, 105)])
def test_link_pattern_counts(N, count):
    pats = link_patterns(N)
    assert len(pats) == count == len(set(pats))
    assert list(pats) == sorted(pats)


def test_odd_size_has_no_link_patterns():
    with pytest.raises(ValueError):
        link_patterns(5)
    with pytest.raises(ValueError):
        enumerate_patterns(4, "chords")


def test_parse_forms_agree():
    a = Involution.parse("(1 3)(2 4)")
    assert a == Involution.parse("(13)(24)") == Involution.parse("3,4,1,2")
    assert a.cycle_str() == "(1 3)(2 4)"
    assert Involution.parse("(13)", 4).fixed_points() == [2, 4]


def test_link_pattern_rejects_fixed_points():
    with pytest.raises(ValueError):
        LinkPattern([1, 2])


@pytest.mark.parametrize(
    "text, c",
    [("(12)(34)", 0), ("(14)(23)", 0), ("(13)(24)", 1), ("(14)(25)(36)", 3), ("(13)(2)", 1), ("(1)(23)", 0)],
)
def test_crossings(text, c):
    assert crossings(Involution.parse(text)) == c


def test_base_pattern_and_rotation():
    assert base_pattern(6) == LinkPattern.parse("(14)(25)(36)")
    p = LinkPattern.parse("(12)(34)")
    assert rotate(p) == LinkPattern.parse("(14)(23)")
    for q in link_patterns(6):
        assert rotate(q, 6) == q
        assert crossings(rotate(q)) == crossings(q)


def test_generator_actions():
    p = LinkPattern.parse("(13)(24)")
    assert generator_action("f", 1, p) == LinCombo({LinkPattern.parse("(14)(23)"): 1})
    assert generator_action("e", 1, p) == LinCombo({LinkPattern.parse("(12)(34)"): 1})
    q = LinkPattern.parse("(12)(34)")
    assert generator_action("e", 1, q) == LinCombo({q: BETA})
    assert generator_action("e", 4, q) == LinCombo({LinkPattern.parse("(14)(23)"): 1})
    # the degenerate generator only acts when it adds a crossing
    assert generator_action("fbar", 2, q) == LinCombo({p: 1})
    assert generator_action("fbar", 1, p) == LinCombo()


def test_e_preimages_small():
    assert e_preimages(1, LinkPattern.parse("(12)(34)")) == [
        LinkPattern.parse("(13)(24)"),
        LinkPattern.parse("(14)(23)"),
    ]
    with pytest.raises(ValueError):
        e_preimages(2, LinkPattern.parse("(12)(34)"))


@pytest.mark.parametrize("N", [4, 6, 8])
def test_e_preimages_are_exactly_the_other_preimages(N):
    pats = link_patterns(N)
    for pi in pats:
        for i in range(1, N + 1):
            j = i % N + 1
            if pi(i) != j:
                continue
            pre = e_preimages(i, pi)
            brute = [q for q in pats if q != pi and generator_action("e", i, q) == LinCombo({pi: 1})]
            assert pre == sorted(brute)
            assert len(pre) == N - 2
            # closed under f_i, so sums over the preimages may be taken pairwise
            flipped = {next(iter(generator_action("f", i, q))) for q in pre}
            assert flipped == set(pre)
            assert all(crossings(q) >= crossings(pi) for q in pre)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.sampled_from(link_patterns(2 * n))))
def test_cycle_string_round_trip(pi):
    assert LinkPattern.parse(pi.cycle_str(), pi.N) == pi
    assert all(pi(pi(i)) == i != pi(i) for i in range(1, pi.N + 1))


@pytest.mark.parametrize("N", [4, 6])
@pytest.mark.parametrize("algebra", ["brauer", "affine", "degenerate"])
def test_algebra_relations(N, algebra):
    report = check_brauer_relations(N, algebra)
    assert report.ok, str(report)
    assert len(report.results) > 20


def test_lincombo_arithmetic():
    p, q = link_patterns(4)[:2]
    x = LinCombo({p: 2, q: -1})
    assert x - x == LinCombo()
    assert x + x == x.scale(2)
    assert len(LinCombo({p: 0})) == 0
