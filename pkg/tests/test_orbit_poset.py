import pytest
from hypothesis import given, settings, strategies as st

from brauerloop.linkpat import Involution, involutions
from brauerloop.orbit_poset import (
    build_poset,
    dim_by_counts,
    dim_by_pairs,
    dim_orbit,
    leq,
    rank_interval,
    rank_vector,
    raw_moves,
    to_dot,
    verify_poset,
)


def inv(text, N=None):
    return Involution.parse(text, N)


def test_rank_interval_examples():
    p = inv("(13)(24)")
    assert rank_interval(p, 1, 3) == 1
    assert rank_interval(p, 1, 4) == 2
    assert rank_interval(p, 2, 3) == 0
    with pytest.raises(ValueError):
        rank_interval(p, 3, 3)


@pytest.mark.parametrize("N", range(1, 9))
def test_dimension_formulas_agree(N):
    for p in involutions(N):
        assert dim_by_counts(p) == dim_by_pairs(p)


@pytest.mark.parametrize(
    "text, N, d",
    [("(12)(34)", 4, 4), ("(14)(23)", 4, 4), ("(13)(24)", 4, 3), ("(1)(2)(3)(4)", 4, 0), ("(12)", 3, 2), ("(13)", 3, 1)],
)
def test_dimension_examples(text, N, d):
    assert dim_orbit(inv(text, N)) == d


def test_raw_moves_examples():
    assert raw_moves(inv("(12)", 3)) == {inv("(13)(2)", 3)}
    assert raw_moves(inv("(12)(34)")) == {inv("(13)(24)"), inv("(12)", 4), inv("(34)", 4)}
    assert inv("(13)(24)") in raw_moves(inv("(14)(23)"))


@pytest.mark.parametrize("N", range(1, 8))
def test_poset_suite(N):
    report = verify_poset(N)
    assert report.ok, str(report)


def test_size_four_maximal_elements():
    P = build_poset(4)
    top = max(P.dim.values())
    assert {p for p in P.elements if P.dim[p] == top} == {inv("(12)(34)"), inv("(14)(23)")}
    assert P.covers[inv("(12)(34)")] == frozenset({inv("(13)(24)"), inv("(12)", 4), inv("(34)", 4)})


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda N: st.tuples(*[st.sampled_from(involutions(N))] * 3)))
def test_order_is_a_partial_order(triple):
    a, b, c = triple
    assert leq(a, a)
    if leq(a, b) and leq(b, a):
        assert a == b
    if leq(a, b) and leq(b, c):
        assert leq(a, c)
    if leq(a, b) and a != b:
        assert dim_orbit(a) < dim_orbit(b)


def test_maximal_chain_has_full_length():
    P = build_poset(6)
    for p in P.elements:
        chain = P.maximal_chain(p)
        assert len(chain) == P.dim[p] + 1
        assert all(leq(x, y) for x, y in zip(chain[1:], chain))


def test_dot_export_is_deterministic():
    P = build_poset(4)
    text = to_dot(P)
    assert text == to_dot(build_poset(4))
    assert text.startswith("digraph poset {") and text.rstrip().endswith("}")
    cover_count = sum(len(c) for c in P.covers.values())
    assert text.count("->") == cover_count


def test_size_bound():
    with pytest.raises(ValueError):
        build_poset(9)
    with pytest.raises(ValueError):
        build_poset(0)
