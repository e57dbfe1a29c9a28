import pytest
from hypothesis import given, settings, strategies as st

from brauerloop import affine_sym as af
from brauerloop.linkpat import LinkPattern, base_pattern, link_patterns


def words(N):
    return st.lists(st.integers(1, N), max_size=8)


def test_generator_windows():
    assert af.generator(1, 4).window == (2, 1, 3, 4)
    assert af.generator(4, 4).window == (0, 2, 3, 5)
    assert af.generator(0, 4) == af.generator(4, 4)
    assert af.generator(1, 4)(5) == 6
    assert af.generator(4, 4)(4) == 5


def test_rotation_is_a_one_ball_pattern():
    r = af.rotation(4)
    assert r.balls == 1
    assert af.project(r) == (2, 3, 4, 1)
    with pytest.raises(TypeError):
        af.compose(r, af.identity(4))


def test_window_validation():
    with pytest.raises(ValueError):
        af.JugglingPattern([1, 1, 3])
    with pytest.raises(ValueError):
        af.AffinePermutation([2, 3, 4, 5])
    assert af.JugglingPattern.parse("[0,2,3,5]") == af.generator(4, 4)
    assert str(af.generator(1, 4)) == "[2,1,3,4]"


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7).flatmap(lambda N: st.tuples(st.just(N), words(N), words(N))))
def test_group_laws(data):
    N, u, v = data
    s, t = af.element(u, N), af.element(v, N)
    assert s.balls == 0 == sum(s.displacement())
    assert af.compose(s, af.inverse(s)) == af.identity(N) == af.compose(af.inverse(s), s)
    assert af.element(list(u) + list(v), N) == t @ s
    assert af.inverse(s @ t) == af.inverse(t) @ af.inverse(s)
    assert af.length(s) <= len(u)
    assert af.length(s) % 2 == len(u) % 2


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6).flatmap(lambda N: st.tuples(st.just(N), words(N))))
def test_action_is_periodic(data):
    N, u = data
    s = af.element(u, N)
    for j in range(-N, 2 * N):
        assert s(j + N) == s(j) + N


def test_coxeter_relations():
    for N in (3, 4, 5):
        one = af.identity(N)
        for i in range(1, N + 1):
            f, g = af.generator(i, N), af.generator(i + 1, N)
            assert f @ f == one
            assert f @ g @ f == g @ f @ g
            for j in range(1, N + 1):
                if (j - i) % N not in (0, 1, N - 1):
                    assert f @ af.generator(j, N) == af.generator(j, N) @ f


def test_conjugation_and_tadpole_free_words():
    f1 = af.generator(1, 4)
    p, q = LinkPattern.parse("(13)(24)"), LinkPattern.parse("(14)(23)")
    assert af.conj_act(f1, p) == q
    assert af.tadpole_free_word(p, LinkPattern.parse("(12)(34)")) == [2]
    assert af.tadpole_free_word(p, q) == [1]
    assert af.is_tadpole_free([1], p)
    assert not af.is_tadpole_free([2], q)


@pytest.mark.parametrize("N", [4, 6])
def test_tadpole_free_words_connect_every_pair(N):
    p0 = base_pattern(N)
    for pi in link_patterns(N):
        w = af.tadpole_free_word(p0, pi)
        s = af.element(w, N)
        assert af.is_tadpole_free(w, p0)
        assert af.conj_act(s, p0) == pi
        assert af.groupoid_membership(s, p0, pi)


def test_membership_agrees_with_the_brute_force_test():
    N = 4
    pats = link_patterns(N)
    for s in af.words_up_to(N, 4):
        for p in pats:
            for q in pats:
                assert af.groupoid_membership(s, p, q) == af.groupoid_membership_brute(s, p, q)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_length_generating_function(N):
    assert af.length_counts(N, 6) == af.poincare_coefficients(N, 6)
    for s, w in af.words_up_to(N, 5).items():
        assert af.length(s) == len(w)


def test_poincare_series_small_case():
    # the infinite dihedral group has two elements of each positive length
    assert af.poincare_coefficients(2, 5) == [1, 2, 2, 2, 2, 2]


def test_stabilizer_generators_fix_the_base_pattern():
    for N in (4, 6, 8):
        p0 = base_pattern(N)
        gens = af.stabilizer_generators(N)
        assert len(gens) == N // 2
        for g in gens:
            assert af.groupoid_membership(g, p0, p0)


def test_T_elements_shift_two_cycles():
    N = 4
    for i in range(1, N + 1):
        t = af.T_element(i, N)
        assert af.conj_act(t, base_pattern(N)) == base_pattern(N)
        assert list(t.displacement()) == af._T_target(i, N)


@pytest.mark.parametrize("N", [4, 6])
def test_stabilizer_suite(N):
    report = af.stabilizer_check(N, 6 if N == 4 else 4)
    assert report.ok, str(report)


def test_consistency_suite():
    report = af.consistency_check(4, 6)
    assert report.ok, str(report)
