"""Affine permutations as periodic bijections of Z, in window notation.

A periodic bijection s with s(i + N) = s(i) + N is stored by its window
(s(1), ..., s(N)).  The affine symmetric group is the zero-sum part,
sum(s(i) - i) = 0; the rotation i -> i + 1 has sum N and is kept as a
separate :class:`JugglingPattern` that never enters group products.

Words are lists ``[i1, ..., ik]`` read left to right in time order: the
element is f_{ik} o ... o f_{i1}, so ``i1`` acts first.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence

from .linkpat import Involution, LinkPattern, base_pattern, generator_action, link_patterns
from .report import Report

__all__ = [
    "JugglingPattern",
    "AffinePermutation",
    "generator",
    "identity",
    "rotation",
    "compose",
    "inverse",
    "element",
    "project",
    "conj_act",
    "is_tadpole_free",
    "groupoid_membership",
    "groupoid_membership_brute",
    "tadpole_free_word",
    "stabilizer_generators",
    "U_element",
    "UU_element",
    "T_element",
    "length",
    "length_counts",
    "poincare_coefficients",
    "stabilizer_check",
    "consistency_check",
]


class JugglingPattern:
    """A periodic bijection of Z given by its window."""

    __slots__ = ("window",)

    def __init__(self, window: Sequence[int]):
        window = tuple(int(w) for w in window)
        N = len(window)
        if N == 0 or sorted(w % N for w in window) != list(range(N)):
            raise ValueError(f"{list(window)} does not hit every residue mod {N} once")
        self.window = window

    @property
    def N(self) -> int:
        return len(self.window)

    @property
    def balls(self) -> int:
        """sum(s(i) - i) / N; zero exactly for elements of the affine symmetric group."""
        return sum(w - i for i, w in enumerate(self.window, start=1)) // self.N

    def __call__(self, j: int) -> int:
        k, r = divmod(j - 1, self.N)
        return self.window[r] + k * self.N

    def displacement(self) -> tuple[int, ...]:
        return tuple(w - i for i, w in enumerate(self.window, start=1))

    def __eq__(self, other) -> bool:
        return isinstance(other, JugglingPattern) and self.window == other.window

    def __hash__(self) -> int:
        return hash(self.window)

    def __lt__(self, other: "JugglingPattern") -> bool:
        return self.window < other.window

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.window)) + "]"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.window)})"

    @classmethod
    def parse(cls, text: str):
        """Parse the window form ``[w1,w2,...,wN]``."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected [w1,...,wN], got {text!r}")
        return cls([int(x) for x in re.split(r"[,\s]+", body[1:-1].strip()) if x])


class AffinePermutation(JugglingPattern):
    """An element of the affine symmetric group (zero-sum window)."""

    __slots__ = ()

    def __init__(self, window: Sequence[int]):
        super().__init__(window)
        if sum(w - i for i, w in enumerate(self.window, start=1)) != 0:
            raise ValueError(f"{list(self.window)} has nonzero sum; not in the affine symmetric group")

    def __matmul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return compose(self, other)


def identity(N: int) -> AffinePermutation:
    return AffinePermutation(range(1, N + 1))


@lru_cache(maxsize=None)
def generator(i: int, N: int) -> AffinePermutation:
    """f_i: j -> j+1 on residue i, j -> j-1 on residue i+1 (i read mod N)."""
    if N < 2:
        raise ValueError("need N >= 2")
    i = (i - 1) % N + 1
    w = list(range(1, N + 1))
    nxt = i % N + 1
    w[i - 1] += 1
    w[nxt - 1] -= 1
    return AffinePermutation(w)


def rotation(N: int) -> JugglingPattern:
    """r: j -> j + 1, the one-ball pattern (outside the group)."""
    return JugglingPattern(range(2, N + 2))


def compose(s: AffinePermutation, t: AffinePermutation) -> AffinePermutation:
    """s o t (t acts first)."""
    if not (isinstance(s, AffinePermutation) and isinstance(t, AffinePermutation)):
        raise TypeError("only elements of the affine symmetric group are composed")
    if s.N != t.N:
        raise ValueError("size mismatch")
    return AffinePermutation([s(w) for w in t.window])


def inverse(s: AffinePermutation) -> AffinePermutation:
    N = s.N
    w = [0] * N
    for i, v in enumerate(s.window, start=1):
        k, r = divmod(v - 1, N)
        w[r] = i - k * N
    return AffinePermutation(w)


def element(word: Sequence[int], N: int) -> AffinePermutation:
    """f_{ik} o ... o f_{i1} for word [i1, ..., ik]."""
    s = identity(N)
    for i in word:
        s = compose(generator(i, N), s)
    return s


def project(s: JugglingPattern) -> tuple[int, ...]:
    """The permutation p(s) of 1..N, with p(s)(i) = s(i) mod N."""
    N = s.N
    return tuple((w - 1) % N + 1 for w in s.window)


def conj_act(s: JugglingPattern, pi: Involution) -> Involution:
    p = project(s)
    return pi.conjugate(lambda i: p[i - 1])


def is_tadpole_free(word: Sequence[int], pi: LinkPattern) -> bool:
    """No step acts at a position carrying a little arch (i, i+1)."""
    N = pi.N
    cur = pi
    for i in word:
        if cur(i) == i % N + 1:
            return False
        (cur,) = generator_action("f", (i - 1) % N + 1, cur).keys()
    return True


def _chord_pairs(pi: Involution) -> list[tuple[int, int]]:
    """(i, j), 1 <= i <= N, i < j < i + N, j = pi(i) mod N."""
    N = pi.N
    return [(i, pi(i) if pi(i) > i else pi(i) + N) for i in range(1, N + 1) if pi(i) != i]


def groupoid_membership(s: AffinePermutation, pi: LinkPattern, pi2: LinkPattern) -> bool:
    """s maps pi to pi2 and preserves the order of the two ends of every lifted chord.

    By periodicity it suffices to test each residue i against the nearest
    lift of its partner above it.
    """
    if conj_act(s, pi) != pi2:
        return False
    return all(s(i) < s(j) for i, j in _chord_pairs(pi))


def groupoid_membership_brute(s: AffinePermutation, pi: LinkPattern, pi2: LinkPattern, periods: int = 3) -> bool:
    """Same condition tested on all integer pairs within +-``periods`` periods."""
    if conj_act(s, pi) != pi2:
        return False
    N = pi.N
    lo, hi = -periods * N + 1, (periods + 1) * N
    for i in range(lo, hi + 1):
        for j in range(i + 1, hi + 1):
            if (j - 1) % N + 1 == pi(i) and s(i) >= s(j):
                return False
    return True


def tadpole_free_word(pi: LinkPattern, pi2: LinkPattern) -> list[int]:
    """Shortest tadpole-free word taking pi to pi2, lowest indices preferred."""
    if pi.N != pi2.N:
        raise ValueError("size mismatch")
    N = pi.N
    prev: dict[LinkPattern, tuple[LinkPattern, int] | None] = {pi: None}
    queue = deque([pi])
    while queue:
        cur = queue.popleft()
        if cur == pi2:
            break
        for i in range(1, N + 1):
            if cur(i) == i % N + 1:
                continue
            (nxt,) = generator_action("f", i, cur).keys()
            if nxt not in prev:
                prev[nxt] = (cur, i)
                queue.append(nxt)
    word = []
    cur = pi2
    while prev[cur] is not None:
        cur, i = prev[cur]
        word.append(i)
    return word[::-1]


# -- the stabilizer of pi_0 ---------------------------------------------------------


def stabilizer_generators(N: int) -> list[AffinePermutation]:
    """f_i f_{i+n} for i = 1..n (the other n repeat them)."""
    n = N // 2
    return [compose(generator(i, N), generator(i + n, N)) for i in range(1, n + 1)]


def _pair(k: int, N: int) -> AffinePermutation:
    n = N // 2
    return compose(generator(k + n, N), generator(k, N))


def U_element(i: int, N: int) -> AffinePermutation:
    """U_i = P_i P_{i-1} ... P_{i-n+1} P_i with P_k = f_{k+n} f_k."""
    n = N // 2
    factors = [_pair(i - m, N) for m in range(n)] + [_pair(i, N)]
    s = identity(N)
    for p in factors:
        s = compose(s, p)
    return s


def UU_element(i: int, N: int) -> AffinePermutation:
    """U_i U_{i+1}^{-1}, built from :func:`U_element`."""
    return compose(U_element(i, N), inverse(U_element(i + 1, N)))


def T_element(i: int, N: int) -> AffinePermutation:
    """Shifts cycle i of pi_0 by +n and cycle i+1 by -n, fixing the others.

    Word P_{i+1} P_{i+2} ... P_{i+n-1} P_{i+n-2} ... P_{i+1} P_i, P_k = f_{k+n} f_k.
    """
    n = N // 2
    ks = list(range(i + 1, i + n)) + list(range(i + n - 2, i, -1)) + [i]
    s = identity(N)
    for k in ks:
        s = compose(s, _pair(k, N))
    return s


def _T_target(i: int, N: int) -> list[int]:
    n = N // 2
    want = [0] * N
    for j, v in ((i, n), (i + n, n), (i + 1, -n), (i + n + 1, -n)):
        want[(j - 1) % N] = v
    return want


def _max_disp(s: JugglingPattern) -> int:
    return max(abs(d) for d in s.displacement())


def _ball(gens: Sequence[AffinePermutation], N: int, bound: int) -> set[AffinePermutation]:
    """Elements reachable from the identity through elements of displacement <= bound."""
    seen = {identity(N)}
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for g in gens:
            t = compose(g, s)
            if t not in seen and _max_disp(t) <= bound:
                seen.add(t)
                queue.append(t)
    return seen


def words_up_to(N: int, max_len: int) -> dict[AffinePermutation, tuple[int, ...]]:
    """Every element of length <= max_len with a shortest word (lexicographically least)."""
    best: dict[AffinePermutation, tuple[int, ...]] = {identity(N): ()}
    frontier = [((), identity(N))]
    for _ in range(max_len):
        nxt = []
        for word, s in frontier:
            for i in range(1, N + 1):
                t = compose(generator(i, N), s)
                if t not in best:
                    best[t] = word + (i,)
                    nxt.append((word + (i,), t))
        frontier = nxt
    return best


def length(s: AffinePermutation) -> int:
    """Coxeter length sum_{i<j} |floor((s(j) - s(i)) / N)|."""
    N = s.N
    w = s.window
    return sum(abs((w[j] - w[i]) // N) for i in range(N) for j in range(i + 1, N))


def length_counts(N: int, max_len: int) -> list[int]:
    """Number of distinct windows at each BFS distance 0..max_len."""
    counts = [0] * (max_len + 1)
    for word in words_up_to(N, max_len).values():
        counts[len(word)] += 1
    return counts


def poincare_coefficients(N: int, max_len: int) -> list[int]:
    """Coefficients of [N]_q! / prod_{i=1}^{N-1} (1 - q^i) up to q^max_len."""
    poly = [1] + [0] * max_len
    for k in range(1, N + 1):  # multiply by [k]_q
        new = [0] * (max_len + 1)
        for d, c in enumerate(poly):
            for e in range(k):
                if d + e <= max_len:
                    new[d + e] += c
        poly = new
    for i in range(1, N):  # divide by 1 - q^i
        for d in range(i, max_len + 1):
            poly[d] += poly[d - i]
    return poly


def stabilizer_check(N: int, max_len: int = 6) -> Report:
    """The stabilizer of pi_0 in the tadpole-free groupoid is generated by f_i f_{i+n}.

    Subgroup membership is decided inside the displacement ball of radius
    max_len + N, then re-decided at radius max_len + 2N to confirm the
    answer has stabilized.
    """
    if N % 2 or N < 4:
        raise ValueError("need an even N >= 4")
    n = N // 2
    p0 = base_pattern(N)
    report = Report(f"stabilizer checks, N={N}, words up to length {max_len}")

    gens = [compose(generator(i, N), generator(i + n, N)) for i in range(1, N + 1)]
    report.add("a: every f_i f_{i+n} stabilizes pi_0 in the groupoid",
               all(groupoid_membership(g, p0, p0) for g in gens))

    elements = words_up_to(N, max_len)
    balls = [_ball(gens, N, max_len + k * N) for k in (1, 2)]
    mismatch, unstable, members = [], 0, 0
    for s in elements:
        member = groupoid_membership(s, p0, p0)
        members += member
        inside = [s in b for b in balls]
        unstable += inside[0] != inside[1]
        if member != inside[1]:
            mismatch.append(str(s))
    report.add("b: groupoid stabilizer equals the subgroup on the enumerated elements", not mismatch,
               f"first mismatch {mismatch[0]}" if mismatch else f"{members} of {len(elements)} elements are members")
    report.add("b: subgroup slice stable under enlarging the displacement bound", unstable == 0)

    bad_u = [i for i in range(1, N + 1) if not groupoid_membership(U_element(i, N), p0, p0)]
    report.add("c: U_i stabilize pi_0", not bad_u, f"fails for i={bad_u}" if bad_u else "")
    bad_uu = [i for i in range(1, N + 1) if not groupoid_membership(UU_element(i, N), p0, p0)]
    shifts = {i: UU_element(i, N).displacement() for i in range(1, n + 1)}
    report.add("c: U_i U_{i+1}^{-1} stabilize pi_0", not bad_uu,
               f"fails for i={bad_uu}" if bad_uu else f"displacements {shifts}")
    bad_t = [
        i for i in range(1, N + 1)
        if not groupoid_membership(T_element(i, N), p0, p0) or list(T_element(i, N).displacement()) != _T_target(i, N)
    ]
    report.add("c: T_i stabilize pi_0 and shift cycles i, i+1 by +n, -n", not bad_t,
               f"fails for i={bad_t}" if bad_t else "")
    return report


def consistency_check(N: int, max_len: int = 6) -> Report:
    """The word definition and the order-preserving definition of the groupoid agree.

    For every link pattern pi and every element s of length <= max_len:
    s is a member for (pi, s.pi) exactly when its shortest word is tadpole
    free, and every tadpole-free word of length <= max_len gives a member.
    Also checks the finite monotonicity test against a wide brute force and
    that windows at each length are counted by the Poincare series.
    """
    elements = words_up_to(N, max_len)
    report = Report(f"groupoid consistency, N={N}, words up to length {max_len}")
    bad_min, bad_brute = [], []
    for pi in link_patterns(N):
        for s, word in elements.items():
            target = conj_act(s, pi)
            member = groupoid_membership(s, pi, target)
            if member != is_tadpole_free(word, pi):
                bad_min.append((pi.cycle_str(), str(s)))
            if member != groupoid_membership_brute(s, pi, target):
                bad_brute.append((pi.cycle_str(), str(s)))
    report.add("members are exactly the elements with a tadpole-free shortest word", not bad_min,
               f"first failure {bad_min[0]}" if bad_min else "")
    report.add("finite chord test agrees with the +-3 period brute force", not bad_brute,
               f"first failure {bad_brute[0]}" if bad_brute else "")

    bad_words = []
    all_words = itertools.chain.from_iterable(
        itertools.product(range(1, N + 1), repeat=k) for k in range(max_len + 1)
    )
    for word in all_words:
        s = element(word, N)
        for pi in link_patterns(N):
            if is_tadpole_free(word, pi) and not groupoid_membership(s, pi, conj_act(s, pi)):
                bad_words.append((word, pi.cycle_str()))
    report.add("every tadpole-free word gives a member", not bad_words,
               f"first failure {bad_words[0]}" if bad_words else "")

    counts = length_counts(N, max_len)
    report.add("window counts per length match the Poincare series", counts == poincare_coefficients(N, max_len),
               f"{counts}")
    report.add("BFS distance equals the inversion-count length",
               all(length(s) == len(w) for s, w in elements.items()))
    return report
