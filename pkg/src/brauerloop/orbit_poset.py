"""The ranked poset of B-orbits on upper-triangular square-zero matrices.

Orbits are indexed by involutions of {1..N} (any N, odd allowed).  The order
is rank dominance on intervals; covers are obtained by transitive reduction
of that order, and the combinatorial "moves" are checked against it rather
than used to define it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linkpat import Involution, crossings, involutions
from .report import Report

__all__ = [
    "PosetRecord",
    "rank_interval",
    "rank_vector",
    "leq",
    "dim_orbit",
    "dim_by_counts",
    "dim_by_pairs",
    "raw_moves",
    "build_poset",
    "verify_poset",
    "to_dot",
    "DEFAULT_MAX_N",
]

DEFAULT_MAX_N = 8


def rank_interval(pi: Involution, i: int, j: int) -> int:
    """Number of arches (a, b) with i <= a < b <= j."""
    if not 1 <= i < j <= pi.N:
        raise ValueError(f"need 1 <= i < j <= {pi.N}, got ({i}, {j})")
    return sum(1 for a, b in pi.arches() if i <= a and b <= j)


def rank_vector(pi: Involution) -> tuple[int, ...]:
    """rank_interval over all i < j, in lexicographic (i, j) order."""
    N = pi.N
    arches = pi.arches()
    return tuple(
        sum(1 for a, b in arches if i <= a and b <= j)
        for i in range(1, N + 1)
        for j in range(i + 1, N + 1)
    )


def leq(rho: Involution, pi: Involution) -> bool:
    """rho <= pi, i.e. the orbit of rho lies in the closure of the orbit of pi."""
    if rho.N != pi.N:
        raise ValueError(f"size mismatch: {rho.N} vs {pi.N}")
    return all(r <= p for r, p in zip(rank_vector(rho), rank_vector(pi)))


def _crosses(x: tuple[int, int], y: tuple[int, int]) -> bool:
    (a, b), (c, d) = x, y
    return a < c < b < d or c < a < d < b


def dim_by_counts(pi: Involution) -> int:
    """#arches * (#arches + #half-lines) - #crossings."""
    a = len(pi.arches())
    h = len(pi.fixed_points())
    return a * (a + h) - crossings(pi)


def dim_by_pairs(pi: Involution) -> int:
    """Count of arches, plus all arch pairs, plus noncrossing (arch, curve) pairs.

    Each unordered pair of arches contributes 1 unconditionally and 1 more
    when the two do not cross; an (arch, half-line) pair contributes when
    the half-line is not under the arch.
    """
    arches = pi.arches()
    total = len(arches)
    for x, y in itertools.combinations(arches, 2):
        total += 1 if _crosses(x, y) else 2
    for h in pi.fixed_points():
        total += sum(1 for a, b in arches if not a < h < b)
    return total


def dim_orbit(pi: Involution) -> int:
    d1, d2 = dim_by_counts(pi), dim_by_pairs(pi)
    if d1 != d2:
        raise AssertionError(f"dimension formulas disagree on {pi}: {d1} vs {d2}")
    return d1


def _from_arches(N: int, arches: list[tuple[int, int]]) -> Involution:
    return Involution.from_cycles(N, arches)


def raw_moves(pi: Involution) -> set[Involution]:
    """Every diagram reachable by one move, without any adjacency filter.

    1. two non-crossing arches become the crossing pairing on their four ends;
    2. a half-line and an arch not over it become an arch over a half-line;
    3. an arch over every half-line breaks into two half-lines.
    """
    N = pi.N
    arches = pi.arches()
    fixed = pi.fixed_points()
    out: set[Involution] = set()
    for x, y in itertools.combinations(arches, 2):
        if _crosses(x, y):
            continue
        rest = [c for c in arches if c not in (x, y)]
        (a, b), (c, d) = sorted([x, y])
        if b < c:  # side by side: a < b < c < d
            new = [(a, c), (b, d)]
        else:  # nested: a < c < d < b
            new = [(a, d), (c, b)]
        out.add(_from_arches(N, rest + new))
    for h in fixed:
        for a, b in arches:
            rest = [c for c in arches if c != (a, b)]
            if h < a:
                out.add(_from_arches(N, rest + [(h, b)]))
            elif h > b:
                out.add(_from_arches(N, rest + [(a, h)]))
    for a, b in arches:
        if all(a < h < b for h in fixed):
            out.add(_from_arches(N, [c for c in arches if c != (a, b)]))
    return out


@dataclass(frozen=True)
class PosetRecord:
    """Elements in canonical order, their dimensions and their lower covers."""

    N: int
    elements: tuple[Involution, ...]
    dim: dict[Involution, int]
    covers: dict[Involution, frozenset[Involution]]
    order: np.ndarray  # order[a, b] = elements[a] <= elements[b]

    def index(self, pi: Involution) -> int:
        return self._index()[pi]

    def _index(self) -> dict[Involution, int]:
        return _index_of(self.elements)

    def below(self, pi: Involution) -> list[Involution]:
        """Strict down-set of pi."""
        k = self.index(pi)
        return [self.elements[a] for a in np.flatnonzero(self.order[:, k]) if a != k]

    def maximal_chain(self, pi: Involution) -> list[Involution]:
        """A chain pi > ... > identity through covers (smallest cover first)."""
        chain = [pi]
        while self.covers[chain[-1]]:
            chain.append(min(self.covers[chain[-1]]))
        return chain


@lru_cache(maxsize=None)
def _index_of(elements: tuple[Involution, ...]) -> dict[Involution, int]:
    return {p: k for k, p in enumerate(elements)}


def _bool_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (x.astype(np.int32) @ y.astype(np.int32)) > 0


def build_poset(N: int, max_n: int = DEFAULT_MAX_N) -> PosetRecord:
    """The full poset of involutions of {1..N}, covers by transitive reduction."""
    if N < 1:
        raise ValueError("N must be positive")
    if N > max_n:
        raise ValueError(f"N={N} exceeds the configured bound {max_n}")
    elements = involutions(N)
    ranks = np.array([rank_vector(p) for p in elements], dtype=np.int16).reshape(len(elements), -1)
    # order[a, b]: every interval rank of a is <= that of b
    order = np.all(ranks[:, None, :] <= ranks[None, :, :], axis=2)
    strict = order & ~np.eye(len(elements), dtype=bool)
    covers_m = strict & ~_bool_matmul(strict, strict)
    dim = {p: dim_orbit(p) for p in elements}
    covers = {
        p: frozenset(elements[a] for a in np.flatnonzero(covers_m[:, b]))
        for b, p in enumerate(elements)
    }
    return PosetRecord(N, elements, dim, covers, order)


def _closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated squaring."""
    reach = adj | np.eye(adj.shape[0], dtype=bool)
    while True:
        nxt = _bool_matmul(reach, reach)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def verify_poset(N: int, max_n: int = DEFAULT_MAX_N) -> Report:
    """Consistency of order, covers, moves and dimension for size N.

    a  covers generate the rank-dominance order
    b  moves go strictly down; covers are exactly the moves that drop dim by 1
    c  dim is a rank function with the identity as unique minimum
    d  maximal dimension floor(N^2/4), attained exactly by noncrossing diagrams with <= 1 half-line
    e  among diagrams with <= k arches the maximum k(N-k) is attained exactly by noncrossing ones with k arches
    """
    P = build_poset(N, max_n)
    idx = P._index()
    els = P.elements
    report = Report(f"poset checks, N={N}")

    cov = np.zeros_like(P.order)
    for p, cs in P.covers.items():
        for c in cs:
            cov[idx[c], idx[p]] = True
    report.add("a: closure of covers equals the order", np.array_equal(_closure(cov), P.order))

    bad_down, bad_cover, extra = [], [], 0
    for p in els:
        moves = raw_moves(p)
        for m in moves:
            if not (P.order[idx[m], idx[p]] and m != p):
                bad_down.append((p.cycle_str(), m.cycle_str()))
        adjacent = {m for m in moves if P.dim[m] == P.dim[p] - 1}
        extra += len(moves) - len(adjacent)
        if adjacent != set(P.covers[p]):
            bad_cover.append(p.cycle_str())
    report.add("b: every move lands strictly below", not bad_down, f"first failure {bad_down[0]}" if bad_down else "")
    report.add(
        "b: covers are exactly the moves dropping dim by 1",
        not bad_cover,
        f"first failure at {bad_cover[0]}" if bad_cover else f"{extra} further moves drop dim by more than 1",
    )

    bad_rank = [(p.cycle_str(), c.cycle_str()) for p in els for c in P.covers[p] if P.dim[c] != P.dim[p] - 1]
    minima = [p for p in els if not P.covers[p]]
    ident = Involution(range(1, N + 1))
    report.add("c: every cover drops dim by exactly 1", not bad_rank, f"first failure {bad_rank[0]}" if bad_rank else "")
    report.add("c: unique minimum is the identity with dim 0", minima == [ident] and P.dim[ident] == 0)

    top = max(P.dim.values())
    top_set = {p for p in els if P.dim[p] == top}
    expected = {p for p in els if crossings(p) == 0 and len(p.fixed_points()) <= 1}
    report.add("d: maximal dimension is floor(N^2/4)", top == N * N // 4, f"got {top}")
    report.add("d: maximal elements are the noncrossing ones with <= 1 half-line", top_set == expected)

    ok_e = True
    for k in range(0, N // 2 + 1):
        pool = [p for p in els if len(p.arches()) <= k]
        best = max(P.dim[p] for p in pool)
        arg = {p for p in pool if P.dim[p] == best}
        want = {p for p in pool if len(p.arches()) == k and crossings(p) == 0}
        ok_e &= best == k * (N - k) and arg == want
    report.add("e: rank-k maxima are the noncrossing diagrams with k arches", ok_e)
    return report


def to_dot(P: PosetRecord) -> str:
    """Hasse diagram in DOT, one rank per row, deterministic order."""
    idx = P._index()
    lines = ["digraph poset {", "  rankdir=TB;", "  node [shape=box, fontname=monospace];"]
    for p in P.elements:
        lines.append(f'  n{idx[p]} [label="{p.cycle_str() or "()"}\\ndim {P.dim[p]}"];')
    for d in sorted(set(P.dim.values()), reverse=True):
        members = " ".join(f"n{idx[p]};" for p in P.elements if P.dim[p] == d)
        lines.append(f"  {{ rank=same; {members} }}")
    for p in P.elements:
        for c in sorted(P.covers[p]):
            lines.append(f"  n{idx[p]} -> n{idx[c]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
