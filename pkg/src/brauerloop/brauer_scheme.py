"""Periodic strictly upper triangular matrices modulo S^N.

An element is stored by its window entries (i, j) with 1 <= i <= N and
i < j < i + N; every other entry of the periodic lift follows from
M[i + N, j + N] = M[i, j].  Entries are exact rationals.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import NonGenericError
from .linkpat import Involution, LinkPattern
from .orbit_poset import rank_interval
from .report import Report

__all__ = [
    "BandMatrix",
    "SEED_SETS",
    "square",
    "superdiagonal",
    "underline",
    "generic_element",
    "promote",
    "rightward_involution",
    "link_pattern_of",
    "southwest_rank",
    "rank",
    "southwest_ranks",
    "check_compeqns",
    "embed",
    "project",
    "generic_element_ranks",
]

Scalar = Fraction


def _primes(count: int, start: int = 2) -> list[int]:
    out, k = [], start
    while len(out) < count:
        if k > 1 and all(k % p for p in range(2, math.isqrt(k) + 1)):
            out.append(k)
        k += 1
    return out


# Distinct primes (and their reciprocals) make every product s_i s_j unique.
SEED_SETS: tuple[tuple[Fraction, ...], ...] = (
    tuple(Fraction(p) for p in _primes(16)),
    tuple(Fraction(p) for p in _primes(16, start=60)),
    tuple(Fraction(1, p) for p in _primes(16, start=100)),
)


@dataclass(frozen=True)
class BandMatrix:
    N: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (1 <= i <= self.N and i < j < i + self.N):
                raise ValueError(f"({i}, {j}) is outside the window for N={self.N}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __call__(self, i: int, j: int) -> Fraction:
        """Entry of the periodic lift; zero off the window band (and on the diagonal)."""
        q = (i - 1) // self.N
        return self.entries.get((i - q * self.N, j - q * self.N), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, BandMatrix) and self.N == other.N and self.entries == other.entries

    def split(self) -> tuple[dict, dict]:
        """(R, L): entries with j <= N, and the rest."""
        R = {k: v for k, v in self.entries.items() if k[1] <= self.N}
        L = {k: v for k, v in self.entries.items() if k[1] > self.N}
        return R, L

    def to_json(self) -> dict:
        return {
            "v": 1,
            "N": self.N,
            "entries": [
                {"i": i, "j": j, "num": v.numerator, "den": v.denominator} for (i, j), v in self.entries.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BandMatrix":
        return cls(int(data["N"]), {(e["i"], e["j"]): Fraction(e["num"], e["den"]) for e in data["entries"]})

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "BandMatrix":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def superdiagonal(M: BandMatrix, corner: Sequence[Scalar] | None = None, row_offset: int = 0) -> list[Fraction]:
    """(M^2)_{i, i+N} for i = 1..N.

    ``corner`` gives arbitrary values for the ambiguous entries (i, i+N) of a
    lift, and ``row_offset`` evaluates at rows i + row_offset*N; neither may
    change the result.
    """
    N = M.N
    out = []
    for i in range(1, N + 1):
        r = i + row_offset * N

        def entry(a: int, b: int) -> Fraction:
            if b - a == N and corner is not None:
                return Fraction(corner[(a - 1) % N])
            return M(a, b)

        out.append(sum((entry(r, k) * entry(k, r + N) for k in range(r, r + N + 1)), Fraction(0)))
    return out


def square(M: BandMatrix) -> tuple[dict[tuple[int, int], Fraction], list[Fraction]]:
    """(inside, superdiag): window entries of M^2 with j - i < N, and the (i, i+N) entries."""
    N = M.N
    inside = {}
    for i in range(1, N + 1):
        for j in range(i + 2, i + N):
            v = sum((M(i, k) * M(k, j) for k in range(i + 1, j)), Fraction(0))
            if v:
                inside[(i, j)] = v
    return inside, superdiagonal(M)


def _lift(i: int, target: int, N: int) -> int:
    """The representative of target mod N in (i, i+N)."""
    k = (target - i) % N
    if k == 0:
        raise ValueError(f"{target} is congruent to {i}; no lift in the open window")
    return i + k


def underline(pi: LinkPattern) -> BandMatrix:
    """1 at (i, lift of pi(i)) for every i."""
    if pi.fixed_points():
        raise ValueError("underline needs a fixed-point-free involution")
    N = pi.N
    return BandMatrix(N, {(i, _lift(i, pi(i), N)): 1 for i in range(1, N + 1)})


def _normalize_partial(rho, N: int) -> dict[int, int]:
    if isinstance(rho, Involution):
        return {i: rho(i) for i in range(1, N + 1) if rho(i) != i}
    if isinstance(rho, Mapping):
        m = {int(k): int(v) for k, v in rho.items() if v is not None}
    else:
        m = {i: int(v) for i, v in enumerate(rho, start=1) if v is not None}
    if len(set(m.values())) != len(m):
        raise ValueError("rho is not injective")
    for i, v in m.items():
        if not (1 <= i <= N and 1 <= v <= N) or v == i:
            raise ValueError(f"rho({i}) = {v} is not allowed")
        if v in m and m[v] != i:
            raise ValueError(f"rho(rho({i})) = {m[v]} != {i}")
    return m


def promote(rho, N: int) -> Involution:
    """Keep every leftward move rho(j) < j as a transposition; everything else is fixed."""
    m = _normalize_partial(rho, N)
    img = list(range(1, N + 1))
    for j, k in m.items():
        if k < j:
            img[j - 1], img[k - 1] = k, j
    return Involution(img)


def rightward_involution(rho, N: int) -> Involution:
    """Pair j with rho(j) whenever rho(j) > j; these are the R-part entries of a generic element.

    It agrees with :func:`promote` exactly when the leftward and rightward
    moves of rho mirror each other (always for an involution).
    """
    m = _normalize_partial(rho, N)
    img = list(range(1, N + 1))
    for j, k in m.items():
        if k > j:
            img[j - 1], img[k - 1] = k, j
    return Involution(img)


def generic_element(rho, seeds: Sequence[Scalar], N: int | None = None) -> tuple[BandMatrix, Involution]:
    """Seed s_i at (i, lift of rho(i)); returns the matrix and the promoted involution.

    ``rho`` is an Involution, a mapping i -> rho(i), or a sequence with
    ``None`` for undefined values.  Raises :class:`NonGenericError` when the
    seeds produce superdiagonal coincidences beyond {i, rho(i)}.
    """
    if N is None:
        N = rho.N if isinstance(rho, Involution) else len(rho) if not isinstance(rho, Mapping) else max(rho)
    m = _normalize_partial(rho, N)
    seeds = [Fraction(s) for s in seeds]
    if len(seeds) < N or any(s == 0 for s in seeds[:N]):
        raise ValueError(f"need {N} nonzero seeds")
    M = BandMatrix(N, {(i, _lift(i, k, N)): seeds[i - 1] for i, k in m.items()})
    sd = superdiagonal(M)
    for i in range(1, N + 1):
        closed = i in m and m[i] in m
        if (sd[i - 1] != 0) != closed:
            raise NonGenericError(f"superdiagonal at {i} is {sd[i - 1]}, expected {'nonzero' if closed else 'zero'}")
    for i, j in itertools.combinations(range(1, N + 1), 2):
        if sd[i - 1] != 0 and sd[i - 1] == sd[j - 1] and m.get(i) != j:
            raise NonGenericError(f"seeds collide: superdiagonal at {i} and {j} both equal {sd[i - 1]}")
    return M, promote(m, N)


def link_pattern_of(M: BandMatrix) -> LinkPattern:
    """Pair up equal superdiagonal values into a link pattern."""
    N = M.N
    sd = superdiagonal(M)
    classes: dict[Fraction, list[int]] = {}
    for i, v in enumerate(sd, start=1):
        classes.setdefault(v, []).append(i)
    if Fraction(0) in classes:
        raise NonGenericError(f"superdiagonal vanishes at {classes[Fraction(0)]}")
    bad = [c for c in classes.values() if len(c) != 2]
    if bad:
        raise NonGenericError(f"superdiagonal values do not pair up: classes {sorted(bad)}")
    return LinkPattern.from_cycles(N, classes.values())


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank by fraction-free (Bareiss) elimination after clearing denominators."""
    mat = []
    for row in rows:
        row = [Fraction(x) for x in row]
        L = math.lcm(*(x.denominator for x in row)) if row else 1
        mat.append([int(x * L) for x in row])
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r, prev = 0, 1
    for c in range(ncols):
        pivot = next((k for k in range(r, nrows) if mat[k][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for k in range(r + 1, nrows):
            for col in range(c + 1, ncols):
                mat[k][col] = (mat[k][col] * mat[r][c] - mat[k][c] * mat[r][col]) // prev
            mat[k][c] = 0
        prev = mat[r][c]
        r += 1
        if r == nrows:
            break
    return r


def southwest_rank(M: BandMatrix, i: int, j: int) -> int:
    """Rank of the lift restricted to rows >= i and columns <= j (i < j < i + N)."""
    rows = [[M(k, l) for l in range(i, j + 1)] for k in range(i, j + 1)]
    return rank(rows)


def southwest_ranks(M: BandMatrix) -> dict[tuple[int, int], int]:
    """southwest_rank for every window position (i, j)."""
    N = M.N
    return {(i, j): southwest_rank(M, i, j) for i in range(1, N + 1) for j in range(i + 1, i + N)}


@lru_cache(maxsize=None)
def _pattern_ranks(pi: LinkPattern) -> dict[tuple[int, int], int]:
    return southwest_ranks(underline(pi))


def check_compeqns(M: BandMatrix, pi: LinkPattern, ranks: Mapping[tuple[int, int], int] | None = None) -> Report:
    """The three families of equations satisfied on the component of pi.

    ``ranks`` may carry precomputed ``southwest_ranks(M)`` when one matrix is
    tested against many patterns.
    """
    N = M.N
    if pi.N != N:
        raise ValueError("size mismatch")
    if ranks is None:
        ranks = southwest_ranks(M)
    report = Report(f"component equations for {pi.cycle_str()}")
    inside, sd = square(M)
    report.add("1: M^2 = 0 inside the window", not inside, f"nonzero at {min(inside)}" if inside else "")
    bad = [i for i in range(1, N + 1) if sd[i - 1] != sd[pi(i) - 1]]
    report.add("2: superdiagonal constant on arches", not bad, f"fails at i={bad[0]}" if bad else "")
    ref = _pattern_ranks(pi)
    bad_r = [key for key, r in ref.items() if ranks[key] > r]
    report.add("3: southwest ranks bounded by the pattern matrix", not bad_r,
               f"fails at (i, j)={bad_r[0]}" if bad_r else "")
    return report


def embed(U: Sequence[Sequence[Scalar]]) -> BandMatrix:
    """Strictly upper triangular N x N matrix into the quotient algebra, L-part zero."""
    N = len(U)
    entries = {}
    for i in range(N):
        if len(U[i]) != N:
            raise ValueError("matrix is not square")
        for j in range(N):
            if U[i][j] and j <= i:
                raise ValueError("matrix is not strictly upper triangular")
            if U[i][j]:
                entries[(i + 1, j + 1)] = U[i][j]
    return BandMatrix(N, entries)


def project(M: BandMatrix) -> list[list[Fraction]]:
    """The R-part as an N x N matrix."""
    N = M.N
    return [[M(i, j) if j <= N else Fraction(0) for j in range(1, N + 1)] for i in range(1, N + 1)]


def generic_element_ranks(rho, seeds: Sequence[Scalar], N: int | None = None) -> Report:
    """project(M) squares to zero and has the southwest ranks of the rightward-move involution.

    For an involution rho this is also the promoted involution returned by
    :func:`generic_element`; the report says whether the two coincide.
    """
    M, rho_p = generic_element(rho, seeds, N)
    N = M.N
    target = rightward_involution(rho, N)
    U = project(M)
    report = Report("generic element, R-part")
    sq_zero = all(
        sum((U[i][k] * U[k][j] for k in range(N)), Fraction(0)) == 0 for i in range(N) for j in range(N)
    )
    report.add("R-part is strictly upper triangular with square zero",
               sq_zero and all(U[i][j] == 0 for i in range(N) for j in range(i + 1)))
    bad = [
        (i, j)
        for i in range(1, N + 1)
        for j in range(i + 1, N + 1)
        if rank([row[i - 1 : j] for row in U[i - 1 : j]]) != rank_interval(target, i, j)
    ]
    report.add("southwest ranks match the rightward-move involution", not bad, f"fails at {bad[0]}" if bad else "")
    return report
