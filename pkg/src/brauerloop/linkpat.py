"""Involutions, link patterns and the Brauer-algebra action on them.

An involution of {1, ..., N} is drawn as a chord diagram: an arch for every
2-cycle and a half-line for every fixed point.  A link pattern is a
fixed-point-free involution (N even); its indices are often read modulo N.

The representation space V has the link patterns as a basis.  Its elements are
:class:`LinCombo` objects, whose coefficients may be ints, polynomials or
rationals.  Operators on V are stored column-wise as ``{pattern: LinCombo}``.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .polyring import Polynomial, RationalFunction, VarSpec
from .report import Report

__all__ = [
    "Involution",
    "LinkPattern",
    "LinCombo",
    "BETA",
    "enumerate_patterns",
    "involutions",
    "link_patterns",
    "base_pattern",
    "crossings",
    "generator_action",
    "e_preimages",
    "operator",
    "compose",
    "check_brauer_relations",
]

BETA_RING = VarSpec.generic(["beta"])
BETA = Polynomial.var(BETA_RING, "beta")


class Involution:
    """An involution of {1..N}; ``pairing[i-1]`` is the image of i."""

    __slots__ = ("pairing",)

    def __init__(self, pairing: Sequence[int]):
        pairing = tuple(int(x) for x in pairing)
        N = len(pairing)
        for i, j in enumerate(pairing, start=1):
            if not 1 <= j <= N or pairing[j - 1] != i:
                raise ValueError(f"{pairing} is not an involution of 1..{N}")
        self.pairing = pairing

    @property
    def N(self) -> int:
        return len(self.pairing)

    def __call__(self, i: int) -> int:
        """Image of i, with i read modulo N; the result lies in 1..N."""
        return self.pairing[(i - 1) % self.N]

    def arches(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.pairing, start=1) if i < j]

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.pairing, start=1) if i == j]

    def is_link_pattern(self) -> bool:
        return self.N % 2 == 0 and not self.fixed_points()

    def conjugate(self, perm: Callable[[int], int]) -> "Involution":
        """perm o self o perm^{-1}; ``perm`` maps 1..N to 1..N."""
        new = [0] * self.N
        for i, j in enumerate(self.pairing, start=1):
            new[perm(i) - 1] = perm(j)
        return type(self)(new)

    # equality and order look only at the pairing, so an Involution and a
    # LinkPattern with the same pairing are interchangeable keys
    def _key(self) -> tuple[int, ...]:
        return self.pairing

    def __eq__(self, other) -> bool:
        if isinstance(other, Involution):
            return self.pairing == other.pairing
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.pairing)

    def __lt__(self, other: "Involution") -> bool:
        return (self.N, self.pairing) < (other.N, other.pairing)

    def __le__(self, other: "Involution") -> bool:
        return self == other or self < other

    def cycle_str(self) -> str:
        parts = []
        for i, j in enumerate(self.pairing, start=1):
            if i < j:
                parts.append((i, f"({i} {j})"))
            elif i == j:
                parts.append((i, f"({i})"))
        return "".join(s for _, s in sorted(parts))

    def compact_str(self) -> str:
        return ",".join(map(str, self.pairing))

    def __str__(self) -> str:
        return self.cycle_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self.cycle_str()}')"

    @classmethod
    def from_cycles(cls, N: int, cycles: Iterable[Sequence[int]]):
        pairing = list(range(1, N + 1))
        for cyc in cycles:
            if len(cyc) == 2:
                a, b = cyc
                pairing[a - 1], pairing[b - 1] = b, a
            elif len(cyc) != 1:
                raise ValueError(f"cycle {cyc} is not of length 1 or 2")
        return cls(pairing)

    @classmethod
    def parse(cls, text: str, N: int | None = None):
        """Parse ``"(1 3)(2 4)"``, ``"(13)(24)"`` or the pairing form ``"3,4,1,2"``."""
        text = text.strip()
        if not text.startswith("("):
            return cls([int(x) for x in re.split(r"[,\s]+", text) if x])
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            body = body.strip()
            if re.search(r"[,\s]", body):
                cycles.append([int(x) for x in re.split(r"[,\s]+", body) if x])
            else:
                cycles.append([int(ch) for ch in body])
        if N is None:
            N = max((x for c in cycles for x in c), default=0)
        return cls.from_cycles(N, cycles)


class LinkPattern(Involution):
    """A fixed-point-free involution of {1..N}, N even."""

    __slots__ = ()

    def __init__(self, pairing: Sequence[int]):
        super().__init__(pairing)
        if self.N % 2 or any(i == j for i, j in enumerate(self.pairing, start=1)):
            raise ValueError(f"{self.pairing} is not a link pattern")


def _involutions(N: int, fixed_ok: bool) -> list[tuple[int, ...]]:
    out = []
    pairing = [0] * N

    def rec():
        try:
            i = pairing.index(0)
        except ValueError:
            out.append(tuple(pairing))
            return
        if fixed_ok:
            pairing[i] = i + 1
            rec()
            pairing[i] = 0
        for j in range(i + 1, N):
            if pairing[j] == 0:
                pairing[i], pairing[j] = j + 1, i + 1
                rec()
                pairing[i] = pairing[j] = 0

    rec()
    return sorted(out)


@lru_cache(maxsize=None)
def involutions(N: int) -> tuple[Involution, ...]:
    if N < 1:
        raise ValueError("N must be positive")
    return tuple(Involution(p) for p in _involutions(N, True))


@lru_cache(maxsize=None)
def link_patterns(N: int) -> tuple[LinkPattern, ...]:
    if N < 2 or N % 2:
        raise ValueError(f"link patterns need an even N >= 2, got {N}")
    return tuple(LinkPattern(p) for p in _involutions(N, False))


def enumerate_patterns(N: int, kind: str) -> list[Involution]:
    """All involutions or all link patterns of size N, in lexicographic pairing order."""
    if kind in ("involutions", "involution"):
        return list(involutions(N))
    if kind in ("link_patterns", "link-patterns", "link_pattern"):
        return list(link_patterns(N))
    raise ValueError(f"unknown kind {kind!r}")


def base_pattern(N: int) -> LinkPattern:
    """pi_0 with pi_0(i) = i + n."""
    n = N // 2
    return LinkPattern([i + n if i <= n else i - n for i in range(1, N + 1)])


def crossings(pi: Involution) -> int:
    """Number of crossing pairs of curves (arch/arch and arch/half-line)."""
    arches = pi.arches()
    c = 0
    for (a, b), (x, y) in itertools.combinations(arches, 2):
        if a < x < b < y or x < a < y < b:
            c += 1
    for h in pi.fixed_points():
        c += sum(1 for a, b in arches if a < h < b)
    return c


# -- formal linear combinations ------------------------------------------------


def _is_zero(c) -> bool:
    if isinstance(c, RationalFunction):
        return c.num.is_zero()
    if isinstance(c, Polynomial):
        return c.is_zero()
    return c == 0


class LinCombo(Mapping):
    """Finite formal combination sum_pi c_pi * pi; zero coefficients are dropped."""

    __slots__ = ("_d",)

    def __init__(self, items: Mapping | Iterable | None = None):
        d: dict = {}
        if items is not None:
            pairs = items.items() if isinstance(items, Mapping) else items
            for k, c in pairs:
                d[k] = d[k] + c if k in d else c
        self._d = {k: c for k, c in d.items() if not _is_zero(c)}

    def __getitem__(self, k):
        return self._d[k]

    def __iter__(self) -> Iterator:
        return iter(sorted(self._d))

    def __len__(self) -> int:
        return len(self._d)

    def __add__(self, other: "LinCombo") -> "LinCombo":
        return LinCombo(list(self._d.items()) + list(other._d.items()))

    def __neg__(self) -> "LinCombo":
        return LinCombo({k: -c for k, c in self._d.items()})

    def __sub__(self, other: "LinCombo") -> "LinCombo":
        return self + (-other)

    def scale(self, c) -> "LinCombo":
        return LinCombo({k: c * v for k, v in self._d.items()})

    def __rmul__(self, c) -> "LinCombo":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinCombo):
            return NotImplemented
        return (self - other)._d == {}

    __hash__ = None

    def apply(self, op: Callable[[LinkPattern], "LinCombo"]) -> "LinCombo":
        """Extend ``op`` linearly."""
        acc: list = []
        for k, c in self._d.items():
            acc.extend((k2, c * c2) for k2, c2 in op(k)._d.items())
        return LinCombo(acc)

    def __repr__(self) -> str:
        if not self._d:
            return "LinCombo(0)"
        return "LinCombo(" + " + ".join(f"({self._d[k]})*{k}" for k in self) + ")"


# -- generator actions -----------------------------------------------------------


def _next(i: int, N: int) -> int:
    return i % N + 1


def _transposition(a: int, b: int) -> Callable[[int], int]:
    return lambda x: b if x == a else a if x == b else x


def generator_action(g: str, i: int, x: LinkPattern, beta=BETA) -> LinCombo:
    """Act with f_i, e_i, fbar_i or r on a link pattern.

    Indices run over 1..N; index N is the affine generator acting on the pair
    (N, 1).  ``beta`` is the loop weight returned by e_i on a little arch
    (by default the formal variable of Z[beta]).  ``fbar_i`` is the degenerate
    (beta = 2) generator: it acts like f_i when that creates a crossing and
    kills the pattern otherwise.  ``r`` ignores ``i`` and rotates by one step.
    """
    N = x.N
    if g == "r":
        return LinCombo({rotate(x): 1})
    if not 1 <= i <= N:
        raise ValueError(f"generator index {i} outside 1..{N}")
    j = _next(i, N)
    if g == "f":
        return LinCombo({x.conjugate(_transposition(i, j)): 1})
    if g == "fbar":
        if x(i) == j:
            return LinCombo()
        y = x.conjugate(_transposition(i, j))
        return LinCombo({y: 1}) if crossings(y) > crossings(x) else LinCombo()
    if g in ("e", "ebar"):
        if x(i) == j:
            return LinCombo({x: beta})
        a, b = x(i), x(j)
        new = list(x.pairing)
        new[i - 1], new[j - 1], new[a - 1], new[b - 1] = j, i, b, a
        y = type(x)(new)
        if g == "ebar" and crossings(y) != crossings(x):
            return LinCombo()
        return LinCombo({y: 1})
    raise ValueError(f"unknown generator {g!r}")


def rotate(x: Involution, steps: int = 1) -> Involution:
    """Conjugate by the cycle (1 2 ... N) ``steps`` times."""
    N = x.N
    return x.conjugate(lambda k: (k - 1 + steps) % N + 1)


def e_preimages(i: int, pi: LinkPattern) -> list[LinkPattern]:
    """All pi' != pi with e_i . pi' = pi; requires a little arch (i, i+1) in pi."""
    N = pi.N
    j = _next(i, N)
    if pi(i) != j:
        raise ValueError(f"{pi} has no little arch at ({i}, {j})")
    out = []
    for a, b in pi.arches():
        if {a, b} == {i, j}:
            continue
        for u, v in ((a, b), (b, a)):
            new = list(pi.pairing)
            new[i - 1], new[u - 1] = u, i
            new[j - 1], new[v - 1] = v, j
            out.append(type(pi)(new))
    return sorted(out)


# -- operators on V --------------------------------------------------------------

Operator = dict  # pattern -> LinCombo


def operator(N: int, g: str, i: int = 0, beta=BETA) -> Operator:
    return {p: generator_action(g, i, p, beta) for p in link_patterns(N)}


def compose(*ops: Operator) -> Operator:
    """Product ops[0] * ops[1] * ... (the rightmost acts first)."""
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = {p: v.apply(lambda q, op=op: op[q]) for p, v in result.items()}
    return result


def identity_operator(N: int) -> Operator:
    return {p: LinCombo({p: 1}) for p in link_patterns(N)}


def zero_operator(N: int) -> Operator:
    return {p: LinCombo() for p in link_patterns(N)}


def scale_operator(c, op: Operator) -> Operator:
    return {p: v.scale(c) for p, v in op.items()}


def _op_eq(x: Operator, y: Operator) -> bool:
    return all(x[p] == y[p] for p in x)


def _relations(N: int, algebra: str):
    """Yield (name, lhs, rhs) for the chosen algebra's defining relations."""
    affine = algebra in ("affine", "affine_brauer")
    degenerate = algebra == "degenerate"
    beta = 2 if degenerate else BETA
    idx = list(range(1, N + 1)) if affine else list(range(1, N))
    f_name = "fbar" if degenerate else "f"
    e_name = "ebar" if degenerate else "e"
    E = {i: operator(N, e_name, i, beta) for i in idx}
    F = {i: operator(N, f_name, i, beta) for i in idx}
    one, zero = identity_operator(N), zero_operator(N)

    def nxt(i):
        return _next(i, N) if affine else i + 1

    def adjacent(i, j):
        return j in (nxt(i),) or i in (nxt(j),)

    f = "fbar" if degenerate else "f"
    for i in idx:
        yield f"e{i}^2 = {beta} e{i}", compose(E[i], E[i]), scale_operator(beta, E[i])
        yield (f"{f}{i}^2 = {0 if degenerate else 1}", compose(F[i], F[i]), zero if degenerate else one)
        if degenerate:
            yield f"fbar{i} e{i} = 0", compose(F[i], E[i]), zero
            yield f"e{i} fbar{i} = 0", compose(E[i], F[i]), zero
        else:
            yield f"f{i} e{i} = e{i}", compose(F[i], E[i]), E[i]
            yield f"e{i} f{i} = e{i}", compose(E[i], F[i]), E[i]
        for j in idx:
            if adjacent(i, j):
                yield f"e{i} e{j} e{i} = e{i}", compose(E[i], E[j], E[i]), E[i]
            elif i < j:
                yield f"e{i} e{j} = e{j} e{i}", compose(E[i], E[j]), compose(E[j], E[i])
                yield f"{f}{i} {f}{j} = {f}{j} {f}{i}", compose(F[i], F[j]), compose(F[j], F[i])
            if not adjacent(i, j) and i != j:
                yield f"e{i} {f}{j} = {f}{j} e{i}", compose(E[i], F[j]), compose(F[j], E[i])
        if nxt(i) not in idx:
            continue
        k = nxt(i)
        if degenerate:
            yield (f"fbar{i} fbar{k} fbar{i} = fbar{k} fbar{i} fbar{k}",
                   compose(F[i], F[k], F[i]), compose(F[k], F[i], F[k]))
            yield f"fbar{k} fbar{i} e{k} = 0", compose(F[k], F[i], E[k]), zero
            yield f"fbar{i} fbar{k} e{i} = 0", compose(F[i], F[k], E[i]), zero
        else:
            ff = compose(F[i], F[k])
            yield f"(f{i} f{k})^3 = 1", compose(ff, ff, ff), one
            lhs = compose(E[i], E[k])
            yield f"e{i} f{k} f{i} = e{i} e{k}", compose(E[i], F[k], F[i]), lhs
            yield f"f{k} f{i} e{k} = e{i} e{k}", compose(F[k], F[i], E[k]), lhs
            lhs = compose(E[k], E[i])
            yield f"e{k} f{i} f{k} = e{k} e{i}", compose(E[k], F[i], F[k]), lhs
            yield f"f{i} f{k} e{i} = e{k} e{i}", compose(F[i], F[k], E[i]), lhs
    if affine:
        R = operator(N, "r")
        Rinv = {p: LinCombo({rotate(p, -1): 1}) for p in link_patterns(N)}
        for i in idx:
            k = nxt(i)
            yield f"e{k} = r e{i} r^-1", E[k], compose(R, E[i], Rinv)
            yield f"f{k} = r f{i} r^-1", F[k], compose(R, F[i], Rinv)
        yield f"r^{N} = 1", compose(*([R] * N)), one


def check_brauer_relations(N: int, algebra: str = "brauer") -> Report:
    """Verify the defining relations on the link-pattern representation.

    ``algebra`` is ``"brauer"`` (coefficients in Z[beta]), ``"affine"`` (indices
    mod N, plus the rotation relations) or ``"degenerate"`` (beta = 2 with the
    fbar generators, in the crossing-graded basis).
    """
    if algebra not in ("brauer", "affine", "affine_brauer", "degenerate"):
        raise ValueError(f"unknown algebra {algebra!r}")
    if N % 2 or N < 4:
        raise ValueError("relation checks need an even N >= 4")
    report = Report(f"{algebra} relations, N={N}")
    for name, lhs, rhs in _relations(N, algebra):
        report.add(name, _op_eq(lhs, rhs))
    return report
