"""Joseph-Melnikov polynomials J_pi, computed two ways and cross-checked.

* :func:`leading_form_table` reads J_pi off the B-leading form of Psi_pi
  (link patterns only);
* :func:`melnikov_solve` builds J for every involution bottom-up over the
  orbit poset by dividing out a minimal-chord weight.

J lives in the same ring as Psi (A, B, z_1..z_N), with B absent.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DivisionError, IdentityViolation
from .linkpat import Involution, LinkPattern, crossings, involutions, link_patterns
from .orbit_poset import build_poset
from .parallel import pmap
from .polyring import (
    Polynomial,
    VarSpec,
    divided_difference,
    exact_div,
    gens,
    init_B,
    substitute,
    tau,
)
from .qkz import PsiTable
from .report import Report

__all__ = [
    "JTable",
    "SchubertPoly",
    "identity_J",
    "leading_form_table",
    "melnikov_solve",
    "minimal_chords",
    "tilde_divided_difference",
    "hotta_preimages",
    "hotta_checks",
    "double_schubert",
    "schubert_ring",
    "schubert_word_independence",
    "permutation_sector",
    "doubschub_check",
    "cross_check",
    "table_properties",
]

METHODS = ("leading_form", "melnikov")


@dataclass
class JTable:
    """J_pi for a set of involutions of one size, tagged by how it was computed."""

    N: int
    entries: dict[Involution, Polynomial]
    method: str
    meta: dict = field(default_factory=dict)

    def __getitem__(self, pi: Involution) -> Polynomial:
        return self.entries[pi]

    def __contains__(self, pi: Involution) -> bool:
        return pi in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def patterns(self) -> list[Involution]:
        return sorted(self.entries)

    def to_json(self) -> dict:
        return {
            "v": 1,
            "N": self.N,
            "method": self.method,
            "meta": self.meta,
            "entries": [{"pattern": pi.cycle_str(), "poly": self.entries[pi].to_json()} for pi in self.patterns()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "JTable":
        N = int(data["N"])
        entries = {Involution.parse(e["pattern"], N): Polynomial.from_json(e["poly"]) for e in data["entries"]}
        return cls(N, entries, data["method"], dict(data.get("meta", {})))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "JTable":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def identity_J(N: int) -> Polynomial:
    """prod_{1 <= i < j <= N} (A + z_i - z_j): the weight product of the strict upper triangle."""
    A, _, Z = gens(N)
    p = Polynomial.one(A.vars)
    for i, j in itertools.combinations(range(1, N + 1), 2):
        p = p * (A + Z[i] - Z[j])
    return p


def leading_form_table(psi: PsiTable) -> JTable:
    """J_pi := B-leading form of Psi_pi, after checking the B-exponent is n^2 - n - c."""
    N = psi.N
    n = N // 2
    entries = {}
    for pi in psi.patterns():
        e, lead = init_B(psi[pi])
        want = n * n - n - crossings(pi)
        if e != want:
            raise IdentityViolation(f"init_B exponent of Psi_{pi.cycle_str()} is {e}, expected {want}")
        entries[Involution(pi.pairing)] = lead
    return JTable(N, entries, "leading_form")


def minimal_chords(pi: Involution) -> list[tuple[int, int]]:
    """Arches (a, b) with no other arch nested strictly inside."""
    arches = pi.arches()
    return [(a, b) for a, b in arches if not any(a < c and d < b for c, d in arches)]


def _melnikov_task(args):
    pi, options = args
    A, _, Z = gens(pi.N)
    values = []
    for (a, b), js in options:
        w = A + Z[a] - Z[b]
        total = Polynomial.zero(A.vars)
        for j in js:
            total = total + exact_div(j, w)
        values.append(((a, b), total))
    return values


def melnikov_solve(N: int, *, jobs: int = 1, max_n: int = 8) -> JTable:
    """J for every involution of {1..N} by the minimal-chord recursion.

    Every minimal chord of pi is tried; disagreement raises
    :class:`IdentityViolation`, and a non-exact division raises
    :class:`DivisionError`.
    """
    P = build_poset(N, max_n)
    ident = Involution(range(1, N + 1))
    J: dict[Involution, Polynomial] = {ident: identity_J(N)}
    by_dim: dict[int, list[Involution]] = {}
    for p in P.elements:
        by_dim.setdefault(P.dim[p], []).append(p)
    for d in sorted(by_dim):
        level = [p for p in by_dim[d] if p != ident]
        tasks = []
        for pi in level:
            options = []
            for a, b in minimal_chords(pi):
                lower = sorted(r for r in P.covers[pi] if r(a) != b)
                options.append(((a, b), [J[r] for r in lower]))
            tasks.append((pi, options))
        for pi, values in zip(level, pmap(_melnikov_task, tasks, jobs)):
            (chord0, first), *rest = values
            for chord, v in rest:
                if v != first:
                    raise IdentityViolation(
                        f"J_{pi.cycle_str()} depends on the minimal chord: {chord0} and {chord} disagree"
                    )
            J[pi] = first
    return JTable(N, J, "melnikov")


def tilde_divided_difference(i: int, p: Polynomial) -> Polynomial:
    """(1/(A+z_{i+1}-z_i)) d_i ((A+z_{i+1}-z_i) p), for i < N."""
    A, _, Z = gens(p.vars.N)
    w = A + Z[i + 1] - Z[i]
    return exact_div(divided_difference(i, w * p), w)


def _tilde_divided_difference_alt(i: int, p: Polynomial) -> Polynomial:
    """(A+z_i-z_{i+1}) d_i (p/(A+z_i-z_{i+1})), computed over the rational function field."""
    A, _, Z = gens(p.vars.N)
    g = A + Z[i] - Z[i + 1]
    gs = A + Z[i + 1] - Z[i]
    # d_i(p/g) = (p*gs - tau(p)*g) / (g*gs*(z_i - z_{i+1}))
    num = p * gs - tau(i, p) * g
    return exact_div(num, gs * (Z[i] - Z[i + 1]))


def _e_image(i: int, t: Involution) -> Involution | None:
    """e_i on an involution with half-lines; None when i, i+1 are both half-lines or joined.

    The partners of i and i+1 are joined to each other; a partner that was a
    half-line turns its counterpart into a half-line.
    """
    a, b = t(i), t(i + 1)
    if a == i + 1:
        return None
    if a == i and b == i + 1:
        return None
    pairs = [c for c in t.arches() if i not in c and i + 1 not in c]
    pairs.append((i, i + 1))
    if a != i and b != i + 1:
        pairs.append(tuple(sorted((a, b))))
    return Involution.from_cycles(t.N, pairs)


def hotta_preimages(i: int, sigma: Involution) -> list[Involution]:
    """tau != sigma with e_i tau = sigma and as many crossings as sigma."""
    N = sigma.N
    out = []
    for t in involutions(N):
        if t == sigma or t(i) in (i, i + 1) and t(i + 1) in (i, i + 1):
            continue
        if _e_image(i, t) == sigma and crossings(t) == crossings(sigma):
            out.append(t)
    return out


def hotta_checks(jt: JTable) -> Report:
    """Hotta-type relations for every applicable (sigma, i), 1 <= i < N.

    (a) sigma(i) = i+1:  -(A+z_i-z_{i+1}) d_i J_sigma = sum of J_tau over hotta_preimages;
    (b) arches at i and i+1 cross:  -d~_i J_sigma = J_{f_i sigma}.
    Instances whose right-hand side leaves the table are skipped.
    """
    N = jt.N
    A, _, Z = gens(N)
    report = Report(f"Hotta relations ({jt.method}), N={N}")
    a_bad, a_count, b_bad, b_count, alt_bad = [], 0, [], 0, []
    for sigma in jt.patterns():
        for i in range(1, N):
            if sigma(i) == i + 1:
                pre = hotta_preimages(i, sigma)
                if not all(t in jt for t in pre):
                    continue
                lhs = -((A + Z[i] - Z[i + 1]) * divided_difference(i, jt[sigma]))
                rhs = Polynomial.zero(A.vars)
                for t in pre:
                    rhs = rhs + jt[t]
                a_count += 1
                if lhs != rhs:
                    a_bad.append((sigma.cycle_str(), i))
            a, b = sigma(i), sigma(i + 1)
            if a not in (i, i + 1) and b not in (i, i + 1) and a != i + 1:
                arch1, arch2 = tuple(sorted((i, a))), tuple(sorted((i + 1, b)))
                (p, q), (r, s) = arch1, arch2
                if not (p < r < q < s or r < p < s < q):
                    continue
                swap = lambda x: i + 1 if x == i else i if x == i + 1 else x  # noqa: E731
                target = sigma.conjugate(swap)
                if target not in jt:
                    continue
                b_count += 1
                try:
                    lhs = -tilde_divided_difference(i, jt[sigma])
                    ok = lhs == jt[target]
                    if lhs != -_tilde_divided_difference_alt(i, jt[sigma]):
                        alt_bad.append((sigma.cycle_str(), i))
                except DivisionError:
                    ok = False
                if not ok:
                    b_bad.append((sigma.cycle_str(), i))
    report.add("a: little-arch relation", not a_bad,
               f"first failure (sigma, i) = {a_bad[0]}" if a_bad else f"{a_count} instances")
    report.add("b: crossing relation", not b_bad,
               f"first failure (sigma, i) = {b_bad[0]}" if b_bad else f"{b_count} instances")
    report.add("b: both forms of the conjugated divided difference agree", not alt_bad,
               f"first failure {alt_bad[0]}" if alt_bad else "")
    return report


# -- double Schubert polynomials -----------------------------------------------------


@lru_cache(maxsize=None)
def schubert_ring(n: int) -> VarSpec:
    return VarSpec.generic([f"x{k}" for k in range(1, n + 1)] + [f"y{k}" for k in range(1, n + 1)])


@dataclass(frozen=True)
class SchubertPoly:
    n: int
    permutation: tuple[int, ...]
    poly: Polynomial


def _dd_x(i: int, p: Polynomial) -> Polynomial:
    """Divided difference in x_i, x_{i+1}."""
    a, b = f"x{i}", f"x{i + 1}"
    xa, xb = Polynomial.var(p.vars, a), Polynomial.var(p.vars, b)
    swapped = substitute(p, {a: xb, b: xa})
    return exact_div(p - swapped, xa - xb)


def _top_class(n: int) -> Polynomial:
    R = schubert_ring(n)
    p = Polynomial.one(R)
    for i in range(1, n + 1):
        for j in range(1, n + 1 - i):
            p = p * (Polynomial.var(R, f"x{i}") - Polynomial.var(R, f"y{j}"))
    return p


def _check_perm(rho: Sequence[int]) -> tuple[int, ...]:
    rho = tuple(int(x) for x in rho)
    if sorted(rho) != list(range(1, len(rho) + 1)):
        raise ValueError(f"{rho} is not a permutation of 1..{len(rho)}")
    return rho


def _swap_positions(rho: tuple[int, ...], i: int) -> tuple[int, ...]:
    r = list(rho)
    r[i - 1], r[i] = r[i], r[i - 1]
    return tuple(r)


@lru_cache(maxsize=None)
def _schubert(rho: tuple[int, ...]) -> Polynomial:
    n = len(rho)
    if rho == tuple(range(n, 0, -1)):
        return _top_class(n)
    i = next(k for k in range(1, n) if rho[k - 1] < rho[k])
    return _dd_x(i, _schubert(_swap_positions(rho, i)))


def double_schubert(rho: Sequence[int]) -> SchubertPoly:
    """S_rho(x; y), from the top class prod_{i+j<=n}(x_i - y_j) by S_rho = d_i S_{rho s_i}, rho(i) < rho(i+1)."""
    rho = _check_perm(rho)
    return SchubertPoly(len(rho), rho, _schubert(rho))


def schubert_word_independence(n: int) -> Report:
    """For every rho in S_n and every ascent i, d_i S_{rho s_i} gives the same S_rho."""
    report = Report(f"double Schubert reduced-word independence, n={n}")
    bad = []
    for rho in itertools.permutations(range(1, n + 1)):
        ref = _schubert(rho)
        for i in range(1, n):
            if rho[i - 1] < rho[i] and _dd_x(i, _schubert(_swap_positions(rho, i))) != ref:
                bad.append((rho, i))
    ident = tuple(range(1, n + 1))
    report.add("S_identity = 1", _schubert(ident) == 1)
    report.add("every descent path gives the same polynomial", not bad, f"first failure {bad[0]}" if bad else "")
    inv = lambda r: sum(1 for a, b in itertools.combinations(r, 2) if a > b)  # noqa: E731
    report.add("degree equals the inversion count",
               all(_schubert(r).is_homogeneous(inv(r)) for r in itertools.permutations(range(1, n + 1))))
    return report


def permutation_sector(rho: Sequence[int]) -> Involution:
    """The involution of 1..2n with pi(i) = n + rho(n+1-i) for i <= n."""
    rho = _check_perm(rho)
    n = len(rho)
    return Involution.from_cycles(2 * n, [(i, n + rho[n - i]) for i in range(1, n + 1)])


def _schubert_specialized(rho: tuple[int, ...], alternate: bool = False) -> Polynomial:
    n = len(rho)
    A, _, Z = gens(2 * n)
    images = {}
    for k in range(1, n + 1):
        images[f"x{k}"] = Z[n + 1 - k] if alternate else A + Z[n + 1 - k]
        images[f"y{k}"] = Z[n + k] - A if alternate else Z[n + k]
    # move into the Brauer ring by expanding over the images
    S = _schubert(rho)
    out = Polynomial.zero(A.vars)
    names = S.vars.names
    for exps, c in S.terms():
        t = Polynomial.constant(A.vars, c)
        for name, e in zip(names, exps):
            if e:
                t = t * images[name] ** e
        out = out + t
    return out


def doubschub_check(jt: JTable, n: int) -> Report:
    """J_pi against the specialized double Schubert polynomial over the permutation sector."""
    if jt.N != 2 * n:
        raise ValueError("table size must be 2n")
    A, _, Z = gens(2 * n)
    frame = Polynomial.one(A.vars)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        frame = frame * (A + Z[i] - Z[j])
    for i, j in itertools.combinations(range(n + 1, 2 * n + 1), 2):
        frame = frame * (A + Z[i] - Z[j])
    report = Report(f"double Schubert identity, n={n}")
    bad, bad_alt = [], []
    for rho in itertools.permutations(range(1, n + 1)):
        pi = permutation_sector(rho)
        main = _schubert_specialized(rho) * frame
        if pi not in jt or jt[pi] != main:
            bad.append(rho)
        if _schubert_specialized(rho, alternate=True) * frame != main:
            bad_alt.append(rho)
    report.add("J_pi = S_rho(A+z_n..A+z_1; z_{n+1}..z_2n) * weight frame", not bad,
               f"first failure rho={bad[0]}" if bad else f"{math.factorial(n)} permutations")
    report.add("alternate substitution x -> z, y -> z - A agrees", not bad_alt,
               f"first failure rho={bad_alt[0]}" if bad_alt else "")
    return report


# -- cross-method and table-wide properties --------------------------------------------


def cross_check(lead: JTable, mel: JTable) -> Report:
    """Leading forms against the Melnikov recursion on link patterns."""
    report = Report(f"leading form vs Melnikov, N={lead.N}")
    bad = [pi.cycle_str() for pi in lead.patterns() if pi not in mel or mel[pi] != lead[pi]]
    report.add("init_B(Psi_pi) = (n^2-n-c, J_pi) on every link pattern", not bad,
               f"first failure {bad[0]}" if bad else f"{len(lead)} patterns")
    return report


def table_properties(jt: JTable) -> Report:
    """Degree bookkeeping, identity entry and positivity at A=1, z=0."""
    from .orbit_poset import dim_orbit

    N = jt.N
    report = Report(f"J table properties ({jt.method}), N={N}")
    top = N * (N - 1) // 2
    bad_deg = [pi.cycle_str() for pi in jt.patterns() if not jt[pi].is_homogeneous(top - dim_orbit(pi))]
    report.add("deg J_pi = N(N-1)/2 - dim", not bad_deg, f"first failure {bad_deg[0]}" if bad_deg else "")
    ident = Involution(range(1, N + 1))
    if ident in jt:
        report.add("J_identity is the full weight product", jt[ident] == identity_J(N))
    point = {"A": Fraction(1), "B": Fraction(0), **{f"z{k}": Fraction(0) for k in range(1, N + 1)}}
    bad_pos = [pi.cycle_str() for pi in jt.patterns() if not jt[pi].evaluate(point) > 0]
    report.add("J_pi(A=1, z=0) is a positive integer", not bad_pos, f"first failure {bad_pos[0]}" if bad_pos else "")
    return report
