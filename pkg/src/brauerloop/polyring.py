"""Exact multivariate polynomials over the integers.

The main ring is Z[A, B, z_1, ..., z_N] together with the periodic convention
z_{i+N} = z_i + A - B, so that the weight of every matrix entry M_{ij} can be
written A + z_i - z_j.  The difference A - B is what the qKZ literature calls
epsilon; it is never stored as a separate variable.

Other variable sets (Schubert x/y variables, the R-matrix spectral parameters,
the Brauer parameter beta) use the same :class:`Polynomial` class with a
different :class:`VarSpec`.

Monomials are stored packed into a single Python int, ``BITS`` bits per
variable, which makes monomial multiplication a plain integer addition.  The
public surface only ever exposes exponent tuples.
"""

from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import DivisionError, PoleError

__all__ = [
    "VarSpec",
    "Polynomial",
    "RationalFunction",
    "gens",
    "zvar",
    "parse_polynomial",
    "substitute",
    "tau",
    "sigma",
    "divided_difference",
    "exact_div",
    "init_B",
    "evaluate",
    "monomial_key",
]

BITS = 8
MASK = (1 << BITS) - 1
MAX_EXPONENT = MASK

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class VarSpec:
    """An ordered list of variable names.

    ``N`` is set only for the Brauer ring (A, B, z_1, ..., z_N); the periodic
    operators (tau, sigma, divided differences) require it.
    """

    names: tuple[str, ...]
    N: int | None = None

    @staticmethod
    @lru_cache(maxsize=None)
    def brauer(N: int) -> "VarSpec":
        if N < 1:
            raise ValueError(f"N must be positive, got {N}")
        return VarSpec(("A", "B") + tuple(f"z{i}" for i in range(1, N + 1)), N)

    @staticmethod
    def generic(names: Iterable[str]) -> "VarSpec":
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        return VarSpec(names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}; ring has {self.names}") from None

    def z_index(self, i: int) -> int:
        """Index of z_i for 1 <= i <= N."""
        if self.N is None:
            raise ValueError("periodic operations need the Brauer variable set")
        if not 1 <= i <= self.N:
            raise ValueError(f"z index {i} outside 1..{self.N}")
        return i + 1


def _pack(exps: Iterable[int]) -> int:
    m = 0
    for k, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range 0..{MAX_EXPONENT}")
        m |= e << (BITS * k)
    return m


def _unpack(m: int, nvars: int) -> tuple[int, ...]:
    return tuple((m >> (BITS * k)) & MASK for k in range(nvars))


def _mdeg(m: int) -> int:
    d = 0
    while m:
        d += m & MASK
        m >>= BITS
    return d


def monomial_key(exps: tuple[int, ...]) -> tuple:
    """Graded-lex sort key, variables ordered A < B < z_1 < ... < z_N."""
    return (sum(exps), exps[::-1])


class Polynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("vars", "_t", "_deg")

    def __init__(self, vars: VarSpec, terms: Mapping[tuple[int, ...], int] | None = None):
        self.vars = vars
        t: dict[int, int] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != vars.nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {vars.names}")
            c = int(c)
            if c:
                m = _pack(exps)
                c += t.get(m, 0)
                if c:
                    t[m] = c
                else:
                    del t[m]
        self._t = t
        self._deg = None

    @classmethod
    def _make(cls, vars: VarSpec, packed: dict[int, int]) -> "Polynomial":
        p = object.__new__(cls)
        p.vars = vars
        p._t = packed
        p._deg = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: VarSpec) -> "Polynomial":
        return cls._make(vars, {})

    @classmethod
    def constant(cls, vars: VarSpec, c: int) -> "Polynomial":
        return cls._make(vars, {0: int(c)} if c else {})

    @classmethod
    def one(cls, vars: VarSpec) -> "Polynomial":
        return cls.constant(vars, 1)

    @classmethod
    def var(cls, vars: VarSpec, name: str) -> "Polynomial":
        return cls._make(vars, {1 << (BITS * vars.index(name)): 1})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield (exponents, coefficient) in canonical order, leading term first."""
        n = self.vars.nvars
        items = [(_unpack(m, n), c) for m, c in self._t.items()]
        items.sort(key=lambda it: monomial_key(it[0]), reverse=True)
        return iter(items)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        n = self.vars.nvars
        return {_unpack(m, n): c for m, c in self._t.items()}

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((_mdeg(m) for m in self._t), default=-1)
        return self._deg

    def degree_in(self, name: str) -> int:
        k = self.vars.index(name)
        return max(((m >> (BITS * k)) & MASK for m in self._t), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {_mdeg(m) for m in self._t}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(f"ring mismatch: {self.vars.names} vs {other.vars.names}")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for m, c in other._t.items():
            c += t.get(m, 0)
            if c:
                t[m] = c
            else:
                del t[m]
        return Polynomial._make(self.vars, t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self.vars, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for m, c in other._t.items():
            c = t.get(m, 0) - c
            if c:
                t[m] = c
            else:
                del t[m]
        return Polynomial._make(self.vars, t)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self.vars)
            return Polynomial._make(self.vars, {m: c * other for m, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return Polynomial.zero(self.vars)
        if self.degree() + other.degree() > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed-exponent range")
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, int] = {}
        get = t.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                c = get(m, 0) + ca * cb
                if c:
                    t[m] = c
                else:
                    del t[m]
        return Polynomial._make(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self._t.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for exps, c in self.terms():
            factors = []
            for name, e in zip(self.vars.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, s))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, s in out[1:]:
            text += f" {sign} {s}"
        return text

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        terms = [{"exp": list(e), "coeff": str(c)} for e, c in self.terms()]
        if self.vars.N is not None:
            return {"N": self.vars.N, "terms": terms}
        return {"vars": list(self.vars.names), "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        if "N" in data:
            vars = VarSpec.brauer(int(data["N"]))
        else:
            vars = VarSpec.generic(data["vars"])
        return cls(vars, {tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]})

    # -- convenience --------------------------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        return evaluate(self, point)

    def subs(self, images: Mapping[str, "Polynomial | int"]) -> "Polynomial":
        return substitute(self, images)


class _ZVars:
    """z_i for every integer i, using z_{i+N} = z_i + A - B."""

    def __init__(self, vars: VarSpec):
        self.vars = vars

    def __getitem__(self, i: int) -> Polynomial:
        return zvar(self.vars, i)


def gens(N: int) -> tuple[Polynomial, Polynomial, _ZVars]:
    """Return (A, B, Z) for the Brauer ring of size N; ``Z[i]`` is z_i for any integer i."""
    vars = VarSpec.brauer(N)
    return Polynomial.var(vars, "A"), Polynomial.var(vars, "B"), _ZVars(vars)


def zvar(vars: VarSpec, i: int) -> Polynomial:
    N = vars.N
    if N is None:
        raise ValueError("periodic z variables need the Brauer variable set")
    k, r = divmod(i - 1, N)
    z = Polynomial.var(vars, f"z{r + 1}")
    if k:
        z = z + (Polynomial.var(vars, "A") - Polynomial.var(vars, "B")) * k
    return z


# -- parsing -----------------------------------------------------------------

_NAME_RE = re.compile(r"^z_?(\d+)$")


def parse_polynomial(text: str, vars: VarSpec) -> Polynomial:
    """Parse an expression such as ``(A+z_1-z_2)*(2A+z1-z4)^2``.

    ``eps`` (or ``epsilon``) is accepted as an alias for A - B.  In the Brauer
    ring ``z_i`` may use any integer index, reduced with the periodic convention.
    """
    src = text.replace("^", "**").replace("ε", "eps")
    # implicit multiplication "2A" -> "2*A"
    src = re.sub(r"(\d)\s*([A-Za-z(])", r"\1*\2", src)
    src = re.sub(r"\)\s*\(", ")*(", src)
    tree = ast.parse(src, mode="eval")

    def name(n: str) -> Polynomial:
        if n in ("eps", "epsilon"):
            return Polynomial.var(vars, "A") - Polynomial.var(vars, "B")
        m = _NAME_RE.match(n)
        if m and vars.N is not None:
            return zvar(vars, int(m.group(1)))
        if m and f"z{m.group(1)}" in vars.names:
            return Polynomial.var(vars, f"z{m.group(1)}")
        return Polynomial.var(vars, n)

    def walk(node) -> Polynomial:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(vars, node.value)
        if isinstance(node, ast.Name):
            return name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return walk(node.left) ** node.right.value
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    return walk(tree)


# -- substitution and the periodic automorphisms -----------------------------


def substitute(p: Polynomial, images: Mapping[str, "Polynomial | int"]) -> Polynomial:
    """Apply the ring homomorphism sending each named variable to its image.

    Variables absent from ``images`` are fixed.  Images must live in the same
    ring as ``p`` (integers are promoted).
    """
    vars = p.vars
    n = vars.nvars
    imgs: list[Polynomial] = []
    for k, name in enumerate(vars.names):
        img = images.get(name)
        if img is None:
            img = Polynomial._make(vars, {1 << (BITS * k): 1})
        elif isinstance(img, int):
            img = Polynomial.constant(vars, img)
        elif img.vars != vars:
            raise ValueError("substitution image lives in a different ring")
        imgs.append(img)

    # Pure renamings (image = single variable, coefficient 1) are applied by
    # moving exponent fields; everything else is expanded group by group.
    rename: dict[int, int] = {}
    general: list[int] = []
    for k, img in enumerate(imgs):
        if len(img._t) == 1:
            (m, c), = img._t.items()
            if c == 1 and m and _mdeg(m) == 1:
                rename[k] = m
                continue
        general.append(k)

    groups: dict[tuple[int, ...], dict[int, int]] = {}
    for m, c in p._t.items():
        key = tuple((m >> (BITS * k)) & MASK for k in general)
        newm = 0
        for k, target in rename.items():
            e = (m >> (BITS * k)) & MASK
            if e:
                newm += e * target
        g = groups.setdefault(key, {})
        g[newm] = g.get(newm, 0) + c

    powers: dict[tuple[int, int], Polynomial] = {}

    def power(k: int, e: int) -> Polynomial:
        if (k, e) not in powers:
            powers[k, e] = imgs[k] ** e
        return powers[k, e]

    acc: dict[int, int] = {}
    for key, rest in groups.items():
        factor = Polynomial.one(vars)
        for k, e in zip(general, key):
            if e:
                factor = factor * power(k, e)
        rest = {m: c for m, c in rest.items() if c}
        for mf, cf in factor._t.items():
            for mr, cr in rest.items():
                m = mf + mr
                c = acc.get(m, 0) + cf * cr
                if c:
                    acc[m] = c
                else:
                    acc.pop(m, None)
    return Polynomial._make(vars, acc)


def _require_brauer(p: Polynomial) -> int:
    if p.vars.N is None:
        raise ValueError("periodic operators need the Brauer variable set")
    return p.vars.N


def _swap(p: Polynomial, a: int, b: int) -> Polynomial:
    sa, sb = BITS * a, BITS * b
    out = {}
    for m, c in p._t.items():
        ea, eb = (m >> sa) & MASK, (m >> sb) & MASK
        out[m + ((eb - ea) << sa) + ((ea - eb) << sb) if ea != eb else m] = c
    return Polynomial._make(p.vars, out)


def tau(i: int, p: Polynomial) -> Polynomial:
    """Exchange z_i and z_{i+1}; for i = N this is z_N <-> z_1 + A - B."""
    N = _require_brauer(p)
    if not 1 <= i <= N:
        raise ValueError(f"tau index {i} outside 1..{N}")
    if i < N:
        return _swap(p, i + 1, i + 2)
    vars = p.vars
    eps = Polynomial.var(vars, "A") - Polynomial.var(vars, "B")
    return substitute(p, {"z1": zvar(vars, N) - eps, f"z{N}": zvar(vars, 1) + eps})


def sigma(p: Polynomial, power: int = 1) -> Polynomial:
    """Shift z_i -> z_{i+1} (periodically); ``power`` may be negative."""
    N = _require_brauer(p)
    vars = p.vars
    return substitute(p, {f"z{i}": zvar(vars, i + power) for i in range(1, N + 1)})


def divided_difference(i: int, p: Polynomial) -> Polynomial:
    """(p - tau_i p) / (z_i - z_{i+1}), with z_{N+1} = z_1 + A - B."""
    N = _require_brauer(p)
    num = p - tau(i, p)
    if not num:
        return num
    den = zvar(p.vars, i) - zvar(p.vars, i + 1)
    try:
        return exact_div(num, den)
    except DivisionError as exc:  # pragma: no cover - would mean an arithmetic bug
        raise AssertionError(f"divided difference at i={i} was not exact") from exc


# -- exact division ----------------------------------------------------------


def _split(t: dict[int, int], k: int) -> dict[int, dict[int, int]]:
    """Group packed terms by their exponent in variable k (which is removed)."""
    s = BITS * k
    out: dict[int, dict[int, int]] = {}
    for m, c in t.items():
        e = (m >> s) & MASK
        out.setdefault(e, {})[m - (e << s)] = c
    return out


def _exact_div_raw(t: dict[int, int], q: dict[int, int], vars: VarSpec) -> dict[int, int]:
    if not t:
        return {}
    if len(q) == 1 and 0 in q:
        c = q[0]
        out = {}
        for m, a in t.items():
            d, r = divmod(a, c)
            if r:
                raise DivisionError("coefficient not divisible by constant divisor")
            out[m] = d
        return out
    # main variable: the highest-index variable occurring in q
    k = max(k for k in range(vars.nvars) if any((m >> (BITS * k)) & MASK for m in q))
    s = BITS * k
    P = _split(t, k)
    Q = _split(q, k)
    dq = max(Q)
    lc = Q[dq]
    quot: dict[int, int] = {}
    while P:
        d = max(P)
        if d < dq:
            raise DivisionError("nonzero remainder")
        lead = P.pop(d)
        c = _exact_div_raw(lead, lc, vars)
        shift = (d - dq) << s
        for m, a in c.items():
            quot[m + shift] = a
        for e, qc in Q.items():
            if e == dq:
                continue
            target = P.setdefault(d - dq + e, {})
            for mq, aq in qc.items():
                for mc, ac in c.items():
                    m = mq + mc
                    v = target.get(m, 0) - aq * ac
                    if v:
                        target[m] = v
                    else:
                        target.pop(m, None)
            if not target:
                del P[d - dq + e]
    return quot


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with p = q * r, raising :class:`DivisionError` if q does not divide p."""
    q = p._coerce(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    return Polynomial._make(p.vars, _exact_div_raw(p._t, q._t, p.vars))


def init_B(p: Polynomial, name: str = "B") -> tuple[int, Polynomial]:
    """B-leading form: (max B-degree, sum of those terms with the B power removed)."""
    if not p:
        raise ValueError("init_B of the zero polynomial")
    k = p.vars.index(name)
    parts = _split(p._t, k)
    top = max(parts)
    return top, Polynomial._make(p.vars, parts[top])


# -- evaluation and rational functions ---------------------------------------


def _eval_poly(p: Polynomial, point: Mapping[str, Scalar]) -> Fraction:
    vals = []
    for name in p.vars.names:
        if name not in point:
            # variables not occurring in p may be omitted
            if p.degree_in(name) > 0:
                raise KeyError(f"no value given for variable {name!r}")
            vals.append(Fraction(0))
        else:
            vals.append(Fraction(point[name]))
    # clear denominators so the inner loop is integer arithmetic:
    # value_k = num_k / L, and a term of degree d is scaled by L**d
    L = math.lcm(*(v.denominator for v in vals)) if vals else 1
    nums = [int(v * L) for v in vals]
    cache: list[dict[int, int]] = [{1: a} for a in nums]
    by_degree: dict[int, int] = {}
    for m, c in p._t.items():
        term = c
        d = 0
        k = 0
        while m:
            e = m & MASK
            if e:
                pw = cache[k]
                if e not in pw:
                    pw[e] = nums[k] ** e
                term *= pw[e]
                d += e
            m >>= BITS
            k += 1
        by_degree[d] = by_degree.get(d, 0) + term
    return sum((Fraction(t, L**d) for d, t in by_degree.items()), Fraction(0))


class RationalFunction:
    """A quotient num/den of polynomials, kept unreduced.

    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | int = 1):
        if isinstance(den, int):
            den = Polynomial.constant(num.vars, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.vars != den.vars:
            raise ValueError("numerator and denominator live in different rings")
        self.num = num
        self.den = den

    @property
    def vars(self) -> VarSpec:
        return self.num.vars

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int)):
            return RationalFunction(self.num._coerce(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        return evaluate(self, point)

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"


def evaluate(p: "Polynomial | RationalFunction", point: Mapping[str, Scalar]) -> Fraction:
    """Exact value at a rational point; raises :class:`PoleError` at a pole."""
    if isinstance(p, RationalFunction):
        d = _eval_poly(p.den, point)
        if d == 0:
            raise PoleError(f"denominator {p.den} vanishes at {dict(point)}")
        return _eval_poly(p.num, point) / d
    return _eval_poly(p, point)
