"""Exact parameter algebra: critical indices, conjugates and admissibility.

Every index is held as a :class:`fractions.Fraction`, with the singleton
:data:`INF` standing for the index infinity.  Boundary cases of the
admissible ranges are strict or non-strict exactly as in the theorem
statements, so nothing here is ever compared as a float.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "INF",
    "Index",
    "as_index",
    "recip",
    "index_to_float",
    "format_index",
    "InadmissibleError",
    "Condition",
    "Status",
    "Verdict",
    "SideParams",
    "UPParams",
    "RegionPoint",
    "critical_index",
    "conjugate",
    "localization_exponent",
    "check_thm1",
    "thm1_admissible",
    "thm1_exponents",
    "cor1_params",
    "growth_exponent_from_thm1",
    "check_thm2",
    "thm2_admissible",
    "check_cor2",
    "cor2_admissible",
    "check_cor3",
    "cor3_admissible",
    "check_lp_heisenberg",
    "check_moment_growth",
    "schrodinger_growth_exponent",
    "wave_growth_exponent",
    "check_thm5",
    "thm5_admissible",
    "check_nls",
    "delta_n_vertices",
    "delta_n_contains",
    "heat_region_contains",
    "eta_conditions",
    "eta_condition_check",
]


class _Infinity:
    """The extended-real index value infinity (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Infinity, ())

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash(math.inf)

    def __float__(self):
        return math.inf

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        _check_comparable(other)
        return False

    def __le__(self, other):
        _check_comparable(other)
        return other is self

    def __gt__(self, other):
        _check_comparable(other)
        return other is not self

    def __ge__(self, other):
        _check_comparable(other)
        return True


def _check_comparable(other):
    if not (other is INF or isinstance(other, (int, Fraction))):
        raise TypeError(f"cannot compare INF with {type(other).__name__}")


INF = _Infinity()

Index = Union[Fraction, _Infinity]


def as_index(x) -> Index:
    """Coerce ``x`` to an exact index.

    Accepts ints, Fractions, floats (read through their shortest repr, so
    ``0.1`` becomes ``1/10``), strings such as ``"3/2"`` or ``"inf"``, and
    :data:`INF` itself.
    """
    if x is INF:
        return INF
    if isinstance(x, bool):
        raise TypeError("booleans are not indices")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, numbers.Real) and not isinstance(x, Fraction):
        x = float(x)
        if math.isnan(x):
            raise ValueError("NaN is not an index")
        if math.isinf(x):
            if x > 0:
                return INF
            raise ValueError("negative infinity is not an index")
        return Fraction(repr(x))
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "+inf", "oo", "∞"):
            return INF
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as an index")


def recip(x: Index) -> Fraction:
    """1/x, with 1/INF = 0."""
    if x is INF:
        return Fraction(0)
    if x == 0:
        raise ZeroDivisionError("index 0 has no reciprocal")
    return 1 / x


def index_to_float(x: Index) -> float:
    return math.inf if x is INF else float(x)


def format_index(x: Index) -> str:
    if x is INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class InadmissibleError(ValueError):
    """Raised when parameters violate a theorem's hypotheses."""


# ---------------------------------------------------------------------------
# verdicts


_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
}


@dataclass(frozen=True)
class Condition:
    """One inequality ``lhs op rhs`` taken verbatim from a hypothesis."""

    label: str
    lhs: Index
    op: str
    rhs: Index

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)

    def describe(self) -> str:
        verdict = "ok" if self.holds else "VIOLATED"
        return (
            f"{self.label}: {format_index(self.lhs)} {self.op} "
            f"{format_index(self.rhs)}  [{verdict}]"
        )


class Status(enum.Enum):
    ADMISSIBLE = "ADMISSIBLE"
    VIOLATED = "VIOLATED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an admissibility check.

    Truthy exactly when every condition holds and no open endpoint was hit.
    """

    conditions: tuple[Condition, ...]
    unknown: tuple[str, ...] = ()

    @property
    def status(self) -> Status:
        if any(not c.holds for c in self.conditions):
            return Status.VIOLATED
        if self.unknown:
            return Status.UNKNOWN
        return Status.ADMISSIBLE

    @property
    def ok(self) -> bool:
        return self.status is Status.ADMISSIBLE

    @property
    def violations(self) -> list[str]:
        return [c.label for c in self.conditions if not c.holds]

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        out = [c.describe() for c in self.conditions]
        out.extend(f"{u}  [UNKNOWN]" for u in self.unknown)
        return out


# ---------------------------------------------------------------------------
# value types


def _positive(name, x, allow_inf):
    x = as_index(x)
    if x is INF:
        if not allow_inf:
            raise ValueError(f"{name} must be finite")
        return x
    if x <= 0:
        raise ValueError(f"{name} must be positive, got {format_index(x)}")
    return x


@dataclass(frozen=True)
class SideParams:
    """Moment parameters (n, a, b, k) of one side of the uncertainty product."""

    n: int
    a: Index
    b: Index
    k: Index

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", _positive("a", self.a, True))
        object.__setattr__(self, "b", _positive("b", self.b, False))
        object.__setattr__(self, "k", _positive("k", self.k, True))

    @property
    def critical(self) -> Fraction:
        return critical_index(self.n, self.a, self.b)

    @property
    def exponent(self) -> Fraction:
        return localization_exponent(self)

    def to_dict(self) -> dict:
        return {k: format_index(getattr(self, k)) for k in ("a", "b", "k")} | {"n": self.n}


@dataclass(frozen=True)
class UPParams:
    """Full parameter tuple of the abstract uncertainty principle."""

    side1: SideParams
    side2: SideParams
    q1: Index
    q2: Index
    m1: Index
    m2: Index
    C1: float = 1.0
    C2: float = 1.0

    def __post_init__(self):
        for name in ("q1", "q2"):
            object.__setattr__(self, name, _positive(name, getattr(self, name), False))
        for name in ("m1", "m2"):
            object.__setattr__(self, name, _positive(name, getattr(self, name), True))
        if not (self.C1 > 0 and self.C2 > 0):
            raise ValueError("transfer constants must be positive")

    def swapped(self) -> "UPParams":
        return UPParams(self.side2, self.side1, self.q2, self.q1, self.m2, self.m1,
                        self.C1, self.C2)


@dataclass(frozen=True)
class RegionPoint:
    """A point (1/p, 1/q) of the unit square."""

    inv_p: Fraction
    inv_q: Fraction

    def __post_init__(self):
        for name in ("inv_p", "inv_q"):
            v = as_index(getattr(self, name))
            if v is INF or not (0 <= v <= 1):
                raise ValueError(f"{name} must lie in [0, 1]")
            object.__setattr__(self, name, v)


# ---------------------------------------------------------------------------
# basic algebra


def critical_index(n: int, a, b) -> Fraction:
    """n / (n/a + b), the index below which moment lower bounds fail."""
    a, b = as_index(a), as_index(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    if b is INF or b <= 0:
        raise ValueError("b must be a positive real")
    return Fraction(n) / (n * recip(a) + b)


def conjugate(p) -> Index:
    """Hölder conjugate p' with 1/p + 1/p' = 1, for p in [1, inf]."""
    p = as_index(p)
    if p is INF:
        return Fraction(1)
    if p < 1:
        raise ValueError(f"conjugate requires p >= 1, got {format_index(p)}")
    if p == 1:
        return INF
    return p / (p - 1)


def localization_exponent(side: SideParams) -> Fraction:
    """1/a + b/n - 1/k, the scaling weight of one localization factor."""
    return recip(side.a) + side.b / side.n - recip(side.k)


# ---------------------------------------------------------------------------
# abstract theorem


def check_thm1(p: UPParams) -> Verdict:
    conds = []
    for i, side, q, m in ((1, p.side1, p.q1, p.m1), (2, p.side2, p.q2, p.m2)):
        c = side.critical
        conds += [
            Condition(f"k_{i} > critical index", c, "<", side.k),
            Condition(f"k_{i} <= m_{i}", side.k, "<=", m),
            Condition(f"q_{i} > critical index", c, "<", q),
            Condition(f"q_{i} < m_{i}", q, "<", m),
        ]
    return Verdict(tuple(conds))


thm1_admissible = check_thm1


def thm1_exponents(p: UPParams) -> tuple[Fraction, Fraction, Fraction]:
    """Exponents (e1, e2, rhs) of the two factors and of C2/C1."""
    verdict = check_thm1(p)
    if not verdict:
        raise InadmissibleError("; ".join(verdict.violations))
    E1 = localization_exponent(p.side1)
    E2 = localization_exponent(p.side2)
    e1 = (recip(p.q1) - recip(p.m1)) * E2
    e2 = (recip(p.q2) - recip(p.m2)) * E1
    return e1, e2, E1 * E2


def cor1_params(side1: SideParams, side2: SideParams, p1, p2) -> UPParams:
    """Transfer indices for a pair of Hausdorff-Young type bounds.

    ``||f2||_{p1'} <~ ||f1||_{p1}`` and ``||f2||_{p2} >~ ||f1||_{p2'}`` give
    q1 = p1, m2 = p1', q2 = p2, m1 = p2'.
    """
    p1, p2 = as_index(p1), as_index(p2)
    for i, side, pi in ((1, side1, p1), (2, side2, p2)):
        if pi is INF or not (1 <= pi < 2) or not (side.critical < pi):
            raise InadmissibleError(
                f"p_{i} = {format_index(pi)} must lie in [1,2) above the critical index"
            )
    return UPParams(side1, side2, q1=p1, q2=p2, m1=conjugate(p2), m2=conjugate(p1))


def growth_exponent_from_thm1(p: UPParams, time_exponent) -> Fraction:
    """Growth rate of the second factor when C2/C1 scales like |t|**time_exponent.

    With the first factor frozen, ``X**e1 * Y**e2 >~ |t|**(time_exponent * rhs)``
    forces ``Y >~ |t|**(time_exponent * rhs / e2)``.
    """
    _, e2, rhs = thm1_exponents(p)
    return Fraction(time_exponent) * rhs / e2


# ---------------------------------------------------------------------------
# Fourier-side corollaries


def _side_conditions(i, c_own, k, c_other):
    conds = [
        Condition(f"critical index of side {i} < 2", c_own, "<", Fraction(2)),
        Condition(f"k_{i} > critical index", c_own, "<", k),
    ]
    if c_other >= 1:
        conds.append(
            Condition(f"k_{i} < conjugate of opposite critical index", k, "<",
                      conjugate(c_other))
        )
    return conds


def check_thm2(n: int, side1: SideParams, side2: SideParams) -> Verdict:
    """Ranges of k_1, k_2 for the Fourier uncertainty product.

    The same ranges govern the Schrödinger and wave moment theorems.
    """
    if side1.n != n or side2.n != n:
        raise ValueError("both sides must live in dimension n")
    c1, c2 = side1.critical, side2.critical
    conds = _side_conditions(1, c1, side1.k, c2) + _side_conditions(2, c2, side2.k, c1)
    return Verdict(tuple(conds))


def thm2_admissible(n: int, side1: SideParams, side2: SideParams) -> bool:
    return check_thm2(n, side1, side2).ok


def check_cor2(n, theta, phi, p, q, r) -> Verdict:
    theta, phi = as_index(theta), as_index(phi)
    p, q, r = as_index(p), as_index(q), as_index(r)
    floor = recip(min(Fraction(2), r))
    conds = [
        Condition("theta/n > 1/min(2,r) - 1/p", floor - recip(p), "<", theta / n),
        Condition("phi/n > 1/min(2,r) - 1/q", floor - recip(q), "<", phi / n),
    ]
    for label, idx, w in (("p", p, theta), ("q", q, phi)):
        c = critical_index(n, idx, w)
        if c >= 1:
            conds.append(Condition(f"r < conjugate of critical index ({label})", r, "<",
                                   conjugate(c)))
    return Verdict(tuple(conds))


def cor2_admissible(n, theta, phi, p, q, r) -> bool:
    return check_cor2(n, theta, phi, p, q, r).ok


def check_cor3(n, theta, p, q) -> Verdict:
    q = as_index(q)
    c = critical_index(n, p, theta)
    conds = [Condition("critical index < min(2, q)", c, "<", min(Fraction(2), q))]
    if c >= 1:
        conds.append(Condition("q < conjugate of critical index", q, "<", conjugate(c)))
    return Verdict(tuple(conds))


def cor3_admissible(n, theta, p, q) -> bool:
    return check_cor3(n, theta, p, q).ok


def check_lp_heisenberg(n: int, p) -> Verdict:
    """The L^p Heisenberg product (a = k = p, b = 1 on both sides).

    Holds for p in (0, 2n/(n-1)) and fails on the open range
    (2n/(n-1), inf); the endpoints 2n/(n-1) and inf are reported UNKNOWN.
    """
    p = _positive("p", p, True)
    threshold = INF if n == 1 else Fraction(2 * n, n - 1)
    if p == threshold or p is INF:
        return Verdict((), (f"p = {format_index(p)} is an open endpoint of (0, 2n/(n-1))",))
    return Verdict((Condition("p < 2n/(n-1)", p, "<", threshold),))


def check_moment_growth(n: int, a, b) -> Verdict:
    return Verdict((Condition("critical index < 2", critical_index(n, a, b), "<",
                              Fraction(2)),))


def schrodinger_growth_exponent(n: int, a, b) -> Fraction:
    """n(1/a + b/n - 1/2): moment growth rate of free Schrödinger flows."""
    return n * (recip(as_index(a)) + as_index(b) / n - Fraction(1, 2))


def wave_growth_exponent(n: int, a, b) -> Fraction:
    """(n-1)(1/a + b/n - 1/2): lower growth rate of projected wave energy moments."""
    return (n - 1) * (recip(as_index(a)) + as_index(b) / n - Fraction(1, 2))


# ---------------------------------------------------------------------------
# spacetime moments


def check_thm5(n: int, a1, b1, k1, a2, b2, k2) -> Verdict:
    """Hypotheses of the spacetime moment theorems (n_1 = n, n_2 = n + 1)."""
    k1 = _positive("k1", k1, False)
    k2 = _positive("k2", k2, False)
    c1 = critical_index(n, a1, b1)
    c2 = critical_index(n + 1, a2, b2)
    return Verdict((
        Condition("k_1 > critical index", c1, "<", k1),
        Condition("k_1 <= 2", k1, "<=", Fraction(2)),
        Condition("critical index of side 2 < min(2, k_2)", c2, "<",
                  min(Fraction(2), k2)),
        Condition("k_2 < (2n+4)/n", k2, "<", Fraction(2 * n + 4, n)),
    ))


def thm5_admissible(n, a1, b1, k1, a2, b2, k2) -> bool:
    return check_thm5(n, a1, b1, k1, a2, b2, k2).ok


def check_nls(n: int, p, m) -> Verdict:
    """Ranges of (p, m) for the small-data nonlinear Schrödinger result."""
    p, m = as_index(p), as_index(m)
    conds = [Condition("p > 2", Fraction(2), "<", p)]
    if n >= 3:
        conds.append(Condition("p < 2n/(n-2)", p, "<", Fraction(2 * n, n - 2)))
    elif n == 2:
        conds.append(Condition("p < inf", p, "<", INF))
    conds.append(Condition("m > 1", Fraction(1), "<", m))
    conds.append(Condition("m <= 1 + 4/n", m, "<=", 1 + Fraction(4, n)))
    if p is not INF:
        conds.append(Condition("m <= p - 1", m, "<=", p - 1))
    return Verdict(tuple(conds))


def delta_n_vertices(n: int):
    """Vertices A, B, C of the Strichartz-interpolation triangle."""
    A = (Fraction(1, 2), Fraction(1, 2))
    B = (Fraction(1, 2), Fraction(n, 2 * n + 4))
    C = (Fraction(n + 2, 2 * n + 2), Fraction(n, 2 * n + 2))
    return A, B, C


def _cross(o, u, v):
    return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])


def delta_n_contains(n: int, pt: RegionPoint) -> bool:
    """Closed triangle ABC minus the vertex C and the open edge BC."""
    A, B, C = delta_n_vertices(n)
    P = (pt.inv_p, pt.inv_q)
    # ABC is counter-clockwise; interior has all three crosses >= 0
    ab, bc, ca = _cross(A, B, P), _cross(B, C, P), _cross(C, A, P)
    inside = ab >= 0 and bc >= 0 and ca >= 0
    if not inside:
        return False
    if P == C:
        return False
    if bc == 0 and P != B:
        return False
    return True


def heat_region_contains(n: int, p, q) -> bool:
    """1 <= p <= q < (n+2)/n * p, or p = q = inf."""
    p, q = as_index(p), as_index(q)
    if p is INF:
        return q is INF
    if q is INF:
        return False
    return 1 <= p <= q < Fraction(n + 2, n) * p


def eta_conditions(sigma) -> tuple[bool, bool]:
    """(integrable, dyadic sup bounded) for eta(t) = (1 + |t|)**(-sigma)."""
    sigma = as_index(sigma)
    if sigma is INF:
        return True, True
    return sigma > 1, sigma >= 1


def eta_condition_check(sigma) -> bool:
    integrable, bounded = eta_conditions(sigma)
    return integrable and bounded
