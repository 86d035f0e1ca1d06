"""Self-similar systems, limit sets in the simplex, and the functional mu_T.

For a proper self-similar system with ratio ``rho`` the limit set
``F(P)`` is one period of the curve ``q -> P(q)/q``.  On each affine piece
``[w_i, w_{i+1}]`` that curve is the straight segment joining the
normalized endpoint values, so ``K(P)`` is the convex hull of the
normalized division points of one period and the infimum of each linear
form over ``K(P)`` is attained at one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import (
    DimensionMismatch,
    EmptyWindow,
    InvalidSystem,
    NotProper,
    NotSorted,
    OutOfDomain,
    ZeroSum,
)
from .lp import convex_weights
from .paths import GENERALIZED, PLPath, SystemClass, division_numbers, validate_system
from .rational import as_vector, dot, format_rational

ZERO = Fraction(0)


@dataclass(frozen=True)
class SelfSimilarSystem:
    """A path on ``[q_0, rho q_0]`` extended by ``P(rho q) = rho P(q)``."""

    base: PLPath
    ratio: Fraction
    cls: SystemClass = GENERALIZED

    def __post_init__(self):
        rho = Fraction(self.ratio)
        object.__setattr__(self, "ratio", rho)
        if rho <= 1:
            raise ValueError("self-similar ratio must exceed 1")
        q0 = self.base.start
        if q0 <= 0:
            raise ValueError("self-similar base must start at q_0 > 0")
        if self.base.end != rho * q0:
            raise ValueError(f"base ends at {self.base.end}, expected rho*q_0 = {rho * q0}")
        if self.base.values[-1] != tuple(rho * x for x in self.base.values[0]):
            raise ValueError("base value at rho*q_0 is not rho times the value at q_0")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def start(self) -> Fraction:
        return self.base.start

    @property
    def proper(self) -> bool:
        return self.base.values[-1][0] > 0

    def __call__(self, q):
        return self_similar_eval(self, q)

    def unroll(self, periods: int = 1) -> PLPath:
        """The system on ``[q_0, rho**periods * q_0]`` as a plain path."""
        if periods < 1:
            raise ValueError("periods must be >= 1")
        points = list(zip(self.base.breakpoints, self.base.values))
        scale = Fraction(1)
        for _ in range(periods - 1):
            scale *= self.ratio
            points.extend(
                (scale * q, tuple(scale * x for x in v))
                for q, v in zip(self.base.breakpoints[1:], self.base.values[1:])
            )
        return PLPath.from_points(points)

    def rebased(self, q1) -> "SelfSimilarSystem":
        """The same system described by the period ``[q1, rho q1]``."""
        q1 = Fraction(q1)
        if q1 < self.start:
            raise OutOfDomain(f"{q1} precedes q_0={self.start}")
        rho = self.ratio
        k = 0
        hi = self.start * rho
        while q1 * rho > hi:
            hi *= rho
            k += 1
        path = self.unroll(k + 1).restrict(q1, q1 * rho)
        return SelfSimilarSystem(path, rho, self.cls)

    def validate(self):
        """Validate two unrolled periods, which covers the junction at rho*q_0."""
        return validate_system(self.unroll(2), self.cls)


def self_similar_eval(sys: SelfSimilarSystem, q) -> tuple:
    q = Fraction(q)
    if q < sys.start:
        raise OutOfDomain(f"q={q} precedes q_0={sys.start}")
    rho = sys.ratio
    top = sys.start * rho
    scale = Fraction(1)
    while q >= top * scale:
        scale *= rho
    v = sys.base(q / scale)
    return tuple(scale * x for x in v)


def evaluate(system, q) -> tuple:
    """Evaluate a PLPath or a SelfSimilarSystem."""
    return system(q)


# -- linear maps and simplex points ------------------------------------------


@dataclass(frozen=True)
class LinearMap:
    rows: tuple

    def __post_init__(self):
        rows = tuple(as_vector(r) for r in self.rows)
        if not rows:
            raise ValueError("a linear map needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("rows have inconsistent lengths")
        if any(all(x == 0 for x in r) for r in rows):
            raise ValueError("every row of a linear map must be nonzero")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __call__(self, x) -> tuple:
        return tuple(dot(r, x) for r in self.rows)

    def scaled(self, c) -> "LinearMap":
        c = Fraction(c)
        return LinearMap(tuple(tuple(c * a for a in r) for r in self.rows))


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the closed simplex ``0 <= x_1 <= ... <= x_n, sum x = 1``."""

    coordinates: tuple

    def __post_init__(self):
        x = as_vector(self.coordinates)
        if x[0] < 0 or any(a > b for a, b in zip(x, x[1:])):
            raise NotSorted(f"{x} is not nonnegative and sorted")
        if sum(x, ZERO) != 1:
            raise ValueError(f"{x} does not sum to 1")
        object.__setattr__(self, "coordinates", x)

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def __str__(self):
        return "(" + ", ".join(format_rational(x) for x in self.coordinates) + ")"


def simplex_vertex(n: int, i: int) -> SimplexPoint:
    """``E_i``: the last ``n - i + 1`` coordinates equal ``1/(n - i + 1)``."""
    if not 1 <= i <= n:
        raise ValueError("vertex index out of range")
    w = Fraction(1, n - i + 1)
    return SimplexPoint(tuple(ZERO if j < i - 1 else w for j in range(n)))


def normalize(x: Sequence) -> SimplexPoint:
    x = as_vector(x)
    if x[0] < 0 or any(a > b for a, b in zip(x, x[1:])):
        raise NotSorted(f"{x} is not nonnegative and sorted")
    s = sum(x, ZERO)
    if s == 0:
        raise ZeroSum("cannot normalize the zero vector")
    return SimplexPoint(tuple(v / s for v in x))


def limit_set_vertices(sys: SelfSimilarSystem) -> list:
    """Normalized division points of one period, deduplicated in order."""
    if not sys.proper:
        raise NotProper("the system is not proper (P_1 stays 0)")
    out, seen = [], set()
    base = sys.base
    for q in division_numbers(base):
        p = normalize(base(q))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def hull_contains(generators: Sequence, x) -> bool:
    if not generators:
        raise ValueError("hull of an empty set")
    return convex_weights([tuple(g) for g in generators], tuple(x)) is not None


def extreme_points(points: Sequence) -> list:
    """Points that are not convex combinations of the others (input order).

    Repeated points are collapsed to their first occurrence first, otherwise
    each copy would be a combination of the other.
    """
    if not points:
        raise ValueError("extreme_points of an empty list")
    uniq = []
    for p in points:
        if p not in uniq:
            uniq.append(p)
    if len(uniq) == 1:
        return uniq
    return [p for i, p in enumerate(uniq) if not hull_contains(uniq[:i] + uniq[i + 1:], p)]


# -- spectrum points and mu_T -------------------------------------------------


@dataclass(frozen=True)
class SpectrumPoint:
    values: tuple
    mode: str = "exact"  # "exact" | "estimate"
    window: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", as_vector(self.values))
        if self.mode not in ("exact", "estimate"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def linf_distance(self, other) -> Fraction:
        other = tuple(other)
        if len(other) != len(self.values):
            raise DimensionMismatch("points of different dimension")
        return max(abs(Fraction(a) - Fraction(b)) for a, b in zip(self.values, other))

    def encode(self) -> str:
        """One tab-delimited line: mode, window bounds, values."""
        lo, hi = self.window if self.window else ("-", "-")
        fields = [self.mode, _fmt_opt(lo), _fmt_opt(hi)]
        fields.extend(format_rational(v) for v in self.values)
        return "\t".join(fields)


def _fmt_opt(x):
    return x if isinstance(x, str) else format_rational(x)


def _check_dims(T: LinearMap, n: int):
    if T.n != n:
        raise DimensionMismatch(f"map expects dimension {T.n}, system has {n}")


def mu_exact(T: LinearMap, sys: SelfSimilarSystem) -> SpectrumPoint:
    _check_dims(T, sys.n)
    verts = limit_set_vertices(sys)
    images = [T(v) for v in verts]
    return SpectrumPoint(tuple(min(col) for col in zip(*images)), "exact")


def mu_estimate(T: LinearMap, path, tail_fraction=Fraction(1, 2)) -> SpectrumPoint:
    """Minimum of ``T(P(q))/q`` over division numbers of ``[t Q, Q]``.

    This is the infimum over the window itself (the curve is a union of
    segments between normalized division points), hence an upper bound for
    whatever the liminf is.  A SelfSimilarSystem is evaluated on its base
    period.
    """
    if isinstance(path, SelfSimilarSystem):
        path = path.base
    _check_dims(T, path.n)
    t = Fraction(tail_fraction)
    if not (0 < t < 1):
        raise EmptyWindow(f"tail fraction {t} must lie strictly between 0 and 1")
    hi = path.end
    lo = max(t * hi, path.start)
    if lo >= hi:
        raise EmptyWindow("window is empty")
    qs = [lo] + [q for q in path.breakpoints if lo < q < hi] + [hi]
    # integer cross-multiplication; Fraction arithmetic dominated the cost
    rows, scale = _integer_rows(T)
    best = None  # per coordinate (numerator, positive denominator)
    for q in qs:
        v = path(q)
        den = lcm(q.denominator, *(x.denominator for x in v))
        ints = [x.numerator * (den // x.denominator) for x in v]
        qd = q.numerator * (den // q.denominator) * scale
        img = [sum(t * a for t, a in zip(r, ints)) for r in rows]
        if best is None:
            best = [(a, qd) for a in img]
        else:
            best = [b if b[0] * qd <= a * b[1] else (a, qd) for b, a in zip(best, img)]
    best = tuple(Fraction(a, d) for a, d in best)
    return SpectrumPoint(best, "estimate", (lo, hi))


def _integer_rows(T: LinearMap):
    """Rows of ``scale * T`` as integers, with the positive integer ``scale``."""
    scale = lcm(*(x.denominator for r in T.rows for x in r))
    return [[int(x * scale) for x in r] for r in T.rows], scale


def coordinatewise_min(x: SpectrumPoint, y: SpectrumPoint) -> SpectrumPoint:
    if len(x) != len(y):
        raise DimensionMismatch("spectrum points of different dimension")
    mode = "exact" if x.mode == y.mode == "exact" else "estimate"
    window = x.window if x.window == y.window else None
    return SpectrumPoint(tuple(min(a, b) for a, b in zip(x.values, y.values)), mode, window)


def require_valid(sys: SelfSimilarSystem):
    report = sys.validate()
    if not report.valid:
        raise InvalidSystem("; ".join(map(str, report.violations[:3])))
    return sys
