"""Piecewise-linear paths and the axioms of (generalized, rigid) n-systems.

A :class:`PLPath` is stored canonically: breakpoints are kept only where the
slope vector changes, so every interior breakpoint is a division number.
Components are identified by sorted position, which makes the moving index
of each segment unambiguous: when ``P_i = P_{i+1}`` and one of them rises,
it is necessarily ``P_{i+1}``.
"""

from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .errors import BadParameters, InvalidSystem, NotAnNSystem, OutOfDomain
from .rational import as_vector, in_lattice

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PLPath:
    """Continuous piecewise-linear map ``[q_0, q_N] -> Q^n``."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        qs = tuple(Fraction(q) for q in self.breakpoints)
        vs = tuple(as_vector(v) for v in self.values)
        if len(qs) < 2:
            raise ValueError("a path needs at least two breakpoints")
        if len(qs) != len(vs):
            raise ValueError("breakpoints and values differ in length")
        n = len(vs[0])
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if any(len(v) != n for v in vs):
            raise ValueError("value vectors have inconsistent lengths")
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        qs, vs, slopes = _canonicalize(qs, vs)
        object.__setattr__(self, "breakpoints", qs)
        object.__setattr__(self, "values", vs)
        object.__setattr__(self, "_slopes", slopes)
        object.__setattr__(self, "_reports", {})

    @classmethod
    def from_points(cls, points: Iterable) -> "PLPath":
        """Build from ``(q, value)`` pairs."""
        points = list(points)
        return cls(tuple(q for q, _ in points), tuple(v for _, v in points))

    @property
    def n(self) -> int:
        return len(self.values[0])

    @property
    def start(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1]

    def __len__(self):
        return len(self.breakpoints) - 1

    def __call__(self, q) -> tuple:
        return plpath_eval(self, q)

    def segments(self):
        """Yield ``(q0, q1, v0, v1, slope)`` for every segment."""
        qs, vs = self.breakpoints, self.values
        for i, s in enumerate(self._slopes):
            yield qs[i], qs[i + 1], vs[i], vs[i + 1], s

    def slopes(self) -> list:
        return list(self._slopes)

    def scaled(self, rho) -> "PLPath":
        """The path ``q -> rho * P(q / rho)`` on ``[rho q_0, rho q_N]``."""
        rho = Fraction(rho)
        return PLPath(
            tuple(rho * q for q in self.breakpoints),
            tuple(tuple(rho * x for x in v) for v in self.values),
        )

    def restrict(self, lo, hi) -> "PLPath":
        lo, hi = Fraction(lo), Fraction(hi)
        if not (self.start <= lo < hi <= self.end):
            raise OutOfDomain(f"[{lo}, {hi}] is not a subinterval of [{self.start}, {self.end}]")
        inner = [(q, v) for q, v in zip(self.breakpoints, self.values) if lo < q < hi]
        return PLPath.from_points([(lo, self(lo)), *inner, (hi, self(hi))])


def _slope(q0, q1, v0, v1):
    dq = q1 - q0
    return tuple((b - a) / dq for a, b in zip(v0, v1))


def _canonicalize(qs, vs):
    # equal consecutive slopes mean collinear segments; the merged segment
    # keeps that slope
    slopes = [_slope(qs[i], qs[i + 1], vs[i], vs[i + 1]) for i in range(len(qs) - 1)]
    keep_q, keep_v, keep_s = [qs[0]], [vs[0]], [slopes[0]]
    for i in range(1, len(qs) - 1):
        if slopes[i] != slopes[i - 1]:
            keep_q.append(qs[i])
            keep_v.append(vs[i])
            keep_s.append(slopes[i])
    keep_q.append(qs[-1])
    keep_v.append(vs[-1])
    return tuple(keep_q), tuple(keep_v), tuple(keep_s)


def plpath_eval(path: PLPath, q) -> tuple:
    q = Fraction(q)
    qs = path.breakpoints
    if q < qs[0] or q > qs[-1]:
        raise OutOfDomain(f"q={q} outside [{qs[0]}, {qs[-1]}]")
    i = bisect.bisect_left(qs, q)
    if qs[i] == q:
        return path.values[i]
    q0, q1 = qs[i - 1], qs[i]
    v0, v1 = path.values[i - 1], path.values[i]
    t = (q - q0) / (q1 - q0)
    return tuple(a + t * (b - a) for a, b in zip(v0, v1))


# -- system classes ---------------------------------------------------------


@dataclass(frozen=True)
class SystemClass:
    kind: str  # "exact" | "generalized" | "rigid"
    mesh: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "generalized", "rigid"):
            raise ValueError(f"unknown system class {self.kind!r}")
        if self.kind == "rigid":
            if self.mesh is None or Fraction(self.mesh) <= 0:
                raise BadParameters("a rigid system needs a mesh > 0")
            object.__setattr__(self, "mesh", Fraction(self.mesh))

    @classmethod
    def rigid(cls, mesh) -> "SystemClass":
        return cls("rigid", Fraction(mesh))

    def __str__(self):
        return f"rigid(mesh={self.mesh})" if self.kind == "rigid" else self.kind


EXACT = SystemClass("exact")
GENERALIZED = SystemClass("generalized")


# -- validation reports -----------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str  # S1 S2 S3 G1 G2 G3 RIGID
    q: Fraction
    detail: str

    def __str__(self):
        return f"{self.axiom} at q={self.q}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}


def _check_order_and_sum(path: PLPath, label: str, out: list):
    for q, v in zip(path.breakpoints, path.values):
        if v[0] < 0:
            out.append(Violation(label, q, f"first component {v[0]} is negative"))
        for j in range(len(v) - 1):
            if v[j] > v[j + 1]:
                out.append(Violation(label, q, f"P_{j + 1}={v[j]} > P_{j + 2}={v[j + 1]}"))
        total = sum(v, ZERO)
        if total != q:
            out.append(Violation(label, q, f"components sum to {total}, not q"))


def _memoized(func):
    # paths are immutable, so a report computed once stays valid
    @functools.wraps(func)
    def wrapper(path):
        cache = path._reports
        if func.__name__ not in cache:
            cache[func.__name__] = func(path)
        return cache[func.__name__]

    return wrapper


@_memoized
def validate_generalized(path: PLPath) -> ValidationReport:
    """Check (G1) ordering and sum, (G2) slopes in [0, 1], (G3) convexity.

    Ordering and sum are affine conditions, so breakpoints suffice.  For
    (G3), ``P_j < P_{j+1}`` holds on the whole open segment unless the two
    components coincide at both ends.
    """
    out: list = []
    _check_order_and_sum(path, "G1", out)
    segs = list(path.segments())
    for q0, _, _, _, s in segs:
        for j, sj in enumerate(s):
            if not (ZERO <= sj <= ONE):
                out.append(Violation("G2", q0, f"P_{j + 1} has slope {sj} on the segment starting here"))
    n = path.n
    for j in range(n - 1):
        prev_partial = None  # slope of P_1+..+P_{j+1} on the previous segment when strict there
        for idx, (q0, q1, v0, v1, s) in enumerate(segs):
            strict = not (v0[j] == v0[j + 1] and v1[j] == v1[j + 1])
            partial = sum(s[: j + 1], ZERO)
            if strict:
                if partial not in (ZERO, ONE):
                    out.append(Violation("G3", q0, f"M_{j + 1} has slope {partial} while P_{j + 1} < P_{j + 2}"))
                if prev_partial is not None and v0[j] < v0[j + 1] and prev_partial > partial:
                    out.append(Violation("G3", q0, f"M_{j + 1} not convex: slope {prev_partial} then {partial}"))
                prev_partial = partial
            else:
                prev_partial = None
    return ValidationReport(tuple(out))


def _single_mover(s) -> int | None:
    movers = [j for j, x in enumerate(s) if x != 0]
    if len(movers) == 1 and s[movers[0]] == 1:
        return movers[0]
    return None


@_memoized
def validate_exact_nsystem(path: PLPath) -> ValidationReport:
    """Check (S1), (S2) one unit-speed component per segment, and (S3)."""
    out: list = []
    _check_order_and_sum(path, "S1", out)
    segs = list(path.segments())
    movers = []
    for q0, _, _, _, s in segs:
        k = _single_mover(s)
        if k is None:
            moving = ", ".join(f"P_{j + 1}:{x}" for j, x in enumerate(s) if x != 0) or "none"
            out.append(Violation("S2", q0, f"segment starting here is not a single unit-slope move ({moving})"))
        movers.append(k)
    for i in range(1, len(segs)):
        ell, k = movers[i - 1], movers[i]
        if ell is None or k is None or k <= ell:
            continue
        q = path.breakpoints[i]
        v = path.values[i]
        if any(v[j] != v[ell] for j in range(ell, k + 1)):
            out.append(Violation("S3", q, f"ball passed forward from P_{ell + 1} to P_{k + 1} without P_{ell + 1}=...=P_{k + 1}"))
    return ValidationReport(tuple(out))


def validate_rigid(path: PLPath, delta, strict_start: bool = False) -> ValidationReport:
    """Check rigidity of mesh ``delta`` for an exact n-system.

    Conditions: ``q_0`` lies in delta*Z, ``P(q)`` lies in delta*Z^n at every
    grid abscissa, and ``P(q)`` has pairwise distinct coordinates at every
    abscissa off the grid.  Distinct coordinates at ``q_0`` itself are only
    demanded with ``strict_start=True``; a self-similar period may begin at
    a pass between tied players (as ``f_m`` does) without affecting anything
    past its start.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise BadParameters("mesh must be positive")
    if not validate_exact_nsystem(path).valid:
        raise NotAnNSystem("validate_rigid requires an exact n-system")
    out: list = []
    if not in_lattice(path.start, delta):
        out.append(Violation("RIGID", path.start, f"q_0 is not a multiple of {delta}"))
    if strict_start and len(set(path.values[0])) < path.n:
        out.append(Violation("RIGID", path.start, "coordinates at q_0 are not distinct"))
    for q0, q1, v0, _, s in path.segments():
        # grid values inside a segment step by delta*s, and s is a unit
        # vector here, so the first grid point decides the whole segment
        g = ceil(q0 / delta) * delta
        if g > q1:
            continue
        if g == q0:
            v = v0
        else:
            k = s.index(ONE)
            v = v0[:k] + (v0[k] + (g - q0),) + v0[k + 1:]
        if not all(in_lattice(x, delta) for x in v):
            out.append(Violation("RIGID", g, f"P(q)={_fmt(v)} not in {delta}Z^n"))
    for q, v in zip(path.breakpoints, path.values):
        if not in_lattice(q, delta) and len(set(v)) < path.n:
            out.append(Violation("RIGID", q, f"off-grid point {_fmt(v)} has tied coordinates"))
    for q0, q1, v0, v1, _ in path.segments():
        for j in range(path.n - 1):
            if v0[j] == v0[j + 1] and v1[j] == v1[j + 1]:
                out.append(Violation("RIGID", q0, f"P_{j + 1}=P_{j + 2} on the open segment ({q0}, {q1})"))
    return ValidationReport(tuple(out))


def validate_system(path: PLPath, cls: SystemClass) -> ValidationReport:
    if cls.kind == "generalized":
        return validate_generalized(path)
    if cls.kind == "exact":
        return validate_exact_nsystem(path)
    report = validate_exact_nsystem(path)
    if not report.valid:
        return report
    return validate_rigid(path, cls.mesh)


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# -- division and switch numbers -----------------------------------------


def _moving_block(s) -> list:
    return [j for j, x in enumerate(s) if x != 0]


def _require_generalized(path):
    report = validate_generalized(path)
    if not report.valid:
        raise InvalidSystem("not a generalized n-system: " + "; ".join(map(str, report.violations[:3])))


def division_numbers(path: PLPath, check: bool = True) -> list:
    """Boundary abscissae plus every interior breakpoint (slopes differ there)."""
    if check:
        _require_generalized(path)
    return list(path.breakpoints)


def switch_numbers(path: PLPath, check: bool = True) -> list:
    """Boundary abscissae plus breakpoints where the ball goes strictly backward.

    For moving blocks, "backward" compares the lowest index of each block.
    """
    if check:
        _require_generalized(path)
    slopes = path.slopes()
    out = [path.start]
    for i in range(1, len(slopes)):
        left, right = _moving_block(slopes[i - 1]), _moving_block(slopes[i])
        if left and right and right[0] < left[0]:
            out.append(path.breakpoints[i])
    out.append(path.end)
    return out


def is_sorted_nonneg(v: Sequence[Fraction]) -> bool:
    return v[0] >= 0 and all(a <= b for a, b in zip(v, v[1:]))
