"""A family of spectra that are not semi-algebraic (any n >= 4, alpha > 1).

For the (n+1)-component map T below, the slice
``{theta : (theta, 0, ..., 0) in spectrum}`` is
``{0} ∪ {1/(1 + alpha^m beta) : m >= 1}`` with
``beta = 1 + alpha + ... + alpha^(n-2)``.  The values ``1/(1 + alpha^m beta)``
are realized by explicit self-similar n-systems ``f_m`` built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, DimensionMismatch
from .paths import EXACT, PLPath, division_numbers
from .reports import CheckReport
from .spectrum import LinearMap, SelfSimilarSystem, mu_exact, require_valid
from .rational import dot


@dataclass(frozen=True)
class NsaInstance:
    n: int
    alpha: Fraction
    beta: Fraction
    T: LinearMap

    def c(self, m: int) -> Fraction:
        """Abscissa of the last switch point of ``f_m``."""
        return 1 + self.alpha ** m * self.beta

    def theta(self, m: int) -> Fraction:
        return 1 / self.c(m)


def build_T(n: int, alpha) -> LinearMap:
    a = Fraction(alpha)
    rows = []

    def e(*pairs):
        row = [Fraction(0)] * n
        for j, coef in pairs:
            row[j - 1] += coef
        return tuple(row)

    rows.append(e((1, 1)))
    for j in range(2, n):
        rows.append(e((j, a), (j + 1, -1)))
    rows.append(e((n, 1), (2, -a ** (n - 3))))
    rows.append(e((n, 1), (1, -a ** (n - 2))))
    return LinearMap(tuple(rows))


def build_nsa_instance(n: int, alpha) -> NsaInstance:
    a = Fraction(alpha)
    if not isinstance(n, int) or n < 4:
        raise BadParameters(f"n must be an integer >= 4, got {n!r}")
    if a <= 1:
        raise BadParameters(f"alpha must exceed 1, got {a}")
    beta = sum((a ** k for k in range(n - 1)), Fraction(0))
    return NsaInstance(n, a, beta, build_T(n, a))


def f_breakpoints(inst: NsaInstance, m: int) -> list:
    """Division points of ``f_m`` over one period, in increasing order.

    Starting from ``(1, 1, alpha, ..., alpha^(n-2))``, each round l = 1..m
    lifts ``f_2, ..., f_{n-1}`` in turn onto the next component (those are
    the tied points) and then lifts ``f_n`` by a factor alpha (the switch
    point ``(1, alpha^l, ..., alpha^(l+n-2))``).  Finally ``f_1`` climbs to
    ``alpha^m``, closing the period at ``alpha^m f(a)``.
    """
    n, a = inst.n, inst.alpha
    pts = [tuple([Fraction(1)] + [a ** (i - 2) for i in range(2, n + 1)])]
    for ell in range(1, m + 1):
        for j in range(2, n):
            pts.append(tuple([Fraction(1)] + [a ** (ell + i - 2) if i <= j else a ** (ell + i - 3) for i in range(2, n + 1)]))
        pts.append(tuple([Fraction(1)] + [a ** (ell + i - 2) for i in range(2, n + 1)]))
    pts.append(tuple(a ** m * x for x in pts[0]))
    return pts


def build_f(inst: NsaInstance, m: int) -> SelfSimilarSystem:
    if not isinstance(m, int) or m < 1:
        raise BadParameters(f"m must be a positive integer, got {m!r}")
    pts = f_breakpoints(inst, m)
    path = PLPath.from_points((sum(p), p) for p in pts)
    return require_valid(SelfSimilarSystem(path, inst.alpha ** m, EXACT))


def verify_main_inequalities(inst: NsaInstance, sys: SelfSimilarSystem) -> CheckReport:
    """``T_j(f(q)) >= 0`` for j >= 2 at the division points of one period.

    Each ``T_j`` is linear and the path is affine between division points,
    so the sign at the division points decides it on the whole period.
    """
    if sys.n != inst.n:
        raise DimensionMismatch(f"instance has n={inst.n}, system has n={sys.n}")
    report = CheckReport(f"main inequalities for n={inst.n}, alpha={inst.alpha}")
    # no validity gate: a mutated or hand-built path is reported, not refused
    for q in division_numbers(sys.base, check=False):
        v = sys.base(q)
        vals = [dot(r, v) for r in inst.T.rows[1:]]
        bad = [f"T{j + 2}={x}" for j, x in enumerate(vals) if x < 0]
        report.add(f"q={q}", not bad, ", ".join(bad) or "all >= 0")
    return report


def enumerate_E(inst: NsaInstance, m_max: int, verify: bool = True) -> list:
    """``[1/(1 + alpha^m beta) for m = 1..m_max]``.

    With ``verify`` each value is confirmed as the first coordinate of
    ``mu_T(f_m) = (theta, 0, ..., 0)``; a mismatch raises AssertionError.
    The limit point 0 belongs to E but has no m, so it is not listed.
    """
    if not isinstance(m_max, int) or m_max < 1:
        raise BadParameters("m_max must be a positive integer")
    out = []
    for m in range(1, m_max + 1):
        theta = inst.theta(m)
        if verify:
            got = mu_exact(inst.T, build_f(inst, m)).values
            want = (theta,) + (Fraction(0),) * inst.n
            if got != want:
                raise AssertionError(f"mu_T(f_{m}) = {got}, expected {want}")
        out.append(theta)
    return out


def check_isolation(values) -> CheckReport:
    """Strict decrease and a positive gap to the next value and to 0."""
    values = [Fraction(v) for v in values]
    report = CheckReport("isolation of the points of E")
    if not values:
        report.add("nonempty", False, "no values")
        return report
    gaps = [a - b for a, b in zip(values, values[1:])]
    report.add("strictly decreasing", all(g > 0 for g in gaps),
               f"min gap {min(gaps)}" if gaps else "single value")
    report.add("positive distance to 0", values[-1] > 0, str(values[-1]))
    return report
