"""Dimension-4 example of a spectrum not closed under coordinate-wise minimum.

Two self-similar generalized 4-systems R (ratio alpha, ``R_1 = R_2``) and S
(ratio beta, ``S_3 = S_4``) are paired with a 5-component linear map T.
``min(mu_T(R), mu_T(S)) = (0, 0, 0, c, 0)`` with ``c < 0``, yet any system
realizing it would need ``B1bar`` in ``K(P) ⊆ K`` together with
``K(P) ⊄ face{x_3 = x_4}``, which the kappa_3 argument rules out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .errors import BadParameters, OutOfDomain, PreconditionViolated
from .paths import GENERALIZED, PLPath
from .reports import CheckReport
from .spectrum import (
    LinearMap,
    SelfSimilarSystem,
    SimplexPoint,
    SpectrumPoint,
    coordinatewise_min,
    hull_contains,
    limit_set_vertices,
    mu_exact,
    normalize,
    require_valid,
    simplex_vertex,
)
from .rational import dot

ZERO = Fraction(0)

GENERATOR_NAMES = ("B1bar", "A1bar", "A2bar", "A3bar", "E3")


def r_division_points(alpha):
    a = Fraction(alpha)
    return [(1, 1, 1, a), (1, 1, a, a), (1, 1, a, a * a), (a, a, a, a * a)]


def s_division_points(beta):
    b = Fraction(beta)
    return [(1, b, b, b), (1, b, b * b, b * b), (b, b, b * b, b * b), (b, b * b, b * b, b * b)]


def _system_through(points, ratio) -> SelfSimilarSystem:
    points = [tuple(Fraction(x) for x in p) for p in points]
    path = PLPath.from_points((sum(p), p) for p in points)
    return SelfSimilarSystem(path, Fraction(ratio), GENERALIZED)


def build_R(alpha) -> SelfSimilarSystem:
    return _system_through(r_division_points(alpha), alpha)


def build_S(beta) -> SelfSimilarSystem:
    return _system_through(s_division_points(beta), beta)


def build_T(alpha, beta) -> LinearMap:
    a, b = Fraction(alpha), Fraction(beta)
    return LinearMap((
        (-(a - 1) * b, -(b - a), 0, b - 1),
        ((a - 1) * b, -(a - 1) * b, a * (b - 1), -(b - 1)),
        (a * b * (a - 1), -a * (a - 1), b - 1, -(b - 1)),
        (0, 0, 1, -1),
        (0, -1, 0, 1),
    ))


@dataclass(frozen=True)
class MinCexInstance:
    alpha: Fraction
    beta: Fraction
    R: SelfSimilarSystem
    S: SelfSimilarSystem
    T: LinearMap
    K_generators: tuple  # B1bar, A1bar, A2bar, A3bar, E3
    target: SpectrumPoint

    @property
    def raw_generators(self):
        """Unnormalized generators B_1, A_1, A_2, A_3, E_3."""
        A = r_division_points(self.alpha)
        B = s_division_points(self.beta)
        return (B[0], A[0], A[1], A[2], tuple(simplex_vertex(4, 3)))

    def in_K(self, x) -> bool:
        """Membership in K through the halfspace description T_1, T_2, T_3 >= 0."""
        return all(dot(r, x) >= 0 for r in self.T.rows[:3])


def build_min_instance(alpha, beta) -> MinCexInstance:
    a, b = Fraction(alpha), Fraction(beta)
    if not (1 < a < b):
        raise BadParameters(f"need 1 < alpha < beta, got alpha={a}, beta={b}")
    R = require_valid(build_R(a))
    S = require_valid(build_S(b))
    A = r_division_points(a)
    B = s_division_points(b)
    gens = (normalize(B[0]), normalize(A[0]), normalize(A[1]), normalize(A[2]), simplex_vertex(4, 3))
    c = a * (1 - a) / sum(A[2])
    target = SpectrumPoint((0, 0, 0, c, 0), "exact")
    return MinCexInstance(a, b, R, S, build_T(a, b), gens, target)


def delta_sample(n: int = 4, top: int = 6) -> list:
    """Normalized integer vectors ``0 <= x_1 <= ... <= x_n <= top``, ``x_n >= 1``."""
    out, seen = [], set()
    for combo in combinations_with_replacement(range(top + 1), n):
        if combo[-1] == 0:
            continue
        p = normalize(combo)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def verify_halfspace_rep(inst: MinCexInstance) -> CheckReport:
    report = CheckReport("halfspace representation of K")
    T = inst.T
    gens = dict(zip(GENERATOR_NAMES, inst.K_generators))
    for name, g in gens.items():
        vals = T(g)[:3]
        report.add(f"T1..T3 >= 0 at {name}", all(v >= 0 for v in vals), _vec(vals))
    zero_sets = {
        0: ("B1bar", "A1bar", "A2bar"),
        1: ("B1bar", "A1bar", "A3bar"),
        2: ("B1bar", "A3bar", "E3"),
    }
    for i, names in zero_sets.items():
        vals = [T(gens[nm])[i] for nm in names]
        report.add(f"T{i + 1} vanishes on {'/'.join(names)}", all(v == 0 for v in vals), _vec(vals))
    mismatches = []
    sample = delta_sample()
    for x in sample:
        if hull_contains(inst.K_generators, x) != inst.in_K(x):
            mismatches.append(str(x))
    report.add(
        f"LP membership agrees with T1..T3 >= 0 on {len(sample)} sample points",
        not mismatches,
        "; ".join(mismatches[:3]) or "all agree",
    )
    return report


def corollary_closed_forms(alpha):
    """Closed forms of mu_T(R) and mu_T(S)."""
    a = Fraction(alpha)
    A = r_division_points(a)
    mu_R = (0, 0, 0, a * (1 - a) / sum(A[2]), (a - 1) / sum(A[1]))
    return SpectrumPoint(mu_R), SpectrumPoint((0, 0, 0, 0, 0))


def verify_corollary_values(inst: MinCexInstance) -> CheckReport:
    report = CheckReport("spectrum values of R, S and their minimum")
    mu_R = mu_exact(inst.T, inst.R)
    mu_S = mu_exact(inst.T, inst.S)
    want_R, want_S = corollary_closed_forms(inst.alpha)
    report.add("mu_T(R) closed form", mu_R.values == want_R.values, _vec(mu_R.values))
    report.add("mu_T(S) = 0", mu_S.values == want_S.values, _vec(mu_S.values))
    low = coordinatewise_min(mu_R, mu_S)
    report.add("min{mu_T(R), mu_T(S)} = (0,0,0,c,0)", low.values == inst.target.values, _vec(low.values))
    report.add("c < 0", inst.target.values[3] < 0, str(inst.target.values[3]))
    t5 = [inst.T(g)[4] for g in inst.K_generators]
    report.add(
        "T5 vanishes at B1bar only among the vertices of K",
        t5[0] == 0 and all(v > 0 for v in t5[1:]),
        _vec(t5),
    )
    return report


def kappa(path, beta, q) -> tuple:
    """``((beta P_1 - P_2)/q, (P_4 - P_2)/q, (P_4 - P_3)/q)``."""
    q = Fraction(q)
    if q <= 0:
        raise OutOfDomain("kappa needs q > 0")
    p = path(q)
    if len(p) != 4:
        raise ValueError("kappa is defined for 4-systems")
    b = Fraction(beta)
    return ((b * p[0] - p[1]) / q, (p[3] - p[1]) / q, (p[3] - p[2]) / q)


def check_identity_lemma_q(path, beta, q) -> Fraction:
    """Residual of ``q = (1+3 beta) P_1 + (2 k_2 - k_3 - 3 k_1) q``."""
    q = Fraction(q)
    b = Fraction(beta)
    k1, k2, k3 = kappa(path, b, q)
    p1 = path(q)[0]
    return q - ((1 + 3 * b) * p1 + (2 * k2 - k3 - 3 * k1) * q)


def check_kappa_generator_bounds(inst: MinCexInstance) -> CheckReport:
    report = CheckReport("kappa bounds at the generators of K")
    a, b = inst.alpha, inst.beta
    c12 = (b - 1) / (a - 1)
    c31 = (a * a - a) / (b - 1)
    names = ("B1", "A1", "A2", "A3", "E3")
    for name, x in zip(names, inst.raw_generators):
        f1 = b * x[0] - x[1]
        f2 = x[3] - x[1]
        f3 = x[3] - x[2]
        ok = 0 <= f1 <= c12 * f2 and f3 <= c31 * f1
        report.add(f"bounds at {name}", ok, f"f1={f1} f2={f2} f3={f3}")
    return report


def kappa3_decay_probe(system, inst: MinCexInstance, windows: Iterable) -> list:
    """Supremum of kappa_3 over the division numbers of each window.

    Self-similar input must satisfy ``B1bar in K(P) ⊆ K`` exactly; a plain
    path must keep every normalized division point of every window in K.
    """
    windows = [(Fraction(lo), Fraction(hi)) for lo, hi in windows]
    if isinstance(system, SelfSimilarSystem):
        verts = limit_set_vertices(system)
        outside = [v for v in verts if not hull_contains(inst.K_generators, v)]
        if outside:
            raise PreconditionViolated(f"K(P) is not inside K: {outside[0]} lies outside")
        if not hull_contains(verts, inst.K_generators[0]):
            raise PreconditionViolated("B1bar is not in K(P)")
        top = max(hi for _, hi in windows)
        periods, reach = 1, system.start * system.ratio
        while reach < top:
            reach *= system.ratio
            periods += 1
        path = system.unroll(periods)
    else:
        path = system
    out = []
    for lo, hi in windows:
        if not (path.start <= lo < hi <= path.end):
            raise OutOfDomain(f"window [{lo}, {hi}] outside the path domain")
        qs = [lo] + [q for q in path.breakpoints if lo < q < hi] + [hi]
        if not isinstance(system, SelfSimilarSystem):
            for q in qs:
                if not inst.in_K(normalize(path(q))):
                    raise PreconditionViolated(f"normalized point at q={q} lies outside K")
        out.append(max(kappa(path, inst.beta, q)[2] for q in qs))
    return out


def _vec(vals) -> str:
    return "(" + ", ".join(str(v) for v in vals) + ")"
