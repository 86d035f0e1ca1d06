"""Exact linear programming over the rationals.

Dense two-phase tableau simplex with Bland's rule (smallest-index entering
and leaving variables), which cannot cycle, so every call terminates.  The
problems solved here are tiny (convex-combination feasibility with a handful
of generators), so no attention is paid to sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis  # basic variable index per row

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            self.rows[r] = row = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost):
        # c_j - c_B B^{-1} A_j, computed from the current tableau
        out = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                for j, a in enumerate(self.rows[i]):
                    if a:
                        out[j] -= cb * a
        return out

    def run(self, cost, allowed):
        """Minimize ``cost`` over columns in ``allowed``; returns status."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)

    def value(self, cost):
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), ZERO)

    def solution(self, nvars):
        x = [ZERO] * nvars
        for i, b in enumerate(self.basis):
            if b < nvars:
                x[b] = self.rhs[i]
        return tuple(x)


def linprog_eq(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m = len(A)
    n = len(c)
    rows, rhs = [], []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        art = [ZERO] * m
        art[i] = Fraction(1)
        rows.append(row + art)
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    total = n + m

    phase1 = [ZERO] * n + [Fraction(1)] * m
    tab.run(phase1, range(total))
    if tab.value(phase1) != 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis; rows with no
    # structural entry are redundant and dropped
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1

    cost = [Fraction(v) for v in c] + [ZERO] * m
    status = tab.run(cost, range(n))
    if status == "unbounded":
        return LPResult("unbounded")
    return LPResult("optimal", tab.solution(n), tab.value(cost))


def feasible_point(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """A point of ``{x >= 0 : A x = b}`` or ``None`` when empty."""
    res = linprog_eq([0] * (len(A[0]) if A else 0), A, b)
    return res.x if res.status == "optimal" else None


def convex_weights(generators: Sequence[Sequence], x: Sequence) -> tuple | None:
    """Weights ``w >= 0`` with ``sum w = 1`` and ``sum w_i g_i = x``, if any."""
    k = len(generators)
    dim = len(x)
    A = [[g[d] for g in generators] for d in range(dim)]
    A.append([1] * k)
    b = list(x) + [1]
    return feasible_point(A, b)
