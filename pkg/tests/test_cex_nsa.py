import random
from fractions import Fraction as F

import pytest

from nsystems.cex_nsa import (
    build_f,
    build_nsa_instance,
    check_isolation,
    enumerate_E,
    f_breakpoints,
    verify_main_inequalities,
)
from nsystems.errors import BadParameters
from nsystems.paths import EXACT, PLPath, validate_exact_nsystem, validate_rigid
from nsystems.rational import dot
from nsystems.spectrum import SelfSimilarSystem, mu_exact, normalize

from conftest import vec

GRID = [(n, a, m) for n in (4, 5) for a in (2, F(3, 2)) for m in range(1, 6)]


def test_T_at_4_2(nsa42):
    assert nsa42.beta == 7
    assert nsa42.T.rows == tuple(vec(*r) for r in [
        (1, 0, 0, 0), (0, 2, -1, 0), (0, 0, 2, -1), (0, -2, 0, 1), (-4, 0, 0, 1),
    ])


def test_T_at_5_2_shape():
    inst = build_nsa_instance(5, 2)
    assert inst.beta == 15 and (inst.T.m, inst.T.n) == (6, 5)


@pytest.mark.parametrize("bad", [(3, 2), (4, 1), (4, F(1, 2))])
def test_bad_parameters(bad):
    with pytest.raises(BadParameters):
        build_nsa_instance(*bad)


def test_f421_breakpoints(f421):
    base = f421.base
    assert base.breakpoints == (8, 9, 11, 15, 16)
    assert base.values == tuple(vec(*v) for v in [(1, 1, 2, 4), (1, 2, 2, 4), (1, 2, 4, 4), (1, 2, 4, 8), (2, 2, 4, 8)])
    assert 1 + 2 * 7 == 15


def test_f422_breakpoints(nsa42):
    base = build_f(nsa42, 2).base
    pts = dict(zip(base.breakpoints, base.values))
    assert pts[17] == vec(1, 4, 4, 8)
    assert pts[21] == vec(1, 4, 8, 8)
    assert pts[29] == vec(1, 4, 8, 16)
    assert base.end == 32 and pts[32] == vec(4, 4, 8, 16)


def test_f521_start_and_switch():
    inst = build_nsa_instance(5, 2)
    f = build_f(inst, 1)
    assert f.start == 16 and f.base.values[0] == vec(1, 1, 2, 4, 8)
    assert inst.c(1) == 31 and f(31) == vec(1, 2, 4, 8, 16)


def independent_breakpoints(n, a, m):
    """Walk the ball game directly: lift f_2..f_{n-1} onto the next player, then f_n by alpha, m times."""
    x = [F(1)] + [F(a) ** (i - 2) for i in range(2, n + 1)]
    out = [tuple(x)]
    for _ in range(m):
        for j in range(1, n - 1):
            x[j] = x[j + 1]
            out.append(tuple(x))
        x[n - 1] *= a
        out.append(tuple(x))
    x[0] = x[1]
    out.append(tuple(x))
    return out


@pytest.mark.parametrize("n,a,m", GRID)
def test_breakpoints_match_direct_walk(n, a, m):
    assert f_breakpoints(build_nsa_instance(n, a), m) == independent_breakpoints(n, a, m)


@pytest.mark.parametrize("n,a,m", GRID)
def test_f_properties(n, a, m):
    inst = build_nsa_instance(n, a)
    f = build_f(inst, m)
    assert f.ratio == F(a) ** m and f.proper
    assert validate_exact_nsystem(f.unroll(2)).valid
    a0, c, d = 1 + inst.beta, inst.c(m), f.base.end
    assert f.start == a0 and d == F(a) ** m * a0
    # f_1 is constant on [a, c] and has slope 1 on [c, d]
    for q0, q1, _, _, s in f.base.segments():
        assert s[0] == (0 if q1 <= c else 1)
    T = inst.T
    assert mu_exact(T, f).values == (1 / c,) + (F(0),) * n
    # every zero is attained at a division point
    images = [T(normalize(v)) for v in f.base.values]
    for i in range(1, n + 1):
        assert min(im[i] for im in images) == 0
    assert T(f.base.values[0])[n] == 0
    assert verify_main_inequalities(inst, f).passed


@pytest.mark.parametrize("m", range(1, 5))
def test_integer_alpha_gives_rigid_f(m):
    for n in (4, 5):
        f = build_f(build_nsa_instance(n, 2), m)
        assert validate_rigid(f.unroll(2), 1).valid


@pytest.mark.parametrize("n,a,m", GRID[:6])
def test_main_inequalities_hold_between_division_points(n, a, m):
    inst = build_nsa_instance(n, a)
    f = build_f(inst, m)
    rng = random.Random(m)
    lo, hi = f.base.start, f.base.end
    for _ in range(50):
        q = lo + (hi - lo) * F(rng.randint(0, 1000), 1000)
        assert all(dot(r, f(q)) >= 0 for r in inst.T.rows[1:])


def test_mutated_path_fails_main_inequalities(nsa42):
    pts = [vec(1, 1, 2, 4), vec(1, 2, 2, 4), vec(1, 2, 4, 4), vec(1, 2, 3, 9), vec(2, 2, 4, 8)]
    path = PLPath.from_points((sum(p), p) for p in pts)
    rep = verify_main_inequalities(nsa42, SelfSimilarSystem(path, 2, EXACT))
    assert not rep.passed
    assert any("T3=-3" in c.detail for c in rep.failures())


def test_enumerate_E_examples(nsa42):
    assert enumerate_E(nsa42, 3) == [F(1, 15), F(1, 29), F(1, 57)]
    assert enumerate_E(build_nsa_instance(4, F(3, 2)), 1) == [F(8, 65)]
    assert enumerate_E(build_nsa_instance(5, 2), 1) == [F(1, 31)]


def test_enumerate_E_is_strictly_decreasing(nsa42):
    vals = enumerate_E(nsa42, 8)
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


def test_isolation_reports():
    rep = check_isolation([F(1, 15), F(1, 29), F(1, 57)])
    assert rep.passed and "28/1653" in rep.checks[0].detail
    assert F(1, 15) - F(1, 29) == F(14, 435)
    assert check_isolation([F(1, 15)]).passed
    assert not check_isolation([F(1, 15), F(1, 15)]).passed
