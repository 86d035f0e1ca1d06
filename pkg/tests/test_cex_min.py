from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from nsystems.ballgame import GenerationPolicy, random_generalized_system, random_system
from nsystems.cex_min import (
    build_min_instance,
    build_R,
    build_S,
    check_identity_lemma_q,
    check_kappa_generator_bounds,
    corollary_closed_forms,
    delta_sample,
    kappa,
    kappa3_decay_probe,
    verify_corollary_values,
    verify_halfspace_rep,
)
from nsystems.errors import BadParameters, InfeasibleStep, PreconditionViolated
from nsystems.paths import division_numbers
from nsystems.spectrum import mu_exact, simplex_vertex

from conftest import vec

GRID = [(2, 3), (F(3, 2), 2), (2, 5), (F(5, 4), F(4, 3)), (3, 4)]


def test_T_at_2_3_matches_substituted_rows(inst23):
    assert inst23.T.rows == tuple(vec(*r) for r in [
        (-3, -1, 0, 2), (3, -3, 4, -2), (6, -2, 2, -2), (0, 0, 1, -1), (0, -1, 0, 1),
    ])


def test_division_numbers_of_instance(inst23):
    assert division_numbers(inst23.R.base) == [5, 6, 8, 10]
    assert division_numbers(inst23.S.base) == [10, 22, 24, 30]


def test_parameters_must_satisfy_1_lt_alpha_lt_beta():
    for a, b in [(3, 2), (1, 2), (2, 2), (F(1, 2), 3)]:
        with pytest.raises(BadParameters):
            build_min_instance(a, b)


def test_R_and_S_base_domains():
    for a in (2, F(3, 2), 3):
        R = build_R(a)
        assert (R.start, R.base.end) == (3 + F(a), F(a) * (3 + F(a)))
    for b in (3, 2, 5):
        S = build_S(b)
        assert (S.start, S.base.end) == (1 + 3 * F(b), F(b) * (1 + 3 * F(b)))


@pytest.mark.parametrize("ab", GRID)
def test_reports_pass_on_grid(ab):
    inst = build_min_instance(*ab)
    for rep in (verify_halfspace_rep(inst), verify_corollary_values(inst), check_kappa_generator_bounds(inst)):
        assert rep.passed, rep.failures()


def test_halfspace_examples(inst23):
    assert inst23.T((1, 1, 1, 2))[:3] == vec(0, 0, 2)
    assert inst23.T(simplex_vertex(4, 1))[0] == F(-1, 2)
    assert not inst23.in_K(simplex_vertex(4, 1))
    assert inst23.T((1, 3, 3, 3)) == vec(0, 0, 0, 0, 0)


def test_delta_sample_is_the_stated_grid():
    pts = delta_sample()
    assert len(pts) == len(set(pts))
    # independent count: normalized points are primitive integer tuples
    from itertools import combinations_with_replacement
    from math import gcd
    from functools import reduce
    want = sum(1 for c in combinations_with_replacement(range(7), 4) if c[-1] and reduce(gcd, c) == 1)
    assert len(pts) == want


def test_corollary_values():
    inst = build_min_instance(F(3, 2), 2)
    assert mu_exact(inst.T, inst.R).values[3] == F(-3, 23)
    inst = build_min_instance(2, 3)
    want_R, want_S = corollary_closed_forms(2)
    assert want_R.values == vec(0, 0, 0, F(-1, 4), F(1, 6))
    assert want_S.values == vec(0, 0, 0, 0, 0)


@given(st.fractions(min_value=F(101, 100), max_value=10))
def test_target_fourth_coordinate_is_negative(a):
    inst = build_min_instance(a, a + 1)
    assert inst.target.values[3] < 0


def test_kappa_examples(R2, S3):
    assert kappa(S3, 3, 10) == vec(0, 0, 0)
    assert kappa(R2, 3, 5) == vec(F(2, 5), F(1, 5), F(1, 5))
    assert kappa(R2, 3, 6)[2] == 0  # P_3 = P_4 at A_2


def test_identity_examples(R2, S3):
    assert check_identity_lemma_q(S3, 3, 10) == 0
    assert check_identity_lemma_q(R2, 3, 5) == 0


@given(st.integers(0, 10**9), st.fractions(min_value=F(11, 10), max_value=7))
def test_identity_holds_on_random_generalized_systems(seed, beta):
    path = random_generalized_system(GenerationPolicy(4, 1, 30, seed, generalized=True))
    for q in division_numbers(path):
        assert check_identity_lemma_q(path, beta, q) == 0


def test_generator_bound_examples(inst23):
    rep = check_kappa_generator_bounds(inst23)
    details = {c.name: c.detail for c in rep.checks}
    assert details["bounds at A1"] == "f1=2 f2=1 f3=1"
    assert details["bounds at A3"] == "f1=2 f2=3 f3=2"
    assert details["bounds at B1"] == "f1=0 f2=0 f3=0"


def test_probe_on_S_is_identically_zero(inst23):
    windows = [(10, 30), (30, 90), (95, 270)]
    assert kappa3_decay_probe(inst23.S, inst23, windows) == [0, 0, 0]


def test_probe_rejects_R(inst23):
    with pytest.raises(PreconditionViolated):
        kappa3_decay_probe(inst23.R, inst23, [(5, 10)])


def test_probe_rejects_plain_paths_leaving_K(inst23):
    path = random_system(GenerationPolicy(4, 1, 50, 3))
    with pytest.raises(PreconditionViolated):
        kappa3_decay_probe(path, inst23, [(path.start, path.end)])


def test_probe_on_confined_simulator_prefixes(inst23):
    """Confined generation stalls; the probe still measures what it produced."""
    start = (118, 158, 316, 406)  # 1000 x centroid of the generators of K, rounded down
    assert inst23.in_K(start)
    suprema = []
    for seed in range(4):
        policy = GenerationPolicy(4, 1, 300, seed, generalized=True, initial_positions=start,
                                  initial_holder=(3, 3), constraint=inst23.in_K, max_retries=200)
        try:
            path = random_system(policy)
        except InfeasibleStep as exc:
            path = exc.partial
        assert path is not None
        mid = (path.start + path.end) / 2
        suprema.append(kappa3_decay_probe(path, inst23, [(path.start, mid), (mid, path.end)]))
    for first, second in suprema:
        assert 0 <= second and 0 <= first
