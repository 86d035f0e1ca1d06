"""Random n-systems from the ball game, and Monte Carlo spectrum sampling.

Players sit at positions ``x_1 <= ... <= x_n`` (integer multiples of the
mesh).  Whoever carries the ball moves up at unit speed (a block of ``s``
tied players moves together at speed ``1/s``), may not overtake the next
player, and hands the ball on.  Every hand-off is a division number, so a
run of ``steps`` moves yields a path with ``steps`` segments.

Rigid games only pass backward from states with distinct coordinates and
only pass forward after catching up, which keeps every off-grid point
free of ties.  Move lengths are geometric with mean ``mean_move`` (in mesh
units); pass targets are drawn uniformly among admissible players.
"""

from __future__ import annotations

import hashlib
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional

from .errors import BadParameters, DimensionMismatch, InfeasibleStep
from .paths import PLPath
from .spectrum import LinearMap, SpectrumPoint, mu_estimate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GameState:
    positions: tuple  # Fractions, nondecreasing
    holder: tuple  # (lo, hi), 0-based inclusive block carrying the ball

    @property
    def clock(self) -> Fraction:
        return sum(self.positions, Fraction(0))


@dataclass(frozen=True)
class GenerationPolicy:
    n: int
    delta: Fraction = Fraction(1)
    steps: int = 200
    seed: int = 0
    mean_move: float = 3.0
    generalized: bool = False
    split_weight: float = 1.0
    initial_positions: Optional[tuple] = None  # in mesh units
    constraint: Optional[Callable] = None  # predicate on the normalized state
    initial_holder: Optional[tuple] = None  # (lo, hi), 0-based block holding the ball at q_0
    max_retries: int = 64

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not isinstance(self.n, int) or self.n < 2:
            raise BadParameters("n must be an integer >= 2")
        if self.delta <= 0:
            raise BadParameters("mesh delta must be positive")
        if self.steps < 1:
            raise BadParameters("steps must be positive")
        if not (1 <= self.mean_move < float("inf")):
            raise BadParameters("mean_move must be finite and >= 1")
        if not (0 <= self.split_weight < float("inf")):
            raise BadParameters("split_weight must be finite and nonnegative")
        if self.max_retries < 1:
            raise BadParameters("max_retries must be positive")
        if self.initial_positions is not None:
            start = tuple(int(v) for v in self.initial_positions)
            if len(start) != self.n or start[0] < 0 or any(a > b for a, b in zip(start, start[1:])):
                raise BadParameters("initial positions must be n sorted nonnegative integers")
            if sum(start) == 0:
                raise BadParameters("initial positions must not all be zero")
            if not self.generalized and len(set(start)) < self.n:
                raise BadParameters("a rigid game must start from distinct positions")
            object.__setattr__(self, "initial_positions", start)
        if self.initial_holder is not None:
            lo, hi = (int(i) for i in self.initial_holder)
            x = self.start()
            if not (0 <= lo <= hi < self.n) or any(x[i] != x[lo] for i in range(lo, hi + 1)):
                raise BadParameters("initial holder must be a block of tied players")
            if hi + 1 < self.n and x[hi + 1] == x[hi]:
                raise BadParameters("initial holder must include every player tied with it")
            if not self.generalized and lo != hi:
                raise BadParameters("a rigid game starts with a single holder")
            object.__setattr__(self, "initial_holder", (lo, hi))

    def start(self) -> tuple:
        return self.initial_positions or tuple(range(1, self.n + 1))


def _geometric(rng: random.Random, mean: float) -> int:
    p = 1.0 / mean
    k = 1
    while rng.random() >= p:
        k += 1
    return k


def _accept(policy: GenerationPolicy, x) -> bool:
    if policy.constraint is None:
        return True
    total = sum(x)
    return bool(policy.constraint(tuple(Fraction(v, total) for v in x)))


def _to_path(policy: GenerationPolicy, states) -> PLPath:
    d = policy.delta
    return PLPath.from_points((d * sum(x), tuple(d * v for v in x)) for x in states)


def _rigid_move(rng, policy, x, options):
    """One rigid move: pick the holder among ``options``, move, list next options."""
    n = len(x)
    h = rng.choice(options)
    k = _geometric(rng, policy.mean_move)
    if h < n - 1:
        gap = x[h + 1] - x[h]
        k = gap if h == 0 else min(k, gap)
    new = list(x)
    new[h] += k
    if h < n - 1 and new[h] == new[h + 1]:
        return new, [h + 1]
    return new, list(range(h))


def random_rigid_system(policy: GenerationPolicy) -> PLPath:
    """A rigid n-system of mesh ``policy.delta`` with ``policy.steps`` segments."""
    if policy.generalized:
        raise BadParameters("policy asks for a generalized system")
    rng = random.Random(policy.seed)
    x = list(policy.start())
    if not _accept(policy, x):
        raise InfeasibleStep("the initial state violates the constraint")
    options = [policy.initial_holder[0] if policy.initial_holder else 0]
    states = [tuple(x)]
    for step in range(policy.steps):
        # the pass target is drawn inside the retry loop, so a rejected
        # move can be replaced by one of another admissible player
        for _ in range(policy.max_retries):
            new, nxt = _rigid_move(rng, policy, x, options)
            if _accept(policy, new):
                break
        else:
            partial = _to_path(policy, states) if len(states) > 1 else None
            raise InfeasibleStep(f"no admissible move at step {step} from {tuple(x)}", partial)
        x, options = new, nxt
        states.append(tuple(x))
    return _to_path(policy, states)


def _tie_top(x, i):
    while i + 1 < len(x) and x[i + 1] == x[i]:
        i += 1
    return i


def _tie_bottom(x, i):
    while i > 0 and x[i - 1] == x[i]:
        i -= 1
    return i


def _block_options(policy, x, lo, hi, caught):
    """Admissible next blocks after the block ``[lo, hi]`` has moved.

    Returns ``(splits, backward)``; after a catch-up only forward handovers
    are admissible and they are returned as the first list.
    """
    if caught:
        top = _tie_top(x, hi + 1)
        return [(j, top) for j in range(lo, hi + 2)], []
    splits = [(j, hi) for j in range(lo + 1, hi + 1)] if policy.split_weight > 0 else []
    backward = []
    for kh in range(lo):
        if x[kh] < x[kh + 1]:
            for kl in range(_tie_bottom(x, kh), kh + 1):
                backward.append((kl, kh))
    return splits, backward


def _pick_block(rng, policy, options):
    first, second = options
    # splits are weighted against the backward passes as a group
    w_split = policy.split_weight * len(first)
    if second and (not first or rng.random() * (w_split + len(second)) >= w_split):
        return rng.choice(second)
    return rng.choice(first)


def _generalized_move(rng, policy, x, options):
    n = len(x)
    lo, hi = _pick_block(rng, policy, options)
    k = _geometric(rng, policy.mean_move)
    gap = x[hi + 1] - x[hi] if hi < n - 1 else None
    if gap is not None:
        k = min(k, gap)
    for _ in range(2):
        new = list(x)
        for i in range(lo, hi + 1):
            new[i] += k
        caught = gap is not None and k == gap
        nxt = _block_options(policy, new, lo, hi, caught)
        if nxt[0] or nxt[1]:
            return new, nxt
        if gap is None:
            return new, ([(lo, hi)], [])  # nobody to pass to: the block keeps the ball
        k = gap  # stranded without a receiver: finish the catch-up instead
    raise AssertionError("unreachable")


def random_generalized_system(policy: GenerationPolicy) -> PLPath:
    """A generalized n-system with at most ``policy.steps`` segments."""
    if not policy.generalized:
        policy = replace(policy, generalized=True)
    rng = random.Random(policy.seed)
    x = list(policy.start())
    if not _accept(policy, x):
        raise InfeasibleStep("the initial state violates the constraint")
    options = ([policy.initial_holder or (0, _tie_top(x, 0))], [])
    states = [tuple(x)]
    for step in range(policy.steps):
        for _ in range(policy.max_retries):
            new, nxt = _generalized_move(rng, policy, x, options)
            if _accept(policy, new):
                break
        else:
            partial = _to_path(policy, states) if len(states) > 1 else None
            raise InfeasibleStep(f"no admissible move at step {step} from {tuple(x)}", partial)
        x, options = new, nxt
        states.append(tuple(x))
    return _to_path(policy, states)


def random_system(policy: GenerationPolicy) -> PLPath:
    if policy.generalized:
        return random_generalized_system(policy)
    return random_rigid_system(policy)


def child_seed(seed: int, index: int) -> int:
    """Deterministic 64-bit seed for sample ``index`` of a run seeded ``seed``."""
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _sample_one(args):
    T, policy, index, tail = args
    path = random_system(replace(policy, seed=child_seed(policy.seed, index)))
    return mu_estimate(T, path, tail)


def sample_spectrum(T: LinearMap, policy: GenerationPolicy, count: int,
                    tail_fraction=Fraction(1, 2), workers: int = 1) -> list:
    """Estimated spectrum points of ``count`` random systems, sorted by value.

    Sample ``i`` uses the seed ``child_seed(policy.seed, i)`` so the result
    does not depend on ``workers``.
    """
    if T.n != policy.n:
        raise DimensionMismatch(f"map expects dimension {T.n}, policy generates n={policy.n}")
    tail = Fraction(tail_fraction)
    jobs = [(T, policy, i, tail) for i in range(count)]
    if workers > 1 and policy.constraint is None:
        with ProcessPoolExecutor(workers) as pool:
            points = list(pool.map(_sample_one, jobs, chunksize=max(1, count // (8 * workers))))
    else:
        points = [_sample_one(job) for job in jobs]
    log.debug("sampled %d spectrum points", len(points))
    return sorted(points, key=lambda p: (p.values, p.window))
