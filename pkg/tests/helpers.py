"""Shared oracles and generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from diamond_relay import DiamondNetwork
from diamond_relay.capacity import cut_value

GRID_STEPS = 1000


def grid_oracle_n2(net: DiamondNetwork, steps: int = GRID_STEPS) -> float:
    """Best max-min cut value over a uniform grid on the 3-simplex of two-relay schedules.

    Independent of the simplex code (it only reuses the single-cut evaluator).
    Grid points are (a, b, c, d)/steps with a + b + c + d = steps. For fixed
    (a, b) the objective is a minimum of lines in c, hence concave, so its grid
    maximum sits at the floor or ceiling of a kink or at an end of [0, steps-a-b];
    only those candidates are evaluated, which gives the exact grid maximum.
    """
    assert net.n == 2
    # v[omega][s]: flow of state s across cut omega
    v = np.array([[float(cut_value(net, s, o)) for s in range(4)] for o in range(4)])
    a, b = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
    keep = a + b <= steps
    a, b = a[keep].astype(float), b[keep].astype(float)
    rest = steps - a - b
    icpt = [v[o, 0] * a + v[o, 1] * b + v[o, 3] * rest for o in range(4)]
    slope = [v[o, 2] - v[o, 3] for o in range(4)]

    cands = [np.zeros_like(rest), rest]
    for p in range(4):
        for q in range(p + 1, 4):
            if slope[p] != slope[q]:
                x = np.clip((icpt[p] - icpt[q]) / (slope[q] - slope[p]), 0, rest)
                cands += [np.floor(x), np.ceil(x)]
    best = np.full_like(rest, -np.inf)
    for c in cands:
        c = np.clip(c, 0, rest)
        val = np.min([icpt[o] + slope[o] * c for o in range(4)], axis=0)
        best = np.maximum(best, val)
    return float(best.max()) / steps


def random_float_network(rng: random.Random, n: int, low: float = 0.05, high: float = 20.0) -> DiamondNetwork:
    return DiamondNetwork.from_pairs([(rng.uniform(low, high), rng.uniform(low, high)) for _ in range(n)])


def random_rational_network(rng: random.Random, n: int) -> DiamondNetwork:
    def q():
        return Fraction(rng.randint(1, 60), rng.randint(1, 9))
    return DiamondNetwork.from_pairs([(q(), q()) for _ in range(n)])


link = st.floats(min_value=0.01, max_value=100.0, allow_nan=False, allow_infinity=False)


@st.composite
def networks(draw, min_n: int = 1, max_n: int = 5):
    n = draw(st.integers(min_n, max_n))
    return DiamondNetwork.from_pairs([(draw(link), draw(link)) for _ in range(n)])


@st.composite
def rational_networks(draw, min_n: int = 1, max_n: int = 4):
    n = draw(st.integers(min_n, max_n))
    q = st.fractions(min_value=Fraction(1, 10), max_value=30, max_denominator=12)
    return DiamondNetwork.from_pairs([(draw(q), draw(q)) for _ in range(n)])
