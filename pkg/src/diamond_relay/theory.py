"""Closed forms behind the worst-case best-relay ratio.

The extremal problem groups the normalized relay parameters z into m
distinct values beta_1 < ... < beta_m. With ``b_i`` defined through
``beta_i = b_{i-1} / b_i``, equalizing the objective terms G_i forces the
three-term recurrence ``b_{i+1} - sigma * b_i + b_{i-1} = 0``; its boundary
conditions depend on whether beta_1 is zero and whether beta_m is infinite,
which gives the four :class:`BoundaryCase` values.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from diamond_relay.errors import ConsistencyError, DegenerateRootError, InvalidArgumentError

RECURRENCE_TOL = 1e-9
TERMINAL_TOL = 1e-8


class BoundaryCase(enum.Enum):
    I = "beta1>0,betam<inf"
    II = "beta1>0,betam=inf"
    III = "beta1=0,betam<inf"
    IV = "beta1=0,betam=inf"

    @property
    def first_positive(self) -> bool:
        return self in (BoundaryCase.I, BoundaryCase.II)

    @property
    def last_finite(self) -> bool:
        return self in (BoundaryCase.I, BoundaryCase.III)


class _Infinity:
    """Symbolic beta_m = infinity. Never enters arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __float__(self):
        return math.inf


INFINITY = _Infinity()


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"number of relays must be an integer >= 1, got {n!r}")


def opt4(n: int) -> float:
    """Largest possible approximate capacity of a normalized n-relay network: 2 + 2cos(2pi/(n+2))."""
    _check_n(n)
    return 2.0 + 2.0 * math.cos(2.0 * math.pi / (n + 2))


def bound(n: int) -> float:
    """Guaranteed fraction of the approximate capacity that the best single relay achieves."""
    return 1.0 / opt4(n)


def sigma_nm(m: int, case: BoundaryCase) -> float:
    if m < 1:
        raise InvalidArgumentError("m must be >= 1")
    denom = {BoundaryCase.I: 2 * m + 2, BoundaryCase.II: 2 * m + 1,
             BoundaryCase.III: 2 * m + 1, BoundaryCase.IV: 2 * m}[case]
    return 2.0 * math.cos(2.0 * math.pi / denom)


def min_m(case: BoundaryCase) -> int:
    # beta_1 = 0 and beta_m = inf cannot hold for a single group
    return 2 if case is BoundaryCase.IV else 1


def max_m(n: int, case: BoundaryCase) -> int:
    """Largest group count allowed by the group-size constraints for n relays."""
    _check_n(n)
    return {BoundaryCase.I: n // 2, BoundaryCase.II: (n + 1) // 2,
            BoundaryCase.III: (n + 1) // 2, BoundaryCase.IV: (n + 2) // 2}[case]


def valid_group_counts(n: int, case: BoundaryCase) -> range:
    return range(min_m(case), max_m(n, case) + 1)


def optimal_pairs(n: int, tol: float = 1e-12) -> list[tuple[int, BoundaryCase]]:
    """Every (m, case) whose sigma reaches the maximum for n relays."""
    pairs = [(m, c) for c in BoundaryCase for m in valid_group_counts(n, c)]
    best = max(sigma_nm(m, c) for m, c in pairs)
    return [(m, c) for m, c in pairs if sigma_nm(m, c) >= best - tol]


def characteristic_roots(sigma: float) -> tuple[complex, complex]:
    """Roots U, V of X^2 - sigma X + 1 = 0, with U using the principal square root."""
    disc = sigma * sigma - 4.0
    if abs(disc) < 1e-15:
        raise DegenerateRootError(f"sigma = {sigma} gives a repeated characteristic root")
    root = cmath.sqrt(disc)
    return (sigma + root) / 2, (sigma - root) / 2


@dataclass(frozen=True)
class RecurrenceSolution:
    m: int
    case: BoundaryCase
    sigma: float
    U: complex
    V: complex
    u: complex
    v: complex
    b: tuple[float, ...]


def recurrence_solution(m: int, case: BoundaryCase) -> RecurrenceSolution:
    """Solve for b_0..b_m and cross-check the closed form against the recurrence."""
    if m < min_m(case):
        raise InvalidArgumentError(f"case {case.name} needs m >= {min_m(case)}")
    sigma = sigma_nm(m, case)
    U, V = characteristic_roots(sigma)
    if case.first_positive:
        b0, b1 = 1.0, sigma + 1.0
        u, v = (U - 1) / (sigma - 2), (V - 1) / (sigma - 2)
    else:
        b0, b1 = 0.0, 1.0
        root = cmath.sqrt(sigma * sigma - 4.0)
        u, v = 1 / root, -1 / root

    b = [b0, b1]
    for _ in range(2, m + 1):
        b.append(sigma * b[-1] - b[-2])
    b = b[: m + 1]

    for i, bi in enumerate(b):
        closed = u * U ** i + v * V ** i
        if abs(closed.imag) > RECURRENCE_TOL or abs(closed.real - bi) > RECURRENCE_TOL * (1 + abs(bi)):
            raise ConsistencyError(f"closed form b_{i} = {closed} disagrees with recurrence value {bi}")

    if case.last_finite:
        bad = abs(b[m - 1] - (sigma + 1.0) * b[m]) > TERMINAL_TOL * (1 + abs(b[m - 1]))
    else:
        bad = abs(b[m]) > TERMINAL_TOL * (1 + max(abs(x) for x in b))
    if bad:
        raise ConsistencyError(f"terminal condition fails for m={m}, case {case.name}: b={b}")
    return RecurrenceSolution(m, case, sigma, U, V, u, v, tuple(b))


@dataclass(frozen=True)
class BetaProfile:
    """Grouped optimum: relays ``t_{j-1}+1 .. t_j`` (1-based, t_0 = 0) all take ``betas[j-1]``."""

    n: int
    m: int
    case: BoundaryCase
    betas: tuple
    boundaries: tuple[int, ...]
    sigma: float

    @property
    def group_sizes(self) -> list[int]:
        edges = (0,) + self.boundaries
        return [edges[j + 1] - edges[j] for j in range(self.m)]

    def z_values(self) -> list:
        """z_1..z_n expanded from the groups (INFINITY stays symbolic)."""
        out = []
        for beta, size in zip(self.betas, self.group_sizes):
            out.extend([beta] * size)
        return out


def _min_group_sizes(m: int, case: BoundaryCase) -> list[int]:
    sizes = [2] * m
    if not case.first_positive:
        sizes[0] = 1
    if not case.last_finite:
        sizes[-1] = 1
    return sizes


def beta_profile(n: int, m: int, case: BoundaryCase) -> BetaProfile:
    _check_n(n)
    if m not in valid_group_counts(n, case):
        raise InvalidArgumentError(
            f"m = {m} outside [{min_m(case)}:{max_m(n, case)}] for n = {n}, case {case.name}")
    rec = recurrence_solution(m, case)
    b = rec.b
    betas = []
    for i in range(1, m + 1):
        if i == m and not case.last_finite:
            betas.append(INFINITY)
        elif i == 1 and not case.first_positive:
            betas.append(0.0)
        else:
            betas.append(b[i - 1] / b[i])
    finite = [x for x in betas if x is not INFINITY]
    if any(x < 0 for x in finite) or any(finite[k] >= finite[k + 1] for k in range(len(finite) - 1)):
        raise ConsistencyError(f"betas are not strictly increasing: {betas}")

    sizes = _min_group_sizes(m, case)
    slack = n - sum(sizes)
    if slack < 0:
        raise InvalidArgumentError(f"{m} groups do not fit into {n} relays for case {case.name}")
    sizes[-1] += slack
    boundaries, acc = [], 0
    for s in sizes:
        acc += s
        boundaries.append(acc)
    return BetaProfile(n, m, case, tuple(betas), tuple(boundaries), rec.sigma)


def G_values(profile: BetaProfile) -> list[float]:
    """G_0..G_m for the profile; a G that cannot bind is returned as ``math.inf``."""
    betas = profile.betas
    m = profile.m

    def recip(beta):
        return 0.0 if beta is INFINITY else 1.0 / beta

    out = [math.inf if betas[0] == 0 else 1.0 + recip(betas[0])]
    for i in range(1, m):
        out.append(2.0 + betas[i - 1] + recip(betas[i]))
    out.append(math.inf if betas[-1] is INFINITY else 1.0 + betas[-1])
    return out
