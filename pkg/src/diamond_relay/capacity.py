"""Approximate capacity of a half-duplex diamond network as a max-min linear program.

A *state* is a bitmask whose bit ``i-1`` is set when relay i transmits; a
*cut* is a bitmask whose bit ``i-1`` is set when relay i sits on the source
side. States and cuts are enumerated in ascending bitmask order, which fixes
the column and row layout of the LP built by :func:`build_full_lp`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from diamond_relay import lp as lpcore
from diamond_relay.errors import (
    ConsistencyError,
    DegenerateNetworkError,
    InvalidArgumentError,
    SizeLimitError,
)
from diamond_relay.network import (
    DiamondNetwork,
    NormalizedNetwork,
    Scalar,
    best_relay,
    require_valid,
)

log = logging.getLogger(__name__)

MAX_RELAYS = 12
SCHEDULE_SUM_TOL = 1e-12

Schedule = dict[int, Scalar]


@dataclass
class CapacityResult:
    value: Scalar
    schedule: Schedule
    tight_cuts: list[int]
    support_size: int
    mode: str = "float"
    pivots: int = 0
    certificate: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        exact = self.mode == "exact"
        return {
            "value": float(self.value),
            "exact_value": str(self.value) if exact else None,
            "schedule": {str(s): _decimal_string(v, exact) for s, v in sorted(self.schedule.items())},
            "tight_cuts": list(self.tight_cuts),
            "support_size": self.support_size,
            "mode": self.mode,
            "pivots": self.pivots,
        }


@dataclass
class ReducedLpSolution:
    value: Scalar
    alpha: list[Scalar]


def _decimal_string(v, exact: bool) -> str:
    # Exact values keep the p/q form, which Fraction() parses back losslessly.
    return str(Fraction(v)) if exact else repr(float(v))


def _check_size(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError("network needs at least one relay")
    if n > MAX_RELAYS:
        raise SizeLimitError(f"n = {n} exceeds the supported maximum of {MAX_RELAYS} relays")


def _bits(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def cut_value(net: DiamondNetwork, s: int, omega: int) -> Scalar:
    """Flow of state ``s`` across cut ``omega``.

    Largest ``ell`` among receiving relays on the destination side plus the
    largest ``r`` among transmitting relays on the source side; the maximum
    over an empty set is 0.
    """
    n = net.n
    full = (1 << n) - 1
    if not (0 <= s <= full and 0 <= omega <= full):
        raise InvalidArgumentError("state and cut bitmasks must fit the number of relays")
    zero = 0 * net.relays[0].ell
    rx = ~s & ~omega & full
    tx = s & omega
    best_l = max((net.relays[i].ell for i in _bits(rx, n)), default=zero)
    best_r = max((net.relays[i].r for i in _bits(tx, n)), default=zero)
    return best_l + best_r


def _subset_max(values: list, zero) -> list:
    """``out[mask] = max(values[i] for i in mask)``, 0 for the empty mask."""
    out = [zero] * (1 << len(values))
    for mask in range(1, len(out)):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = out[mask ^ low]
        out[mask] = values[i] if values[i] > rest else rest
    return out


def cut_matrix(net: DiamondNetwork, exact: bool = False) -> np.ndarray:
    """Matrix ``M[omega, s]`` of all cut values (float, or Fraction objects when exact)."""
    _check_size(net.n)
    n = net.n
    full = (1 << n) - 1
    masks = np.arange(1 << n)
    if exact:
        ells = [lpcore.to_fraction(v) for v in net.ells]
        rs = [lpcore.to_fraction(v) for v in net.rs]
        max_l = np.array(_subset_max(ells, Fraction(0)), dtype=object)
        max_r = np.array(_subset_max(rs, Fraction(0)), dtype=object)
    else:
        max_l = np.array(_subset_max([float(v) for v in net.ells], 0.0))
        max_r = np.array(_subset_max([float(v) for v in net.rs], 0.0))
    rx = ~masks[None, :] & ~masks[:, None] & full
    tx = masks[None, :] & masks[:, None]
    return max_l[rx] + max_r[tx]


def build_full_lp(net: DiamondNetwork, exact: bool = False) -> lpcore.LinearProgram:
    """Variables ``[t, lambda_0 .. lambda_{2^n-1}]``; one ``<=`` row per cut, then ``sum(lambda) == 1``."""
    require_valid(net)
    _check_size(net.n)
    M = cut_matrix(net, exact)
    k = M.shape[0]
    if exact:
        one, zero = Fraction(1), Fraction(0)
        A_ub = np.empty((k, k + 1), dtype=object)
        A_ub[:, 0] = one
        A_ub[:, 1:] = -M
        b_ub = np.array([zero] * k, dtype=object)
        A_eq = np.array([[zero] + [one] * k], dtype=object)
        b_eq = np.array([one], dtype=object)
        c = np.array([one] + [zero] * k, dtype=object)
    else:
        A_ub = np.hstack([np.ones((k, 1)), -M])
        b_ub = np.zeros(k)
        A_eq = np.concatenate([[0.0], np.ones(k)])[None, :]
        b_eq = np.ones(1)
        c = np.zeros(k + 1)
        c[0] = 1.0
    nonneg = np.ones(k + 1, dtype=bool)
    nonneg[0] = False
    return lpcore.LinearProgram(c, A_ub, b_ub, A_eq, b_eq, nonneg)


def approximate_capacity(net: DiamondNetwork, mode: str = "float") -> CapacityResult:
    """Solve the cut-set LP over all 2^n schedules and certificate-check the optimum."""
    if mode not in ("float", "exact"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    require_valid(net)
    _check_size(net.n)
    exact = mode == "exact"
    prog = build_full_lp(net, exact=exact)
    sol = lpcore.solve(prog, mode)
    if sol.status != lpcore.OPTIMAL:
        # Any schedule is feasible, and t is bounded by the Omega = full cut.
        raise ConsistencyError(f"capacity LP reported {sol.status}")
    violations = lpcore.check_certificate(prog, sol)
    if violations:
        raise ConsistencyError("capacity LP certificate failed: " + "; ".join(violations[:5]))
    lam = sol.primal[1:]
    if exact:
        schedule = {s: v for s, v in enumerate(lam) if v != 0}
        value = sol.value
    else:
        kept = {s: float(v) for s, v in enumerate(lam) if v > SCHEDULE_SUM_TOL}
        total = math.fsum(kept.values())
        schedule = {s: v / total for s, v in kept.items()}
        value = max(float(sol.value), 0.0)
    # position 1 is the rate variable t
    support_size = sum(1 for j in lpcore.support(sol) if j > 1)
    tight = sorted(i for i in sol.tight if i < prog.num_ub)
    log.debug("n=%d mode=%s value=%s pivots=%d support=%d", net.n, mode, value, sol.pivots, support_size)
    return CapacityResult(value, schedule, tight, support_size, mode, sol.pivots, violations)


def _check_schedule(sched: Mapping[int, Scalar], n: int) -> None:
    if not sched:
        raise InvalidArgumentError("schedule is empty")
    full = (1 << n) - 1
    exact = all(isinstance(v, (int, Fraction)) for v in sched.values())
    for s, v in sched.items():
        if not (0 <= int(s) <= full):
            raise InvalidArgumentError(f"state {s} does not fit {n} relays")
        if v < 0:
            raise InvalidArgumentError(f"state {s} has negative mass {v}")
    total = sum(sched.values()) if exact else math.fsum(float(v) for v in sched.values())
    if (exact and total != 1) or (not exact and abs(total - 1.0) > SCHEDULE_SUM_TOL):
        raise InvalidArgumentError(f"schedule sums to {total}, not 1")


def schedule_rate(net: DiamondNetwork, sched: Mapping[int, Scalar]) -> Scalar:
    """Rate achieved by a fixed schedule: the smallest lambda-weighted cut value."""
    require_valid(net)
    _check_size(net.n)
    _check_schedule(sched, net.n)
    exact = net.is_exact and all(isinstance(v, (int, Fraction)) for v in sched.values())
    states = [int(s) for s in sched]
    if exact:
        M = cut_matrix(net, exact=True)
        weights = [Fraction(sched[s]) for s in sched]
        return min(sum((M[o, s] * w for s, w in zip(states, weights)), Fraction(0))
                   for o in range(M.shape[0]))
    M = cut_matrix(net)
    weights = np.array([float(v) for v in sched.values()])
    return float((M[:, states] @ weights).min())


def trivial_upper_bound(net: DiamondNetwork) -> Scalar:
    """Full-duplex bound ``min(max ell, max r)`` from the two cuts Omega = {} and Omega = all relays."""
    require_valid(net)
    return min(max(net.ells), max(net.rs))


def ratio(net: DiamondNetwork, mode: str = "float") -> Scalar:
    """Best single-relay capacity divided by the approximate capacity of the whole network."""
    cn = approximate_capacity(net, mode).value
    if cn <= 0:
        raise DegenerateNetworkError("network has zero approximate capacity")
    _, c1 = best_relay(net)
    if net.n == 1:
        # the LP optimum is C1 itself; avoid returning 1 - ulp
        out = c1 / c1
    else:
        out = c1 / cn
    return out if mode == "exact" else float(out)


# -- reduced LP over the nested cuts Omega_t = [t+1:n] -----------------------

def _z_ext(z, i: int):
    """z with the sentinels z_i = -1 outside [1:n] (1-based)."""
    return z[i - 1] if 1 <= i <= len(z) else -1


def _recip_plus_one(zi):
    # 1/z + 1, which is exactly 0 at the sentinel -1
    if zi == -1:
        return 0 * zi
    return 1 / zi + 1


def _g_terms(z, t: int):
    """Constant part and alpha coefficients of g_t: ``g_t = const + ca * a_t + cb * a_{t+1}``."""
    A = _z_ext(z, t - 1) + 1
    B = _z_ext(z, t) + 1
    C = _recip_plus_one(_z_ext(z, t + 1))
    D = _recip_plus_one(_z_ext(z, t + 2))
    return A + C, B - A, D - C


def g_function(z, alpha, t: int) -> Scalar:
    """Upper bound on the value of cut ``Omega_t`` for sorted, normalized relays.

    ``z`` and ``alpha`` are length-n sequences for relays 1..n; ``alpha[i-1]``
    is the fraction of time relay i receives. Indices outside [1:n] read as
    z = -1 and alpha = 0.
    """
    n = len(z)
    if len(alpha) != n:
        raise InvalidArgumentError("z and alpha must have the same length")
    if not 0 <= t <= n:
        raise InvalidArgumentError(f"t must lie in [0:{n}]")
    a = lambda i: alpha[i - 1] if 1 <= i <= n else 0  # noqa: E731
    abar = lambda i: 1 - a(i)  # noqa: E731
    return (abar(t) * (_z_ext(z, t - 1) + 1) + a(t) * (_z_ext(z, t) + 1)
            + abar(t + 1) * _recip_plus_one(_z_ext(z, t + 1))
            + a(t + 1) * _recip_plus_one(_z_ext(z, t + 2)))


def reduced_lp(norm: NormalizedNetwork, mode: str = "float") -> ReducedLpSolution:
    """Maximize Gamma over alpha in [0,1]^n subject to Gamma <= g_t for t in [0:n]."""
    z = list(norm.z)
    n = len(z)
    exact = mode == "exact"
    if exact:
        z = [lpcore.to_fraction(v) for v in z]
    else:
        z = [float(v) for v in z]
    if any(v <= 0 for v in z):
        raise InvalidArgumentError("normalized z values must be positive")
    if any(z[i] > z[i + 1] for i in range(n - 1)):
        raise InvalidArgumentError("normalized network must be sorted by ell")
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    # variables: Gamma, alpha_1..alpha_n
    rows, rhs = [], []
    for t in range(n + 1):
        const, ca, cb = _g_terms(z, t)
        row = [one] + [zero] * n
        if 1 <= t <= n:
            row[t] = row[t] - ca
        if t + 1 <= n:
            row[t + 1] = row[t + 1] - cb
        rows.append(row)
        rhs.append(const)
    for i in range(1, n + 1):
        row = [zero] * (n + 1)
        row[i] = one
        rows.append(row)
        rhs.append(one)
    dtype = object if exact else float
    c = np.array([one] + [zero] * n, dtype=dtype)
    nonneg = np.ones(n + 1, dtype=bool)
    nonneg[0] = False
    prog = lpcore.LinearProgram(c, np.array(rows, dtype=dtype), np.array(rhs, dtype=dtype), nonneg=nonneg)
    sol = lpcore.solve(prog, mode)
    if sol.status != lpcore.OPTIMAL:
        raise ConsistencyError(f"reduced LP reported {sol.status}")
    violations = lpcore.check_certificate(prog, sol)
    if violations:
        raise ConsistencyError("reduced LP certificate failed: " + "; ".join(violations[:5]))
    return ReducedLpSolution(sol.value, list(sol.primal[1:]))
