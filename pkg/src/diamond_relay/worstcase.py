"""Networks on which the best relay achieves exactly the worst-case fraction.

Four families, all with theta = 2*pi/(n+2):

* ``even1``: n even, relays paired, every relay has unit capacity.
* ``even2``: n even, relay 1 = (1, L) and relay n = (L, 1) around paired interior relays.
* ``odd1``:  n odd, relay 1 = (1, L) followed by pairs.
* ``odd2``:  n odd, pairs followed by relay n = (L, 1); the mirror image of ``odd1``.

The ``L`` families use a large finite L in place of an infinite link.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from diamond_relay.capacity import (
    MAX_RELAYS,
    Schedule,
    approximate_capacity,
    schedule_rate,
    trivial_upper_bound,
)
from diamond_relay.errors import InvalidArgumentError
from diamond_relay.network import DiamondNetwork, RelayLinks, best_relay
from diamond_relay.theory import bound

DEFAULT_L = 1e6
MIN_L = 1e3


class FamilyId(str, enum.Enum):
    EVEN1 = "even1"
    EVEN2 = "even2"
    ODD1 = "odd1"
    ODD2 = "odd2"

    @property
    def needs_even(self) -> bool:
        return self in (FamilyId.EVEN1, FamilyId.EVEN2)

    @property
    def uses_L(self) -> bool:
        return self is not FamilyId.EVEN1


def _theta(n: int) -> float:
    return 2.0 * math.pi / (n + 2)


def _check_family_n(family: FamilyId, n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidArgumentError(f"n must be an integer, got {n!r}")
    if family.needs_even:
        if n < 2 or n % 2:
            raise InvalidArgumentError(f"family {family.value} needs an even n >= 2, got {n}")
    elif n < 3 or n % 2 == 0:
        raise InvalidArgumentError(f"family {family.value} needs an odd n >= 3, got {n}")
    if n > MAX_RELAYS:
        raise InvalidArgumentError(f"n = {n} exceeds {MAX_RELAYS}")


def _check_L(L) -> float:
    if not isinstance(L, (int, float)) or isinstance(L, bool) or not math.isfinite(L) or L < MIN_L:
        raise InvalidArgumentError(f"L must be a finite number >= {MIN_L:g}, got {L!r}")
    return float(L)


def _cos_pair(i: int, th: float) -> RelayLinks:
    """Unit-capacity pair built from differences of cosines."""
    num = 2.0 * math.sin(th) * math.sin(i * th)
    return RelayLinks(num / (math.cos(i * th) - math.cos((i + 1) * th)),
                      num / (math.cos((i - 1) * th) - math.cos(i * th)))


def _sin_pair(i: int, th: float) -> RelayLinks:
    """Unit-capacity pair built from sums of sines."""
    num = math.sin(i * th) + math.sin((i + 1) * th)
    return RelayLinks(num / math.sin((i + 1) * th), num / math.sin(i * th))


def worst_even_type1(n: int) -> DiamondNetwork:
    _check_family_n(FamilyId.EVEN1, n)
    th = _theta(n)
    relays = []
    for i in range(1, n // 2 + 1):
        relays += [_cos_pair(i, th)] * 2
    return DiamondNetwork(tuple(relays))


def worst_even_type2(n: int, L: float = DEFAULT_L) -> DiamondNetwork:
    _check_family_n(FamilyId.EVEN2, n)
    L = _check_L(L)
    th = _theta(n)
    relays = [RelayLinks(1.0, L)]
    for i in range(1, n // 2):
        relays += [_sin_pair(i, th)] * 2
    relays.append(RelayLinks(L, 1.0))
    return DiamondNetwork(tuple(relays))


def worst_odd_type1(n: int, L: float = DEFAULT_L) -> DiamondNetwork:
    _check_family_n(FamilyId.ODD1, n)
    L = _check_L(L)
    th = _theta(n)
    relays = [RelayLinks(1.0, L)]
    for i in range(1, (n - 1) // 2 + 1):
        relays += [_sin_pair(i, th)] * 2
    return DiamondNetwork(tuple(relays))


def worst_odd_type2(n: int, L: float = DEFAULT_L) -> DiamondNetwork:
    _check_family_n(FamilyId.ODD2, n)
    L = _check_L(L)
    th = _theta(n)
    relays = []
    for i in range(1, (n - 1) // 2 + 1):
        relays += [_cos_pair(i, th)] * 2
    relays.append(RelayLinks(L, 1.0))
    return DiamondNetwork(tuple(relays))


def worst_network(family: FamilyId | str, n: int, L: float = DEFAULT_L) -> DiamondNetwork:
    family = FamilyId(family)
    if family is FamilyId.EVEN1:
        return worst_even_type1(n)
    build = {FamilyId.EVEN2: worst_even_type2, FamilyId.ODD1: worst_odd_type1,
             FamilyId.ODD2: worst_odd_type2}[family]
    return build(n, L)


def _mask(relays) -> int:
    return sum(1 << (i - 1) for i in relays)


def canonical_schedule(family: FamilyId | str, n: int, L: float | None = None) -> Schedule:
    """Half/half schedule on the family's two transmit sets (keys are transmit bitmasks).

    Without ``L`` this is the limiting two-state schedule, in which a (1, L)
    relay never transmits and an (L, 1) relay never receives. At finite ``L``
    those cuts would carry nothing, so for the L families a weight of 1/L is
    moved from each state to a copy in which the (1, L) relay transmits and the
    (L, 1) relay receives; the rate then falls short of the limit by O(1/L).
    """
    family = FamilyId(family)
    _check_family_n(family, n)
    odds = list(range(1, n + 1, 2))
    evens = list(range(2, n + 1, 2))
    if family is FamilyId.EVEN1:
        s_o, s_e = odds, evens
    elif family is FamilyId.EVEN2:
        s_o, s_e = [i for i in odds if i >= 3] + [n], evens
    elif family is FamilyId.ODD1:
        s_o, s_e = [i for i in odds if i >= 3], evens
    else:
        s_o, s_e = odds, evens + [n]
    half = Fraction(1, 2)
    weights = [(_mask(s_o), half), (_mask(s_e), half)]
    if L is not None and family.uses_L:
        d = 1 / Fraction(_check_L(L))
        flip_on = 1 if family in (FamilyId.EVEN2, FamilyId.ODD1) else 0
        flip_off = 1 << (n - 1) if family in (FamilyId.EVEN2, FamilyId.ODD2) else 0
        weights = [(s, half - d) for s, _ in weights] + \
                  [((s | flip_on) & ~flip_off, d) for s, _ in weights]
    sched: Schedule = {}
    for s, w in weights:
        sched[s] = sched.get(s, Fraction(0)) + w
    return sched


@dataclass
class TightnessReport:
    n: int
    family: str
    L: float | None
    c1: float
    cn: float
    two_state_rate: float
    upper_bound: float
    bound: float
    ratio: float
    gap: float
    tol: float
    passed: bool

    FIELDS = ("n", "family", "L", "c1", "cn", "two_state_rate", "upper_bound",
              "bound", "ratio", "gap", "passed")

    def csv_row(self, digits: int = 9) -> str:
        d = asdict(self)
        out = []
        for k in self.FIELDS:
            v = d[k]
            if isinstance(v, bool):
                out.append("pass" if v else "fail")
            elif isinstance(v, float):
                out.append(f"{v:.{digits}g}")
            elif v is None:
                out.append("")
            else:
                out.append(str(v))
        return ",".join(out)


def verify_tightness(family: FamilyId | str, n: int, L: float = DEFAULT_L,
                     tol: float = 1e-6) -> TightnessReport:
    """Build the family's network, solve its LP and compare C1/Cn with the bound."""
    family = FamilyId(family)
    net = worst_network(family, n, L)
    _, c1 = best_relay(net)
    cn = approximate_capacity(net).value
    rate = schedule_rate(net, canonical_schedule(family, n, L))
    ub = trivial_upper_bound(net)
    b = bound(n)
    achieved = c1 / cn
    gap = abs(achieved - b)
    return TightnessReport(n, family.value, float(L) if family.uses_L else None, float(c1), float(cn),
                           float(rate), float(ub), b, achieved, gap, tol, gap <= tol)
