"""Diamond network description, link-capacity conversion and normalization.

Relays are numbered from 1, as in the usual R_1..R_n notation; every index
returned by this module (best relay, permutations) is 1-based.

Link capacities are plain Python numbers. Networks built from ``int`` or
``Fraction`` values stay exact through :func:`scale` and :func:`normalize`;
anything involving a ``float`` is computed in double precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from pathlib import Path
from typing import Iterable, Sequence

from diamond_relay.errors import DegenerateNetworkError, InvalidArgumentError

Scalar = float | Fraction | int

# Float-mode tolerance on unit single-relay capacities after normalization.
NORMALIZE_TOL = 1e-12


@dataclass(frozen=True)
class RelayLinks:
    """Capacities of the source->relay (``ell``) and relay->destination (``r``) links."""

    ell: Scalar
    r: Scalar

    def __iter__(self):
        yield self.ell
        yield self.r


@dataclass(frozen=True)
class DiamondNetwork:
    relays: tuple[RelayLinks, ...]

    def __post_init__(self):
        object.__setattr__(self, "relays", tuple(
            rl if isinstance(rl, RelayLinks) else RelayLinks(*rl) for rl in self.relays))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Scalar]]) -> "DiamondNetwork":
        return cls(tuple(RelayLinks(ell, r) for ell, r in pairs))

    @property
    def n(self) -> int:
        return len(self.relays)

    @property
    def ells(self) -> list[Scalar]:
        return [rl.ell for rl in self.relays]

    @property
    def rs(self) -> list[Scalar]:
        return [rl.r for rl in self.relays]

    def pairs(self) -> list[tuple[Scalar, Scalar]]:
        return [(rl.ell, rl.r) for rl in self.relays]

    @property
    def is_exact(self) -> bool:
        """True when every capacity is an exact rational (int or Fraction)."""
        return all(_is_rational(v) for rl in self.relays for v in rl)

    def __len__(self) -> int:
        return len(self.relays)


@dataclass(frozen=True)
class NormalizedNetwork:
    """A network whose relays all have unit single-relay capacity, sorted by ``ell``.

    ``z[i] = ell[i] - 1`` and ``r[i] = 1 + 1/z[i]``; ``permutation[i]`` is the
    1-based index of the relay in the original network.
    """

    network: DiamondNetwork
    z: tuple[Scalar, ...]
    permutation: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.network.n


def _is_rational(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def _check_finite_nonneg(x, what: str):
    if not isinstance(x, Real) or isinstance(x, bool):
        raise InvalidArgumentError(f"{what} must be a real number, got {x!r}")
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{what} must be finite, got {x!r}")
    if x < 0:
        raise InvalidArgumentError(f"{what} must be >= 0, got {x!r}")


def links_from_gains(h_s_mag: float, h_d_mag: float) -> RelayLinks:
    """Convert channel-gain magnitudes to link capacities in bits per channel use."""
    _check_finite_nonneg(h_s_mag, "source-relay gain magnitude")
    _check_finite_nonneg(h_d_mag, "relay-destination gain magnitude")
    return RelayLinks(math.log2(1.0 + float(h_s_mag) ** 2), math.log2(1.0 + float(h_d_mag) ** 2))


def validate(net: DiamondNetwork) -> list[str]:
    """Return every invariant violation of ``net``; an empty list means valid."""
    errors = []
    if net.n == 0:
        errors.append("empty network")
    for i, rl in enumerate(net.relays, start=1):
        for name, v in (("ell", rl.ell), ("r", rl.r)):
            if not isinstance(v, Real) or isinstance(v, bool):
                errors.append(f"non-numeric capacity {name} at relay {i}")
            elif not math.isfinite(v):
                errors.append(f"non-finite capacity {name} at relay {i}")
            elif v < 0:
                errors.append(f"negative capacity at relay {i}")
    return errors


def require_valid(net: DiamondNetwork) -> None:
    errors = validate(net)
    if errors:
        raise InvalidArgumentError("; ".join(errors))


def sort_by_ell(net: DiamondNetwork) -> tuple[DiamondNetwork, list[int]]:
    """Stable sort of the relays by ``ell``; ``perm[new] = old`` (both 1-based)."""
    order = sorted(range(net.n), key=lambda i: net.relays[i].ell)
    return DiamondNetwork(tuple(net.relays[i] for i in order)), [i + 1 for i in order]


def scale(net: DiamondNetwork, alpha: Scalar) -> DiamondNetwork:
    if not isinstance(alpha, Real) or not math.isfinite(alpha) or alpha <= 0:
        raise InvalidArgumentError(f"scale factor must be positive and finite, got {alpha!r}")
    return DiamondNetwork(tuple(RelayLinks(rl.ell * alpha, rl.r * alpha) for rl in net.relays))


def single_relay_capacity(link: RelayLinks | Sequence[Scalar]) -> Scalar:
    """Half-duplex capacity ``ell*r/(ell+r)`` of operating one relay alone (0 for a dead link pair)."""
    ell, r = link
    if ell + r == 0:
        return 0 * ell
    if _is_rational(ell) and _is_rational(r):
        return Fraction(ell) * r / (ell + r)
    return ell * r / (ell + r)


def best_relay(net: DiamondNetwork) -> tuple[int, Scalar]:
    """1-based index and capacity of the best single relay; ties go to the lowest index."""
    require_valid(net)
    best_i, best_v = 0, single_relay_capacity(net.relays[0])
    for i in range(1, net.n):
        v = single_relay_capacity(net.relays[i])
        if v > best_v:
            best_i, best_v = i, v
    return best_i + 1, best_v


def normalize(net: DiamondNetwork) -> NormalizedNetwork:
    """Rescale every relay to unit single-relay capacity and sort by ``ell``.

    First each relay i is scaled by C1(N_k)/C1(N_i), k being the best relay,
    so all relays match the best one; then the whole network is divided by
    C1(N_k). Capacity ratios are unchanged by either step.
    """
    require_valid(net)
    caps = [single_relay_capacity(rl) for rl in net.relays]
    for i, (rl, c) in enumerate(zip(net.relays, caps), start=1):
        if rl.ell == 0 or rl.r == 0 or c == 0:
            raise DegenerateNetworkError(f"relay {i} is dead (ell={rl.ell!r}, r={rl.r!r})")
    k, ck = best_relay(net)
    equalized = [RelayLinks(rl.ell * (ck / c), rl.r * (ck / c)) for rl, c in zip(net.relays, caps)]
    unit = scale(DiamondNetwork(tuple(equalized)), 1 / ck)
    ordered, perm = sort_by_ell(unit)
    # ell/r is invariant under both scalings and equals z exactly in theory;
    # it is the numerically safer of the two expressions when ell is close to 1.
    z = tuple(Fraction(rl.ell) / rl.r if ordered.is_exact else rl.ell / rl.r for rl in ordered.relays)
    if not ordered.is_exact:
        for i, rl in enumerate(ordered.relays, start=1):
            if abs(single_relay_capacity(rl) - 1.0) > NORMALIZE_TOL:
                raise DegenerateNetworkError(
                    f"relay {i} cannot be normalized to unit capacity in double precision")
    return NormalizedNetwork(ordered, z, tuple(perm))


# -- JSON file format --------------------------------------------------------

def network_from_dict(data: dict, exact: bool = False) -> DiamondNetwork:
    """Parse ``{"relays": [{"ell", "r"}...]}`` or ``{"gains": [{"hs", "hd"}...]}``."""
    if not isinstance(data, dict):
        raise InvalidArgumentError("network JSON must be an object")
    has_relays, has_gains = "relays" in data, "gains" in data
    if has_relays == has_gains:
        raise InvalidArgumentError('network JSON needs exactly one of "relays" or "gains"')
    conv = _parse_number_exact if exact else _parse_number
    try:
        if has_relays:
            relays = tuple(RelayLinks(conv(d["ell"]), conv(d["r"])) for d in data["relays"])
        else:
            relays = tuple(links_from_gains(_parse_number(d["hs"]), _parse_number(d["hd"]))
                           for d in data["gains"])
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed network JSON: {exc}") from exc
    net = DiamondNetwork(relays)
    require_valid(net)
    return net


def _parse_number(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float, str, Fraction)):
        raise InvalidArgumentError(f"not a number: {v!r}")
    try:
        return float(Fraction(v)) if isinstance(v, str) else float(v)
    except ValueError as exc:
        raise InvalidArgumentError(f"not a number: {v!r}") from exc


def _parse_number_exact(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, float, str, Fraction)):
        raise InvalidArgumentError(f"not a number: {v!r}")
    if isinstance(v, float) and not math.isfinite(v):
        raise InvalidArgumentError(f"not finite: {v!r}")
    try:
        return Fraction(v)
    except ValueError as exc:
        raise InvalidArgumentError(f"not a number: {v!r}") from exc


def _json_number(v: Scalar):
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return float(v)


def network_to_dict(net: DiamondNetwork) -> dict:
    return {"relays": [{"ell": _json_number(rl.ell), "r": _json_number(rl.r)} for rl in net.relays]}


def load_network(path: str | Path, exact: bool = False) -> DiamondNetwork:
    text = Path(path).read_text()
    try:
        # Exact mode keeps decimal literals such as 0.1 as the decimal rational.
        data = json.loads(text, parse_float=Fraction) if exact else json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: invalid JSON: {exc}") from exc
    return network_from_dict(data, exact=exact)


def dump_network(net: DiamondNetwork, path: str | Path | None = None, extra: dict | None = None) -> str:
    data = network_to_dict(net)
    if extra:
        data.update(extra)
    text = json.dumps(data, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
