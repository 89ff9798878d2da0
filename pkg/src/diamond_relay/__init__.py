"""Approximate capacity and best-relay guarantees for half-duplex diamond relay networks."""

from diamond_relay.errors import (
    ConsistencyError,
    DegenerateNetworkError,
    DegenerateRootError,
    DiamondRelayError,
    InvalidArgumentError,
    SizeLimitError,
)
from diamond_relay.network import (
    DiamondNetwork,
    NormalizedNetwork,
    RelayLinks,
    best_relay,
    links_from_gains,
    normalize,
    scale,
    single_relay_capacity,
    sort_by_ell,
    validate,
)
from diamond_relay.capacity import (
    CapacityResult,
    approximate_capacity,
    ratio,
    schedule_rate,
    trivial_upper_bound,
)
from diamond_relay.theory import bound, opt4

__version__ = "0.1.0"

__all__ = [
    "CapacityResult",
    "ConsistencyError",
    "DegenerateNetworkError",
    "DegenerateRootError",
    "DiamondNetwork",
    "DiamondRelayError",
    "InvalidArgumentError",
    "NormalizedNetwork",
    "RelayLinks",
    "SizeLimitError",
    "approximate_capacity",
    "best_relay",
    "bound",
    "links_from_gains",
    "normalize",
    "opt4",
    "ratio",
    "scale",
    "schedule_rate",
    "single_relay_capacity",
    "sort_by_ell",
    "trivial_upper_bound",
    "validate",
]
