"""Exception hierarchy. Every domain error is also a ValueError."""


class DiamondRelayError(ValueError):
    pass


class InvalidArgumentError(DiamondRelayError):
    pass


class DegenerateNetworkError(DiamondRelayError):
    """A network has a dead relay or zero capacity where a positive one is needed."""


class SizeLimitError(DiamondRelayError):
    pass


class DegenerateRootError(DiamondRelayError):
    """Characteristic polynomial has a repeated root (sigma = +-2)."""


class ConsistencyError(DiamondRelayError):
    """An internal cross-check between two computation paths failed."""
