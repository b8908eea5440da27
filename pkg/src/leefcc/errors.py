"""Exception classes for leefcc."""


class LeeFCCError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(LeeFCCError, ValueError):
    """Vectors or matrices whose length, modulus or order do not match."""


class CapacityError(LeeFCCError):
    """A computation would exceed a configured size or counting width."""


class BudgetExhausted(LeeFCCError):
    """An exact search ran out of nodes (or time) before reaching a verdict.

    ``lower`` and ``upper`` bracket the quantity that was being computed.
    """

    def __init__(self, msg, lower=None, upper=None):
        super().__init__(msg)
        self.lower = lower
        self.upper = upper


class VerificationError(LeeFCCError):
    """A code or encoder does not meet the distance requirements it claims.

    ``witness`` holds the first violating pair and the distance it achieves.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class UncorrectableError(LeeFCCError):
    """No encoded message lies within the correction radius of a received word."""


class DecodingFault(LeeFCCError, AssertionError):
    """Two messages with different function values both decode a received word.

    Impossible for a certified encoder; raised as a hard fault.
    """


class ConstructionError(LeeFCCError):
    """Greedy construction found no admissible codeword for position ``index`` (1-based)."""

    def __init__(self, msg, index):
        super().__init__(msg)
        self.index = index
