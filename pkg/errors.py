"""Exception hierarchy for prmforge.

Each error carries the process exit code the CLI maps it to:
1 for usage problems, 2 for hypothesis violations, 3 for size overflow.
"""

from typing import Optional


class PrmForgeError(Exception):
    """Base class for all prmforge errors."""
    exit_code = 1


class UsageError(PrmForgeError):
    """Bad arguments or malformed input text."""
    exit_code = 1


class DimensionMismatch(PrmForgeError):
    """Variable counts or vector lengths disagree."""
    exit_code = 1


class RankOutOfRange(PrmForgeError):
    """A rank r lies outside 1..C(m+d, d) (or the operation's range)."""
    exit_code = 1


class DivisionByZero(PrmForgeError, ZeroDivisionError):
    """Division by, or inversion of, the zero field element."""
    exit_code = 1


class CacheCorrupt(PrmForgeError):
    """A cache line could not be decoded."""
    exit_code = 1


class HypothesisViolated(PrmForgeError):
    """Parameters fall outside the stated hypotheses of a formula."""
    exit_code = 2


class NotPrime(HypothesisViolated):
    """The characteristic passed to make_field is not prime."""


class ReducibleModulus(HypothesisViolated):
    """The supplied modulus is not irreducible (or not monic of degree e)."""


class UnsupportedFieldSize(HypothesisViolated):
    """No modulus is available for the requested field size."""


class DegreeTooLarge(HypothesisViolated):
    """The degree exceeds the range a code construction supports."""


class DegreeDivisible(HypothesisViolated):
    """q - 1 divides d, so the duality statement does not apply."""


class SizeOverflow(PrmForgeError):
    """An enumeration or search would exceed its configured cap."""
    exit_code = 3

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message)
        self.hint = hint

    def __str__(self) -> str:
        base = super().__str__()
        return f"{base} ({self.hint})" if self.hint else base
