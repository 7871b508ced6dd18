"""Exception hierarchy for kronload.

Library code raises these; only the CLI turns them into exit codes.
"""


class KronloadError(Exception):
    """Base class for all kronload errors."""

    exit_code = 1
    tag = "error"


class UsageError(KronloadError):
    """Bad command-line usage."""

    exit_code = 1


class DomainError(KronloadError, ValueError):
    """Invalid mathematical input: bad partition, size mismatch, n out of range."""

    exit_code = 2


class ConvergenceError(DomainError):
    """Power iteration did not settle on a dominant eigenvector."""


class InconsistentThresholdsError(DomainError):
    """Both the r-rule and the b-rule fired for the same triple."""


class VerificationError(KronloadError):
    """A reproduced value disagrees with its embedded fixture."""

    exit_code = 3


class CacheCorruptionError(KronloadError):
    """A cache file failed its checksum."""

    exit_code = 3
    tag = "cache"


class ResourceBudgetError(KronloadError, RuntimeError):
    """The requested computation exceeds the configured budget."""

    exit_code = 4


class CharacterTableError(ArithmeticError):
    """A character sum was not divisible by n! (corrupted table)."""
