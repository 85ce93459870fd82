"""Exception types shared across the package."""


class HilbZetaError(Exception):
    """Base class for all package errors."""


class GermInputError(HilbZetaError):
    """Invalid germ description (exit code 1 at the CLI)."""


class TruncationError(HilbZetaError):
    """Input series not specified far enough for the requested box."""


class NonStabilizingError(HilbZetaError):
    """Delta/conductor did not stabilize below the box cap."""


class VerificationError(HilbZetaError):
    """An internal consistency check failed (exit code 2 at the CLI)."""


class ResourceGuardError(HilbZetaError):
    """Predicted workload exceeds the configured cap (exit code 3)."""
