"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SchubertError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SchubertError, ValueError):
    """Malformed sequence, mismatched parameters, bad flags."""


class ContainmentError(InvalidInput):
    """beta does not lie in the Schubert variety of alpha."""


class NotAdmissible(SchubertError):
    """alpha fails the existence conditions for a small resolution."""

    def __init__(self, alpha, failures):
        self.alpha = alpha
        self.failures = list(failures)
        super().__init__(
            f"alpha={tuple(alpha.parts)} is not admissible: " + "; ".join(self.failures)
        )


class ConstructionFailure(SchubertError):
    """The merge procedure found no eligible valley before finishing."""


class GenericityError(SchubertError):
    """A torus weight vanished, so the weights are not generic."""


class IntegrityError(SchubertError):
    """An internal consistency check failed (non-integer sum, audit residue, ...)."""
