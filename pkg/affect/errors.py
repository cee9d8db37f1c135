"""
Exception types raised by the library.

Every error derives from AffectError plus the builtin exception that
describes its nature, so callers can catch either.
"""

from pathlib import Path
from typing import Optional


class AffectError(Exception):
    """Base class for all library errors."""


# ------------------------------------------------------------
# Matrix and identity errors
# ------------------------------------------------------------

class AsymmetricMatrix(AffectError, ValueError):
    """Matrix asymmetry exceeds the symmetry tolerance."""


class NegativeDissimilarity(AffectError, ValueError):
    """A dissimilarity matrix has a negative entry or nonzero diagonal."""


class DimensionMismatch(AffectError, ValueError):
    """Shapes of matrices, vectors or id lists disagree."""


class IdMismatch(AffectError, ValueError):
    """Two objects that must share object ids do not."""


class EmptyIntersection(AffectError, ValueError):
    """No object id is shared between two consecutive time steps."""


# ------------------------------------------------------------
# Tracking and clustering errors
# ------------------------------------------------------------

class AlphaOutOfRange(AffectError, ValueError):
    """A forgetting factor lies outside [0, 1]."""


class WrongKind(AffectError, ValueError):
    """A similarity matrix was given where a dissimilarity is required, or vice versa."""


class KOutOfRange(AffectError, ValueError):
    """Requested cluster count is not within 1..n."""


class NotPSD(AffectError, ValueError):
    """Similarity matrix is not positive semidefinite within tolerance."""


class EmptyRange(AffectError, ValueError):
    """An empty range of cluster counts was given."""


class NonSquare(AffectError, ValueError):
    """A matrix that must be square is not."""


class NoConvergence(AffectError, RuntimeError):
    """An iterative numerical routine hit its iteration cap."""


# ------------------------------------------------------------
# Configuration and input errors
# ------------------------------------------------------------

class ConfigError(AffectError, ValueError):
    """Run configuration is malformed."""


class BadConfig(ConfigError):
    """Scenario configuration violates its invariants."""


class ParseError(AffectError, ValueError):
    """A CSV matrix file could not be parsed."""

    def __init__(
        self,
        message: str,
        path: Optional[Path] = None,
        line: Optional[int] = None
    ) -> None:
        self.path = path
        self.line = line

        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "

        super().__init__(f"{location}{message}")
