# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Custom exceptions for qwalk-si.

Every exception carries the process exit code the CLI reports for it.
"""

from __future__ import annotations

from typing import Any


class QWalkSIError(Exception):
    """Base exception for qwalk-si."""

    exit_code: int = 5


class ConfigurationError(QWalkSIError):
    """Malformed, missing or inconsistent configuration."""

    exit_code = 2


class DimensionMismatchError(ConfigurationError):
    """Operands live on spaces of different dimension."""

    pass


class InvalidGraphError(QWalkSIError):
    """Graph input is malformed or unsuitable for the operation."""

    exit_code = 3


class DisconnectedGraphError(InvalidGraphError):
    """A distance-based operation was given a disconnected graph."""

    pass


class NotDistanceRegularError(InvalidGraphError):
    """Stratum representatives disagree where distance-regularity requires equality."""

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        """Initialize with the disagreeing representatives.

        Args:
            message: Error message
            witness: Stratum index, vertices and the values that differ
        """
        super().__init__(message)
        self.witness = witness or {}


class AutomorphismSearchError(InvalidGraphError):
    """Automorphism search refused (graph too large and no generators)."""

    pass


class OffShellError(QWalkSIError):
    """Momentum point is not on the requested mass shell."""

    exit_code = 4

    def __init__(self, message: str, determinant: float = 0.0):
        """Initialize off-shell error.

        Args:
            message: Error message
            determinant: Determinant of the trivializing operator at the point
        """
        super().__init__(message)
        self.determinant = determinant


class ToleranceError(QWalkSIError):
    """A numerical check exceeded its tolerance."""

    exit_code = 5


class BranchAmbiguityError(ToleranceError):
    """The principal logarithm is ambiguous (eigenvalue at -1)."""

    def __init__(self, message: str, momenta: list[float] | None = None):
        """Initialize branch ambiguity error.

        Args:
            message: Error message
            momenta: Flagged momenta
        """
        super().__init__(message)
        self.momenta = momenta or []


class ChiralAxisError(ToleranceError):
    """No chiral axis exists, or the spectrum is gapless."""

    pass


class SpinorRepresentationError(ToleranceError):
    """Boost spinor representation fit residual is too large."""

    pass


class ContinuumLimitError(ToleranceError):
    """Refinement study cannot be carried out (gap closed or branch flags)."""

    pass


class GroupError(QWalkSIError):
    """Invalid finite group data."""

    exit_code = 2


class GroupAxiomError(GroupError):
    """Cayley table violates a group axiom."""

    pass


class AutomorphismError(GroupError):
    """Semidirect product action is not an automorphism or not a homomorphism."""

    pass


class StructuralActionError(GroupError):
    """Action does not permute the base sets of a projection valued measure."""

    pass
