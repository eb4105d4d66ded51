# convequiv: state-space analysis and equivalence of convolutional codes
# Copyright (C) 2026 the convequiv developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Core type definitions for convequiv.

This module defines the error hierarchy, the record schemas returned by the
analysis functions, and the type aliases used for the example catalogue.

All errors derive from ``ValueError`` so callers that already guard against
bad input with ``except ValueError`` keep working.
"""

from typing import Callable, TypeAlias, TypedDict

# ============================================================================
# Errors
# ============================================================================


class FieldMismatchError(ValueError):
    """Operands live over different finite fields."""


class SingularMatrixError(ValueError):
    """A matrix that must be invertible is singular."""


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class RankDeficientError(ValueError):
    """A polynomial matrix does not have full row rank."""


class SearchCapExceeded(ValueError):
    """
    An exhaustive enumeration would exceed its configured cap.

    Attributes:
        size: Number of candidates the search would have to visit
        cap: The cap that was in force
    """

    def __init__(self, message: str, size: int = 0, cap: int = 0):
        super().__init__(message)
        self.size = size
        self.cap = cap


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class NotBasicError(PreconditionError):
    """The encoder is not basic (it has no polynomial right inverse)."""


class NotReducedError(PreconditionError):
    """The encoder is not (semi-)reduced."""


class ZeroForneyIndexError(PreconditionError):
    """The encoder has a Forney index equal to zero."""


class NotNilpotentError(PreconditionError):
    """The state matrix A of a system is not nilpotent."""


class NotCanonicalError(PreconditionError):
    """The system is not both controllable and observable."""


class ParseError(ValueError):
    """
    A text input could not be parsed.

    Attributes:
        line: 1-based line number of the offending input (0 if unknown)
        column: 1-based column number (0 if unknown)
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f" (line {line}, column {column})" if line else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


# ============================================================================
# Record schemas
# ============================================================================


class ReductionStats(TypedDict):
    """
    Dimensions seen while reducing a realization to a canonical one.

    Fields:
        original_order: State dimension of the input system
        controllable_order: Dimension of the reachable subspace
        canonical_order: State dimension after removing unobservable states
    """
    original_order: int
    controllable_order: int
    canonical_order: int


class AnalysisReport(TypedDict):
    """
    Summary of the structural properties of an encoder.

    Fields:
        field: Field literal, e.g. "GF(2)"
        k: Number of rows (code dimension)
        n: Number of columns (code length)
        degree: Maximal degree of the full-size minors
        row_degrees: Row degrees of the encoder as given
        forney_indices: Row degrees of the Popov form, largest first
        mcmillan_degree: State dimension of a canonical realization
        basic: Whether the encoder has a polynomial right inverse
        reduced: Whether the sum of row degrees equals the degree
        semi_reduced: Whether the McMillan degree equals the degree
    """
    field: str
    k: int
    n: int
    degree: int
    row_degrees: list[int]
    forney_indices: list[int]
    mcmillan_degree: int
    basic: bool
    reduced: bool
    semi_reduced: bool


class SampleSpec(TypedDict, total=False):
    """
    Parameters for a randomized cross-validation run.

    Required fields:
        p: Field characteristic
        s: Field extension degree
        n: Code length
        indices: Forney-index profile of the sampled encoders
        count: Number of encoder pairs

    Optional fields:
        seed: Seed for the random generator (default from configuration)
        no_automorphisms: Restrict searches to the identity automorphism
    """
    # Required fields
    p: int
    s: int
    n: int
    indices: list[int]
    count: int

    # Optional fields
    seed: int
    no_automorphisms: bool


# ============================================================================
# Example catalogue
# ============================================================================

CheckResult: TypeAlias = tuple[bool, str]
"""Outcome of one catalogue check: (passed, human-readable detail)."""

Check: TypeAlias = Callable[[], CheckResult]
"""A zero-argument function that recomputes one reference value."""


class ExampleSpec(TypedDict):
    """
    A reference example with the checks that recompute its reference values.

    Fields:
        name: Short identifier used on the command line
        description: One-line human-readable summary
        field: Field literal the example lives over
        checks: Mapping from check label to check function
    """
    name: str
    description: str
    field: str
    checks: dict[str, Check]


SELFTEST_COLUMNS = ["example", "check", "passed", "detail"]

CROSS_VALIDATION_COLUMNS = [
    "pair",
    "planted",
    "direct",
    "wam",
    "agree",
    "direct_search_size",
    "wam_search_size",
]
