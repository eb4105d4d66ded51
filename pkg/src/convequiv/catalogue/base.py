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

"""Helpers shared by the reference example modules."""

from typing import Any

from ..fields import FieldSpec
from ..polymat import PolyMatrix
from ..types import CheckResult


def expect(actual: Any, expected: Any) -> CheckResult:
    """Compare a recomputed value with its reference value."""
    if actual == expected:
        return True, f"{actual}"
    return False, f"expected {expected}, got {actual}"


def expect_matrix(actual, expected: list[list[int]]) -> CheckResult:
    """Compare a field array with a nested list of integer representations."""
    return expect(actual.tolist(), expected)


def encoder(F: FieldSpec, text: str) -> PolyMatrix:
    """Encoder from the matrix text grammar, rows separated by newlines."""
    return PolyMatrix.parse(F, text)
