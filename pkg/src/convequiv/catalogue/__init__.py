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
Reference examples with known values.

Each module in this package builds a handful of small encoders and systems
and registers, for each, the checks that recompute their reference values.
The ``selftest`` command runs every registered check.

Available groups are registered automatically when this package is imported.
"""

# Import example modules to trigger their registration
from . import (
    equivalences,  # noqa: F401
    realizations,  # noqa: F401
)

__all__ = ["equivalences", "realizations"]
