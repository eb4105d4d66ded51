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
Runtime configuration for convequiv.

Every setting is read from the environment at call time, so a value exported
in the shell (or loaded from a ``.env`` file with python-dotenv) takes effect
without re-importing the package:

    CONVEQUIV_MAX_STATES      cap on q^delta for weight adjacency matrices
    CONVEQUIV_MAX_SEARCH      cap on exhaustive search sizes
    CONVEQUIV_MAX_FIELD_ORDER cap on the field order q accepted by make_field
    CONVEQUIV_SEED            default seed for randomized suites
"""

import os

DEFAULT_MAX_STATES = 4096
DEFAULT_MAX_SEARCH = 5_000_000
DEFAULT_MAX_FIELD_ORDER = 1024
DEFAULT_SEED = 0


def _get_int(name: str, default: int, minimum: int = 0) -> int:
    """
    Read an integer setting from the environment.

    Args:
        name: Environment variable name
        default: Value used when the variable is unset or empty
        minimum: Smallest accepted value

    Returns:
        int: The configured value

    Raises:
        ValueError: If the variable is set but is not an integer >= minimum
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ValueError(
            f"{name} must be an integer, got {raw!r}. "
            f"Unset it to use the default ({default})."
        ) from None
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}.")
    return value


def max_states() -> int:
    """Largest number of encoder states q^delta a WAM may be built for."""
    return _get_int("CONVEQUIV_MAX_STATES", DEFAULT_MAX_STATES, minimum=1)


def max_search() -> int:
    """Largest number of candidates an exhaustive search may visit."""
    return _get_int("CONVEQUIV_MAX_SEARCH", DEFAULT_MAX_SEARCH, minimum=1)


def max_field_order() -> int:
    """Largest field order q accepted by ``make_field``."""
    return _get_int("CONVEQUIV_MAX_FIELD_ORDER", DEFAULT_MAX_FIELD_ORDER, minimum=2)


def default_seed() -> int:
    """Seed used by randomized suites when none is given explicitly."""
    return _get_int("CONVEQUIV_SEED", DEFAULT_SEED)
