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
Registry of reference examples.

Each reference example is registered as an ExampleSpec (a name, a
description and a bundle of check functions) and can be retrieved by name.
The registry is a dictionary; the example modules in ``convequiv.catalogue``
register themselves when imported.

Example:
    >>> from convequiv.registry import register_example, get_example
    >>>
    >>> register_example("MY_EXAMPLE", {
    ...     "name": "MY_EXAMPLE",
    ...     "description": "Identity encoder",
    ...     "field": "GF(2)",
    ...     "checks": {"degree": lambda: (True, "degree 0")},
    ... })
    >>> passed, detail = get_example("my_example")["checks"]["degree"]()
"""

import warnings

from .types import ExampleSpec

# The global registry, mapping upper-case names to ExampleSpecs
_EXAMPLES: dict[str, ExampleSpec] = {}


def register_example(name: str, spec: ExampleSpec) -> None:
    """
    Register a reference example.

    Names are case-insensitive. Registering an existing name replaces it
    with a warning.

    Args:
        name: Unique identifier (e.g. "CONTROLLER_FORM")
        spec: The example and its checks
    """
    normalized_name = name.upper()

    if normalized_name in _EXAMPLES:
        warnings.warn(
            f"Example '{normalized_name}' is already registered and will be replaced",
            UserWarning,
            stacklevel=2,
        )

    _EXAMPLES[normalized_name] = spec


def get_example(name: str) -> ExampleSpec | None:
    """Retrieve a registered example by name (case-insensitive), or None."""
    return _EXAMPLES.get(name.upper())


def list_examples() -> list[str]:
    """Sorted names of all registered examples."""
    return sorted(_EXAMPLES.keys())

