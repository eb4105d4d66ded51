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
Reference equivalence decisions.

- EQUAL_ENUMERATORS: two binary block codes with the same weight enumerator
  that are not monomially equivalent
- ZERO_FORNEY_INDEX: two binary codes with a zero Forney index whose weight
  adjacency matrices agree although the codes are not monomially equivalent
"""

from ..equivalence import monomial_equivalent_direct, monomial_equivalent_wam
from ..fields import make_field
from ..realization import controller_form
from ..registry import register_example
from ..types import CheckResult, ZeroForneyIndexError
from ..wam import block_weight_enumerator, compute_wam
from .base import encoder, expect

GF2 = make_field(2)

# ============================================================================
# Block codes with equal weight enumerators
# ============================================================================

BLOCK_FIRST = "1; 1; 0; 0; 0; 0\n0; 0; 1; 1; 0; 0\n1; 1; 1; 1; 1; 1"
BLOCK_SECOND = "1; 1; 0; 0; 0; 0\n1; 0; 1; 0; 0; 0\n1; 1; 1; 1; 1; 1"


def _block_enumerators() -> CheckResult:
    enumerators = [
        str(block_weight_enumerator(encoder(GF2, text))) for text in (BLOCK_FIRST, BLOCK_SECOND)
    ]
    return expect(enumerators, ["1+3W^2+3W^4+W^6"] * 2)


def _block_direct() -> CheckResult:
    report = monomial_equivalent_direct(encoder(GF2, BLOCK_FIRST), encoder(GF2, BLOCK_SECOND))
    return expect((report.verdict, report.search_size), (False, 720))


register_example(
    "EQUAL_ENUMERATORS",
    {
        "name": "EQUAL_ENUMERATORS",
        "description": "Inequivalent binary block codes with equal weight enumerators",
        "field": "GF(2)",
        "checks": {
            "weight_enumerators": _block_enumerators,
            "direct_search": _block_direct,
        },
    },
)

# ============================================================================
# Codes with a zero Forney index
# ============================================================================

ZERO_INDEX_FIRST = "1; 1; z; z; 0; 0\n1; 1; 1; 1; 1; 1"
ZERO_INDEX_SECOND = "1+z; 1; z; 0; 0; 0\n1; 1; 1; 1; 1; 1"

ZERO_INDEX_WAM = [["1+W^6", "W^2+W^4"], ["W^2+W^4", "W^2+W^4"]]


def _zero_index_wams() -> CheckResult:
    tables = [
        [[str(e) for e in row] for row in compute_wam(controller_form(encoder(GF2, text))).rows()]
        for text in (ZERO_INDEX_FIRST, ZERO_INDEX_SECOND)
    ]
    return expect(tables, [ZERO_INDEX_WAM] * 2)


def _zero_index_direct() -> CheckResult:
    report = monomial_equivalent_direct(
        encoder(GF2, ZERO_INDEX_FIRST), encoder(GF2, ZERO_INDEX_SECOND)
    )
    return expect(report.verdict, False)


def _zero_index_refusal() -> CheckResult:
    try:
        monomial_equivalent_wam(encoder(GF2, ZERO_INDEX_FIRST), encoder(GF2, ZERO_INDEX_SECOND))
    except ZeroForneyIndexError:
        return True, "refused: zero Forney index"
    return False, "expected a refusal for a zero Forney index"


register_example(
    "ZERO_FORNEY_INDEX",
    {
        "name": "ZERO_FORNEY_INDEX",
        "description": "Equal weight adjacency matrices for inequivalent codes with a zero index",
        "field": "GF(2)",
        "checks": {
            "weight_adjacency_matrices": _zero_index_wams,
            "direct_search": _zero_index_direct,
            "wam_refusal": _zero_index_refusal,
        },
    },
)
