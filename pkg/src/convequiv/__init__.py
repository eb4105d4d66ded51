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
convequiv: state-space analysis and equivalence of convolutional codes.

Exact arithmetic over finite fields for convolutional encoders: polynomial
matrix normal forms, controller and canonical realizations, the rank
condition for basic semi-reduced encoders, weight adjacency matrices, and
two independent decisions of monomial code equivalence.

Quick Start:
    >>> import convequiv
    >>> F = convequiv.make_field(2)
    >>> G = convequiv.PolyMatrix.parse(F, "z; 1+z^2; 1+z; z+z^2\\n1; 0; 1; 1")
    >>>
    >>> # Degrees, Forney indices, basic / reduced flags
    >>> report = convequiv.analyze(G)
    >>>
    >>> # Controller form and its weight adjacency matrix
    >>> sigma = convequiv.controller_form(G)
    >>> wam = convequiv.compute_wam(sigma)
    >>> print(wam.to_frame())
    >>>
    >>> # Monomial equivalence, two ways
    >>> reports = convequiv.equivalent(G, G, method="both")

Submodules:
    - convequiv.fields: finite fields, automorphisms, matrix helpers
    - convequiv.polymat: polynomial matrices and code-level operations
    - convequiv.realization: state-space systems, feedback, the rank condition
    - convequiv.wam: weight enumerators and weight adjacency matrices
    - convequiv.equivalence: monomial and feedback equivalence
    - convequiv.textio: encoder and system file formats
"""

__version__ = "0.1.0"

from . import catalogue, equivalence, fields, polymat, realization, textio, wam
from .api import analyze, equivalent, list_examples, realize, run_selftest
from .equivalence import (
    EquivalenceReport,
    MonomialTransform,
    cross_validate_main_theorem,
    feedback_equivalent,
    monomial_equivalent_direct,
    monomial_equivalent_wam,
)
from .fields import Automorphism, FieldSpec, make_field, parse_field
from .polymat import PolyMatrix, code_equal, popov_form
from .realization import (
    FeedbackWitness,
    StateSpace,
    apply_feedback,
    canonical_reduction,
    check_cond,
    controller_form,
    reconstruct_encoder,
)
from .wam import WAM, WeightEnum, compute_wam

__all__ = [
    # Version
    "__version__",
    # Submodules
    "catalogue",
    "equivalence",
    "fields",
    "polymat",
    "realization",
    "textio",
    "wam",
    # Top-level API
    "analyze",
    "realize",
    "equivalent",
    "list_examples",
    "run_selftest",
    # Fields and matrices
    "FieldSpec",
    "Automorphism",
    "make_field",
    "parse_field",
    "PolyMatrix",
    "code_equal",
    "popov_form",
    # Realizations
    "StateSpace",
    "FeedbackWitness",
    "controller_form",
    "reconstruct_encoder",
    "canonical_reduction",
    "check_cond",
    "apply_feedback",
    # Weight adjacency matrices
    "WAM",
    "WeightEnum",
    "compute_wam",
    # Equivalence
    "MonomialTransform",
    "EquivalenceReport",
    "monomial_equivalent_direct",
    "monomial_equivalent_wam",
    "feedback_equivalent",
    "cross_validate_main_theorem",
]
