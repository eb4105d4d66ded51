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
Reference realizations.

Four small examples with known state-space data:

- RATE_TWO_FOUR: a basic reduced 2 x 4 binary encoder of degree 2, its
  controller form and its 4 x 4 weight adjacency matrix
- TERNARY_SEMI_REDUCED: an order-one ternary system whose encoder is
  semi-reduced but not reduced
- NON_BASIC_SYSTEM: an order-two binary system whose encoder is not basic
- FEEDBACK_ORBIT: a binary encoder, its controller form, and the
  non-reduced encoder of the same code reached by state feedback
"""

from ..equivalence import feedback_equivalent
from ..fields import make_field
from ..polymat import code_equal, degree, is_basic, is_reduced, row_degrees
from ..realization import (
    FeedbackWitness,
    StateSpace,
    apply_feedback,
    check_cond,
    controller_form,
    is_canonical,
    is_semi_reduced,
    mcmillan_degree,
    reconstruct_encoder,
)
from ..registry import register_example
from ..types import CheckResult
from ..wam import compute_wam
from .base import encoder, expect, expect_matrix

GF2 = make_field(2)
GF3 = make_field(3)

# ============================================================================
# Rate 2/4 encoder of degree 2
# ============================================================================

RATE_TWO_FOUR = "z; 1+z^2; 1+z; z+z^2\n1; 0; 1; 1"

RATE_TWO_FOUR_WAM = [
    ["1+W^3", "0", "W^2+W^3", "0"],
    ["W^2+W^3", "0", "W+W^2", "0"],
    ["0", "1+W^3", "0", "W^2+W^3"],
    ["0", "W^2+W^3", "0", "W+W^2"],
]


def _rate_two_four_properties() -> CheckResult:
    G = encoder(GF2, RATE_TWO_FOUR)
    return expect(
        (degree(G), [int(d) for d in row_degrees(G)], is_basic(G), is_reduced(G)),
        (2, [2, 0], True, True),
    )


def _rate_two_four_controller_form() -> CheckResult:
    sigma = controller_form(encoder(GF2, RATE_TWO_FOUR))
    return expect(
        [sigma.A.tolist(), sigma.B.tolist(), sigma.C.tolist(), sigma.D.tolist()],
        [
            [[0, 1], [0, 0]],
            [[1, 0], [0, 0]],
            [[1, 0, 1, 1], [0, 1, 0, 1]],
            [[0, 1, 1, 0], [1, 0, 1, 1]],
        ],
    )


def _rate_two_four_wam() -> CheckResult:
    wam = compute_wam(controller_form(encoder(GF2, RATE_TWO_FOUR)))
    return expect([[str(e) for e in row] for row in wam.rows()], RATE_TWO_FOUR_WAM)


def _rate_two_four_round_trip() -> CheckResult:
    G = encoder(GF2, RATE_TWO_FOUR)
    return expect(reconstruct_encoder(controller_form(G)).to_text(), G.to_text())


register_example(
    "RATE_TWO_FOUR",
    {
        "name": "RATE_TWO_FOUR",
        "description": "Basic reduced 2x4 binary encoder of degree 2",
        "field": "GF(2)",
        "checks": {
            "properties": _rate_two_four_properties,
            "controller_form": _rate_two_four_controller_form,
            "weight_adjacency_matrix": _rate_two_four_wam,
            "round_trip": _rate_two_four_round_trip,
        },
    },
)

# ============================================================================
# Ternary semi-reduced system
# ============================================================================


def ternary_system() -> StateSpace:
    return StateSpace(
        GF3,
        GF3.array([[0]]),
        GF3.array([[2], [1]]),
        GF3.array([[0, 0, 1]]),
        GF3.array([[0, 1, 1], [1, 0, 0]]),
    )


def _ternary_encoder() -> CheckResult:
    return expect(reconstruct_encoder(ternary_system()).to_text(), "0; 1; 1+2z\n1; 0; z")


def _ternary_degrees() -> CheckResult:
    G = reconstruct_encoder(ternary_system())
    return expect((degree(G), mcmillan_degree(G)), (1, 1))


def _ternary_reducedness() -> CheckResult:
    G = reconstruct_encoder(ternary_system())
    return expect(
        {"reduced": is_reduced(G), "semi_reduced": is_semi_reduced(G)},
        {"reduced": False, "semi_reduced": True},
    )


def _ternary_condition() -> CheckResult:
    sigma = ternary_system()
    return expect((is_canonical(sigma), check_cond(sigma).holds), (True, True))


register_example(
    "TERNARY_SEMI_REDUCED",
    {
        "name": "TERNARY_SEMI_REDUCED",
        "description": "Order-one ternary system with a semi-reduced, non-reduced encoder",
        "field": "GF(3)",
        "checks": {
            "encoder": _ternary_encoder,
            "degrees": _ternary_degrees,
            "reducedness": _ternary_reducedness,
            "condition": _ternary_condition,
        },
    },
)

# ============================================================================
# Non-basic system
# ============================================================================


def non_basic_system() -> StateSpace:
    return StateSpace(
        GF2,
        GF2.array([[0, 1], [0, 0]]),
        GF2.array([[1, 0]]),
        GF2.array([[0, 1], [1, 0]]),
        GF2.array([[1, 1]]),
    )


def _non_basic_encoder() -> CheckResult:
    return expect(reconstruct_encoder(non_basic_system()).to_text(), "1+z^2; 1+z")


def _non_basic_is_not_basic() -> CheckResult:
    return expect(is_basic(reconstruct_encoder(non_basic_system())), False)


def _non_basic_condition() -> CheckResult:
    report = check_cond(non_basic_system())
    # G(1) = 0, so the rank drops at lambda = 1 while lambda = 0 is fine
    return expect(
        (report.holds, report.zero_lambda_ok, report.failed_clause),
        (False, True, "nonzero_lambda_ok"),
    )


register_example(
    "NON_BASIC_SYSTEM",
    {
        "name": "NON_BASIC_SYSTEM",
        "description": "Order-two binary system realizing a non-basic encoder",
        "field": "GF(2)",
        "checks": {
            "encoder": _non_basic_encoder,
            "not_basic": _non_basic_is_not_basic,
            "condition": _non_basic_condition,
        },
    },
)

# ============================================================================
# Feedback orbit of a controller form
# ============================================================================

FEEDBACK_ENCODER = "1; z; 1+z\n0; 1; z"


def feedback_step() -> FeedbackWitness:
    """T = U = I and M = [[0, 0], [1, 0]]."""
    identity = GF2.array([[1, 0], [0, 1]])
    return FeedbackWitness(identity, identity.copy(), GF2.array([[0, 0], [1, 0]]))


def _feedback_controller_form() -> CheckResult:
    sigma = controller_form(encoder(GF2, FEEDBACK_ENCODER))
    return expect(
        [sigma.A.tolist(), sigma.B.tolist(), sigma.C.tolist(), sigma.D.tolist()],
        [
            [[0, 0], [0, 0]],
            [[1, 0], [0, 1]],
            [[0, 1, 1], [0, 0, 1]],
            [[1, 0, 1], [0, 1, 0]],
        ],
    )


def _feedback_image() -> CheckResult:
    G = encoder(GF2, FEEDBACK_ENCODER)
    G_bar = reconstruct_encoder(apply_feedback(controller_form(G), feedback_step()))
    return expect(
        (G_bar.to_text(), is_reduced(G_bar), code_equal(G, G_bar)),
        ("1; z; 1+z\nz; 1+z^2; z^2", False, True),
    )


def _feedback_decision() -> CheckResult:
    sigma = controller_form(encoder(GF2, FEEDBACK_ENCODER))
    image = apply_feedback(sigma, feedback_step())
    verdict, witness = feedback_equivalent(sigma, image, semi_reduced=True)
    verified = witness is not None and apply_feedback(sigma, witness) == image
    return expect((verdict, verified), (True, True))


def _feedback_d_matrix() -> CheckResult:
    image = apply_feedback(controller_form(encoder(GF2, FEEDBACK_ENCODER)), feedback_step())
    return expect_matrix(image.D, [[1, 0, 1], [0, 1, 0]])


register_example(
    "FEEDBACK_ORBIT",
    {
        "name": "FEEDBACK_ORBIT",
        "description": "Feedback carries a reduced encoder to a non-reduced one of the same code",
        "field": "GF(2)",
        "checks": {
            "controller_form": _feedback_controller_form,
            "image_encoder": _feedback_image,
            "image_static_part": _feedback_d_matrix,
            "feedback_equivalent": _feedback_decision,
        },
    },
)
