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
Public API for convequiv.

Top-level convenience functions over the library modules. For more control
use the modules directly:
    - convequiv.polymat for polynomial matrices and code-level operations
    - convequiv.realization for state-space systems and feedback
    - convequiv.wam for weight adjacency matrices
    - convequiv.equivalence for equivalence decisions

Basic usage:
    >>> import convequiv
    >>> F = convequiv.make_field(2)
    >>> G = convequiv.PolyMatrix.parse(F, "z; 1+z^2; 1+z; z+z^2\\n1; 0; 1; 1")
    >>> convequiv.analyze(G)["forney_indices"]
    [2, 0]
"""

import logging

import pandas as pd

# Import the catalogue to trigger registration
from . import catalogue as _catalogue  # noqa: F401
from . import config
from .equivalence import (
    EquivalenceReport,
    cross_validate_main_theorem,
    monomial_equivalent_direct,
    monomial_equivalent_wam,
)
from .polymat import (
    PolyMatrix,
    degree,
    forney_indices,
    is_basic,
    is_reduced,
    row_degrees,
)
from .realization import (
    StateSpace,
    canonical_reduction,
    controller_form,
    is_semi_reduced,
    mcmillan_degree,
)
from .registry import get_example
from .registry import list_examples as _list_examples
from .types import SELFTEST_COLUMNS, AnalysisReport, ReductionStats

logger = logging.getLogger(__name__)

REALIZATION_FORMS = ("controller", "canonical")
EQUIVALENCE_METHODS = ("direct", "wam", "both")


def analyze(G: PolyMatrix) -> AnalysisReport:
    """
    Structural summary of an encoder.

    Args:
        G: Full-row-rank encoder

    Returns:
        AnalysisReport: Dimensions, degrees, Forney indices, McMillan degree
            and the basic / reduced / semi-reduced flags

    Raises:
        RankDeficientError: If G does not have full row rank
    """
    return {
        "field": str(G.field),
        "k": G.k,
        "n": G.n,
        "degree": degree(G),
        "row_degrees": [int(d) for d in row_degrees(G)],
        "forney_indices": forney_indices(G),
        "mcmillan_degree": mcmillan_degree(G),
        "basic": is_basic(G),
        "reduced": is_reduced(G),
        "semi_reduced": is_semi_reduced(G),
    }


def realize(
    G: PolyMatrix, form: str = "controller"
) -> tuple[StateSpace, ReductionStats | None]:
    """
    A realization of G.

    Args:
        G: Full-row-rank encoder
        form: "controller" for the controller form, "canonical" for its
            controllable and observable reduction

    Returns:
        tuple: (system, reduction statistics or None for the controller form)
    """
    if form not in REALIZATION_FORMS:
        raise ValueError(
            f"Unknown realization form {form!r}. Choose one of: {', '.join(REALIZATION_FORMS)}"
        )
    sigma = controller_form(G)
    if form == "controller":
        return sigma, None
    return canonical_reduction(sigma)


def equivalent(
    G: PolyMatrix,
    G2: PolyMatrix,
    method: str = "direct",
    no_automorphisms: bool = False,
) -> dict[str, EquivalenceReport]:
    """
    Decide monomial equivalence with one or both methods.

    Returns:
        dict: Reports keyed by method name ("direct", "wam")
    """
    if method not in EQUIVALENCE_METHODS:
        raise ValueError(
            f"Unknown method {method!r}. Choose one of: {', '.join(EQUIVALENCE_METHODS)}"
        )
    reports = {}
    if method in ("direct", "both"):
        reports["direct"] = monomial_equivalent_direct(G, G2, no_automorphisms=no_automorphisms)
    if method in ("wam", "both"):
        reports["wam"] = monomial_equivalent_wam(G, G2, no_automorphisms=no_automorphisms)
    return reports


def list_examples() -> list[str]:
    """
    List the registered reference examples.

    Example:
        >>> convequiv.list_examples()
        ['EQUAL_ENUMERATORS', 'FEEDBACK_ORBIT', 'NON_BASIC_SYSTEM', ...]
    """
    return _list_examples()


def run_selftest(
    names: list[str] | None = None,
    seed: int | None = None,
    cross_validation_pairs: int = 10,
) -> pd.DataFrame:
    """
    Run the checks of the reference examples and a short randomized
    cross-validation of the two monomial equivalence methods.

    A check that raises is recorded as failed with the error as detail.

    Args:
        names: Examples to run (default: all registered)
        seed: Seed for the randomized part (default CONVEQUIV_SEED)
        cross_validation_pairs: Pairs in the randomized part (0 to skip)

    Returns:
        pd.DataFrame: One row per check with columns example, check, passed, detail
    """
    records = []
    for name in names or _list_examples():
        spec = get_example(name)
        if spec is None:
            raise ValueError(
                f"Unknown example '{name}'. Available: {', '.join(_list_examples())}"
            )
        for label, check in spec["checks"].items():
            try:
                passed, detail = check()
            except Exception as e:
                logger.warning(
                    "Reference check raised",
                    extra={"example": spec["name"], "check": label, "error_type": type(e).__name__},
                )
                passed, detail = False, f"{type(e).__name__}: {e}"
            records.append(
                {"example": spec["name"], "check": label, "passed": bool(passed), "detail": detail}
            )

    if cross_validation_pairs > 0:
        seed = config.default_seed() if seed is None else seed
        report = cross_validate_main_theorem(
            {"p": 2, "s": 1, "n": 4, "indices": [1, 1], "count": cross_validation_pairs, "seed": seed}
        )
        records.append(
            {
                "example": "CROSS_VALIDATION",
                "check": "direct_vs_wam",
                "passed": report.ok,
                "detail": (
                    f"{len(report.frame)} pairs, {report.disagreements} disagreements, "
                    f"{report.planted_failures} planted failures (seed {seed})"
                ),
            }
        )

    frame = pd.DataFrame(records, columns=SELFTEST_COLUMNS)
    logger.info(
        "Selftest finished",
        extra={"checks": len(frame), "failed": int((~frame["passed"]).sum()) if len(frame) else 0},
    )
    return frame
