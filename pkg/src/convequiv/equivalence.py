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
Code-level equivalence decisions.

Two encoders G, G' of length n are monomially equivalent when some field
automorphism phi, column permutation P and invertible diagonal R make
phi(G) P R generate the same code as G'. This module decides that question
in two independent ways and compares them:

- ``monomial_equivalent_direct`` searches all (phi, P, R) and tests code
  equality through Popov forms, which absorbs the left-unimodular freedom.
- ``monomial_equivalent_wam`` compares the weight adjacency matrices of the
  controller forms up to state relabeling. This is only a decision procedure
  when every Forney index is positive, so zero indices are refused.

It also decides equivalence of realizations under the full state feedback
group, with a constructive witness.

Quick Start:
    >>> from convequiv.fields import make_field
    >>> from convequiv.polymat import PolyMatrix
    >>> from convequiv.equivalence import monomial_equivalent_direct
    >>> F = make_field(2)
    >>> G1 = PolyMatrix.parse(F, "1;1;0;0;0;0\\n0;0;1;1;0;0\\n1;1;1;1;1;1")
    >>> G2 = PolyMatrix.parse(F, "1;1;0;0;0;0\\n1;0;1;0;0;0\\n1;1;1;1;1;1")
    >>> monomial_equivalent_direct(G1, G2).verdict
    False
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any

import galois
import numpy as np
import pandas as pd

from . import config
from .decorators import with_logging, with_timing
from .fields import (
    Automorphism,
    FieldSpec,
    apply_automorphism,
    automorphisms,
    count_invertible,
    make_field,
    mat_inverse,
    mat_mul,
    mat_zeros,
)
from .polymat import (
    PolyMatrix,
    code_equal,
    degree,
    forney_indices,
    is_basic,
    is_full_row_rank,
    is_reduced,
    poly,
    popov_form,
    row_degrees,
    row_module_contains,
)
from .realization import (
    FeedbackWitness,
    StateSpace,
    apply_feedback,
    compose_feedback,
    controller_form,
    feedback_to_controller_form,
    invert_feedback,
    is_canonical,
    is_semi_reduced,
    reconstruct_encoder,
    satisfies_cond,
)
from .types import (
    CROSS_VALIDATION_COLUMNS,
    FieldMismatchError,
    NotBasicError,
    NotCanonicalError,
    NotReducedError,
    PreconditionError,
    SampleSpec,
    SearchCapExceeded,
    ShapeError,
    ZeroForneyIndexError,
)
from .textio import format_field_matrix
from .wam import compute_wam, relabel_wam, wam_equivalent

logger = logging.getLogger(__name__)


# ============================================================================
# Monomial transforms
# ============================================================================


@dataclass(frozen=True, eq=False)
class MonomialTransform:
    """
    The map G -> phi(G) P R on encoders of length n.

    Attributes:
        automorphism: Field automorphism phi
        permutation: ``permutation[i]`` is the column that column i moves to,
            i.e. P[i, permutation[i]] = 1
        scales: Integer representations of the diagonal of R (all nonzero)
    """

    automorphism: Automorphism
    permutation: tuple[int, ...]
    scales: tuple[int, ...]

    def __post_init__(self):
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)):
            raise ValueError(f"{self.permutation} is not a permutation of 0..{n - 1}.")
        if len(self.scales) != n or any(not 0 < s < self.field.q for s in self.scales):
            raise ValueError(
                f"Scales {self.scales} must be {n} nonzero elements of {self.field}."
            )

    @property
    def field(self) -> FieldSpec:
        return self.automorphism.field

    @property
    def n(self) -> int:
        return len(self.permutation)

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "MonomialTransform":
        return cls(Automorphism(F, 0), tuple(range(n)), (1,) * n)

    @classmethod
    def from_matrix(cls, phi: Automorphism, M: galois.FieldArray) -> "MonomialTransform":
        """
        Split a monomial matrix M = P R into permutation and scales.

        Raises:
            ValueError: If M is not monomial
        """
        n = M.shape[0]
        values = np.asarray(M.view(np.ndarray), dtype=np.int64)
        permutation, scales = [0] * n, [0] * n
        for i in range(n):
            nonzero = np.flatnonzero(values[i])
            if nonzero.size != 1:
                raise ValueError("Matrix is not monomial: each row needs one nonzero entry.")
            column = int(nonzero[0])
            permutation[i] = column
            scales[column] = int(values[i, column])
        return cls(phi, tuple(permutation), tuple(scales))

    @classmethod
    def random(
        cls,
        F: FieldSpec,
        n: int,
        rng: np.random.Generator,
        no_automorphisms: bool = False,
    ) -> "MonomialTransform":
        exponent = 0 if no_automorphisms else int(rng.integers(F.s))
        permutation = tuple(int(i) for i in rng.permutation(n))
        scales = tuple(int(s) for s in rng.integers(1, F.q, size=n))
        return cls(Automorphism(F, exponent), permutation, scales)

    def matrix(self) -> galois.FieldArray:
        """The monomial matrix P R."""
        M = mat_zeros(self.field, self.n, self.n)
        for i, column in enumerate(self.permutation):
            M[i, column] = self.scales[column]
        return M

    def apply(self, G: PolyMatrix) -> PolyMatrix:
        """phi(G) P R."""
        if G.n != self.n:
            raise ShapeError(f"Transform of length {self.n} cannot act on {G.n} columns.")
        image = apply_automorphism(self.automorphism, G)
        F = self.field
        factors = [poly(F, [s]) for s in self.scales]
        rows = []
        for row in image.entries:
            out = [None] * self.n
            for i, column in enumerate(self.permutation):
                scale = self.scales[column]
                out[column] = row[i] if scale == 1 else row[i] * factors[column]
            rows.append(out)
        return PolyMatrix.from_rows(F, rows, self.n)

    def compose(self, other: "MonomialTransform") -> "MonomialTransform":
        """The transform applying ``self`` then ``other``."""
        M = mat_mul(other.automorphism(self.matrix()), other.matrix())
        return MonomialTransform.from_matrix(self.automorphism.compose(other.automorphism), M)

    def inverse(self) -> "MonomialTransform":
        phi_inv = self.automorphism.inverse()
        return MonomialTransform.from_matrix(phi_inv, phi_inv(mat_inverse(self.matrix())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialTransform):
            return NotImplemented
        return (self.automorphism, self.permutation, self.scales) == (
            other.automorphism,
            other.permutation,
            other.scales,
        )

    def __hash__(self) -> int:
        return hash((self.automorphism, self.permutation, self.scales))

    def to_dict(self) -> dict:
        return {
            "automorphism": str(self.automorphism),
            "permutation": list(self.permutation),
            "scales": [self.field.format_element(s) for s in self.scales],
        }


# ============================================================================
# Reports
# ============================================================================


@dataclass(frozen=True)
class EquivalenceReport:
    """
    Outcome of a monomial equivalence decision.

    Attributes:
        verdict: True when the codes are monomially equivalent
        method: "direct" or "wam"
        witness: MonomialTransform (direct), (T, phi) (wam), or None
        search_size: Nominal size of the exhaustive search space
        tried: Candidates actually examined
        elapsed: Wall-clock seconds (excluded from comparisons)
    """

    verdict: bool
    method: str
    witness: Any = None
    search_size: int = 0
    tried: int = 0
    elapsed: float | None = field(default=None, compare=False)

    def to_json(self, include_timings: bool = False) -> dict:
        if isinstance(self.witness, MonomialTransform):
            witness = self.witness.to_dict()
        elif self.witness is not None:
            T, phi = self.witness
            witness = {"T": format_field_matrix(phi.field, T), "automorphism": str(phi)}
        else:
            witness = None
        record = {
            "verdict": self.verdict,
            "method": self.method,
            "witness": witness,
            "search_size": self.search_size,
            "tried": self.tried,
        }
        if include_timings:
            record["elapsed"] = self.elapsed
        return record


@dataclass(frozen=True)
class CrossValidationReport:
    """
    Per-pair comparison of the direct and the WAM-based decision.

    Attributes:
        frame: One row per pair with columns ``CROSS_VALIDATION_COLUMNS``
        disagreements: Pairs on which the two methods differ
        planted_failures: Planted-equivalent pairs not recognized by a method
    """

    frame: pd.DataFrame = field(compare=False)
    disagreements: int
    planted_failures: int
    elapsed: float | None = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and self.planted_failures == 0


# ============================================================================
# Preconditions
# ============================================================================


def _check_pair(G: PolyMatrix, G2: PolyMatrix) -> FieldSpec:
    if G.field != G2.field:
        raise FieldMismatchError(
            f"Cannot compare codes over {G.field} and {G2.field}; monomial "
            "equivalence is only defined over one field."
        )
    if G.n != G2.n:
        raise ShapeError(
            f"Cannot compare codes of lengths {G.n} and {G2.n}; monomial "
            "equivalence is only defined for equal lengths."
        )
    return G.field


def _require_basic(*encoders: PolyMatrix) -> None:
    for i, G in enumerate(encoders, start=1):
        if not is_basic(G):
            raise NotBasicError(
                f"Encoder {i} is not basic.\n"
                "Equivalence decisions need basic encoders; replace the encoder by a "
                "basic generator matrix of its code."
            )


def _direct_search_size(F: FieldSpec, n: int, no_automorphisms: bool) -> int:
    phis = 1 if no_automorphisms else F.s
    return phis * math.factorial(n) * (F.q - 1) ** n


# ============================================================================
# Monomial equivalence
# ============================================================================


@with_logging()
@with_timing
def monomial_equivalent_direct(
    G: PolyMatrix,
    G2: PolyMatrix,
    no_automorphisms: bool = False,
    max_search: int | None = None,
) -> EquivalenceReport:
    """
    Decide monomial equivalence by exhaustive search over (phi, P, R).

    A candidate is accepted when every row of phi(G) P R lies in the row
    module of G2 (tested against its Popov form). Both encoders are basic
    with the same k, so containment means equal codes; the witness is
    re-verified with ``code_equal`` before it is returned.

    Args:
        G: First encoder
        G2: Second encoder
        no_automorphisms: Only consider the identity automorphism
        max_search: Cap on s * n! * (q-1)^n (default CONVEQUIV_MAX_SEARCH)

    Returns:
        EquivalenceReport: method "direct"; the witness maps G onto G2

    Raises:
        NotBasicError: If an encoder is not basic
        SearchCapExceeded: If the search space exceeds the cap
    """
    F = _check_pair(G, G2)
    _require_basic(G, G2)
    n = G.n
    size = _direct_search_size(F, n, no_automorphisms)
    cap = config.max_search() if max_search is None else max_search
    if size > cap:
        logger.warning("Monomial search exceeds the cap", extra={"size": size, "cap": cap})
        raise SearchCapExceeded(
            f"The monomial search space has {size} candidates, above the cap of {cap}.\n"
            "Raise CONVEQUIV_MAX_SEARCH, pass --no-automorphisms, or use a shorter code.",
            size=size,
            cap=cap,
        )

    # Equivalent codes share dimension and Forney indices
    if G.k != G2.k or forney_indices(G) != forney_indices(G2):
        return EquivalenceReport(False, "direct", None, size, 0)

    target = popov_form(G2)
    phis = [Automorphism(F, 0)] if no_automorphisms else automorphisms(F)
    nonzero = range(1, F.q)
    tried = 0
    for phi in phis:
        image = apply_automorphism(phi, G)
        for permutation in itertools.permutations(range(n)):
            moved = MonomialTransform(Automorphism(F, 0), permutation, (1,) * n).apply(image)
            for scales in itertools.product(nonzero, repeat=n):
                tried += 1
                candidate = (
                    moved
                    if all(s == 1 for s in scales)
                    else MonomialTransform(Automorphism(F, 0), tuple(range(n)), scales).apply(moved)
                )
                if not all(row_module_contains(target, row) for row in candidate.entries):
                    continue
                witness = MonomialTransform(phi, permutation, scales)
                if code_equal(witness.apply(G), G2):
                    logger.info(
                        "Monomial equivalence found",
                        extra={"tried": tried, "size": size, "automorphism": str(phi)},
                    )
                    return EquivalenceReport(True, "direct", witness, size, tried)

    logger.info("Codes are not monomially equivalent", extra={"tried": tried, "size": size})
    return EquivalenceReport(False, "direct", None, size, tried)


@with_logging()
@with_timing
def monomial_equivalent_wam(
    G: PolyMatrix,
    G2: PolyMatrix,
    no_automorphisms: bool = False,
    max_search: int | None = None,
    max_states: int | None = None,
) -> EquivalenceReport:
    """
    Decide monomial equivalence by comparing weight adjacency matrices.

    Both encoders must be basic and reduced, so their controller forms are
    canonical minimal realizations. When every Forney index is positive the
    codes are monomially equivalent exactly when the two matrices are
    relabelings of each other; with a zero index this fails, so the call is
    refused instead of answered.

    Returns:
        EquivalenceReport: method "wam"; the witness (T, phi) satisfies
            relabel_wam(Lambda(G), T, phi) == Lambda(G2)

    Raises:
        NotBasicError: If an encoder is not basic
        NotReducedError: If an encoder is not reduced
        ZeroForneyIndexError: If an encoder has a row of degree zero
        SearchCapExceeded: If the state or relabeling caps are exceeded
    """
    F = _check_pair(G, G2)
    _require_basic(G, G2)
    for i, M in enumerate((G, G2), start=1):
        if not is_reduced(M):
            raise NotReducedError(
                f"Encoder {i} is not reduced.\n"
                "Pass a reduced encoder (for example its Popov form) so the controller "
                "form is a canonical minimal realization."
            )
        if any(d == 0 for d in row_degrees(M)):
            raise ZeroForneyIndexError(
                f"Encoder {i} has a Forney index equal to zero (row degrees "
                f"{[int(d) for d in row_degrees(M)]}).\n"
                "Weight adjacency matrices do not decide monomial equivalence for such "
                "codes; use the direct method instead."
            )

    phis = 1 if no_automorphisms else F.s
    if G.k != G2.k or degree(G) != degree(G2):
        return EquivalenceReport(False, "wam", None, 0, 0)
    size = count_invertible(F, degree(G)) * phis

    wam = compute_wam(controller_form(G), max_states=max_states)
    other = compute_wam(controller_form(G2), max_states=max_states)
    verdict, witness, tried = wam_equivalent(
        wam, other, no_automorphisms=no_automorphisms, max_search=max_search
    )
    if verdict:
        T, phi = witness
        if relabel_wam(wam, T, phi) != other:
            raise ArithmeticError("State relabeling witness does not verify")
    return EquivalenceReport(verdict, "wam", witness, size, tried)


def verify_monomial_witness(
    G: PolyMatrix, G2: PolyMatrix, transform: MonomialTransform
) -> bool:
    """Whether ``transform`` maps the code of G onto the code of G2."""
    return code_equal(transform.apply(G), G2)


# ============================================================================
# Feedback equivalence
# ============================================================================


@with_logging()
def feedback_equivalent(
    sigma: StateSpace, other: StateSpace, semi_reduced: bool = False
) -> tuple[bool, FeedbackWitness | None]:
    """
    Decide whether two realizations lie in one full state feedback orbit.

    Under the preconditions below, this holds exactly when the encoders of
    the two systems generate the same code. On a positive answer the
    witness w carries sigma onto other; it is built by mapping the
    controller form of the code's Popov encoder onto each system and
    composing, and is verified with ``apply_feedback`` before return.

    Args:
        sigma: First realization
        other: Second realization
        semi_reduced: Accept semi-reduced encoders in place of reduced ones

    Returns:
        tuple: (verdict, FeedbackWitness or None)

    Raises:
        NotCanonicalError: If a system is not controllable and observable
        PreconditionError: If a system fails the rank condition, or the
            encoders have different degrees
        NotReducedError: If an encoder is not reduced (or semi-reduced)
    """
    if sigma.field != other.field:
        raise FieldMismatchError(
            f"Cannot compare realizations over {sigma.field} and {other.field}."
        )
    if (sigma.k, sigma.n) != (other.k, other.n):
        raise ShapeError(
            f"Realizations have different sizes (k, n) = {(sigma.k, sigma.n)} and "
            f"{(other.k, other.n)}."
        )

    encoders = []
    for i, system in enumerate((sigma, other), start=1):
        if not is_canonical(system):
            raise NotCanonicalError(
                f"System {i} is not canonical (controllable and observable).\n"
                "Reduce it with canonical_reduction first."
            )
        if not satisfies_cond(system):
            raise PreconditionError(
                f"System {i} does not satisfy the rank condition for basic "
                "semi-reduced encoders (see check_cond for the failing clause)."
            )
        G = reconstruct_encoder(system)
        acceptable = is_semi_reduced(G) if semi_reduced else is_reduced(G)
        if not acceptable:
            kind = "semi-reduced" if semi_reduced else "reduced"
            raise NotReducedError(
                f"The encoder of system {i} is not {kind}.\n"
                + ("" if semi_reduced else "Pass semi_reduced=True to relax this check.")
            )
        encoders.append(G)

    G, G2 = encoders
    if degree(G) != degree(G2):
        raise PreconditionError(
            f"The encoders have different degrees ({degree(G)} and {degree(G2)}); "
            "feedback equivalence is only decided at equal degree."
        )
    if not code_equal(G, G2):
        return False, None

    reference = popov_form(G)
    to_sigma = feedback_to_controller_form(sigma, reference)
    to_other = feedback_to_controller_form(other, reference)
    witness = compose_feedback(invert_feedback(to_sigma), to_other)
    if apply_feedback(sigma, witness) != other:
        raise ArithmeticError("Feedback witness does not verify")
    return True, witness


# ============================================================================
# Random generation
# ============================================================================


def random_poly_matrix(
    F: FieldSpec, k: int, n: int, max_degree: int, rng: np.random.Generator
) -> PolyMatrix:
    """A k x n matrix with independent uniform coefficients up to max_degree."""
    values = rng.integers(0, F.q, size=(k, n, max_degree + 1))
    return PolyMatrix.from_rows(
        F, [[poly(F, values[i, j]) for j in range(n)] for i in range(k)], n
    )


def random_encoder(
    F: FieldSpec,
    n: int,
    indices: list[int],
    rng: np.random.Generator,
    max_tries: int = 1000,
) -> PolyMatrix:
    """
    Rejection-sample a basic, reduced encoder with the given row degrees.

    Raises:
        ValueError: If no encoder is found within ``max_tries`` draws
    """
    k = len(indices)
    if k > n:
        raise ShapeError(f"Cannot have {k} rows in a length-{n} code.")
    for _ in range(max_tries):
        rows = []
        for nu in indices:
            coeffs = rng.integers(0, F.q, size=(nu + 1, n))
            while not coeffs[nu].any():
                coeffs[nu] = rng.integers(0, F.q, size=n)
            rows.append([poly(F, coeffs[:, j]) for j in range(n)])
        G = PolyMatrix.from_rows(F, rows, n)
        if is_full_row_rank(G) and is_reduced(G) and is_basic(G):
            return G
    raise ValueError(
        f"No basic reduced encoder with row degrees {indices} over {F} found in "
        f"{max_tries} draws."
    )


def random_unimodular(
    F: FieldSpec,
    k: int,
    rng: np.random.Generator,
    max_degree: int = 1,
    steps: int | None = None,
    degree_profile: list[int] | None = None,
) -> PolyMatrix:
    """
    A unimodular k x k matrix built from elementary row operations:
    row_i += c(z) row_j with deg c <= max_degree, and nonzero row scalings.

    With ``degree_profile`` (the row degrees nu of some reduced G) the bound is
    deg c <= nu_i - nu_j instead, and operations with a negative bound are
    skipped, so W G is again reduced with the same row degrees.
    """
    rows = [list(r) for r in PolyMatrix.identity(F, k).entries]
    for _ in range(2 * k if steps is None else steps):
        if k > 1:
            i, j = (int(x) for x in rng.choice(k, size=2, replace=False))
            bound = max_degree if degree_profile is None else degree_profile[i] - degree_profile[j]
            if bound >= 0:
                factor = poly(F, rng.integers(0, F.q, size=bound + 1))
                rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
        i = int(rng.integers(k))
        scale = poly(F, [int(rng.integers(1, F.q))])
        rows[i] = [a * scale for a in rows[i]]
    return PolyMatrix.from_rows(F, rows, k)


# ============================================================================
# Cross-validation
# ============================================================================


@with_timing
def cross_validate_main_theorem(spec: SampleSpec) -> CrossValidationReport:
    """
    Run both monomial equivalence methods on random encoder pairs.

    Even-numbered pairs are planted: G2 is a random monomial transform of G.
    Odd-numbered pairs are independent encoders with the same Forney
    indices. Both methods must agree on every pair and recognize every
    planted pair.

    Args:
        spec: Field, length, Forney indices, pair count and optional seed

    Raises:
        ZeroForneyIndexError: If an index is zero
        SearchCapExceeded: If a search exceeds its cap
    """
    if any(nu < 1 for nu in spec["indices"]):
        raise ZeroForneyIndexError(
            f"Cross-validation needs positive Forney indices, got {spec['indices']}."
        )
    F = make_field(spec["p"], spec.get("s", 1))
    seed = spec.get("seed", config.default_seed())
    no_automorphisms = spec.get("no_automorphisms", False)
    rng = np.random.default_rng(seed)

    records = []
    for pair in range(spec["count"]):
        G = random_encoder(F, spec["n"], list(spec["indices"]), rng)
        planted = pair % 2 == 0
        if planted:
            G2 = MonomialTransform.random(F, spec["n"], rng, no_automorphisms).apply(G)
        else:
            G2 = random_encoder(F, spec["n"], list(spec["indices"]), rng)

        direct = monomial_equivalent_direct(G, G2, no_automorphisms=no_automorphisms)
        by_wam = monomial_equivalent_wam(G, G2, no_automorphisms=no_automorphisms)
        records.append(
            {
                "pair": pair,
                "planted": planted,
                "direct": direct.verdict,
                "wam": by_wam.verdict,
                "agree": direct.verdict == by_wam.verdict,
                "direct_search_size": direct.search_size,
                "wam_search_size": by_wam.search_size,
            }
        )
        logger.debug("Cross-validated pair", extra=records[-1])

    frame = pd.DataFrame(records, columns=CROSS_VALIDATION_COLUMNS)
    disagreements = int((~frame["agree"]).sum()) if len(frame) else 0
    planted_rows = frame[frame["planted"]] if len(frame) else frame
    planted_failures = (
        int((~(planted_rows["direct"] & planted_rows["wam"])).sum()) if len(planted_rows) else 0
    )
    logger.info(
        "Cross-validation finished",
        extra={
            "pairs": len(frame),
            "disagreements": disagreements,
            "planted_failures": planted_failures,
            "seed": seed,
        },
    )
    return CrossValidationReport(frame, disagreements, planted_failures)
