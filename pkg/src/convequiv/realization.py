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
State-space realizations of polynomial encoders.

A system Sigma = (A, B, C, D) over F uses the row-vector convention

    x_{t+1} = x_t A + u_t B,    v_t = x_t C + u_t D,

and realizes the encoder G(z) = D + sum_{i>=1} B A^(i-1) C z^i whenever A is
nilpotent. This module builds the controller form of an encoder, tests
controllability/observability, reduces any realization to a canonical one,
checks the rank condition characterizing basic semi-reduced encoders, and
implements the similarity and full state feedback actions.

Quick Start:
    >>> from convequiv.fields import make_field
    >>> from convequiv.polymat import PolyMatrix
    >>> from convequiv.realization import controller_form, is_canonical
    >>> F = make_field(2)
    >>> G = PolyMatrix.parse(F, "1; z; 1+z\\n0; 1; z")
    >>> sigma = controller_form(G)
    >>> sigma.delta, is_canonical(sigma)
    (2, True)
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import galois
import numpy as np

from .fields import (
    FieldSpec,
    check_same_field,
    field_of,
    is_invertible,
    mat_block,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_power,
    mat_rank,
    mat_solve,
    mat_zeros,
    pivot_columns,
)
from .polymat import (
    PolyMatrix,
    coefficient_of,
    degree,
    is_full_row_rank,
    is_zero_poly,
    minor_gcd,
    right_inverse,
    row_degrees,
)
from .types import (
    FieldMismatchError,
    NotNilpotentError,
    PreconditionError,
    RankDeficientError,
    ReductionStats,
    ShapeError,
    SingularMatrixError,
)

if TYPE_CHECKING:
    from .equivalence import MonomialTransform

logger = logging.getLogger(__name__)


# ============================================================================
# Types
# ============================================================================


def _same(X: galois.FieldArray, Y: galois.FieldArray) -> bool:
    return X.shape == Y.shape and bool(np.array_equal(X, Y))


@dataclass(frozen=True, eq=False)
class StateSpace:
    """
    A realization (A, B, C, D) with delta states, k inputs and n outputs.

    Shapes: A is delta x delta, B is k x delta, C is delta x n, D is k x n.
    delta = 0 is allowed; the system then reduces to D.
    """

    field: FieldSpec
    A: galois.FieldArray
    B: galois.FieldArray
    C: galois.FieldArray
    D: galois.FieldArray

    def __post_init__(self):
        check_same_field(self.A, self.B, self.C, self.D)
        if field_of(self.D) != self.field:
            raise FieldMismatchError(f"System matrices are not over {self.field}.")
        delta = self.A.shape[0]
        k, n = self.D.shape
        expected = {
            "A": (delta, delta),
            "B": (k, delta),
            "C": (delta, n),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise ShapeError(
                    f"Matrix {name} has shape {actual}, expected {shape} for a "
                    f"system with delta={delta}, k={k}, n={n}."
                )

    @classmethod
    def from_matrices(cls, A, B, C, D) -> "StateSpace":
        return cls(field_of(D), A, B, C, D)

    @classmethod
    def static(cls, D: galois.FieldArray) -> "StateSpace":
        """The delta = 0 system realizing the constant encoder D."""
        F = field_of(D)
        k, n = D.shape
        return cls(F, mat_zeros(F, 0, 0), mat_zeros(F, k, 0), mat_zeros(F, 0, n), D.copy())

    @property
    def delta(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return self.D.shape[0]

    @property
    def n(self) -> int:
        return self.D.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateSpace):
            return NotImplemented
        return self.field == other.field and all(
            _same(getattr(self, name), getattr(other, name)) for name in "ABCD"
        )

    def __hash__(self) -> int:
        return hash(
            (self.field,)
            + tuple(getattr(self, name).tobytes() for name in "ABCD")
            + tuple(getattr(self, name).shape for name in "ABCD")
        )


@dataclass(frozen=True, eq=False)
class FeedbackWitness:
    """
    An element (T, U, M) of the full state feedback group.

    It acts by (A, B, C, D) -> (T^-1 (A - MB) T, U B T, T^-1 (C - MD), U D).
    """

    T: galois.FieldArray
    U: galois.FieldArray
    M: galois.FieldArray

    def __post_init__(self):
        check_same_field(self.T, self.U, self.M)
        delta, k = self.T.shape[0], self.U.shape[0]
        if self.T.shape != (delta, delta) or self.U.shape != (k, k) or self.M.shape != (delta, k):
            raise ShapeError(
                f"Inconsistent feedback shapes T{self.T.shape}, U{self.U.shape}, M{self.M.shape}."
            )

    @classmethod
    def identity(cls, F: FieldSpec, delta: int, k: int) -> "FeedbackWitness":
        return cls(mat_identity(F, delta), mat_identity(F, k), mat_zeros(F, delta, k))

    @classmethod
    def similarity(cls, S: galois.FieldArray, k: int) -> "FeedbackWitness":
        """The group element acting as the similarity with matrix S."""
        F = field_of(S)
        return cls(mat_inverse(S), mat_identity(F, k), mat_zeros(F, S.shape[0], k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeedbackWitness):
            return NotImplemented
        return all(_same(getattr(self, name), getattr(other, name)) for name in "TUM")

    def __hash__(self) -> int:
        return hash(tuple(getattr(self, name).tobytes() for name in "TUM"))


@dataclass(frozen=True)
class CondReport:
    """
    Clause-by-clause evaluation of the rank condition for basic
    semi-reduced encoders.

    Attributes:
        nilpotent: A is nilpotent
        rank_d_full: rank D = k
        zero_lambda_ok: rank [[-A, C], [-B, D]] = delta + k
        nonzero_lambda_ok: G(mu) has rank k for every nonzero mu in the
            algebraic closure; None when A is not nilpotent
    """

    nilpotent: bool
    rank_d_full: bool
    zero_lambda_ok: bool
    nonzero_lambda_ok: bool | None

    @property
    def holds(self) -> bool:
        return (
            self.nilpotent
            and self.rank_d_full
            and self.zero_lambda_ok
            and bool(self.nonzero_lambda_ok)
        )

    @property
    def failed_clause(self) -> str | None:
        """Name of the first failing clause, None when the condition holds."""
        for name in ("nilpotent", "rank_d_full", "zero_lambda_ok", "nonzero_lambda_ok"):
            if not getattr(self, name):
                return name
        return None


# ============================================================================
# Controller form and encoder reconstruction
# ============================================================================


def controller_form(G: PolyMatrix) -> StateSpace:
    """
    The controller form realization of a full-row-rank encoder.

    Row i of G with degree nu_i contributes a nu_i x nu_i shift block to A,
    the first unit vector of that block to row i of B, and the coefficients
    of z^1 .. z^nu_i of row i to C. Rows of degree zero contribute no block
    and a zero row of B. D = G(0).

    Raises:
        RankDeficientError: If G does not have full row rank

    Example:
        >>> G = PolyMatrix.parse(make_field(2), "z; 1+z^2; 1+z; z+z^2\\n1; 0; 1; 1")
        >>> controller_form(G).A.tolist()
        [[0, 1], [0, 0]]
    """
    if not is_full_row_rank(G):
        raise RankDeficientError(
            f"Cannot realize the {G.k}x{G.n} matrix: it does not have full row rank."
        )
    F = G.field
    nus = [int(d) for d in row_degrees(G)]
    delta = sum(nus)

    A = mat_zeros(F, delta, delta)
    B = mat_zeros(F, G.k, delta)
    C = mat_zeros(F, delta, G.n)

    offset = 0
    for i, nu in enumerate(nus):
        if nu > 0:
            B[i, offset] = 1
        for j in range(nu):
            if j + 1 < nu:
                A[offset + j, offset + j + 1] = 1
            C[offset + j, :] = F.GF([coefficient_of(p, j + 1) for p in G.row(i)])
        offset += nu

    sigma = StateSpace(F, A, B, C, G.coefficient(0))
    logger.debug(
        "Built controller form",
        extra={"delta": delta, "k": G.k, "n": G.n, "row_degrees": nus},
    )
    return sigma


def is_nilpotent(A: galois.FieldArray) -> bool:
    """Whether A^delta = 0 for the delta x delta matrix A."""
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"Nilpotency needs a square matrix, got shape {A.shape}.")
    return not np.count_nonzero(mat_power(A, A.shape[0]))


def reconstruct_encoder(sigma: StateSpace) -> PolyMatrix:
    """
    The encoder D + sum_{i>=1} B A^(i-1) C z^i realized by sigma.

    Raises:
        NotNilpotentError: If A is not nilpotent (the transfer matrix is then
            not polynomial)
    """
    if not is_nilpotent(sigma.A):
        raise NotNilpotentError(
            "The state matrix A is not nilpotent, so the system does not "
            "realize a polynomial encoder.\n"
            "Only systems with A^delta = 0 correspond to encoder matrices."
        )
    coefficients = [sigma.D]
    power = sigma.B
    for _ in range(sigma.delta):
        coefficients.append(mat_mul(power, sigma.C))
        power = mat_mul(power, sigma.A)
    return PolyMatrix.from_coefficients(sigma.field, coefficients)


# ============================================================================
# Controllability, observability, canonical reduction
# ============================================================================


def controllability_matrix(sigma: StateSpace) -> galois.FieldArray:
    """The stacked matrix [B; BA; ...; BA^(delta-1)]."""
    blocks, power = [], sigma.B
    for _ in range(sigma.delta):
        blocks.append([power])
        power = mat_mul(power, sigma.A)
    if not blocks:
        return mat_zeros(sigma.field, 0, 0)
    return mat_block(blocks)


def observability_matrix(sigma: StateSpace) -> galois.FieldArray:
    """The matrix [C, AC, ..., A^(delta-1) C]."""
    blocks, power = [], sigma.C
    for _ in range(sigma.delta):
        blocks.append(power)
        power = mat_mul(sigma.A, power)
    if not blocks:
        return mat_zeros(sigma.field, 0, 0)
    return mat_block([blocks])


def is_controllable(sigma: StateSpace) -> bool:
    return mat_rank(controllability_matrix(sigma)) == sigma.delta


def is_observable(sigma: StateSpace) -> bool:
    return mat_rank(observability_matrix(sigma)) == sigma.delta


def is_canonical(sigma: StateSpace) -> bool:
    """Controllable and observable."""
    return is_controllable(sigma) and is_observable(sigma)


def _reachable_basis(sigma: StateSpace) -> galois.FieldArray:
    # greedy scan of the rows of B, BA, BA^2, ...
    F = sigma.field
    basis: list[galois.FieldArray] = []
    block = sigma.B
    for _ in range(sigma.delta):
        grew = False
        for row in block:
            trial = F.GF(np.vstack([v.view(np.ndarray) for v in basis + [row]]))
            if mat_rank(trial) > len(basis):
                basis.append(row.copy())
                grew = True
        if not grew or len(basis) == sigma.delta:
            break
        block = mat_mul(block, sigma.A)
    if not basis:
        return mat_zeros(F, 0, sigma.delta)
    return F.GF(np.vstack([v.view(np.ndarray) for v in basis]))


def _solve_or_fail(A: galois.FieldArray, B: galois.FieldArray) -> galois.FieldArray:
    X = mat_solve(A, B)
    if X is None:
        raise ArithmeticError("Invariant subspace equation has no solution")
    return X


def canonical_reduction(sigma: StateSpace) -> tuple[StateSpace, ReductionStats]:
    """
    Reduce a realization to a canonical (controllable and observable) one.

    First the system is restricted to its reachable subspace, spanned by a
    greedy row basis R of [B; BA; ...]; then the unobservable part is
    divided out by projecting onto the pivot columns Q of the observability
    matrix. The input-output map is unchanged, and the resulting order is
    the McMillan degree of the transfer matrix.

    Returns:
        tuple: (canonical system, ReductionStats)
    """
    F = sigma.field

    # Restriction to the reachable subspace: R A = A_r R, B = B_r R
    R = _reachable_basis(sigma)
    r = R.shape[0]
    if r == 0:
        reachable = StateSpace.static(sigma.D)
    else:
        reachable = StateSpace(
            F,
            _solve_or_fail(R, mat_mul(R, sigma.A)),
            _solve_or_fail(R, sigma.B),
            mat_mul(R, sigma.C),
            sigma.D.copy(),
        )

    # Quotient by the unobservable subspace: A_r Q = Q A_o, C_r = Q C_o
    if r == 0:
        reduced = reachable
    else:
        O = observability_matrix(reachable)
        Q = O[:, pivot_columns(O)].copy()
        m = Q.shape[1]
        if m == 0:
            reduced = StateSpace.static(sigma.D)
        else:
            Qt = Q.T.copy()
            A_o = _solve_or_fail(Qt, mat_mul(reachable.A, Q).T.copy()).T.copy()
            C_o = _solve_or_fail(Qt, reachable.C.T.copy()).T.copy()
            reduced = StateSpace(F, A_o, mat_mul(reachable.B, Q), C_o, sigma.D.copy())

    stats: ReductionStats = {
        "original_order": sigma.delta,
        "controllable_order": r,
        "canonical_order": reduced.delta,
    }
    logger.debug("Canonical reduction", extra=dict(stats))
    return reduced, stats


def mcmillan_degree(G: PolyMatrix) -> int:
    """
    McMillan degree of the transfer matrix T_G(z) = G(z^-1).

    Computed as the order of a canonical realization of G.

    Raises:
        RankDeficientError: If G does not have full row rank
    """
    reduced, _ = canonical_reduction(controller_form(G))
    return reduced.delta


def is_semi_reduced(G: PolyMatrix) -> bool:
    """Whether the McMillan degree of G equals its degree."""
    return mcmillan_degree(G) == degree(G)


# ============================================================================
# The rank condition
# ============================================================================


def zero_lambda_matrix(sigma: StateSpace) -> galois.FieldArray:
    """The (delta+k) x (delta+n) block matrix [[-A, C], [-B, D]]."""
    return mat_block([[-sigma.A, sigma.C], [-sigma.B, sigma.D]])


def _is_monomial(p: galois.Poly) -> bool:
    if is_zero_poly(p):
        return False
    return all(coefficient_of(p, j) == 0 for j in range(int(p.degree)))


def check_cond(sigma: StateSpace) -> CondReport:
    """
    Evaluate each clause of the condition: A nilpotent, rank D = k, and
    [[lambda I - A, C], [-B, D]] of rank delta + k for every lambda in the
    algebraic closure.

    The lambda = 0 case is a direct rank computation. For lambda != 0 the
    Schur complement with respect to the invertible block lambda I - A is
    G(1/lambda), so those cases hold exactly when the k x k minors of the
    reconstructed encoder have a monomial gcd.
    """
    nilpotent = is_nilpotent(sigma.A)
    rank_d_full = sigma.k <= sigma.n and mat_rank(sigma.D) == sigma.k
    zero_lambda_ok = mat_rank(zero_lambda_matrix(sigma)) == sigma.delta + sigma.k

    nonzero_lambda_ok = None
    if nilpotent:
        G = reconstruct_encoder(sigma)
        nonzero_lambda_ok = G.k <= G.n and _is_monomial(minor_gcd(G))

    report = CondReport(nilpotent, rank_d_full, zero_lambda_ok, nonzero_lambda_ok)
    logger.debug(
        "Condition check",
        extra={"holds": report.holds, "failed_clause": report.failed_clause},
    )
    return report


def satisfies_cond(sigma: StateSpace) -> bool:
    return check_cond(sigma).holds


def has_zero_at_infinity(G: PolyMatrix) -> bool:
    """
    Whether T_G(z) = G(z^-1) has a zero at z = 0, i.e. the lambda = 0 rank
    clause fails for a canonical realization of G.
    """
    sigma, _ = canonical_reduction(controller_form(G))
    return mat_rank(zero_lambda_matrix(sigma)) < sigma.delta + sigma.k


# ============================================================================
# Group actions
# ============================================================================


def apply_similarity(sigma: StateSpace, S: galois.FieldArray) -> StateSpace:
    """
    The similar system (S A S^-1, B S^-1, S C, D).

    Raises:
        SingularMatrixError: If S is singular
    """
    if S.shape != (sigma.delta, sigma.delta):
        raise ShapeError(f"Similarity must be {sigma.delta}x{sigma.delta}, got {S.shape}.")
    S_inv = mat_inverse(S)
    return StateSpace(
        sigma.field,
        mat_mul(mat_mul(S, sigma.A), S_inv),
        mat_mul(sigma.B, S_inv),
        mat_mul(S, sigma.C),
        sigma.D.copy(),
    )


def apply_feedback(sigma: StateSpace, w: FeedbackWitness) -> StateSpace:
    """
    The transformed system (T^-1 (A - MB) T, U B T, T^-1 (C - MD), U D).

    Raises:
        SingularMatrixError: If T or U is singular
        ShapeError: If the witness does not fit the system
    """
    check_same_field(w.T, sigma.D)
    if w.T.shape[0] != sigma.delta or w.U.shape[0] != sigma.k:
        raise ShapeError(
            f"Feedback of sizes delta={w.T.shape[0]}, k={w.U.shape[0]} does not fit a "
            f"system with delta={sigma.delta}, k={sigma.k}."
        )
    if not is_invertible(w.U):
        raise SingularMatrixError("Feedback matrix U is singular.")
    T_inv = mat_inverse(w.T)
    return StateSpace(
        sigma.field,
        mat_mul(mat_mul(T_inv, sigma.A - mat_mul(w.M, sigma.B)), w.T),
        mat_mul(mat_mul(w.U, sigma.B), w.T),
        mat_mul(T_inv, sigma.C - mat_mul(w.M, sigma.D)),
        mat_mul(w.U, sigma.D),
    )


def compose_feedback(first: FeedbackWitness, second: FeedbackWitness) -> FeedbackWitness:
    """
    The single group element equivalent to applying ``first`` then ``second``:
    (T1 T2, U2 U1, M1 + T1 M2 U1).
    """
    return FeedbackWitness(
        mat_mul(first.T, second.T),
        mat_mul(second.U, first.U),
        first.M + mat_mul(mat_mul(first.T, second.M), first.U),
    )


def invert_feedback(w: FeedbackWitness) -> FeedbackWitness:
    """The inverse group element (T^-1, U^-1, -T^-1 M U^-1)."""
    T_inv, U_inv = mat_inverse(w.T), mat_inverse(w.U)
    return FeedbackWitness(T_inv, U_inv, -mat_mul(mat_mul(T_inv, w.M), U_inv))


def find_similarity(sigma: StateSpace, other: StateSpace) -> galois.FieldArray | None:
    """
    An S with other = (S A S^-1, B S^-1, S C, D), or None.

    The candidate solves S O = O' for the observability matrices, which
    determines S uniquely when sigma is observable; it is then verified.
    """
    check_same_field(sigma.D, other.D)
    if (sigma.delta, sigma.k, sigma.n) != (other.delta, other.k, other.n):
        return None
    if not _same(sigma.D, other.D):
        return None
    if sigma.delta == 0:
        return mat_zeros(sigma.field, 0, 0)
    S = mat_solve(observability_matrix(sigma), observability_matrix(other))
    if S is None or not is_invertible(S):
        return None
    return S if apply_similarity(sigma, S) == other else None


def apply_monomial(sigma: StateSpace, transform: "MonomialTransform") -> StateSpace:
    """
    The realization (phi(A), phi(B), phi(C) P R, phi(D) P R) of the
    monomially transformed encoder phi(G) P R.
    """
    phi = transform.automorphism
    PR = transform.matrix()
    return StateSpace(
        sigma.field,
        phi(sigma.A),
        phi(sigma.B),
        mat_mul(phi(sigma.C), PR),
        mat_mul(phi(sigma.D), PR),
    )


def feedback_to_controller_form(sigma: StateSpace, G_hat: PolyMatrix) -> FeedbackWitness:
    """
    A witness w with apply_feedback(controller_form(G_hat), w) == sigma.

    ``G_hat`` must be a reduced encoder of the code generated by the encoder
    of ``sigma``, and sigma must be canonical of order deg(G_hat). With
    W = G_hat H for a right inverse H of sigma's encoder, the witness uses
    U = W(0)^-1, reads M off the z^j coefficients of W U - I block by block,
    and finishes with the similarity that identifies the two canonical
    realizations.

    Raises:
        PreconditionError: If sigma is not in the feedback orbit of the
            controller form of G_hat
    """
    F = sigma.field
    G = reconstruct_encoder(sigma)
    W = G_hat @ right_inverse(G)
    if W @ G != G_hat:
        raise PreconditionError(
            "The system's encoder and the reference encoder generate different codes."
        )

    nus = [int(d) for d in row_degrees(G_hat)]
    for i, bound in enumerate(row_degrees(W, allow_zero=True)):
        if bound > nus[i]:
            raise PreconditionError(
                f"Row {i} of the transition matrix has degree {bound} above the "
                f"row degree {nus[i]} of the reference encoder.\n"
                "The system is not a feedback transform of its controller form."
            )

    W0 = W.coefficient(0)
    if not is_invertible(W0):
        raise PreconditionError(
            "The transition matrix is singular at z = 0, so no feedback maps the "
            "controller form onto this system."
        )
    U = mat_inverse(W0)
    V = W @ U

    base = controller_form(G_hat)
    M = mat_zeros(F, base.delta, G_hat.k)
    offset = 0
    for i, nu in enumerate(nus):
        for j in range(1, nu + 1):
            M[offset + j - 1, :] = V.coefficient(j)[i, :]
        offset += nu

    step = FeedbackWitness(mat_identity(F, base.delta), U, M)
    intermediate = apply_feedback(base, step)
    S = find_similarity(intermediate, sigma)
    if S is None:
        raise PreconditionError(
            "No state similarity identifies the system with the feedback transform "
            "of the controller form; the system is not canonical of the code's degree."
        )
    w = compose_feedback(step, FeedbackWitness.similarity(S, G_hat.k))
    if apply_feedback(base, w) != sigma:
        raise ArithmeticError("Constructed feedback witness does not verify")
    return w
