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
Exact arithmetic over finite fields GF(p^s).

Field elements and matrices are ``galois`` field arrays; this module pins down
the conventions the rest of the package relies on and adds the exact linear
algebra used by the realization and equivalence code.

Conventions:
    - The modulus of GF(p^s), s > 1, is the lexicographically smallest monic
      irreducible polynomial of degree s, comparing coefficients from the
      constant term upwards.
    - Elements are ordered by their integer representation 0..q-1, read as
      base-p digit vectors with the low digit as the constant coefficient.
    - Extension-field elements are written in the generator symbol ``a``
      (``a``, ``a+1``, ``a^2+2a``); prime-field elements as decimal integers.

Quick Start:
    >>> from convequiv.fields import make_field, mat_rank
    >>> F = make_field(2, 2)
    >>> str(F)
    'GF(2^2)'
    >>> F.format_element(F.parse_element("a") ** 2)
    'a+1'
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator

import galois
import numpy as np

from . import config
from .types import (
    FieldMismatchError,
    ParseError,
    SearchCapExceeded,
    ShapeError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^(\d*)(a(?:\^(\d+))?)?$")
_FIELD = re.compile(r"^GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)$")


# ============================================================================
# Fields
# ============================================================================


@dataclass(frozen=True)
class FieldSpec:
    """
    The finite field GF(p^s) together with its element conventions.

    Attributes:
        p: Characteristic (prime)
        s: Extension degree (>= 1)
        modulus: Ascending coefficients of the defining polynomial when s > 1,
            None for prime fields
        GF: The ``galois`` field-array class doing the arithmetic
    """

    p: int
    s: int
    modulus: tuple[int, ...] | None
    GF: type[galois.FieldArray] = field(compare=False, hash=False, repr=False)

    @property
    def q(self) -> int:
        """Number of elements p^s."""
        return self.p**self.s

    def __str__(self) -> str:
        return f"GF({self.p})" if self.s == 1 else f"GF({self.p}^{self.s})"

    def element(self, value: int) -> galois.FieldArray:
        """Element with integer representation ``value`` (0 <= value < q)."""
        return self.GF(value)

    def elements(self) -> galois.FieldArray:
        """All q elements in the fixed order."""
        return self.GF.Range(0, self.q)

    def array(self, values: Any) -> galois.FieldArray:
        """Field array from nested integer representations."""
        return self.GF(np.asarray(values, dtype=np.int64))

    def parse_element(self, text: str) -> galois.FieldArray:
        """
        Parse an element literal.

        Args:
            text: Decimal integer for prime fields; a sum of terms ``c``,
                ``ca`` or ``ca^e`` for extension fields (``c`` optional)

        Returns:
            galois.FieldArray: 0-d field array

        Raises:
            ParseError: If the literal is malformed or a coefficient is not
                below the characteristic
        """
        body = text.replace(" ", "")
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        if not body:
            raise ParseError(f"Empty element literal for {self}")

        total = self.GF(0)
        generator = self.GF(self.p) if self.s > 1 else None
        for term in body.split("+"):
            match = _TERM.match(term)
            if not term or match is None:
                raise ParseError(f"Malformed element literal {text!r} for {self}")
            digits, symbol, exponent = match.groups()
            if digits and int(digits) >= self.p:
                raise ParseError(
                    f"Coefficient {digits} in element literal {text!r} is not below the "
                    f"characteristic of {self}; write it reduced mod {self.p}."
                )
            if symbol is None:
                total = total + self.GF(int(digits))
                continue
            if generator is None:
                raise ParseError(
                    f"Element literal {text!r} uses the generator 'a' but "
                    f"{self} is a prime field; write elements as integers."
                )
            coefficient = int(digits) if digits else 1
            power = int(exponent) if exponent is not None else 1
            total = total + self.GF(coefficient) * generator**power
        return total

    def format_element(self, x: Any) -> str:
        """
        Render an element in the literal syntax understood by ``parse_element``.

        Args:
            x: Field element (0-d field array or integer representation)

        Returns:
            str: e.g. ``"2"`` in GF(3), ``"a^2+1"`` in GF(2^3)
        """
        value = int(x)
        if self.s == 1:
            return str(value)
        digits = [(value // self.p**i) % self.p for i in range(self.s)]
        terms = []
        for power in range(self.s - 1, -1, -1):
            c = digits[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            symbol = "a" if power == 1 else f"a^{power}"
            terms.append(symbol if c == 1 else f"{c}{symbol}")
        return "+".join(terms) if terms else "0"


def _smallest_irreducible(p: int, s: int) -> galois.Poly:
    # irreducible_polys yields monic polynomials; compare constant term first
    return min(
        galois.irreducible_polys(p, s),
        key=lambda f: tuple(int(c) for c in f.coeffs[::-1]),
    )


@lru_cache(maxsize=None)
def _build_field(p: int, s: int) -> FieldSpec:
    if s == 1:
        spec = FieldSpec(p=p, s=1, modulus=None, GF=galois.GF(p))
    else:
        modulus = _smallest_irreducible(p, s)
        spec = FieldSpec(
            p=p,
            s=s,
            modulus=tuple(int(c) for c in modulus.coeffs[::-1]),
            GF=galois.GF(p**s, irreducible_poly=modulus),
        )
    _SPECS_BY_CLASS[spec.GF] = spec
    logger.debug(f"Constructed {spec}", extra={"p": p, "s": s, "modulus": spec.modulus})
    return spec


_SPECS_BY_CLASS: dict[type, FieldSpec] = {}


def make_field(p: int, s: int = 1) -> FieldSpec:
    """
    Construct GF(p^s) with the deterministic modulus choice.

    Repeated calls with the same arguments return the same FieldSpec.

    Args:
        p: Prime characteristic
        s: Extension degree (default 1)

    Returns:
        FieldSpec: The field

    Raises:
        ValueError: If p is not prime or s < 1
        SearchCapExceeded: If p^s exceeds CONVEQUIV_MAX_FIELD_ORDER

    Example:
        >>> F = make_field(3)
        >>> int(F.element(2) * F.element(2))
        1
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise ValueError(f"Field characteristic must be prime, got {p!r}.")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"Extension degree must be a positive integer, got {s!r}.")

    cap = config.max_field_order()
    if p**s > cap:
        logger.warning(
            f"Field GF({p}^{s}) exceeds the field-order cap",
            extra={"q": p**s, "cap": cap},
        )
        raise SearchCapExceeded(
            f"GF({p}^{s}) has {p**s} elements, above the cap of {cap}.\n"
            "Raise CONVEQUIV_MAX_FIELD_ORDER to allow larger fields.",
            size=p**s,
            cap=cap,
        )
    return _build_field(p, s)


def parse_field(text: str) -> FieldSpec:
    """
    Parse a field literal ``GF(p)`` or ``GF(p^s)``.

    ``GF(q)`` with q a prime power is accepted as a shorthand for the
    extension field of order q.

    Raises:
        ParseError: If the literal is malformed or q is not a prime power
    """
    match = _FIELD.match(text.strip())
    if match is None:
        raise ParseError(f"Expected a field literal like GF(2) or GF(3^2), got {text.strip()!r}")
    base = int(match.group(1))
    if match.group(2) is not None:
        p, s = base, int(match.group(2))
    elif base >= 2 and galois.is_prime_power(base):
        p = next(d for d in range(2, base + 1) if base % d == 0)
        s = round(math.log(base, p))
    else:
        raise ParseError(f"Field order {base} is not a prime power")
    try:
        return make_field(p, s)
    except SearchCapExceeded:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def field_of(M: Any) -> FieldSpec:
    """
    The FieldSpec owning a field array or polynomial matrix.

    Raises:
        TypeError: If ``M`` carries no finite-field information
    """
    if isinstance(M, galois.FieldArray):
        cls = type(M)
        if cls not in _SPECS_BY_CLASS:
            return _build_field(cls.characteristic, cls.degree)
        return _SPECS_BY_CLASS[cls]
    spec = getattr(M, "field", None)
    if isinstance(spec, FieldSpec):
        return spec
    raise TypeError(f"Object of type {type(M).__name__} is not over a finite field")


def check_same_field(*items: Any) -> FieldSpec:
    """
    Ensure all arguments live over one field and return it.

    Raises:
        FieldMismatchError: If two arguments are over different fields
    """
    fields = [field_of(item) for item in items]
    first = fields[0]
    for other in fields[1:]:
        if other != first:
            raise FieldMismatchError(
                f"Operands are over different fields: {first} and {other}.\n"
                "Convert both operands to the same field before combining them."
            )
    return first


# ============================================================================
# Automorphisms
# ============================================================================


@dataclass(frozen=True)
class Automorphism:
    """
    The Frobenius power x -> x^(p^exponent) of a field.

    Attributes:
        field: Owning field
        exponent: i in [0, s)
    """

    field: FieldSpec
    exponent: int = 0

    def __post_init__(self):
        if not 0 <= self.exponent < self.field.s:
            raise ValueError(
                f"Automorphism exponent must be in [0, {self.field.s}) for "
                f"{self.field}, got {self.exponent}."
            )

    @property
    def is_identity(self) -> bool:
        return self.exponent == 0

    def apply_array(self, x: galois.FieldArray) -> galois.FieldArray:
        """Image of a field array, entrywise."""
        if self.is_identity:
            return x.copy()
        return x ** (self.field.p**self.exponent)

    def __call__(self, M: Any) -> Any:
        return apply_automorphism(self, M)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """The automorphism applying ``self`` then ``other``."""
        if other.field != self.field:
            raise FieldMismatchError(
                f"Cannot compose automorphisms of {self.field} and {other.field}."
            )
        return Automorphism(self.field, (self.exponent + other.exponent) % self.field.s)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.field, (-self.exponent) % self.field.s)

    def __str__(self) -> str:
        if self.is_identity:
            return "id"
        return f"x -> x^{self.field.p ** self.exponent}"


def automorphisms(F: FieldSpec) -> list[Automorphism]:
    """
    All s automorphisms of F, identity first.

    Example:
        >>> [str(phi) for phi in automorphisms(make_field(2, 2))]
        ['id', 'x -> x^2']
    """
    return [Automorphism(F, i) for i in range(F.s)]


def apply_automorphism(phi: Automorphism, M: Any) -> Any:
    """
    Apply an automorphism entrywise to a field array, or coefficientwise to
    any object with a ``map_coefficients`` method (polynomial matrices).

    Raises:
        FieldMismatchError: If M is not over phi's field
    """
    if field_of(M) != phi.field:
        raise FieldMismatchError(
            f"Automorphism of {phi.field} cannot act on data over {field_of(M)}."
        )
    if isinstance(M, galois.FieldArray):
        return phi.apply_array(M)
    return M.map_coefficients(phi.apply_array)


# ============================================================================
# Shape-safe matrix helpers
# ============================================================================


def mat_zeros(F: FieldSpec, rows: int, cols: int) -> galois.FieldArray:
    return F.GF.Zeros((rows, cols))


def mat_identity(F: FieldSpec, n: int) -> galois.FieldArray:
    return F.GF.Identity(n) if n > 0 else F.GF.Zeros((0, 0))


def mat_mul(X: galois.FieldArray, Y: galois.FieldArray) -> galois.FieldArray:
    """
    Matrix product that also handles empty (delta = 0) operands.

    Raises:
        FieldMismatchError: If X and Y are over different fields
        ShapeError: If the inner dimensions differ
    """
    F = check_same_field(X, Y)
    if X.shape[1] != Y.shape[0]:
        raise ShapeError(f"Cannot multiply {X.shape} by {Y.shape} matrices.")
    if X.size == 0 or Y.size == 0:
        return mat_zeros(F, X.shape[0], Y.shape[1])
    return X @ Y


def mat_power(A: galois.FieldArray, exponent: int) -> galois.FieldArray:
    F = field_of(A)
    result = mat_identity(F, A.shape[0])
    for _ in range(exponent):
        result = mat_mul(result, A)
    return result


def mat_block(blocks: list[list[galois.FieldArray]]) -> galois.FieldArray:
    """Assemble a block matrix; blocks may be empty along one axis."""
    F = check_same_field(*(b for row in blocks for b in row))
    rows = [np.hstack([b.view(np.ndarray) for b in row]) for row in blocks]
    return F.GF(np.vstack(rows).astype(np.int64))


def all_vectors(F: FieldSpec, length: int) -> galois.FieldArray:
    """
    Every vector of F^length as rows, in lexicographic order with the first
    coordinate most significant. For length 0 this is a single empty row.
    """
    table = np.array(list(itertools.product(range(F.q), repeat=length)), dtype=np.int64)
    return F.GF(table.reshape(F.q**length, length))


# ============================================================================
# Elimination
# ============================================================================


def rref(M: galois.FieldArray, ncols: int | None = None) -> galois.FieldArray:
    """Reduced row echelon form, pivoting only in the first ``ncols`` columns."""
    if M.size == 0:
        return M.copy()
    return M.row_reduce(ncols=ncols)


def pivot_columns(M: galois.FieldArray) -> list[int]:
    """Pivot columns of M, i.e. the greedy left-to-right column basis."""
    R = rref(M)
    pivots = []
    for row in R.view(np.ndarray):
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return pivots


def mat_rank(M: galois.FieldArray) -> int:
    """
    Rank of a matrix over its field.

    Example:
        >>> F = make_field(2)
        >>> mat_rank(F.array([[0, 1], [0, 0]]))
        1
    """
    if M.size == 0:
        return 0
    return int(np.linalg.matrix_rank(M))


def mat_inverse(M: galois.FieldArray) -> galois.FieldArray:
    """
    Inverse of a square invertible matrix.

    Raises:
        ShapeError: If M is not square
        SingularMatrixError: If M is singular
    """
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"Only square matrices can be inverted, got shape {M.shape}.")
    if M.shape[0] == 0:
        return M.copy()
    if mat_rank(M) < M.shape[0]:
        raise SingularMatrixError(
            f"Matrix of shape {M.shape} is singular (rank {mat_rank(M)})."
        )
    return np.linalg.inv(M)


def is_invertible(M: galois.FieldArray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1] and mat_rank(M) == M.shape[0]


def mat_kernel(M: galois.FieldArray) -> galois.FieldArray:
    """
    Basis (as rows) of the left kernel {x : x M = 0}.

    Example:
        >>> F = make_field(2)
        >>> mat_kernel(F.array([[1], [1]])).tolist()
        [[1, 1]]
    """
    F = field_of(M)
    rows, cols = M.shape
    if rows == 0:
        return mat_zeros(F, 0, 0)
    if cols == 0:
        return mat_identity(F, rows)

    R = rref(M.T.copy())
    pivots = pivot_columns(M.T.copy())
    free = [j for j in range(rows) if j not in pivots]
    basis = mat_zeros(F, len(free), rows)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, pivot in enumerate(pivots):
            basis[b, pivot] = -R[r, f]
    return basis


def mat_solve(A: galois.FieldArray, B: galois.FieldArray) -> galois.FieldArray | None:
    """
    One solution X of X A = B, or None when the system is inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.

    Raises:
        ShapeError: If A and B have different numbers of columns
    """
    F = check_same_field(A, B)
    m, c = A.shape
    r = B.shape[0]
    if B.shape[1] != c:
        raise ShapeError(
            f"Cannot solve X A = B with A of shape {A.shape} and B of shape {B.shape}."
        )
    if m == 0 or c == 0:
        if np.count_nonzero(B) and m == 0:
            return None
        return mat_zeros(F, r, m)

    augmented = mat_block([[A.T.copy(), B.T.copy()]])
    R = rref(augmented, ncols=m)
    Xt = mat_zeros(F, m, r)
    for row in range(c):
        left = np.flatnonzero(R[row, :m].view(np.ndarray))
        if left.size == 0:
            if np.count_nonzero(R[row, m:]):
                return None
            continue
        Xt[int(left[0]), :] = R[row, m:]
    return Xt.T.copy()


# ============================================================================
# Invertible matrices
# ============================================================================


def count_invertible(F: FieldSpec, delta: int) -> int:
    """Order of GL_delta(F), i.e. the product of (q^delta - q^i)."""
    return math.prod(F.q**delta - F.q**i for i in range(delta))


def enumerate_invertible(
    F: FieldSpec, delta: int, cap: int | None = None
) -> Iterator[galois.FieldArray]:
    """
    Yield every invertible delta x delta matrix exactly once.

    Matrices are built row by row, each row running through the nonzero
    vectors in lexicographic order, and prefixes that lose rank are pruned.
    The order is therefore deterministic and starts with the identity only
    when delta <= 1; callers that want the identity first handle it themselves.

    Args:
        F: Field
        delta: Matrix size (0 yields one empty matrix)
        cap: Largest permitted group order (default CONVEQUIV_MAX_SEARCH)

    Raises:
        SearchCapExceeded: If |GL_delta(F)| exceeds the cap

    Example:
        >>> sum(1 for _ in enumerate_invertible(make_field(2), 2))
        6
    """
    if delta < 0:
        raise ValueError(f"Matrix size must be non-negative, got {delta}.")
    cap = config.max_search() if cap is None else cap
    total = count_invertible(F, delta)
    if total > cap:
        logger.warning(
            f"GL_{delta}({F}) enumeration exceeds the search cap",
            extra={"size": total, "cap": cap},
        )
        raise SearchCapExceeded(
            f"GL_{delta}({F}) has {total} elements, above the search cap of {cap}.\n"
            "Raise CONVEQUIV_MAX_SEARCH or use a smaller state dimension.",
            size=total,
            cap=cap,
        )
    if delta == 0:
        yield mat_zeros(F, 0, 0)
        return

    candidates = all_vectors(F, delta)[1:]

    def extend(prefix: list[galois.FieldArray]) -> Iterator[galois.FieldArray]:
        if len(prefix) == delta:
            yield F.GF(np.vstack([v.view(np.ndarray) for v in prefix]))
            return
        for v in candidates:
            trial = prefix + [v]
            stacked = F.GF(np.vstack([w.view(np.ndarray) for w in trial]))
            if mat_rank(stacked) == len(trial):
                yield from extend(trial)

    yield from extend([])
