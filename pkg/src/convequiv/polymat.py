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
Polynomial matrices over F[z].

A convolutional code is the row module of a polynomial encoder matrix G.
This module provides the matrix type and the structural tests and canonical
forms the rest of the package builds on: degree and row degrees, basicness,
reducedness, unimodularity, the Smith form, polynomial right inverses and the
Popov form that decides whether two encoders generate the same code.

Conventions:
    - Entries are ``galois.Poly`` values; the zero polynomial has degree
      ``ZERO_DEGREE`` (negative infinity), never -1.
    - The leading position of a row is the rightmost entry achieving the row
      degree. A Popov matrix has monic pivots in strictly increasing columns,
      and every other entry of a pivot column has lower degree than the pivot.
    - Text: entries ``1+z^2``, ``2z``, ``a+az^3``; one row per line, entries
      separated by ``;``.

Quick Start:
    >>> from convequiv.fields import make_field
    >>> from convequiv.polymat import PolyMatrix, degree, is_basic
    >>> F = make_field(2)
    >>> G = PolyMatrix.parse(F, "z; 1+z^2; 1+z; z+z^2\\n1; 0; 1; 1")
    >>> degree(G), is_basic(G)
    (2, True)
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

import galois
import numpy as np

from .fields import FieldSpec, check_same_field, mat_rank
from .types import (
    FieldMismatchError,
    NotBasicError,
    ParseError,
    RankDeficientError,
    ShapeError,
)

logger = logging.getLogger(__name__)

ZERO_DEGREE = float("-inf")
"""Degree of the zero polynomial and of zero rows."""

# degree(G) enumerates minors up to this many columns
MINOR_ENUMERATION_MAX_COLS = 8


# ============================================================================
# Scalar polynomials
# ============================================================================


def poly(F: FieldSpec, coeffs: Iterable[Any]) -> galois.Poly:
    """Polynomial from ascending coefficients (integer representations or elements)."""
    values = [int(c) for c in coeffs]
    if not values:
        return galois.Poly.Zero(F.GF)
    return galois.Poly(F.GF(values), order="asc")


def constant(F: FieldSpec, c: Any) -> galois.Poly:
    return galois.Poly([int(c)], field=F.GF)


def monomial(F: FieldSpec, c: Any, power: int) -> galois.Poly:
    """The polynomial c z^power."""
    return poly(F, [0] * power + [int(c)])


def is_zero_poly(p: galois.Poly) -> bool:
    return p.degree == 0 and int(p.coeffs[0]) == 0


def poly_degree(p: galois.Poly) -> float | int:
    """Degree of p, ``ZERO_DEGREE`` for the zero polynomial."""
    return ZERO_DEGREE if is_zero_poly(p) else int(p.degree)


def coefficient_of(p: galois.Poly, power: int) -> int:
    """Integer representation of the z^power coefficient of p."""
    if power < 0 or power > p.degree:
        return 0
    return int(p.coeffs[p.degree - power])


def leading_coefficient(p: galois.Poly) -> Any:
    return p.coeffs[0]


def _split_top_level(text: str) -> list[tuple[str, int]]:
    """Split on '+' outside parentheses, returning (term, offset) pairs."""
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            terms.append((text[start:i], start))
            start = i + 1
    terms.append((text[start:], start))
    return terms


def parse_poly(F: FieldSpec, text: str, line: int = 0, column: int = 1) -> galois.Poly:
    """
    Parse a polynomial such as ``1+z^2``, ``2z`` or ``(a+1)z^3+a``.

    Args:
        F: Field of the coefficients
        text: Polynomial literal; whitespace is ignored
        line: Line number reported in parse errors
        column: Column of ``text[0]`` reported in parse errors

    Returns:
        galois.Poly: The polynomial (repeated powers are summed)

    Raises:
        ParseError: If a term is malformed
    """
    body = "".join(text.split())
    if not body:
        raise ParseError("Empty polynomial entry", line, column)

    total = galois.Poly.Zero(F.GF)
    for term, offset in _split_top_level(body):
        where = column + offset
        if not term:
            raise ParseError(f"Empty term in polynomial {text.strip()!r}", line, where)
        z_at = term.rfind("z")
        if z_at == -1:
            coef_text, power = term, 0
        else:
            coef_text, power_text = term[:z_at], term[z_at + 1 :]
            if power_text == "":
                power = 1
            elif power_text.startswith("^") and power_text[1:].isdigit():
                power = int(power_text[1:])
            else:
                raise ParseError(f"Malformed power in term {term!r}", line, where)
        if coef_text in ("", "()"):
            if z_at == -1:
                raise ParseError(f"Empty term in polynomial {text.strip()!r}", line, where)
            coef = F.GF(1)
        else:
            try:
                coef = F.parse_element(coef_text)
            except ParseError as e:
                raise ParseError(str(e), line, where) from None
        total = total + monomial(F, coef, power)
    return total


def format_poly(F: FieldSpec, p: galois.Poly) -> str:
    """
    Render a polynomial in ascending powers of z.

    Example:
        >>> F = make_field(2)
        >>> format_poly(F, poly(F, [1, 0, 1]))
        '1+z^2'
    """
    if is_zero_poly(p):
        return "0"
    terms = []
    for power in range(int(p.degree) + 1):
        c = coefficient_of(p, power)
        if c == 0:
            continue
        text = F.format_element(c)
        if power == 0:
            terms.append(text)
            continue
        symbol = "z" if power == 1 else f"z^{power}"
        if c == 1:
            terms.append(symbol)
        elif "+" in text:
            terms.append(f"({text}){symbol}")
        else:
            terms.append(f"{text}{symbol}")
    return "+".join(terms)


# ============================================================================
# Matrix type
# ============================================================================


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """
    A k x n matrix over F[z].

    Attributes:
        field: Coefficient field
        entries: Row-major tuple of row tuples of ``galois.Poly``
        ncols: Number of columns (kept explicitly so k = 0 is representable)
    """

    field: FieldSpec
    entries: tuple[tuple[galois.Poly, ...], ...]
    ncols: int

    def __post_init__(self):
        for i, row in enumerate(self.entries):
            if len(row) != self.ncols:
                raise ShapeError(
                    f"Row {i} has {len(row)} entries, expected {self.ncols}."
                )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(
        cls, F: FieldSpec, rows: Iterable[Iterable[galois.Poly]], ncols: int | None = None
    ) -> "PolyMatrix":
        grid = tuple(tuple(row) for row in rows)
        if ncols is None:
            if not grid:
                raise ShapeError("Cannot infer the column count of an empty matrix.")
            ncols = len(grid[0])
        return cls(F, grid, ncols)

    @classmethod
    def from_coefficients(
        cls, F: FieldSpec, coeffs: Sequence[galois.FieldArray]
    ) -> "PolyMatrix":
        """Matrix sum_j coeffs[j] z^j from constant k x n field matrices."""
        if not coeffs:
            raise ShapeError("At least one coefficient matrix is required.")
        k, n = coeffs[0].shape
        stack = np.stack([np.asarray(c.view(np.ndarray), dtype=np.int64) for c in coeffs])
        rows = [[poly(F, stack[:, i, j]) for j in range(n)] for i in range(k)]
        return cls.from_rows(F, rows, n)

    @classmethod
    def constant(cls, F: FieldSpec, M: galois.FieldArray) -> "PolyMatrix":
        return cls.from_coefficients(F, [M])

    @classmethod
    def identity(cls, F: FieldSpec, k: int) -> "PolyMatrix":
        one, zero = galois.Poly.One(F.GF), galois.Poly.Zero(F.GF)
        return cls.from_rows(F, [[one if i == j else zero for j in range(k)] for i in range(k)], k)

    @classmethod
    def zeros(cls, F: FieldSpec, k: int, n: int) -> "PolyMatrix":
        zero = galois.Poly.Zero(F.GF)
        return cls.from_rows(F, [[zero] * n for _ in range(k)], n)

    @classmethod
    def parse(cls, F: FieldSpec, text: str, first_line: int = 1) -> "PolyMatrix":
        """
        Parse a matrix: one row per non-blank line, entries separated by ``;``.

        Raises:
            ParseError: On malformed entries or ragged rows
        """
        rows: list[list[galois.Poly]] = []
        for offset, raw in enumerate(text.splitlines()):
            if not raw.strip():
                continue
            line = first_line + offset
            row, column = [], 1
            for cell in raw.split(";"):
                row.append(parse_poly(F, cell, line, column))
                column += len(cell) + 1
            if rows and len(row) != len(rows[0]):
                raise ParseError(
                    f"Row has {len(row)} entries but the first row has {len(rows[0])}",
                    line,
                    1,
                )
            rows.append(row)
        if not rows:
            raise ParseError("Matrix has no rows", first_line, 1)
        return cls.from_rows(F, rows)

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k, self.ncols)

    def __getitem__(self, index: tuple[int, int]) -> galois.Poly:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[galois.Poly, ...]:
        return self.entries[i]

    def key(self) -> tuple:
        """Hashable exact representation (ascending integer coefficients)."""
        return tuple(
            tuple(tuple(int(c) for c in p.coeffs[::-1]) for p in row) for row in self.entries
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.key()))

    @property
    def max_degree(self) -> float | int:
        """Largest entry degree, ``ZERO_DEGREE`` for the zero matrix."""
        return max(
            (poly_degree(p) for row in self.entries for p in row), default=ZERO_DEGREE
        )

    def coefficient(self, power: int) -> galois.FieldArray:
        """The constant k x n matrix multiplying z^power."""
        values = [[coefficient_of(p, power) for p in row] for row in self.entries]
        return self.field.GF(np.array(values, dtype=np.int64).reshape(self.k, self.n))

    def evaluate(self, x: Any) -> galois.FieldArray:
        """G(x) for a field element x."""
        point = self.field.GF(int(x))
        values = [[int(p(point)) for p in row] for row in self.entries]
        return self.field.GF(np.array(values, dtype=np.int64).reshape(self.k, self.n))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check(self, other: "PolyMatrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"Cannot combine matrices over {self.field} and {other.field}."
            )

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape} matrices.")
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return PolyMatrix.from_rows(self.field, rows, self.n)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix.from_rows(self.field, [[-a for a in r] for r in self.entries], self.n)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix | galois.FieldArray") -> "PolyMatrix":
        if isinstance(other, galois.FieldArray):
            check_same_field(other, self)
            other = PolyMatrix.constant(self.field, other)
        self._check(other)
        if self.n != other.k:
            raise ShapeError(f"Cannot multiply {self.shape} by {other.shape} matrices.")
        zero = galois.Poly.Zero(self.field.GF)
        rows = []
        for row in self.entries:
            out = []
            for j in range(other.n):
                acc = zero
                for t, a in enumerate(row):
                    if not is_zero_poly(a):
                        acc = acc + a * other.entries[t][j]
                out.append(acc)
            rows.append(out)
        return PolyMatrix.from_rows(self.field, rows, other.n)

    def transpose(self) -> "PolyMatrix":
        rows = [[self.entries[i][j] for i in range(self.k)] for j in range(self.n)]
        return PolyMatrix.from_rows(self.field, rows, self.k)

    def take_rows(self, order: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix.from_rows(self.field, [self.entries[i] for i in order], self.n)

    def take_columns(self, columns: Sequence[int]) -> "PolyMatrix":
        rows = [[row[j] for j in columns] for row in self.entries]
        return PolyMatrix.from_rows(self.field, rows, len(columns))

    def map_coefficients(
        self, fn: Callable[[galois.FieldArray], galois.FieldArray]
    ) -> "PolyMatrix":
        """Apply ``fn`` to the ascending coefficient vector of every entry."""
        rows = [
            [galois.Poly(fn(p.coeffs[::-1].copy()), order="asc") for p in row]
            for row in self.entries
        ]
        return PolyMatrix.from_rows(self.field, rows, self.n)

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join(
            "; ".join(format_poly(self.field, p) for p in row) for row in self.entries
        )

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        body = " | ".join(
            ", ".join(format_poly(self.field, p) for p in row) for row in self.entries
        )
        return f"PolyMatrix({self.field}, {self.k}x{self.n}: {body})"


def _grid(G: PolyMatrix) -> list[list[galois.Poly]]:
    return [list(row) for row in G.entries]


def _row_is_zero(row: Sequence[galois.Poly]) -> bool:
    return all(is_zero_poly(p) for p in row)


def _axpy_row(
    target: list[galois.Poly], factor: galois.Poly, source: Sequence[galois.Poly]
) -> list[galois.Poly]:
    """target - factor * source, entrywise."""
    return [t - factor * s for t, s in zip(target, source)]


# ============================================================================
# Degrees
# ============================================================================


def row_degrees(G: PolyMatrix, allow_zero: bool = False) -> list:
    """
    Row degrees nu_i = max entry degree of row i.

    Args:
        G: Polynomial matrix
        allow_zero: Report zero rows as ``ZERO_DEGREE`` instead of raising

    Raises:
        RankDeficientError: If a row is zero and ``allow_zero`` is False
    """
    degrees = []
    for i, row in enumerate(G.entries):
        d = max((poly_degree(p) for p in row), default=ZERO_DEGREE)
        if d == ZERO_DEGREE and not allow_zero:
            raise RankDeficientError(
                f"Row {i} of the encoder is zero; a zero row has no degree.\n"
                "Remove the row or supply a full-row-rank matrix."
            )
        degrees.append(d)
    return degrees


def leading_row_coefficients(G: PolyMatrix) -> galois.FieldArray:
    """Constant matrix whose row i is the z^nu_i coefficient of row i."""
    nus = row_degrees(G)
    values = [[coefficient_of(p, nu) for p in row] for row, nu in zip(G.entries, nus)]
    return G.field.GF(np.array(values, dtype=np.int64).reshape(G.k, G.n))


def _leading_position(row: Sequence[galois.Poly]) -> tuple[int, int]:
    d = max(poly_degree(p) for p in row)
    pos = max(j for j, p in enumerate(row) if poly_degree(p) == d)
    return pos, d


# ============================================================================
# Determinants and minors
# ============================================================================


def poly_det(W: PolyMatrix) -> galois.Poly:
    """
    Determinant over F[z] by fraction-free (Bareiss) elimination.

    Raises:
        ShapeError: If W is not square
    """
    if W.k != W.n:
        raise ShapeError(f"Determinant needs a square matrix, got {W.shape}.")
    F = W.field
    size = W.k
    if size == 0:
        return galois.Poly.One(F.GF)
    M = _grid(W)
    negate = False
    previous = galois.Poly.One(F.GF)
    for c in range(size - 1):
        if is_zero_poly(M[c][c]):
            swap = next((r for r in range(c + 1, size) if not is_zero_poly(M[r][c])), None)
            if swap is None:
                return galois.Poly.Zero(F.GF)
            M[c], M[swap] = M[swap], M[c]
            negate = not negate
        for i in range(c + 1, size):
            for j in range(c + 1, size):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // previous
        previous = M[c][c]
    det = M[size - 1][size - 1]
    return -det if negate else det


def minors(G: PolyMatrix) -> dict[tuple[int, ...], galois.Poly]:
    """All k x k minors of G keyed by their (sorted) column subsets."""
    if G.k > G.n:
        return {}
    return {cols: poly_det(G.take_columns(cols)) for cols in itertools.combinations(range(G.n), G.k)}


# ============================================================================
# Weak Popov and rank
# ============================================================================


def _weak_popov(rows: list[list[galois.Poly]]) -> None:
    """
    Bring rows to weak Popov form in place (distinct leading positions).

    Raises:
        RankDeficientError: If a row becomes zero
    """
    for i, row in enumerate(rows):
        if _row_is_zero(row):
            raise RankDeficientError(
                f"Row {i} is zero, so the matrix does not have full row rank.\n"
                "Supply k linearly independent rows over F(z)."
            )
    while True:
        positions = [_leading_position(row) for row in rows]
        seen: dict[int, int] = {}
        collision = None
        for i, (pos, _) in enumerate(positions):
            if pos in seen:
                collision = (seen[pos], i)
                break
            seen[pos] = i
        if collision is None:
            return

        a, b = collision
        if positions[a][1] < positions[b][1]:
            a, b = b, a
        pos = positions[a][0]
        shift = positions[a][1] - positions[b][1]
        ratio = leading_coefficient(rows[a][pos]) / leading_coefficient(rows[b][pos])
        factor = galois.Poly.Degrees([shift], coeffs=[int(ratio)], field=type(ratio))
        rows[a] = _axpy_row(rows[a], factor, rows[b])
        if _row_is_zero(rows[a]):
            raise RankDeficientError(
                "The rows of the matrix are linearly dependent over F(z).\n"
                "Supply a full-row-rank encoder."
            )


def is_full_row_rank(G: PolyMatrix) -> bool:
    """Whether G has rank k over the rational functions F(z)."""
    if G.k > G.n:
        return False
    try:
        _weak_popov(_grid(G))
    except RankDeficientError:
        return False
    return True


def _require_full_rank(G: PolyMatrix) -> None:
    if not is_full_row_rank(G):
        raise RankDeficientError(
            f"The {G.k}x{G.n} matrix does not have full row rank.\n"
            "Encoders must have k linearly independent rows over F(z)."
        )


def degree(G: PolyMatrix) -> int:
    """
    Degree of G: the largest degree of a k x k minor.

    Computed from the minors for up to eight columns and from the Popov row
    degrees beyond that.

    Raises:
        RankDeficientError: If G does not have full row rank

    Example:
        >>> degree(PolyMatrix.identity(make_field(2), 3))
        0
    """
    _require_full_rank(G)
    if G.n <= MINOR_ENUMERATION_MAX_COLS:
        return int(max(poly_degree(m) for m in minors(G).values()))
    return int(sum(row_degrees(popov_form(G))))


def is_reduced(G: PolyMatrix) -> bool:
    """
    Whether the row degrees of G sum to its degree.

    Tested through the leading-row-coefficient matrix, which has rank k
    exactly for reduced G.

    Raises:
        RankDeficientError: If G does not have full row rank
    """
    _require_full_rank(G)
    return mat_rank(leading_row_coefficients(G)) == G.k


# ============================================================================
# Smith form, basicness, right inverses
# ============================================================================


def smith_form(G: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """
    Smith form S = U G V with U, V unimodular.

    The pivot at each step is a nonzero entry of minimal degree (ties broken
    by row-major position). The diagonal of S holds the monic invariant
    factors d_1 | d_2 | ..., followed by zeros.

    Returns:
        tuple: (U, S, V)
    """
    F = G.field
    k, n = G.shape
    S = _grid(G)
    U = _grid(PolyMatrix.identity(F, k))
    V = _grid(PolyMatrix.identity(F, n))

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def sub_col(target, factor, source):
        for M in (S, V):
            for row in M:
                row[target] = row[target] - row[source] * factor

    for t in range(min(k, n)):
        while True:
            pivot = None
            for i in range(t, k):
                for j in range(t, n):
                    d = poly_degree(S[i][j])
                    if d != ZERO_DEGREE and (pivot is None or d < pivot[0]):
                        pivot = (d, i, j)
            if pivot is None:
                return _smith_result(F, U, S, V, k, n)
            _, i, j = pivot
            swap_rows(t, i)
            swap_cols(t, j)

            clean = True
            for i in range(t + 1, k):
                if not is_zero_poly(S[i][t]):
                    quotient, remainder = divmod(S[i][t], S[t][t])
                    S[i] = _axpy_row(S[i], quotient, S[t])
                    U[i] = _axpy_row(U[i], quotient, U[t])
                    clean = clean and is_zero_poly(remainder)
            for j in range(t + 1, n):
                if not is_zero_poly(S[t][j]):
                    quotient, remainder = divmod(S[t][j], S[t][t])
                    sub_col(j, quotient, t)
                    clean = clean and is_zero_poly(remainder)
            if not clean:
                continue

            offending = next(
                (
                    i
                    for i in range(t + 1, k)
                    for j in range(t + 1, n)
                    if not is_zero_poly(S[i][j] % S[t][t])
                ),
                None,
            )
            if offending is not None:
                S[t] = [a + b for a, b in zip(S[t], S[offending])]
                U[t] = [a + b for a, b in zip(U[t], U[offending])]
                continue
            break

        scale = galois.Poly([int(leading_coefficient(S[t][t]) ** -1)], field=F.GF)
        S[t] = [a * scale for a in S[t]]
        U[t] = [a * scale for a in U[t]]

    return _smith_result(F, U, S, V, k, n)


def _smith_result(F, U, S, V, k, n):
    return (
        PolyMatrix.from_rows(F, U, k),
        PolyMatrix.from_rows(F, S, n),
        PolyMatrix.from_rows(F, V, n),
    )


def invariant_factors(G: PolyMatrix) -> list[galois.Poly]:
    """Diagonal of the Smith form (min(k, n) entries, zeros last)."""
    _, S, _ = smith_form(G)
    return [S[t, t] for t in range(min(G.k, G.n))]


def minor_gcd(G: PolyMatrix) -> galois.Poly:
    """Monic gcd of the k x k minors (the product of the invariant factors)."""
    result = galois.Poly.One(G.field.GF)
    for d in invariant_factors(G):
        result = result * d
    return result


def is_basic(G: PolyMatrix) -> bool:
    """
    Whether G(lambda) has rank k at every point of the algebraic closure.

    Equivalently every invariant factor is a nonzero constant.

    Raises:
        ShapeError: If k > n
    """
    if G.k > G.n:
        raise ShapeError(f"An encoder needs k <= n, got a {G.k}x{G.n} matrix.")
    return all(poly_degree(d) == 0 for d in invariant_factors(G))


def right_inverse(G: PolyMatrix) -> PolyMatrix:
    """
    Polynomial H with G H = I_k, read off the Smith form.

    Raises:
        NotBasicError: If G is not basic
    """
    if not is_basic(G):
        raise NotBasicError(
            "Only basic encoders have a polynomial right inverse.\n"
            "The gcd of the k x k minors of this encoder is not a constant."
        )
    U, _, V = smith_form(G)
    return V.take_columns(range(G.k)) @ U


def is_unimodular(W: PolyMatrix) -> bool:
    """Whether W is square with a nonzero constant determinant."""
    if W.k != W.n:
        return False
    return poly_degree(poly_det(W)) == 0


# ============================================================================
# Popov form and row modules
# ============================================================================


def popov_form(G: PolyMatrix) -> PolyMatrix:
    """
    The Popov basis of the row module of G.

    Two full-row-rank matrices generate the same module exactly when their
    Popov forms are equal.

    Raises:
        RankDeficientError: If G does not have full row rank
    """
    if G.k > G.n:
        raise RankDeficientError(
            f"A {G.k}x{G.n} matrix cannot have full row rank (k > n)."
        )
    rows = _grid(G)
    _weak_popov(rows)
    rows.sort(key=lambda row: _leading_position(row)[0])
    rows = [make_monic_by(row, _leading_position(row)[0]) for row in rows]

    pivots = [_leading_position(row) for row in rows]
    for a in range(len(rows)):
        changed = True
        while changed:
            changed = False
            for b, (col, deg) in enumerate(pivots):
                if b == a:
                    continue
                if poly_degree(rows[a][col]) >= deg:
                    quotient = rows[a][col] // rows[b][col]
                    rows[a] = _axpy_row(rows[a], quotient, rows[b])
                    changed = True
    return PolyMatrix.from_rows(G.field, rows, G.n)


def make_monic_by(row: Sequence[galois.Poly], position: int) -> list[galois.Poly]:
    """Scale a row so the entry at ``position`` is monic."""
    lead = leading_coefficient(row[position])
    scale = galois.Poly([int(lead**-1)], field=type(lead))
    return [p * scale for p in row]


def _pivots(P: PolyMatrix) -> list[tuple[int, int]]:
    return [_leading_position(row) for row in P.entries]


def reduce_modulo(v: Sequence[galois.Poly], P: PolyMatrix) -> tuple[galois.Poly, ...]:
    """
    Normal form of a row vector modulo the row module of a Popov matrix.

    Every term of the result lies outside the leading terms of P, so the
    result is zero exactly when v is in the module.
    """
    if len(v) != P.n:
        raise ShapeError(f"Vector of length {len(v)} does not match {P.n} columns.")
    pivots = _pivots(P)
    current = list(v)
    changed = True
    while changed:
        changed = False
        for b, (col, deg) in enumerate(pivots):
            while poly_degree(current[col]) >= deg:
                quotient = current[col] // P.entries[b][col]
                current = _axpy_row(current, quotient, P.entries[b])
                changed = True
    return tuple(current)


def row_module_contains(P: PolyMatrix, v: Sequence[galois.Poly]) -> bool:
    """Whether v lies in the row module of the Popov matrix P."""
    return _row_is_zero(reduce_modulo(v, P))


def code_equal(G: PolyMatrix, G2: PolyMatrix) -> bool:
    """
    Whether G and G2 generate the same row module.

    Raises:
        FieldMismatchError: If the encoders are over different fields
        ShapeError: If the encoders have different lengths n
    """
    if G.field != G2.field:
        raise FieldMismatchError(
            f"Cannot compare codes over {G.field} and {G2.field}."
        )
    if G.n != G2.n:
        raise ShapeError(f"Cannot compare codes of lengths {G.n} and {G2.n}.")
    if G.k != G2.k:
        return False
    return popov_form(G) == popov_form(G2)


def forney_indices(G: PolyMatrix) -> list[int]:
    """Row degrees of the Popov form of the code, largest first."""
    return sorted((int(d) for d in row_degrees(popov_form(G))), reverse=True)
