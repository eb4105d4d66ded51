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
Weight enumerators and weight adjacency matrices.

For a realization (A, B, C, D) the weight adjacency matrix Lambda has one row
and one column per state X in F^delta, and

    Lambda[X, Y] = we{ X C + u D : u in F^k, Y = X A + u B },

the weight enumerator of the outputs produced along the transition X -> Y.
States are indexed lexicographically: X = (x_1, ..., x_delta) has index
sum x_i q^(delta-i), with the field elements in their integer order.

Two matrices are equivalent when one is obtained from the other by a state
relabeling X -> phi(X) T with T invertible and phi a field automorphism.

Quick Start:
    >>> from convequiv.fields import make_field
    >>> from convequiv.polymat import PolyMatrix
    >>> from convequiv.realization import controller_form
    >>> from convequiv.wam import compute_wam
    >>> G = PolyMatrix.parse(make_field(2), "z; 1+z^2; 1+z; z+z^2\\n1; 0; 1; 1")
    >>> str(compute_wam(controller_form(G)).entry(0, 0))
    '1+W^3'
"""

import logging
import re
from dataclasses import dataclass, field
from itertools import chain
from typing import Any, Iterator, Sequence

import galois
import numpy as np
import pandas as pd

from . import config
from .fields import (
    Automorphism,
    FieldSpec,
    all_vectors,
    automorphisms,
    count_invertible,
    enumerate_invertible,
    field_of,
    is_invertible,
    mat_identity,
    mat_mul,
    mat_rank,
    parse_field,
)
from .polymat import PolyMatrix
from .realization import StateSpace
from .types import (
    FieldMismatchError,
    ParseError,
    RankDeficientError,
    SearchCapExceeded,
    ShapeError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

_ENUM_TERM = re.compile(r"^(\d*)(W(?:\^(\d+))?)?$")


# ============================================================================
# Weight enumerators
# ============================================================================


@dataclass(frozen=True)
class WeightEnum:
    """
    A polynomial sum_i c_i W^i with non-negative integer coefficients.

    ``coeffs[i]`` counts vectors of weight i; trailing zeros are stripped so
    equal enumerators compare equal.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        values = [int(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def zero(cls) -> "WeightEnum":
        return cls(())

    @classmethod
    def one(cls) -> "WeightEnum":
        return cls((1,))

    @classmethod
    def monomial(cls, weight: int, count: int = 1) -> "WeightEnum":
        return cls((0,) * weight + (count,))

    @classmethod
    def from_weights(cls, weights: Sequence[int] | np.ndarray) -> "WeightEnum":
        """Enumerator of a list of vector weights."""
        values = np.asarray(weights, dtype=np.int64)
        if values.size == 0:
            return cls.zero()
        return cls(tuple(np.bincount(values).tolist()))

    @classmethod
    def parse(cls, text: str) -> "WeightEnum":
        """
        Parse a rendered enumerator such as ``1+3W^2+W^4``.

        Raises:
            ParseError: If a term is malformed
        """
        body = "".join(text.split())
        if body in ("", "0"):
            return cls.zero()
        counts: dict[int, int] = {}
        for term in body.split("+"):
            match = _ENUM_TERM.match(term)
            if not term or match is None or not any(match.groups()[:2]):
                raise ParseError(f"Malformed weight enumerator term {term!r} in {text!r}")
            digits, symbol, power = match.groups()
            count = int(digits) if digits else 1
            weight = 0 if symbol is None else (int(power) if power is not None else 1)
            counts[weight] = counts.get(weight, 0) + count
        top = max(counts)
        return cls(tuple(counts.get(w, 0) for w in range(top + 1)))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "WeightEnum") -> "WeightEnum":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return WeightEnum(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "WeightEnum") -> "WeightEnum":
        if not self or not other:
            return WeightEnum.zero()
        product = np.convolve(
            np.asarray(self.coeffs, dtype=object), np.asarray(other.coeffs, dtype=object)
        )
        return WeightEnum(tuple(int(c) for c in product))

    def evaluate(self, w: int = 1) -> int:
        return sum(c * w**i for i, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def to_dict(self) -> dict[str, int]:
        return {str(i): c for i, c in enumerate(self.coeffs) if c}

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            symbol = "W" if i == 1 else f"W^{i}"
            terms.append(symbol if c == 1 else f"{c}{symbol}")
        return "+".join(terms) if terms else "0"


def weight(v: Any) -> int:
    """
    Hamming weight of a vector over F, or of a polynomial vector (the sum of
    the weights of its coefficient vectors).

    Example:
        >>> F = make_field(2)
        >>> weight(F.array([1, 1, 0, 0, 0, 0]))
        2
    """
    if isinstance(v, galois.FieldArray):
        return int(np.count_nonzero(v))
    if isinstance(v, PolyMatrix):
        return sum(weight(row) for row in v.entries)
    return sum(int(np.count_nonzero(p.coeffs)) for p in v)


def block_weight_enumerator(G: PolyMatrix | galois.FieldArray) -> WeightEnum:
    """
    Weight enumerator of the block code {u G : u in F^k}.

    Raises:
        ShapeError: If G has a non-constant entry
        RankDeficientError: If G does not have full row rank
    """
    if isinstance(G, PolyMatrix):
        if G.max_degree > 0:
            raise ShapeError(
                "Block weight enumerators need a constant matrix; this encoder has "
                f"degree-{int(G.max_degree)} entries. Use compute_wam on a realization."
            )
        F, M = G.field, G.coefficient(0)
    else:
        F, M = field_of(G), G
    if mat_rank(M) < M.shape[0]:
        raise RankDeficientError("Block code generator does not have full row rank.")
    words = mat_mul(all_vectors(F, M.shape[0]), M)
    return WeightEnum.from_weights(np.count_nonzero(words.view(np.ndarray), axis=1))


# ============================================================================
# State indexing
# ============================================================================


def _index_weights(F: FieldSpec, delta: int) -> np.ndarray:
    return np.array([F.q ** (delta - 1 - i) for i in range(delta)], dtype=np.int64)


def state_index(X: galois.FieldArray) -> int:
    """Lexicographic index of a state vector (first coordinate most significant)."""
    F = field_of(X)
    digits = np.asarray(X.view(np.ndarray), dtype=np.int64)
    return int(digits @ _index_weights(F, digits.shape[0])) if digits.size else 0


def state_vector(F: FieldSpec, delta: int, index: int) -> galois.FieldArray:
    """Inverse of ``state_index``."""
    if not 0 <= index < F.q**delta:
        raise ValueError(f"State index {index} out of range for {F.q**delta} states.")
    digits = [(index // F.q ** (delta - 1 - i)) % F.q for i in range(delta)]
    return F.GF(np.array(digits, dtype=np.int64))


def state_label(F: FieldSpec, delta: int, index: int) -> str:
    """State as a digit string, e.g. ``"01"``; comma separated when q > 10."""
    digits = [str(int(x)) for x in state_vector(F, delta, index)]
    return ("," if F.q > 10 else "").join(digits)


def _indices_of(rows: galois.FieldArray, F: FieldSpec, delta: int) -> np.ndarray:
    values = np.asarray(rows.view(np.ndarray), dtype=np.int64)
    if delta == 0:
        return np.zeros(values.shape[:-1], dtype=np.int64)
    return values @ _index_weights(F, delta)


def state_permutation(
    F: FieldSpec, delta: int, T: galois.FieldArray, phi: Automorphism | None = None
) -> np.ndarray:
    """
    The map on state indices induced by X -> phi(X) T, as an integer array
    ``perm`` with ``perm[index(X)] = index(phi(X) T)``.
    """
    states = all_vectors(F, delta)
    if phi is not None:
        states = phi(states)
    return _indices_of(mat_mul(states, T), F, delta)


# ============================================================================
# Weight adjacency matrices
# ============================================================================


@dataclass(frozen=True)
class WAM:
    """
    A q^delta x q^delta weight adjacency matrix.

    Attributes:
        field: Field of the underlying realization
        delta: State dimension
        k: Input dimension (each row has total mass q^k at W = 1)
        entries: Nonzero entries keyed by (from index, to index)
    """

    field: FieldSpec
    delta: int
    k: int
    entries: dict[tuple[int, int], WeightEnum] = field(hash=False)

    @property
    def num_states(self) -> int:
        return self.field.q**self.delta

    def entry(self, x: int, y: int) -> WeightEnum:
        return self.entries.get((x, y), WeightEnum.zero())

    def row_mass(self, x: int) -> int:
        """Sum of row x evaluated at W = 1."""
        return sum(e.evaluate(1) for (a, _), e in self.entries.items() if a == x)

    def rows(self) -> Iterator[list[WeightEnum]]:
        for x in range(self.num_states):
            yield [self.entry(x, y) for y in range(self.num_states)]

    def to_frame(self) -> pd.DataFrame:
        """Rendered enumerators with state labels as index and columns."""
        labels = [state_label(self.field, self.delta, i) for i in range(self.num_states)]
        data = [[str(e) for e in row] for row in self.rows()]
        return pd.DataFrame(data, index=labels, columns=labels)

    def to_json(self) -> dict:
        """JSON-ready record with entries sorted by (from, to) index."""
        return {
            "field": str(self.field),
            "delta": self.delta,
            "k": self.k,
            "entries": [
                {
                    "from": state_label(self.field, self.delta, x),
                    "to": state_label(self.field, self.delta, y),
                    "enum": self.entries[(x, y)].to_dict(),
                }
                for x, y in sorted(self.entries)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WAM":
        F = parse_field(data["field"])
        delta = int(data["delta"])
        separator = "," if F.q > 10 else None

        def index(label: str) -> int:
            digits = label.split(separator) if separator else list(label)
            if len(digits) != delta and delta > 0:
                raise ParseError(f"State label {label!r} does not have {delta} digits")
            return state_index(F.GF([int(d) for d in digits])) if delta else 0

        entries = {}
        for record in data["entries"]:
            counts = {int(w): int(c) for w, c in record["enum"].items()}
            top = max(counts, default=-1)
            entries[(index(record["from"]), index(record["to"]))] = WeightEnum(
                tuple(counts.get(w, 0) for w in range(top + 1))
            )
        return cls(F, delta, int(data["k"]), entries)


def compute_wam(sigma: StateSpace, max_states: int | None = None) -> WAM:
    """
    The weight adjacency matrix of a realization.

    Every (state, input) pair is visited once: the next state XA + uB picks
    the column and the weight of XC + uD is counted in that entry.

    Args:
        sigma: Any well-formed realization
        max_states: Cap on q^delta (default CONVEQUIV_MAX_STATES)

    Raises:
        SearchCapExceeded: If q^delta exceeds the cap
    """
    F = sigma.field
    num_states = F.q**sigma.delta
    cap = config.max_states() if max_states is None else max_states
    if num_states > cap:
        logger.warning(
            "Weight adjacency matrix exceeds the state cap",
            extra={"states": num_states, "cap": cap},
        )
        raise SearchCapExceeded(
            f"The realization has {F.q}^{sigma.delta} = {num_states} states, above the "
            f"cap of {cap}.\nUse --max-states or CONVEQUIV_MAX_STATES to raise it.",
            size=num_states,
            cap=cap,
        )

    states = all_vectors(F, sigma.delta)
    inputs = all_vectors(F, sigma.k)
    XA, XC = mat_mul(states, sigma.A), mat_mul(states, sigma.C)
    UB, UD = mat_mul(inputs, sigma.B), mat_mul(inputs, sigma.D)

    next_states = XA[:, None, :] + UB[None, :, :]
    outputs = XC[:, None, :] + UD[None, :, :]
    targets = _indices_of(next_states, F, sigma.delta)
    weights = np.count_nonzero(outputs.view(np.ndarray), axis=2)

    sources = np.broadcast_to(np.arange(num_states)[:, None], targets.shape)
    keys = (sources * num_states + targets).ravel()
    unique, inverse = np.unique(keys, return_inverse=True)
    counts = np.zeros((unique.size, sigma.n + 1), dtype=np.int64)
    np.add.at(counts, (inverse.ravel(), weights.ravel()), 1)

    entries = {
        (int(key) // num_states, int(key) % num_states): WeightEnum(tuple(row.tolist()))
        for key, row in zip(unique, counts)
    }
    logger.debug(
        "Computed weight adjacency matrix",
        extra={"states": num_states, "nonzero_entries": len(entries)},
    )
    return WAM(F, sigma.delta, sigma.k, entries)


def relabel_wam(wam: WAM, T: galois.FieldArray, phi: Automorphism | None = None) -> WAM:
    """
    The relabeled matrix M'[X, Y] = M[phi(X) T, phi(Y) T].

    Raises:
        SingularMatrixError: If T is not invertible
    """
    F = wam.field
    if T.shape != (wam.delta, wam.delta) or not is_invertible(T):
        raise SingularMatrixError(
            f"State relabeling needs an invertible {wam.delta}x{wam.delta} matrix."
        )
    if field_of(T) != F:
        raise FieldMismatchError(f"Relabeling matrix is not over {F}.")
    perm = state_permutation(F, wam.delta, T, phi)
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.size)
    entries = {(int(inverse[a]), int(inverse[b])): e for (a, b), e in wam.entries.items()}
    return WAM(F, wam.delta, wam.k, entries)


def _matches(wam: WAM, other: WAM, perm: np.ndarray) -> bool:
    # other[x, y] == wam[perm x, perm y] for all x, y; perm is a bijection
    for (x, y), e in other.entries.items():
        if wam.entries.get((int(perm[x]), int(perm[y]))) != e:
            return False
    return True


def wam_equivalent(
    wam: WAM,
    other: WAM,
    no_automorphisms: bool = False,
    max_search: int | None = None,
) -> tuple[bool, tuple[galois.FieldArray, Automorphism] | None, int]:
    """
    Decide whether ``other`` is a relabeling of ``wam``.

    Searches automorphisms (identity first) in the outer loop and invertible
    T in enumeration order in the inner loop, trying T = I before the rest,
    and returns the first (T, phi) with other = relabel_wam(wam, T, phi).

    Args:
        wam: First matrix
        other: Second matrix
        no_automorphisms: Only consider the identity automorphism
        max_search: Cap on |GL_delta(F)| times the number of automorphisms

    Returns:
        tuple: (verdict, (T, phi) or None, number of (T, phi) candidates tried)

    Raises:
        FieldMismatchError: If the matrices are over different fields
        SearchCapExceeded: If the search space exceeds the cap
    """
    if wam.field != other.field:
        raise FieldMismatchError(
            f"Cannot compare weight adjacency matrices over {wam.field} and {other.field}."
        )
    F, delta = wam.field, wam.delta
    if delta != other.delta or wam.k != other.k:
        return False, None, 0

    phis = [Automorphism(F, 0)] if no_automorphisms else automorphisms(F)
    size = count_invertible(F, delta) * len(phis)
    cap = config.max_search() if max_search is None else max_search
    if size > cap:
        logger.warning("Relabeling search exceeds the cap", extra={"size": size, "cap": cap})
        raise SearchCapExceeded(
            f"Searching {size} state relabelings exceeds the cap of {cap}.\n"
            "Raise CONVEQUIV_MAX_SEARCH or compare smaller codes.",
            size=size,
            cap=cap,
        )

    # Necessary conditions: equal entry multisets and the zero state is fixed
    if len(wam.entries) != len(other.entries):
        return False, None, 0
    if sorted(e.coeffs for e in wam.entries.values()) != sorted(
        e.coeffs for e in other.entries.values()
    ):
        return False, None, 0
    if wam.entry(0, 0) != other.entry(0, 0):
        return False, None, 0

    identity = mat_identity(F, delta)
    tried = 0
    for phi in phis:
        candidates = chain(
            [identity],
            (T for T in enumerate_invertible(F, delta, cap=cap) if not np.array_equal(T, identity)),
        )
        for T in candidates:
            tried += 1
            if _matches(wam, other, state_permutation(F, delta, T, phi)):
                logger.info(
                    "Found state relabeling",
                    extra={"tried": tried, "size": size, "automorphism": str(phi)},
                )
                return True, (T, phi), tried
    logger.info("No state relabeling exists", extra={"tried": tried, "size": size})
    return False, None, tried


def truncated_enumerator(wam: WAM, length: int) -> WeightEnum:
    """
    Entry (0, 0) of the formal power Lambda^length: the weight enumerator
    of all input sequences of that length leading from the zero state back
    to the zero state.
    """
    if length < 0:
        raise ValueError(f"Path length must be non-negative, got {length}.")
    successors: dict[int, list[tuple[int, WeightEnum]]] = {}
    for (x, y), e in sorted(wam.entries.items()):
        successors.setdefault(x, []).append((y, e))

    vector = {0: WeightEnum.one()}
    for _ in range(length):
        step: dict[int, WeightEnum] = {}
        for x, value in vector.items():
            for y, e in successors.get(x, []):
                step[y] = step.get(y, WeightEnum.zero()) + value * e
        vector = step
    return vector.get(0, WeightEnum.zero())
