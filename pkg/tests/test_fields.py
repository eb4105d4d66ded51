"""
Tests for fields.py - field construction, element syntax, automorphisms and
exact linear algebra.
"""

import numpy as np
import pytest

from convequiv.fields import (
    Automorphism,
    all_vectors,
    apply_automorphism,
    automorphisms,
    check_same_field,
    count_invertible,
    enumerate_invertible,
    field_of,
    is_invertible,
    make_field,
    mat_block,
    mat_identity,
    mat_inverse,
    mat_kernel,
    mat_mul,
    mat_rank,
    mat_solve,
    mat_zeros,
    parse_field,
)
from convequiv.types import (
    FieldMismatchError,
    ParseError,
    SearchCapExceeded,
    ShapeError,
    SingularMatrixError,
)

# ============================================================================
# Field construction
# ============================================================================


class TestMakeField:
    """Tests for make_field and parse_field."""

    def test_prime_field(self):
        """Test that prime fields have no modulus and print as GF(p)."""
        F = make_field(3)
        assert (F.p, F.s, F.q) == (3, 1, 3)
        assert F.modulus is None
        assert str(F) == "GF(3)"

    def test_extension_field_uses_smallest_modulus(self):
        """Test the deterministic modulus choice for GF(8) and GF(9)."""
        assert make_field(2, 3).modulus == (1, 0, 1, 1)
        assert make_field(3, 2).modulus == (1, 0, 1)
        assert make_field(2, 2).modulus == (1, 1, 1)

    def test_repeated_calls_return_equal_fields(self):
        """Test that constructing a field twice gives the same FieldSpec."""
        assert make_field(2, 3) == make_field(2, 3)
        assert make_field(2, 3).GF is make_field(2, 3).GF

    def test_rejects_composite_characteristic(self):
        """Test that a non-prime characteristic raises ValueError."""
        with pytest.raises(ValueError, match="must be prime"):
            make_field(4)

    def test_rejects_zero_extension_degree(self):
        """Test that s < 1 raises ValueError."""
        with pytest.raises(ValueError, match="positive integer"):
            make_field(2, 0)

    def test_field_order_cap(self, monkeypatch):
        """Test that fields above CONVEQUIV_MAX_FIELD_ORDER are refused."""
        monkeypatch.setenv("CONVEQUIV_MAX_FIELD_ORDER", "8")

        with pytest.raises(SearchCapExceeded) as excinfo:
            make_field(2, 4)

        assert excinfo.value.size == 16
        assert excinfo.value.cap == 8

    def test_parse_field_literals(self):
        """Test GF(p), GF(p^s) and GF(q) literals."""
        assert parse_field("GF(2)") == make_field(2)
        assert parse_field("GF(3^2)") == make_field(3, 2)
        assert parse_field(" GF(9) ") == make_field(3, 2)

    @pytest.mark.parametrize("text", ["GF(6)", "F(2)", "GF()", "GF(4^1.5)"])
    def test_parse_field_rejects_bad_literals(self, text):
        """Test that malformed literals raise ParseError."""
        with pytest.raises(ParseError):
            parse_field(text)


# ============================================================================
# Elements
# ============================================================================


class TestElements:
    """Tests for element parsing and formatting."""

    def test_elements_in_fixed_order(self, gf3):
        """Test that elements() lists 0..q-1."""
        assert gf3.elements().tolist() == [0, 1, 2]

    def test_prime_field_integers(self, gf3):
        """Test decimal literals in a prime field."""
        assert int(gf3.parse_element("2")) == 2
        assert gf3.format_element(2) == "2"

    def test_generator_squared_in_gf4(self, gf4):
        """Test that a^2 = a + 1 under the modulus x^2 + x + 1."""
        a = gf4.parse_element("a")
        assert gf4.format_element(a**2) == "a+1"

    def test_extension_literal_round_trip(self):
        """Test that every element of GF(8) formats and parses back to itself."""
        F = make_field(2, 3)
        for value in range(F.q):
            assert int(F.parse_element(F.format_element(value))) == value

    def test_format_descending_powers(self):
        """Test the rendering of a^2 + a in GF(8)."""
        assert make_field(2, 3).format_element(6) == "a^2+a"

    def test_generator_in_prime_field_is_rejected(self, gf3):
        """Test that the generator symbol is refused in a prime field."""
        with pytest.raises(ParseError, match="prime field"):
            gf3.parse_element("a")

    @pytest.mark.parametrize("text", ["3", "4", "3+1", "(5)"])
    def test_coefficient_not_below_characteristic(self, gf3, text):
        """Test that a decimal coefficient of p or more is refused, not reduced."""
        with pytest.raises(ParseError, match="characteristic"):
            gf3.parse_element(text)

    def test_extension_coefficient_not_below_characteristic(self, gf4):
        """Test that 2a is refused in GF(4) rather than read as 0."""
        with pytest.raises(ParseError, match="characteristic"):
            gf4.parse_element("2a")
        assert int(gf4.parse_element("1a+1")) == int(gf4.parse_element("a+1"))

    @pytest.mark.parametrize("text", ["", "x", "a^", "1++a"])
    def test_malformed_literals(self, gf4, text):
        """Test that malformed element literals raise ParseError."""
        with pytest.raises(ParseError):
            gf4.parse_element(text)


# ============================================================================
# Automorphisms
# ============================================================================


class TestAutomorphisms:
    """Tests for Frobenius automorphisms."""

    def test_frobenius_on_gf4(self, gf4):
        """Test that x -> x^2 sends a to a + 1."""
        phi = Automorphism(gf4, 1)
        assert int(phi(gf4.element(2))) == 3
        assert str(phi) == "x -> x^2"

    def test_identity_first(self):
        """Test that automorphisms() lists s maps with the identity first."""
        phis = automorphisms(make_field(2, 3))
        assert len(phis) == 3
        assert phis[0].is_identity
        assert str(phis[0]) == "id"

    def test_group_law(self):
        """Test composition and inverses of Frobenius powers."""
        F = make_field(2, 3)
        phi = Automorphism(F, 1)
        psi = Automorphism(F, 2)
        assert phi.compose(psi).is_identity
        assert phi.inverse() == psi

    def test_fixes_prime_subfield(self, gf4):
        """Test that every automorphism fixes 0 and 1."""
        values = gf4.array([0, 1])
        for phi in automorphisms(gf4):
            assert phi(values).tolist() == [0, 1]

    def test_exponent_out_of_range(self, gf4):
        """Test that exponents outside [0, s) raise ValueError."""
        with pytest.raises(ValueError):
            Automorphism(gf4, 2)

    def test_field_mismatch(self, gf4, gf2):
        """Test that an automorphism refuses data over another field."""
        with pytest.raises(FieldMismatchError):
            apply_automorphism(Automorphism(gf4, 1), gf2.array([1, 0]))


# ============================================================================
# Matrix helpers
# ============================================================================


class TestMatrixHelpers:
    """Tests for shape-safe helpers and exact elimination."""

    def test_empty_product(self, gf2):
        """Test that a product through a zero dimension is the zero matrix."""
        product = mat_mul(mat_zeros(gf2, 2, 0), mat_zeros(gf2, 0, 3))
        assert product.shape == (2, 3)
        assert not np.count_nonzero(product)

    def test_product_shape_mismatch(self, gf2):
        """Test that incompatible shapes raise ShapeError."""
        with pytest.raises(ShapeError):
            mat_mul(mat_identity(gf2, 2), mat_identity(gf2, 3))

    def test_product_field_mismatch(self, gf2, gf3):
        """Test that operands over different fields raise FieldMismatchError."""
        with pytest.raises(FieldMismatchError):
            mat_mul(mat_identity(gf2, 2), mat_identity(gf3, 2))

    def test_check_same_field(self, gf2, gf3):
        """Test that check_same_field returns the common field."""
        assert check_same_field(gf2.array([1]), gf2.array([0])) == gf2
        with pytest.raises(FieldMismatchError):
            check_same_field(gf2.array([1]), gf3.array([1]))

    def test_field_of_extension_array(self):
        """Test that field_of recovers the FieldSpec of an array."""
        F = make_field(2, 3)
        assert field_of(F.array([1, 2])) == F

    def test_block_matrix(self, gf2):
        """Test assembling blocks with an empty column block."""
        M = mat_block([[mat_zeros(gf2, 1, 0), gf2.array([[1, 1]])]])
        assert M.tolist() == [[1, 1]]

    def test_all_vectors_order(self, gf2):
        """Test lexicographic order with the first coordinate most significant."""
        assert all_vectors(gf2, 2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
        assert all_vectors(gf2, 0).shape == (1, 0)

    def test_rank(self, gf2):
        """Test rank of a nilpotent shift and of an empty matrix."""
        assert mat_rank(gf2.array([[0, 1], [0, 0]])) == 1
        assert mat_rank(mat_zeros(gf2, 0, 3)) == 0

    def test_inverse(self, gf3):
        """Test that M @ M^-1 is the identity."""
        M = gf3.array([[1, 2], [0, 1]])
        assert np.array_equal(mat_mul(M, mat_inverse(M)), mat_identity(gf3, 2))

    def test_inverse_of_singular_matrix(self, gf2):
        """Test that a singular matrix raises SingularMatrixError."""
        with pytest.raises(SingularMatrixError):
            mat_inverse(gf2.array([[1, 1], [1, 1]]))

    def test_inverse_of_non_square_matrix(self, gf2):
        """Test that a non-square matrix raises ShapeError."""
        with pytest.raises(ShapeError):
            mat_inverse(gf2.array([[1, 0, 0], [0, 1, 0]]))

    def test_is_invertible(self, gf2):
        """Test invertibility checks."""
        assert is_invertible(gf2.array([[0, 1], [1, 0]]))
        assert not is_invertible(gf2.array([[1, 1], [1, 1]]))
        assert not is_invertible(gf2.array([[1, 0]]))

    def test_left_kernel(self, gf2):
        """Test the left kernel of a column of ones."""
        assert mat_kernel(gf2.array([[1], [1]])).tolist() == [[1, 1]]

    def test_left_kernel_annihilates(self, gf3):
        """Test that every kernel row x satisfies x M = 0."""
        M = gf3.array([[1, 2, 0], [2, 1, 0], [0, 0, 1], [1, 2, 1]])
        K = mat_kernel(M)
        assert K.shape == (2, 4)
        assert not np.count_nonzero(mat_mul(K, M))

    def test_solve(self, gf3):
        """Test that mat_solve finds X with X A = B."""
        A = gf3.array([[1, 1], [0, 2]])
        B = gf3.array([[2, 0], [1, 1]])
        X = mat_solve(A, B)
        assert np.array_equal(mat_mul(X, A), B)

    def test_solve_inconsistent(self, gf2):
        """Test that an inconsistent system gives None."""
        assert mat_solve(gf2.array([[1, 0], [0, 0]]), gf2.array([[0, 1]])) is None


# ============================================================================
# Invertible matrices
# ============================================================================


class TestInvertibleMatrices:
    """Tests for counting and enumerating GL_delta(F)."""

    def test_group_orders(self, gf2, gf3):
        """Test |GL_2(2)| = 6, |GL_2(3)| = 48 and |GL_0| = 1."""
        assert count_invertible(gf2, 2) == 6
        assert count_invertible(gf3, 2) == 48
        assert count_invertible(gf2, 0) == 1

    def test_enumeration_is_complete_and_distinct(self, gf3):
        """Test that enumeration yields every invertible matrix exactly once."""
        matrices = list(enumerate_invertible(gf3, 2))
        assert len(matrices) == 48
        assert len({M.tobytes() for M in matrices}) == 48
        assert all(is_invertible(M) for M in matrices)

    def test_enumeration_of_size_zero(self, gf2):
        """Test that delta = 0 yields a single empty matrix."""
        matrices = list(enumerate_invertible(gf2, 0))
        assert len(matrices) == 1
        assert matrices[0].shape == (0, 0)

    def test_enumeration_cap(self, gf2):
        """Test that the cap is enforced before anything is yielded."""
        with pytest.raises(SearchCapExceeded):
            list(enumerate_invertible(gf2, 3, cap=10))


# ============================================================================
# Field axioms
# ============================================================================

FIELDS_UP_TO_64 = [
    (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1),
    (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5),
    (37, 1), (41, 1), (43, 1), (47, 1), (7, 2), (53, 1), (59, 1), (61, 1), (2, 6),
]


@pytest.mark.parametrize(("p", "s"), FIELDS_UP_TO_64)
def test_field_axioms_exhaustively(p, s):
    """
    Test every field axiom on all elements, pairs and triples of each field
    with at most 64 elements, and that the Frobenius map is a field
    automorphism.
    """
    F = make_field(p, s)
    x = F.elements()
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    zero, one = F.element(0), F.element(1)

    assert F.q == p**s == len(x)
    assert np.array_equal(x[:, None] + x[None, :], x[None, :] + x[:, None])
    assert np.array_equal(x[:, None] * x[None, :], x[None, :] * x[:, None])
    assert np.array_equal((a + b) + c, a + (b + c))
    assert np.array_equal((a * b) * c, a * (b * c))
    assert np.array_equal(a * (b + c), a * b + a * c)
    assert np.array_equal(x + zero, x)
    assert np.array_equal(x * one, x)
    assert not np.count_nonzero(x + (-x))

    nonzero = x[1:]
    products = nonzero[:, None] * nonzero[None, :]
    assert np.count_nonzero(products) == (F.q - 1) ** 2
    for row in products:
        assert len(set(row.tolist())) == F.q - 1
    assert np.all(nonzero * nonzero**-1 == one)

    assert not np.count_nonzero(F.GF(np.full(p, 1)).sum())
    orders = [len({int(g**i) for i in range(F.q - 1)}) for g in nonzero]
    assert F.q - 1 in orders

    phi = Automorphism(F, 1 % s)
    assert np.array_equal(phi(x[:, None] + x[None, :]), phi(x)[:, None] + phi(x)[None, :])
    assert np.array_equal(phi(x[:, None] * x[None, :]), phi(x)[:, None] * phi(x)[None, :])
    assert len(set(phi(x).tolist())) == F.q


@pytest.mark.parametrize(("p", "s"), [(2, 1), (3, 1), (2, 2), (5, 1)])
@pytest.mark.parametrize(("rows", "cols"), [(1, 1), (3, 2), (4, 4), (5, 3), (2, 6)])
def test_kernel_dimension(p, s, rows, cols, rng):
    """
    Test that the left kernel of random matrices of every rank has dimension
    rows - rank, independent rows, and annihilates the matrix.
    """
    F = make_field(p, s)
    for _ in range(10):
        M = F.array(rng.integers(0, F.q, size=(rows, cols)))
        if rng.integers(2):
            M[-1] = M[0]
        K = mat_kernel(M)

        assert K.shape == (rows - mat_rank(M), rows)
        assert mat_rank(K) == K.shape[0]
        assert not np.count_nonzero(mat_mul(K, M))
