"""
Pytest configuration and shared fixtures.

This module provides the fields, reference encoders and systems, and the
seeded random generator used across the test modules.
"""

import numpy as np
import pytest

# Import the catalogue so every reference example is registered before tests run
import convequiv.catalogue  # noqa: F401
from convequiv.fields import make_field
from convequiv.polymat import PolyMatrix
from convequiv.realization import StateSpace

# ============================================================================
# Fields
# ============================================================================


@pytest.fixture
def gf2():
    return make_field(2)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    """GF(2^2) with modulus x^2 + x + 1."""
    return make_field(2, 2)


@pytest.fixture
def rng():
    """Seeded generator so randomized tests are reproducible."""
    return np.random.default_rng(20260)


# ============================================================================
# Reference encoders
# ============================================================================


@pytest.fixture
def rate_two_four(gf2):
    """Basic reduced 2x4 binary encoder of degree 2 with row degrees (2, 0)."""
    return PolyMatrix.parse(gf2, "z; 1+z^2; 1+z; z+z^2\n1; 0; 1; 1")


@pytest.fixture
def ternary_encoder(gf3):
    """Basic, semi-reduced but not reduced ternary encoder of degree 1."""
    return PolyMatrix.parse(gf3, "0; 1; 1+2z\n1; 0; z")


@pytest.fixture
def feedback_encoder(gf2):
    """Basic reduced 2x3 binary encoder with row degrees (1, 1)."""
    return PolyMatrix.parse(gf2, "1; z; 1+z\n0; 1; z")


@pytest.fixture
def block_pair(gf2):
    """Two inequivalent binary block codes with the same weight enumerator."""
    first = PolyMatrix.parse(gf2, "1; 1; 0; 0; 0; 0\n0; 0; 1; 1; 0; 0\n1; 1; 1; 1; 1; 1")
    second = PolyMatrix.parse(gf2, "1; 1; 0; 0; 0; 0\n1; 0; 1; 0; 0; 0\n1; 1; 1; 1; 1; 1")
    return first, second


@pytest.fixture
def zero_index_pair(gf2):
    """Two inequivalent codes with Forney indices (1, 0) and equal WAMs."""
    first = PolyMatrix.parse(gf2, "1; 1; z; z; 0; 0\n1; 1; 1; 1; 1; 1")
    second = PolyMatrix.parse(gf2, "1+z; 1; z; 0; 0; 0\n1; 1; 1; 1; 1; 1")
    return first, second


# ============================================================================
# Reference systems
# ============================================================================


@pytest.fixture
def ternary_system(gf3):
    """Order-one ternary system realizing ``ternary_encoder``."""
    return StateSpace(
        gf3,
        gf3.array([[0]]),
        gf3.array([[2], [1]]),
        gf3.array([[0, 0, 1]]),
        gf3.array([[0, 1, 1], [1, 0, 0]]),
    )


@pytest.fixture
def non_basic_system(gf2):
    """Order-two binary system realizing the non-basic encoder (1+z^2, 1+z)."""
    return StateSpace(
        gf2,
        gf2.array([[0, 1], [0, 0]]),
        gf2.array([[1, 0]]),
        gf2.array([[0, 1], [1, 0]]),
        gf2.array([[1, 1]]),
    )


# ============================================================================
# Files
# ============================================================================


@pytest.fixture
def write_file(tmp_path):
    """Factory writing text to a file under tmp_path and returning its path."""

    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write
