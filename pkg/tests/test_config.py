"""
Tests for config.py - settings read from the environment.
"""

import pytest

from convequiv import config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Start every test with the CONVEQUIV_* variables unset."""
    for name in (
        "CONVEQUIV_MAX_STATES",
        "CONVEQUIV_MAX_SEARCH",
        "CONVEQUIV_MAX_FIELD_ORDER",
        "CONVEQUIV_SEED",
    ):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    """Test the values used when nothing is configured."""
    assert config.max_states() == 4096
    assert config.max_search() == 5_000_000
    assert config.max_field_order() == 1024
    assert config.default_seed() == 0


def test_override(monkeypatch):
    """Test that exported values are read at call time."""
    monkeypatch.setenv("CONVEQUIV_MAX_STATES", " 64 ")
    monkeypatch.setenv("CONVEQUIV_SEED", "17")

    assert config.max_states() == 64
    assert config.default_seed() == 17


def test_empty_value_means_default(monkeypatch):
    """Test that an empty variable falls back to the default."""
    monkeypatch.setenv("CONVEQUIV_MAX_SEARCH", "")
    assert config.max_search() == 5_000_000


def test_not_an_integer(monkeypatch):
    """Test that a non-integer value raises ValueError naming the variable."""
    monkeypatch.setenv("CONVEQUIV_MAX_STATES", "lots")

    with pytest.raises(ValueError, match="CONVEQUIV_MAX_STATES must be an integer"):
        config.max_states()


@pytest.mark.parametrize(
    "name, value, getter",
    [
        ("CONVEQUIV_MAX_STATES", "0", config.max_states),
        ("CONVEQUIV_MAX_SEARCH", "-5", config.max_search),
        ("CONVEQUIV_MAX_FIELD_ORDER", "1", config.max_field_order),
    ],
)
def test_below_minimum(monkeypatch, name, value, getter):
    """Test that values below a setting's minimum are rejected."""
    monkeypatch.setenv(name, value)

    with pytest.raises(ValueError, match=f"{name} must be >= "):
        getter()
