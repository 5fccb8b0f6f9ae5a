"""
Unit tests for tolerance configuration.
"""
import pytest

from parrondo_lab.config import (
    DEFAULT_ZERO_TOL,
    ENV_ZERO_TOL,
    resolve_zero_tol,
)
from parrondo_lab.error import ConfigurationError, InputError


def test_default_tolerance(monkeypatch):
    """Test the default when nothing is configured."""
    monkeypatch.delenv(ENV_ZERO_TOL, raising=False)
    assert resolve_zero_tol() == DEFAULT_ZERO_TOL

    monkeypatch.setenv(ENV_ZERO_TOL, "  ")
    assert resolve_zero_tol() == DEFAULT_ZERO_TOL


def test_environment_override(monkeypatch):
    """Test that the environment variable is read."""
    monkeypatch.setenv(ENV_ZERO_TOL, "1e-6")
    assert resolve_zero_tol() == 1e-6


def test_explicit_value_wins(monkeypatch):
    """Test that an explicit tolerance ignores the environment."""
    monkeypatch.setenv(ENV_ZERO_TOL, "not a number")
    assert resolve_zero_tol(1e-12) == 1e-12
    assert resolve_zero_tol("1e-3") == 1e-3


def test_invalid_values(monkeypatch):
    """Test that unusable tolerances raise ConfigurationError."""
    monkeypatch.setenv(ENV_ZERO_TOL, "tiny")
    with pytest.raises(ConfigurationError):
        resolve_zero_tol()

    for bad in ("0", "-1e-9", "inf", "nan"):
        monkeypatch.setenv(ENV_ZERO_TOL, bad)
        with pytest.raises(ConfigurationError):
            resolve_zero_tol()

    with pytest.raises(ConfigurationError) as excinfo:
        resolve_zero_tol(0.0)
    assert isinstance(excinfo.value, InputError)
    assert excinfo.value.exit_code == 2
