"""
Unit tests for exact jet arithmetic.
"""
import random
from fractions import Fraction

import numpy as np
import pytest

from parrondo_lab.error import EmptyCoefficients, NonInvertibleJet
from parrondo_lab.jet import (
    Jet1D,
    identity_jet,
    jet_compose,
    jet_eval,
    jet_from_coeffs,
    jet_inverse,
    jet_square,
    to_fraction,
)

F1 = jet_from_coeffs([-1, 3, -9, 0, 164])
F2 = jet_from_coeffs([-1, 5, -25, 0, 1259])
F3 = jet_from_coeffs([-1, 2, -4, 0, 33])


def _coeffs(*values):
    return tuple(Fraction(v) for v in values)


def _random_jet(rng, order, a1=None):
    if a1 is None:
        a1 = rng.choice([-1, 1, 2, Fraction(-1, 3)])
    coeffs = [Fraction(a1)] + [
        Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        for _ in range(order - 1)
    ]
    return Jet1D(tuple(coeffs))


def test_jet_from_coeffs():
    """Test building jets from ints, strings and Fractions."""
    assert F1.order == 5
    assert F1.coeffs == _coeffs(-1, 3, -9, 0, 164)
    assert F1.multiplier == -1

    assert jet_from_coeffs([1]) == identity_jet()
    assert jet_from_coeffs(["7/3", Fraction(1, 2), 4]).coeffs == (
        Fraction(7, 3), Fraction(1, 2), Fraction(4)
    )
    assert jet_from_coeffs([-1]).order == 1


def test_empty_coefficients():
    """Test that an empty coefficient list is rejected."""
    with pytest.raises(EmptyCoefficients):
        jet_from_coeffs([])
    with pytest.raises(EmptyCoefficients):
        Jet1D(())
    with pytest.raises(EmptyCoefficients):
        F1.truncated(0)


def test_float_coefficients_rejected():
    """Test that floats are refused to keep arithmetic exact."""
    with pytest.raises(TypeError):
        to_fraction(0.1)
    with pytest.raises(TypeError):
        jet_from_coeffs([-1, 0.5])


def test_coefficient_access():
    """Test coefficient lookup inside and beyond the order."""
    assert F1.coefficient(2) == 3
    assert F1.coefficient(4) == 0
    assert F1.coefficient(9) == 0
    with pytest.raises(IndexError):
        F1.coefficient(0)


def test_padded_and_truncated():
    """Test padding never truncates and truncation never pads."""
    assert F1.padded(7).coeffs == _coeffs(-1, 3, -9, 0, 164, 0, 0)
    assert F1.padded(3) is F1
    assert F1.truncated(2).coeffs == _coeffs(-1, 3)
    assert F1.truncated(8) is F1


def test_jet_eval():
    """Test exact evaluation."""
    assert jet_eval(F1, Fraction(0)) == 0
    assert jet_eval(F3, Fraction(1)) == 30
    assert identity_jet()(Fraction(7, 3)) == Fraction(7, 3)
    assert F3("1/2") == Fraction(-1, 2) + Fraction(2, 4) - Fraction(4, 8) + (
        Fraction(33, 32)
    )


def test_float_coefficients_layout():
    """Test the polyval layout used by the simulator."""
    coeffs = F3.float_coefficients()
    assert coeffs.tolist() == [0.0, -1.0, 2.0, -4.0, 0.0, 33.0]
    value = np.polynomial.polynomial.polyval(0.5, coeffs)
    assert value == pytest.approx(float(F3(Fraction(1, 2))))


def test_str():
    """Test the human-readable form."""
    f321 = jet_compose(F3, jet_compose(F2, F1))
    assert str(f321) == "-x + 90x^4 - 48x^5 + O(6)"
    assert str(identity_jet()) == "x + O(2)"
    assert str(Jet1D((Fraction(0),))) == "0 + O(2)"
    assert str(jet_from_coeffs([1, "1/2"])) == "x + 1/2x^2 + O(3)"


def test_compose_three_map_example():
    """Test the composition of three LAS maps."""
    f321 = jet_compose(F3, jet_compose(F2, F1))
    assert f321.coeffs == _coeffs(-1, 0, 0, 90, -48)
    assert f321.order == 5


def test_compose_truncates_to_min_order():
    """Test that composition never reports undetermined coefficients."""
    assert jet_compose(identity_jet(), F1).order == 1
    assert jet_compose(identity_jet(5), F1) == F1
    assert jet_compose(F1, jet_from_coeffs([-1, 1])).order == 2


def test_square():
    """Test squaring jets."""
    assert jet_square(jet_from_coeffs([-1])) == identity_jet()
    square = jet_square(jet_from_coeffs([-1, 0, 0, 90, -48]))
    assert square.coeffs == _coeffs(1, 0, 0, 0, 96)

    a2 = Fraction(3, 2)
    square = jet_square(jet_from_coeffs([-1, a2, 0]))
    assert square.coefficient(2) == 0
    assert square.coefficient(3) == -2 * a2 ** 2

    square = jet_square(F1)
    assert square.coeffs[1:4] == _coeffs(0, 0, 0)


def test_inverse_examples():
    """Test that local inverses reproduce the repeller family."""
    assert jet_inverse(F3).coeffs == _coeffs(-1, 2, -4, 0, 31)
    assert jet_inverse(F2).coeffs == _coeffs(-1, 5, -25, 0, 1241)
    assert jet_inverse(F1).coeffs == _coeffs(-1, 3, -9, 0, 160)
    assert jet_inverse(identity_jet(4)) == identity_jet(4)


def test_inverse_requires_nonzero_multiplier():
    """Test that a vanishing multiplier cannot be inverted."""
    with pytest.raises(NonInvertibleJet):
        jet_inverse(jet_from_coeffs([0, 1, 2]))


def test_associativity_property():
    """Test associativity on random jets of equal order."""
    rng = random.Random(20240101)
    for _ in range(500):
        order = rng.randint(1, 6)
        f, g, h = (_random_jet(rng, order) for _ in range(3))
        assert jet_compose(f, jet_compose(g, h)) == jet_compose(
            jet_compose(f, g), h
        )


def test_identity_property():
    """Test the identity laws on random jets."""
    rng = random.Random(7)
    for _ in range(500):
        order = rng.randint(1, 7)
        f = _random_jet(rng, order)
        identity = identity_jet(order)
        assert jet_compose(f, identity) == f
        assert jet_compose(identity, f) == f


def test_inversion_property():
    """Test the inversion round trip on random jets with a1 = +-1."""
    rng = random.Random(99)
    for _ in range(500):
        order = rng.randint(1, 7)
        f = _random_jet(rng, order, a1=rng.choice([-1, 1]))
        g = jet_inverse(f)
        assert g.order == f.order
        assert jet_compose(f, g) == identity_jet(order)
        assert jet_compose(g, f) == identity_jet(order)
        assert jet_inverse(g) == f
