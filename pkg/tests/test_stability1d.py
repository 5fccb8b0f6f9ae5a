"""
Unit tests for one-dimensional stability constants and verdicts.
"""
import random
from fractions import Fraction

import pytest

from parrondo_lab.error import InvalidNormalForm, WrongMultiplier
from parrondo_lab.jet import (
    Jet1D,
    jet_compose,
    jet_from_coeffs,
    jet_inverse,
)
from parrondo_lab.stability1d import (
    RULE_LEADING_TERM,
    RULE_LINEARIZATION,
    RULE_STABILITY_CONSTANT,
    classify_1d,
    closed_form_constants,
    normal_form_jet,
    stability_constants,
)
from parrondo_lab.verdict import Stability

DETERMINATE = {
    Stability.LAS,
    Stability.REPELLER,
    Stability.SEMI_AS_LEFT,
    Stability.SEMI_AS_RIGHT,
}


def _random_reversing(rng, order, spread=6):
    coeffs = [Fraction(-1)] + [
        Fraction(rng.randint(-spread, spread)) for _ in range(order - 1)
    ]
    return Jet1D(tuple(coeffs))


def test_per_map_constants():
    """Test V5 of the three-map example and its inverse family."""
    cases = [
        ([-1, 3, -9, 0, 164], -4),
        ([-1, 5, -25, 0, 1259], -18),
        ([-1, 2, -4, 0, 33], -2),
        ([-1, 2, -4, 0, 31], 2),
        ([-1, 5, -25, 0, 1241], 18),
        ([-1, 3, -9, 0, 160], 4),
    ]
    for coeffs, v5 in cases:
        constants = stability_constants(jet_from_coeffs(coeffs))
        assert constants.v_first == (5, v5)
        assert constants.w_values[0] == (3, 0)
        assert not constants.involution_up_to_order


def test_composition_verdicts():
    """Test the verdicts of the example compositions."""
    f321 = jet_from_coeffs([-1, 0, 0, 90, -48])
    verdict = classify_1d(f321)
    assert verdict.stability == Stability.REPELLER
    assert verdict.constant == (5, 96)
    assert verdict.order_decided == 5
    assert verdict.rule == RULE_STABILITY_CONSTANT

    g321 = classify_1d(jet_from_coeffs([-1, 0, 0, 90, 48]))
    assert g321.stability == Stability.LAS
    assert g321.constant == (5, -96)

    reversed_g = classify_1d(jet_from_coeffs([-1, 0, 0, 90, -72]))
    assert reversed_g.stability == Stability.REPELLER


def test_orientation_preserving_rule():
    """Test the leading-term rule for f'(0) = 1."""
    glued = classify_1d(jet_from_coeffs([1, 1, -4, 2]))
    assert glued.stability == Stability.SEMI_AS_LEFT
    assert glued.order_decided == 2
    assert glued.rule == RULE_LEADING_TERM

    right = classify_1d(jet_from_coeffs([1, -1]))
    assert right.stability == Stability.SEMI_AS_RIGHT

    flat = classify_1d(jet_from_coeffs([1, 0, 0, 0, 0, 0, -1]))
    assert flat.stability == Stability.LAS
    assert flat.order_decided == 7

    assert classify_1d(jet_from_coeffs([1, 0, 2])).stability == (
        Stability.REPELLER
    )


def test_undetermined_verdicts():
    """Test that vanishing jets report the order they were checked to."""
    identity = classify_1d(jet_from_coeffs([1, 0, 0, 0]))
    assert identity.stability == Stability.UNDETERMINED_AT_ORDER
    assert identity.order_decided == 4

    involution = classify_1d(jet_from_coeffs([-1, 0, 0, 0, 0]))
    assert involution.stability == Stability.INVOLUTION_UP_TO_ORDER
    assert involution.order_decided == 5

    # x -> -x / (1 + x) is an involution
    reflection = jet_from_coeffs([-1, 1, -1, 1, -1, 1])
    assert classify_1d(reflection).stability == (
        Stability.INVOLUTION_UP_TO_ORDER
    )


def test_hyperbolic_verdicts():
    """Test that |f'(0)| != 1 is decided by linearization."""
    attracting = classify_1d(jet_from_coeffs(["1/2", 7]))
    assert attracting.stability == Stability.HYPERBOLIC_ATTRACTING
    assert attracting.rule == RULE_LINEARIZATION
    assert attracting.order_decided == 1

    assert classify_1d(jet_from_coeffs([-3])).stability == (
        Stability.HYPERBOLIC_REPELLING
    )
    assert classify_1d(jet_from_coeffs([0, 1])).stability == (
        Stability.HYPERBOLIC_ATTRACTING
    )


def test_wrong_multiplier():
    """Test that constants need an orientation-reversing jet."""
    with pytest.raises(WrongMultiplier):
        stability_constants(jet_from_coeffs([1, 2, 3]))
    with pytest.raises(WrongMultiplier):
        closed_form_constants(jet_from_coeffs(["1/2", 2, 3]))


def test_normal_forms():
    """Test the normal-form jets and their verdicts."""
    repeller = normal_form_jet(1, 1, 2, order=5)
    assert repeller.coeffs == tuple(Fraction(v) for v in (1, 0, 1, 0, 0))
    assert classify_1d(repeller).stability == Stability.REPELLER

    las = normal_form_jet(-1, 1, 2, order=5)
    assert las.coeffs == tuple(Fraction(v) for v in (-1, 0, 1, 0, 0))
    assert classify_1d(las).stability == Stability.LAS

    assert classify_1d(normal_form_jet(-1, -1, 2)).stability == (
        Stability.REPELLER
    )
    semi = normal_form_jet(1, 1, 1, c=3)
    assert semi.coeffs == tuple(Fraction(v) for v in (1, 1, 3))
    assert classify_1d(semi).stability == Stability.SEMI_AS_LEFT

    assert normal_form_jet(-1, 1, 2, c="1/2", order=7).coefficient(5) == (
        Fraction(1, 2)
    )


def test_normal_form_errors():
    """Test the normal-form preconditions."""
    with pytest.raises(InvalidNormalForm):
        normal_form_jet(-1, 1, 3)
    with pytest.raises(InvalidNormalForm):
        normal_form_jet(2, 1, 2)
    with pytest.raises(InvalidNormalForm):
        normal_form_jet(1, 0, 2)
    with pytest.raises(InvalidNormalForm):
        normal_form_jet(1, 1, 0)
    with pytest.raises(InvalidNormalForm):
        normal_form_jet(1, 1, 4, order=4)


def test_first_constant_has_odd_index():
    """Test that no random jet produces an even first constant."""
    rng = random.Random(3)
    for _ in range(200):
        f = _random_reversing(rng, rng.randint(3, 9), spread=3)
        constants = stability_constants(f)
        if constants.v_first is not None:
            assert constants.v_first[0] % 2 == 1
            index = constants.v_first[0]
            assert all(w == 0 for j, w in constants.w_values if j < index)


def test_odd_function_constants():
    """Test that odd jets have V_k = -2 a_k at their first odd term."""
    rng = random.Random(11)
    for _ in range(200):
        order = rng.randint(3, 11)
        coeffs = [Fraction(-1)] + [Fraction(0)] * (order - 1)
        first = rng.randrange(3, order + 1, 2)
        for k in range(first, order + 1, 2):
            coeffs[k - 1] = Fraction(rng.randint(-5, 5))
        coeffs[first - 1] = Fraction(rng.choice([-3, -1, 2, 5]))
        constants = stability_constants(Jet1D(tuple(coeffs)))
        assert constants.v_first == (first, -2 * coeffs[first - 1])


def test_vanishing_constants_force_vanishing_odd_terms():
    """Test that with zero even terms V_3..V_(2m+1) vanish iff a_odd do."""
    rng = random.Random(12)
    forced = 0
    for case in range(200):
        m = rng.randint(1, 5)
        order = rng.randint(2 * m + 1, 11)
        coeffs = [Fraction(-1)] + [
            Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for _ in range(order - 1)
        ]
        for k in range(2, 2 * m + 2):
            if k % 2 == 0 or case % 2 == 0 or rng.random() < 0.5:
                coeffs[k - 1] = Fraction(0)
        constants = stability_constants(Jet1D(tuple(coeffs)))
        vanishing = all(
            w == 0 for j, w in constants.w_values if j <= 2 * m + 1
        )
        odd_terms_zero = all(
            coeffs[k - 1] == 0 for k in range(3, 2 * m + 2, 2)
        )
        assert vanishing == odd_terms_zero
        forced += vanishing
        if constants.v_first is not None:
            assert constants.v_first[0] % 2 == 1
    assert forced >= 100


def test_closed_forms_match_extraction():
    """Test the printed closed forms against the extracted constants."""
    rng = random.Random(2024)
    for _ in range(120):
        a = {
            k: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for k in range(2, 12)
        }
        a[3] = -a[2] ** 2
        a[5] = 2 * a[2] ** 4 - 3 * a[2] * a[4]
        for index in (7, 9):
            jet = Jet1D((Fraction(-1),) + tuple(a[k] for k in range(2, 12)))
            value = dict(closed_form_constants(jet))[index]
            a[index] += value / 2

        f = Jet1D((Fraction(-1),) + tuple(a[k] for k in range(2, 12)))
        closed = dict(closed_form_constants(f))
        assert [closed[i] for i in (3, 5, 7, 9)] == [0, 0, 0, 0]

        constants = stability_constants(f)
        assert all(w == 0 for j, w in constants.w_values if j < 11)
        assert constants.w_values[-1] == (11, closed[11])
        if closed[11] != 0:
            assert constants.v_first == (11, closed[11])


def test_closed_forms_low_orders():
    """Test that closed forms stop at the jet order."""
    f = jet_from_coeffs([-1, 3, -9, 0, 164])
    assert closed_form_constants(f) == ((3, 0), (5, -4))
    assert closed_form_constants(jet_from_coeffs([-1, 1, 1])) == (
        (3, -4),
    )


def _determinate_pairs(rng, wanted, count):
    pairs = []
    for _ in range(20000):
        f, g = (
            Jet1D(
                (Fraction(rng.choice([-1, 1])),)
                + tuple(Fraction(rng.randint(-3, 3)) for _ in range(6))
            )
            for _ in range(2)
        )
        if all(classify_1d(h).stability == wanted for h in (f, g)):
            pairs.append((f, g))
            if len(pairs) == count:
                break
    return pairs


def _perturbed_normal_form(rng, attracting):
    sign_linear = rng.choice([-1, 1])
    m = rng.choice([2, 4])
    # -x + x^(m+1) and x - x^(m+1) attract for even m
    sign_nonlinear = -sign_linear if attracting else sign_linear
    c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    base = normal_form_jet(sign_linear, sign_nonlinear, m, c, order=11)
    coeffs = list(base.coeffs)
    for k in range(m + 2, 12):
        coeffs[k - 1] += Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return Jet1D(tuple(coeffs))


def test_las_pairs_never_compose_to_repeller():
    """Test that two LAS maps give LAS or semi-AS, never a repeller."""
    allowed = {Stability.LAS, Stability.SEMI_AS_LEFT, Stability.SEMI_AS_RIGHT}
    pairs = _determinate_pairs(random.Random(5), Stability.LAS, 200)
    assert len(pairs) == 200
    for f, g in pairs:
        verdict = classify_1d(jet_compose(g, f)).stability
        assert verdict in allowed or verdict.is_undetermined


def test_repeller_pairs_never_compose_to_las():
    """Test that two repellers give a repeller or semi-AS, never LAS."""
    allowed = {
        Stability.REPELLER, Stability.SEMI_AS_LEFT, Stability.SEMI_AS_RIGHT
    }
    pairs = _determinate_pairs(random.Random(6), Stability.REPELLER, 200)
    assert len(pairs) == 200
    for f, g in pairs:
        verdict = classify_1d(jet_compose(g, f)).stability
        assert verdict in allowed or verdict.is_undetermined


def test_normal_form_las_pairs_stay_attracting():
    """Test closure on perturbed LAS normal forms of both orientations."""
    allowed = {Stability.LAS, Stability.SEMI_AS_LEFT, Stability.SEMI_AS_RIGHT}
    rng = random.Random(15)
    for _ in range(200):
        f = _perturbed_normal_form(rng, attracting=True)
        g = _perturbed_normal_form(rng, attracting=True)
        assert classify_1d(f).stability == Stability.LAS
        assert classify_1d(g).stability == Stability.LAS
        assert classify_1d(jet_compose(g, f)).stability in allowed


def test_normal_form_repeller_pairs_stay_repelling():
    """Test closure on perturbed repelling normal forms."""
    allowed = {
        Stability.REPELLER, Stability.SEMI_AS_LEFT, Stability.SEMI_AS_RIGHT
    }
    rng = random.Random(16)
    for _ in range(200):
        f = _perturbed_normal_form(rng, attracting=False)
        g = _perturbed_normal_form(rng, attracting=False)
        assert classify_1d(f).stability == Stability.REPELLER
        assert classify_1d(g).stability == Stability.REPELLER
        assert classify_1d(jet_compose(g, f)).stability in allowed


def test_inverse_duality():
    """Test that inversion swaps attracting and repelling verdicts."""
    swapped = {
        Stability.LAS: Stability.REPELLER,
        Stability.REPELLER: Stability.LAS,
        Stability.SEMI_AS_LEFT: Stability.SEMI_AS_RIGHT,
        Stability.SEMI_AS_RIGHT: Stability.SEMI_AS_LEFT,
    }
    rng = random.Random(8)
    checked = 0
    for _ in range(400):
        f = Jet1D(
            (Fraction(rng.choice([-1, 1])),)
            + tuple(Fraction(rng.randint(-3, 3)) for _ in range(6))
        )
        verdict = classify_1d(f)
        if verdict.stability not in DETERMINATE:
            continue
        inverse = classify_1d(jet_inverse(f))
        assert inverse.stability == swapped[verdict.stability]
        assert inverse.order_decided == verdict.order_decided
        checked += 1
    assert checked > 100
