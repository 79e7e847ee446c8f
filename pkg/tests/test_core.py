import cmath
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclorad.core import (
    Kind,
    Signature,
    SideList,
    angle_derivative,
    central_angle,
    central_angle_arccos,
    classify_a_priori,
    complex_factor,
    product_residual,
    validate_sides,
)
from cyclorad.errors import (
    ChordExceedsDiameter,
    DegeneratePolygon,
    InvalidSignature,
    NonPositiveSide,
    TooFewSides,
)

from conftest import circumcenter, place_triangle


def test_validate_keeps_order():
    s = validate_sides([3, 4, 5])
    assert s.n == 3
    assert s.lengths == (3.0, 4.0, 5.0)
    assert validate_sides([5, 3, 4]).lengths == (5.0, 3.0, 4.0)


@pytest.mark.parametrize(
    "raw, exc",
    [
        ([1, 2, 3], DegeneratePolygon),
        ([1, 2, 4], DegeneratePolygon),
        ([1, -1, 1], NonPositiveSide),
        ([1, 0, 1], NonPositiveSide),
        ([1, 1], TooFewSides),
        ([1, float("nan"), 1], NonPositiveSide),
    ],
)
def test_validate_rejects(raw, exc):
    with pytest.raises(exc):
        validate_sides(raw)


@pytest.mark.parametrize(
    "l, r, expected",
    [(2, 1, math.pi), (1, 1, math.pi / 3), (math.sqrt(2), 1, math.pi / 2)],
)
def test_central_angle(l, r, expected):
    assert central_angle(l, r) == pytest.approx(expected, abs=1e-15)


def test_chord_longer_than_diameter():
    with pytest.raises(ChordExceedsDiameter):
        central_angle(2.1, 1)
    with pytest.raises(ChordExceedsDiameter):
        complex_factor(3, 1)


@pytest.mark.parametrize(
    "l, r, re, im",
    [(2, 1, -1, 0), (math.sqrt(2), 1, 0, 1), (1, 1, 0.5, math.sqrt(3) / 2)],
)
def test_complex_factor(l, r, re, im):
    f = complex_factor(l, r)
    assert f.re == pytest.approx(re, abs=1e-15)
    assert f.im == pytest.approx(im, abs=1e-15)


@given(st.floats(1e-6, 2.0), st.floats(1e-3, 1e3))
def test_factor_is_unit(ratio, r):
    f = complex_factor(ratio * r, r)
    assert abs(f.re**2 + f.im**2 - 1) <= 1e-12


@given(st.floats(1e-3, 2.0))
def test_angle_forms_agree(ratio):
    # arccos loses digits near 1, so the tolerance is absolute
    assert abs(central_angle(ratio, 1.0) - central_angle_arccos(ratio, 1.0)) <= 1e-12


@pytest.mark.parametrize("ratio", [1e-3, 0.1, 0.5, 1.0, 1.5, 1.9, 1.999])
def test_angle_derivative_matches_finite_difference(ratio):
    r = 1.7
    l = ratio * r
    h = 1e-6 * r
    fd = (central_angle(l, r + h) - central_angle(l, r - h)) / (2 * h)
    assert angle_derivative(l, r) == pytest.approx(fd, rel=1e-6)


def test_product_residual_examples():
    assert abs(product_residual([3, 4, 5], None, 2.5)) <= 1e-12
    assert abs(product_residual([1, 1, 1, 1], None, math.sqrt(2) / 2)) <= 1e-12
    assert abs(product_residual([1, 2, 4, 5, 5], None, 3.04568)) <= 1e-4


@given(st.lists(st.floats(0.05, 1.0), min_size=3, max_size=9), st.floats(0.5, 5.0))
def test_product_residual_equals_angle_exponential(ratios, scale):
    sides = [x * scale for x in ratios]
    if max(sides) >= sum(sides) - max(sides):
        return
    r = max(sides) / 2 * 1.3
    direct = cmath.exp(1j * sum(central_angle(l, r) for l in sides)) - 1
    assert abs(product_residual(sides, None, r) - direct) <= 1e-12


def test_conjugate_sign_flips_angle():
    sides = [29, 30, 31, 32, 33]
    r = 20.0
    sig = Signature((-1, 1, 1, 1, 1))
    angle = -central_angle(29, r) + sum(central_angle(l, r) for l in sides[1:])
    assert abs(product_residual(sides, sig, r) - (cmath.exp(1j * angle) - 1)) <= 1e-12


def test_classify_examples():
    assert classify_a_priori([3, 4, 3, 4]).kind is Kind.PCI
    c = classify_a_priori([3, 4, 5])
    assert c.kind is Kind.CENTER_ON_SIDE and c.longest_index == 2
    c = classify_a_priori([2, 2, 3.5])
    assert c.kind is Kind.PNCI and c.longest_index == 2


@pytest.mark.parametrize("sides", [(2, 2, 3.5), (3, 4, 3.5), (2, 3, 4), (5, 5, 5), (1, 1.2, 2.1)])
def test_classify_matches_coordinate_oracle(sides):
    a, b, c = sorted(sides)  # c longest, placed on the x-axis
    p, q, s = place_triangle(a, b, c)
    ux, uy = circumcenter(p, q, s)
    # s lies above the axis; the centre is inside iff it is on the same side
    if abs(uy) < 1e-12:
        expected = Kind.CENTER_ON_SIDE
    else:
        expected = Kind.PCI if uy > 0 else Kind.PNCI
    assert classify_a_priori(sides).kind is expected


def test_classify_invariant_under_permutation_and_scaling():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(3, 9)
        ls = [rng.uniform(0.2, 3) for _ in range(n)]
        if max(ls) >= sum(ls) - max(ls):
            continue
        kind = classify_a_priori(ls).kind
        shuffled = ls[:]
        rng.shuffle(shuffled)
        assert classify_a_priori(shuffled).kind is kind
        for t in (0.01, 1000):
            assert classify_a_priori([t * x for x in ls]).kind is kind


def test_signature_validation():
    Signature((1, -1, 1))
    with pytest.raises(InvalidSignature):
        Signature((-1, -1, -1))
    with pytest.raises(InvalidSignature):
        Signature((1, 1))
    with pytest.raises(InvalidSignature):
        Signature((1, 2, 1))
    with pytest.raises(InvalidSignature):
        Signature((1, 1, 1), winding=0)
    assert Signature((1, -1, 1, 1)).verified
    assert not Signature((1, -1, -1, 1)).verified


def test_sidelist_helpers():
    s = SideList((1.0, 2.0, 2.5))
    assert s.longest_index == 2
    assert s.perimeter == 5.5
    assert s.scaled(2).lengths == (2.0, 4.0, 5.0)
