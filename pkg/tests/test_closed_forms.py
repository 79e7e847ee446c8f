import itertools
import math

import pytest

from cyclorad.area import area_sum
from cyclorad.closed_forms import (
    TriangleSides,
    area_triangle_heron,
    radius_quadrilateral,
    radius_regular,
    radius_triangle,
)
from cyclorad.core import central_angle, classify_a_priori
from cyclorad.errors import DegeneratePolygon, InvalidStar, NonPositiveSide
from cyclorad.solver import all_positive_roots, solve_radius_convex

from conftest import random_side_lists


def test_triangle_345():
    assert radius_triangle((3, 4, 5)) == 2.5
    assert area_triangle_heron((3, 4, 5)) == 6.0


def test_triangle_pnci_matches_solver():
    assert radius_triangle((2, 2, 3.5)) == pytest.approx(solve_radius_convex([2, 2, 3.5]).r, rel=1e-12)
    sol = solve_radius_convex([2, 2, 3.5])
    area = area_sum([2, 2, 3.5], sol.r, sol.classification).total
    assert area_triangle_heron((2, 2, 3.5)) == pytest.approx(area, rel=1e-12)


def test_triangle_validation():
    with pytest.raises(DegeneratePolygon):
        TriangleSides(1, 2, 3)
    with pytest.raises(NonPositiveSide):
        TriangleSides(0, 2, 2)


def test_heron_needle_triangle():
    # Kahan ordering keeps digits where the naive semiperimeter form loses them
    t = (1e8, 1e8, 1.0)
    exact = 0.5 * 1.0 * math.sqrt(1e16 - 0.25)
    assert area_triangle_heron(t) == pytest.approx(exact, rel=1e-14)


def test_triangles_match_solver():
    for sides in random_side_lists(1000, seed=31, n_range=(3, 3)):
        assert radius_triangle(sides) == pytest.approx(solve_radius_convex(sides).r, rel=1e-12)


def test_quadrilaterals_match_solver():
    for sides in random_side_lists(1000, seed=37, n_range=(4, 4)):
        q = radius_quadrilateral(*sides)
        assert q.convex == pytest.approx(solve_radius_convex(sides).r, rel=1e-12)


def test_quadrilateral_convex_example():
    assert radius_quadrilateral(1, 2, 3, 4).convex == pytest.approx(solve_radius_convex([1, 2, 3, 4]).r, rel=1e-12)


def test_square_crossed_indeterminate():
    q = radius_quadrilateral(1, 1, 1, 1)
    assert q.convex == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert q.crossed is None
    assert q.crossed_status == "Indeterminate"


def test_crossed_radius_closes_some_signed_traversal():
    # oracle: enumerate every sign pattern and winding, the bow-tie root must close one
    sides = (2, 3, 4, 4.5)
    q = radius_quadrilateral(*sides)
    assert q.crossed_status == "Real"
    r = q.crossed
    best = min(
        abs(sum(s * central_angle(l, r) for s, l in zip(signs, sides)) - 2 * math.pi * E)
        for signs in itertools.product((1, -1), repeat=4)
        for E in (0, 1)
    )
    assert best <= 1e-9


@pytest.mark.parametrize("n", list(range(3, 21)) + [77, 200])
def test_regular_matches_solver(n):
    assert radius_regular(n, 1.3) == pytest.approx(solve_radius_convex([1.3] * n).r, rel=1e-12)


@pytest.mark.parametrize("n, q", [(5, 2), (7, 2), (7, 3)])
def test_regular_star_in_all_positive_roots(n, q):
    r = radius_regular(n, 1.0, q)
    rs = all_positive_roots([1.0] * n)
    hits = [s for s in rs.roots if abs(s.r - r) <= 1e-12 * r]
    assert len(hits) == 1 and hits[0].winding == q


def test_regular_known_values():
    assert radius_regular(5, 1) == pytest.approx(0.850651, abs=1e-6)
    assert radius_regular(5, 1, 2) == pytest.approx(0.525731, abs=1e-6)
    assert radius_regular(7, 1, 2) == pytest.approx(0.639524, abs=1e-6)
    assert radius_regular(7, 1, 3) == pytest.approx(0.512858, abs=1e-6)
    assert radius_regular(77, 1) == pytest.approx(12.2583, abs=1e-4)


@pytest.mark.parametrize("n, q", [(6, 2), (6, 3), (5, 3), (7, 0), (8, 4)])
def test_invalid_star(n, q):
    with pytest.raises(InvalidStar):
        radius_regular(n, 1, q)


def test_regular_classified_pci():
    assert classify_a_priori([1] * 9).kind.value == "PCI"
