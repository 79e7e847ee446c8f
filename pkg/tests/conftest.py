import math
import random

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_side_lists(count, seed=20150628, n_range=(3, 12), lo=0.1, hi=10.0):
    """Valid side lists with log-uniform lengths (rejection sampled)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        ls = [math.exp(rng.uniform(math.log(lo), math.log(hi))) for _ in range(n)]
        if max(ls) < math.fsum(ls) - max(ls):
            out.append(ls)
    return out


@pytest.fixture(scope="session")
def side_lists():
    return random_side_lists(1000)


def circumcenter(p, q, s):
    """Circumcentre of three points by solving the perpendicular-bisector system."""
    ax, ay = p
    bx, by = q
    cx, cy = s
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    return ux, uy


def place_triangle(a, b, c):
    """Vertices with side c on the x-axis, by the law of cosines."""
    x = (b * b + c * c - a * a) / (2 * c)
    return (0.0, 0.0), (c, 0.0), (x, math.sqrt(b * b - x * x))


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
