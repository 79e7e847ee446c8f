"""Closed-form radii and areas: triangles, cyclic quadrilaterals, regular {n/q}.

These are independent of the root finder and serve as cross-checks for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneratePolygon, InvalidStar, NonPositiveSide, ValidationError


@dataclass(frozen=True)
class TriangleSides:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise NonPositiveSide("triangle sides must be positive")
        if self.s <= max(self.a, self.b, self.c):
            raise DegeneratePolygon(f"({self.a}, {self.b}, {self.c}) violates the triangle inequality")

    @property
    def s(self) -> float:
        return (self.a + self.b + self.c) / 2.0


def _triangle(t) -> TriangleSides:
    return t if isinstance(t, TriangleSides) else TriangleSides(*t)


def _heron_product(t: TriangleSides) -> float:
    # Kahan's ordering: (a+b+c)(b+c-a)(a+b-c)(a+c-b) without catastrophic cancellation
    a, b, c = sorted((t.a, t.b, t.c), reverse=True)
    return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))


def radius_triangle(t) -> float:
    """``abc / sqrt((a+b+c)(b+c-a)(a+b-c)(a+c-b))``."""
    t = _triangle(t)
    return t.a * t.b * t.c / math.sqrt(_heron_product(t))


def area_triangle_heron(t) -> float:
    t = _triangle(t)
    return 0.25 * math.sqrt(_heron_product(t))


@dataclass(frozen=True)
class QuadrilateralRadii:
    """Convex radius plus the crossed (bow-tie) candidate.

    ``crossed_status`` is ``"Real"``, ``"NotReal"`` (negative radicand) or
    ``"Indeterminate"`` (0/0, as for the square).
    """

    convex: float
    crossed: float | None
    crossed_status: str

    def to_dict(self) -> dict:
        return {"convex": self.convex, "crossed": self.crossed, "crossed_status": self.crossed_status}


def radius_quadrilateral(a: float, b: float, c: float, d: float) -> QuadrilateralRadii:
    sides = (a, b, c, d)
    if min(sides) <= 0:
        raise NonPositiveSide("quadrilateral sides must be positive")
    if 2 * max(sides) >= sum(sides):
        raise DegeneratePolygon(f"{sides} cannot close")
    num = (a * b + c * d) * (a * c + b * d) * (a * d + b * c)
    den = (-a + b + c + d) * (a - b + c + d) * (a + b - c + d) * (a + b + c - d)
    convex = math.sqrt(num / den)

    xnum = (a * d - b * c) * (a * c - b * d) * (a * b - c * d)
    xden = (a + b - c - d) * (a - b + c - d) * (a - b - c + d) * (a + b + c + d)
    scale = sum(sides) ** 4
    if abs(xden) <= 1e-14 * scale:
        return QuadrilateralRadii(convex, None, "Indeterminate")
    ratio = xnum / xden
    if ratio <= 0:
        return QuadrilateralRadii(convex, None, "NotReal")
    return QuadrilateralRadii(convex, math.sqrt(ratio), "Real")


def radius_regular(n: int, l: float, q: int = 1) -> float:
    """Circumradius of the regular {n/q} polygon (star when ``q > 1``) with side ``l``."""
    if n < 3:
        raise ValidationError(f"a regular polygon needs n >= 3, got {n}")
    if l <= 0:
        raise NonPositiveSide(f"side must be positive, got {l!r}")
    if q < 1 or (q > 1 and 2 * q >= n):
        raise InvalidStar(f"density q={q} must satisfy 1 <= q < n/2")
    if math.gcd(n, q) != 1:
        raise InvalidStar(f"{{{n}/{q}}} is a compound, not a single star (gcd {math.gcd(n, q)})")
    return l / (2.0 * math.sin(math.pi * q / n))
