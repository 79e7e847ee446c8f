"""Side lists, chord/angle primitives and the unit-circle product.

A side of length ``l`` inscribed in a circle of radius ``r`` subtends the
central angle ``alpha = arccos(1 - l**2 / (2 r**2)) = 2 asin(l / (2 r))``.
Its unit complex number ``exp(i alpha)`` has real part ``1 - l**2/(2 r**2)``
and the positive square-root branch for the imaginary part.  A polygon
closes on the circle exactly when the product of these numbers (with some
factors conjugated for crossed traversals) equals one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    ChordExceedsDiameter,
    DegeneratePolygon,
    InvalidSignature,
    NonPositiveSide,
    TooFewSides,
)

TWO_PI = 2.0 * math.pi

#: absolute tolerance on angle residuals of a solved radius
RESIDUAL_TOL = 1e-10
#: tolerance used when deciding the centre lies on the longest side
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class SideList:
    """Ordered, validated chord lengths of a cyclic polygon."""

    lengths: tuple[float, ...]

    def __post_init__(self):
        ls = self.lengths
        if len(ls) < 3:
            raise TooFewSides(f"a polygon needs at least 3 sides, got {len(ls)}")
        for i, l in enumerate(ls):
            if not (l > 0) or math.isinf(l):
                raise NonPositiveSide(f"side {i} must be a positive finite length, got {l!r}")
        longest = max(ls)
        rest = math.fsum(ls) - longest
        if longest >= rest:
            raise DegeneratePolygon(
                f"longest side {longest!r} is not shorter than the sum of the others ({rest!r})"
            )

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def longest(self) -> float:
        return max(self.lengths)

    @property
    def longest_index(self) -> int:
        return self.lengths.index(self.longest)

    @property
    def perimeter(self) -> float:
        return math.fsum(self.lengths)

    def __len__(self):
        return len(self.lengths)

    def __iter__(self):
        return iter(self.lengths)

    def __getitem__(self, i):
        return self.lengths[i]

    def scaled(self, t: float) -> "SideList":
        return SideList(tuple(t * l for l in self.lengths))


SidesLike = Union[SideList, Sequence[float]]


def validate_sides(raw: Iterable[float]) -> SideList:
    """Check ``raw`` describes a polygon and wrap it, keeping the input order."""
    if isinstance(raw, SideList):
        return raw
    try:
        values = tuple(float(x) for x in raw)
    except (TypeError, ValueError) as exc:
        raise NonPositiveSide(f"side lengths must be real numbers: {exc}") from None
    return SideList(values)


as_sides = validate_sides


@dataclass(frozen=True)
class UnitComplex:
    re: float
    im: float

    def __complex__(self):
        return complex(self.re, self.im)

    def conjugate(self) -> "UnitComplex":
        return UnitComplex(self.re, -self.im)


class Kind(str, enum.Enum):
    PCI = "PCI"
    PNCI = "PNCI"
    CENTER_ON_SIDE = "CenterOnSide"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    """Where the circumcentre sits relative to a convex cyclic polygon.

    ``theta`` is the angle the other sides subtend when the longest side is
    a diameter; it is the quantity that decides the kind.
    """

    kind: Kind
    longest_index: int | None
    theta: float = math.nan

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "longest_index": self.longest_index}


@dataclass(frozen=True)
class Signature:
    """Per-side traversal directions and the number of turns around the centre.

    ``signs[k] == -1`` means side ``k`` is walked backwards (its unit factor
    is conjugated).  ``winding`` is the integer ``E`` in
    ``sum(sign_k * alpha_k) == 2 pi E``.
    """

    signs: tuple[int, ...]
    winding: int = 1

    def __post_init__(self):
        if len(self.signs) < 3:
            raise InvalidSignature("a signature needs at least three sides")
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidSignature(f"signs must be +1 or -1, got {self.signs!r}")
        if all(s == -1 for s in self.signs):
            raise InvalidSignature("at most n-1 sides may be reversed")
        if not isinstance(self.winding, int) or self.winding < 1:
            raise InvalidSignature(f"winding must be a positive integer, got {self.winding!r}")

    @classmethod
    def convex(cls, n: int, winding: int = 1) -> "Signature":
        return cls((1,) * n, winding)

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def reversed_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def verified(self) -> bool:
        """Only all-forward and single-reversal patterns have worked references."""
        return self.reversed_count <= 1

    def to_dict(self) -> dict:
        return {"signs": list(self.signs), "winding": self.winding}


def _check_chord(l: float, r: float) -> None:
    if not (r > 0):
        raise ChordExceedsDiameter(f"radius must be positive, got {r!r}")
    if l > 2.0 * r * (1.0 + 1e-15):
        raise ChordExceedsDiameter(f"chord {l!r} exceeds the diameter {2.0 * r!r}")


def _half_angle_sine(l: float, r: float) -> float:
    return min(l / (2.0 * r), 1.0)


def central_angle(l: float, r: float) -> float:
    """Central angle subtended by a chord, in ``(0, pi]``."""
    _check_chord(l, r)
    # arcsin form: arccos(1 - l^2/2r^2) loses digits when l << r
    return 2.0 * math.asin(_half_angle_sine(l, r))


def central_angle_arccos(l: float, r: float) -> float:
    _check_chord(l, r)
    return math.acos(max(-1.0, 1.0 - l * l / (2.0 * r * r)))


def angle_derivative(l: float, r: float) -> float:
    """d(alpha)/dr for fixed chord length; ``-inf`` when the chord is a diameter."""
    d = 4.0 * r * r - l * l
    if d <= 0.0:
        return -math.inf
    return -2.0 * l / (r * math.sqrt(d))


def complex_factor(l: float, r: float) -> UnitComplex:
    _check_chord(l, r)
    re = 1.0 - l * l / (2.0 * r * r)
    # sqrt(1 - re^2) rewritten without cancellation
    im = l * math.sqrt(max(4.0 * r * r - l * l, 0.0)) / (2.0 * r * r)
    return UnitComplex(re, im)


def signed_angle_sum(sides: SidesLike, signs: Sequence[int], r: float) -> float:
    return math.fsum(s * central_angle(l, r) for s, l in zip(signs, sides))


def product_residual(sides: SidesLike, sig: Signature | None, r: float) -> complex:
    """``prod(factor_k ** sign_k) - 1``; zero exactly when the polygon closes."""
    sides = as_sides(sides)
    signs = sig.signs if sig is not None else (1,) * sides.n
    if len(signs) != sides.n:
        raise InvalidSignature(f"signature has {len(signs)} signs for {sides.n} sides")
    prod = complex(1.0, 0.0)
    for s, l in zip(signs, sides):
        f = complex_factor(l, r)
        prod *= complex(f.re, f.im if s > 0 else -f.im)
    return prod - 1.0


def diameter_angle_excess(sides: SidesLike) -> float:
    """Angle the non-longest sides subtend when the longest side is a diameter."""
    sides = as_sides(sides)
    lmax = sides.longest
    skip = sides.longest_index
    return math.fsum(
        2.0 * math.asin(min(l / lmax, 1.0)) for i, l in enumerate(sides) if i != skip
    )


def classify_a_priori(sides: SidesLike, tol: float = ANGLE_TOL) -> Classification:
    """Decide PCI / PNCI / CenterOnSide without solving for the radius.

    With the longest side as a diameter the remaining sides subtend ``theta``.
    If ``theta`` overshoots pi the circle must grow and the centre ends up
    inside; if it falls short the centre lies beyond the longest side.
    """
    sides = as_sides(sides)
    theta = diameter_angle_excess(sides)
    if abs(theta - math.pi) <= tol:
        return Classification(Kind.CENTER_ON_SIDE, sides.longest_index, theta)
    if theta > math.pi:
        return Classification(Kind.PCI, None, theta)
    return Classification(Kind.PNCI, sides.longest_index, theta)
