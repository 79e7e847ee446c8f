"""Areas of convex cyclic polygons and the centre-position criteria.

Two routes to the same number:

* triangle sum: fan of isosceles triangles (r, r, l_k) from the centre, with
  the longest side's triangle subtracted when the centre is outside;
* segment route: the disc minus the circular segments cut off by each side
  (for PNCI the longest side's segment is the region that holds the polygon).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    ANGLE_TOL,
    Classification,
    Kind,
    SidesLike,
    _check_chord,
    as_sides,
    central_angle,
)
from .errors import DivergentTerm, InconsistentClassification

SUM = "Sum"
INTEGRAL = "Integral"


@dataclass(frozen=True)
class AreaResult:
    total: float
    per_side: tuple[float, ...]
    method: str
    classification: Classification

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "method": self.method,
            "per_side": list(self.per_side),
            "classification": self.classification.to_dict(),
        }


@dataclass(frozen=True)
class CriterionField:
    lhs: float
    rhs: float
    satisfied: bool

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied}


@dataclass(frozen=True)
class RatioField:
    ratios: tuple[float, ...]
    satisfied: bool

    def to_dict(self) -> dict:
        return {"ratios": list(self.ratios), "satisfied": self.satisfied}


@dataclass(frozen=True)
class CriterionReport:
    criterion1: CriterionField
    criterion2: CriterionField | None = None
    criterion3: RatioField | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "criterion1": self.criterion1.to_dict(),
            "criterion2": None if self.criterion2 is None else self.criterion2.to_dict(),
            "criterion3": None if self.criterion3 is None else self.criterion3.to_dict(),
            "notes": list(self.notes),
        }


def triangle_area(l: float, r: float) -> float:
    """Area of the isosceles triangle with sides (r, r, l)."""
    _check_chord(l, r)
    return 0.25 * l * math.sqrt(max(4.0 * r * r - l * l, 0.0))


def _alpha_minus_sin(a: float) -> float:
    if a > 0.5:
        return a - math.sin(a)
    # series keeps relative accuracy for thin segments
    term = a * a * a / 6.0
    total = term
    k = 3
    while True:
        term *= -a * a / ((k + 1) * (k + 2))
        k += 2
        if abs(term) <= 1e-18 * abs(total):
            return total
        total += term


def segment_area(l: float, r: float) -> float:
    """Area between a chord of length ``l`` and its minor arc.

    Closed form of ``2 * integral_0^{l/2} sqrt(r^2 - x^2) dx - (l/2) sqrt(4 r^2 - l^2)``,
    i.e. ``r^2 asin(l/2r) - (l/4) sqrt(4r^2 - l^2) = r^2 (alpha - sin alpha) / 2``.
    """
    alpha = central_angle(l, r)
    return 0.5 * r * r * _alpha_minus_sin(alpha)


def criterion1(sides: SidesLike, r: float, tol: float = ANGLE_TOL) -> CriterionField:
    """Longest side's central angle against the sum of the others (PNCI iff equal)."""
    sides = as_sides(sides)
    k = sides.longest_index
    lhs = central_angle(sides[k], r)
    rhs = math.fsum(central_angle(l, r) for i, l in enumerate(sides) if i != k)
    return CriterionField(lhs, rhs, abs(lhs - rhs) <= tol)


def _cot_half_angle(l: float, r: float) -> float:
    # sqrt(4 (r/l)^2 - 1)
    v = 4.0 * (r / l) ** 2 - 1.0
    if v <= 0.0:
        raise DivergentTerm(f"r={r!r} equals half the side {l!r}; the term diverges")
    return math.sqrt(v)


def criterion2(sides: SidesLike, r: float, tol: float = ANGLE_TOL) -> CriterionField:
    sides = as_sides(sides)
    k = sides.longest_index
    for l in sides:
        _check_chord(l, r)
    lhs = 1.0 / _cot_half_angle(sides[k], r)
    rhs = math.fsum(1.0 / _cot_half_angle(l, r) for i, l in enumerate(sides) if i != k)
    return CriterionField(lhs, rhs, abs(lhs - rhs) <= tol)


def criterion3(sides: SidesLike, r: float, tol: float = ANGLE_TOL) -> RatioField:
    """Ratios for every non-longest side; all must be below one for PNCI.

    A tie for the longest side yields a ratio of exactly one, hence PCI.
    """
    sides = as_sides(sides)
    k = sides.longest_index
    for l in sides:
        _check_chord(l, r)
    num = _cot_half_angle(sides[k], r)
    ratios = tuple(num / _cot_half_angle(l, r) for i, l in enumerate(sides) if i != k)
    return RatioField(ratios, all(x < 1.0 - tol for x in ratios))


def criteria(sides: SidesLike, r: float) -> CriterionReport:
    sides = as_sides(sides)
    c1 = criterion1(sides, r)
    notes = []
    try:
        c2, c3 = criterion2(sides, r), criterion3(sides, r)
    except DivergentTerm as exc:
        c2 = c3 = None
        notes.append(str(exc))
    return CriterionReport(c1, c2, c3, notes)


def _check_consistent(sides, r: float, cls: Classification) -> None:
    c1 = criterion1(sides, r)
    if cls.kind is Kind.PCI and c1.satisfied:
        raise InconsistentClassification(
            f"PCI requested but the longest side balances the rest ({c1.lhs!r} = {c1.rhs!r})"
        )
    if cls.kind is not Kind.PCI and not c1.satisfied:
        raise InconsistentClassification(
            f"{cls.kind} requested but {c1.lhs!r} != {c1.rhs!r} at r={r!r}"
        )


def area_sum(sides: SidesLike, r: float, cls: Classification) -> AreaResult:
    sides = as_sides(sides)
    _check_consistent(sides, r, cls)
    per = tuple(triangle_area(l, r) for l in sides)
    if cls.kind is Kind.PNCI:
        k = sides.longest_index
        total = math.fsum(a for i, a in enumerate(per) if i != k) - per[k]
    else:
        total = math.fsum(per)
    return AreaResult(total, per, SUM, cls)


def area_integral(sides: SidesLike, r: float, cls: Classification) -> AreaResult:
    sides = as_sides(sides)
    _check_consistent(sides, r, cls)
    segs = tuple(segment_area(l, r) for l in sides)
    if cls.kind is Kind.PNCI:
        k = sides.longest_index
        # the longest side's minor segment contains the polygon
        total = segs[k] - math.fsum(a for i, a in enumerate(segs) if i != k)
    else:
        total = math.pi * r * r - math.fsum(segs)
    return AreaResult(total, segs, INTEGRAL, cls)
