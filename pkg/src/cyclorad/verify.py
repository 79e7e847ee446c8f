"""Geometric oracle: put the polygon on its circle and measure it.

Closure is checked on Cartesian coordinates, so a wrong branch or sign that
the angle equation could not see still shows up as a gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Classification, Kind, Signature, SidesLike, as_sides, central_angle
from .errors import InvalidSignature, NotClosed

VIEW = 512.0
MARGIN = 0.05


@dataclass(frozen=True)
class PolygonReconstruction:
    vertices: tuple[tuple[float, float], ...]
    cumulative_angles: tuple[float, ...]
    closure_error: float
    side_errors: tuple[float, ...]
    signed_area: float
    r: float

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "cumulative_angles": list(self.cumulative_angles),
            "closure_error": self.closure_error,
            "side_errors": list(self.side_errors),
            "signed_area": self.signed_area,
        }


def _signs_for(sides, how) -> tuple[int, ...]:
    if how is None:
        return (1,) * sides.n
    if isinstance(how, Signature):
        if how.n != sides.n:
            raise InvalidSignature(f"signature has {how.n} signs for {sides.n} sides")
        return how.signs
    if isinstance(how, Classification):
        if how.kind is Kind.PNCI:
            k = sides.longest_index if how.longest_index is None else how.longest_index
            return tuple(-1 if i == k else 1 for i in range(sides.n))
        return (1,) * sides.n
    raise TypeError(f"expected Signature or Classification, got {type(how).__name__}")


def _signed_area(vertices) -> float:
    n = len(vertices)
    acc = math.fsum(
        vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1]
        for i in range(n)
    )
    return 0.5 * acc


def reconstruct_vertices(
    sides: SidesLike, r: float, how: Signature | Classification | None = None
) -> PolygonReconstruction:
    """Walk the circle from angle 0, stepping ``sign_k * alpha_k`` per side.

    For a convex PNCI polygon the longest side is walked backwards, which
    gives a counter-clockwise simple polygon.
    """
    sides = as_sides(sides)
    signs = _signs_for(sides, how)
    theta = 0.0
    angles = [0.0]
    for s, l in zip(signs, sides):
        theta += s * central_angle(l, r)
        angles.append(theta)
    pts = [(r * math.cos(t), r * math.sin(t)) for t in angles]
    verts = tuple(pts[:-1])
    end = pts[-1]
    closure = math.hypot(end[0] - verts[0][0], end[1] - verts[0][1])
    errs = tuple(
        abs(math.hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]) - l)
        for i, l in enumerate(sides)
    )
    return PolygonReconstruction(
        vertices=verts,
        cumulative_angles=tuple(angles[:-1]),
        closure_error=closure,
        side_errors=errs,
        signed_area=_signed_area(verts),
        r=r,
    )


def shoelace_area(rec: PolygonReconstruction) -> float:
    if rec.closure_error > 1e-6 * rec.r:
        raise NotClosed(f"closure error {rec.closure_error!r} too large to measure area")
    return abs(_signed_area(rec.vertices))


def render_svg(rec: PolygonReconstruction, r: float | None = None) -> str:
    """Standalone SVG with the circumcircle, the polygon path and vertex ticks."""
    r = rec.r if r is None else r
    half = VIEW / 2.0
    scale = VIEW * (1.0 - 2.0 * MARGIN) / (2.0 * r) if r > 0 else 1.0

    def xy(p):
        # SVG y axis points down
        return half + scale * p[0], half - scale * p[1]

    def num(x):
        return f"{x:.6f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{VIEW:.0f}" '
        f'height="{VIEW:.0f}" viewBox="0 0 {VIEW:.0f} {VIEW:.0f}">',
        f'<circle cx="{num(half)}" cy="{num(half)}" r="{num(scale * r)}" '
        'fill="none" stroke="#888888" stroke-width="1.000000"/>',
    ]
    if rec.vertices:
        pts = [xy(p) for p in rec.vertices]
        d = "M " + " L ".join(f"{num(x)} {num(y)}" for x, y in pts) + " Z"
        out.append(f'<path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.500000"/>')
        tick = 4.0
        for x, y in pts:
            out.append(
                f'<line x1="{num(x - tick)}" y1="{num(y)}" x2="{num(x + tick)}" y2="{num(y)}" '
                'stroke="#c0392b" stroke-width="1.000000"/>'
            )
            out.append(
                f'<line x1="{num(x)}" y1="{num(y - tick)}" x2="{num(x)}" y2="{num(y + tick)}" '
                'stroke="#c0392b" stroke-width="1.000000"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
