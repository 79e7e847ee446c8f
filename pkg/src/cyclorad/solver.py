"""Radius root-finding for convex and crossed cyclic polygons.

Everything here solves the angle form of the closing condition,
``sum(sign_k * alpha_k(r)) == 2 pi E``, rather than an expanded polynomial:
it is one-dimensional, well conditioned and independent of ``n``.
Roots are bracketed first and then polished with Newton steps that are
never allowed to leave the bracket.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath

from .core import (
    RESIDUAL_TOL,
    TWO_PI,
    Classification,
    Kind,
    Signature,
    SidesLike,
    SideList,
    angle_derivative,
    as_sides,
    classify_a_priori,
    product_residual,
)
from .errors import InvalidSignature, NoConvergence, NoQualifyingRoot

log = logging.getLogger(__name__)

BRANCH_PCI = "ConvexPCI"
BRANCH_PNCI = "ConvexPNCI"
BRANCH_SIGNED = "Signed"

MAX_DOUBLINGS = 60
SCAN_CELLS = 1024
DEDUP_REL = 1e-9
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class RadiusSolution:
    r: float
    classification: Classification
    branch: str
    residual: float
    equation_value: float
    winding: int = 1
    signature: Signature | None = None

    def to_dict(self) -> dict:
        d = {
            "r": self.r,
            "branch": self.branch,
            "winding": self.winding,
            "classification": self.classification.to_dict(),
            "residual": self.residual,
            "equation_value": self.equation_value,
        }
        if self.signature is not None:
            d["signature"] = self.signature.to_dict()
        return d


@dataclass
class RootSet:
    roots: list[RadiusSolution] = field(default_factory=list)
    rejected: list[tuple[float, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    multiple_qualifying: bool = False

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def radii(self) -> list[float]:
        return [s.r for s in self.roots]

    def to_dict(self) -> dict:
        return {
            "roots": [s.to_dict() for s in self.roots],
            "rejected": [{"r": r, "reason": why} for r, why in self.rejected],
            "notes": list(self.notes),
            "multiple_qualifying": self.multiple_qualifying,
        }


def _angles(sides: SideList, r: float) -> list[float]:
    return [2.0 * math.asin(min(l / (2.0 * r), 1.0)) for l in sides]


def _signed_equation(sides: SideList, signs: Sequence[int], target: float):
    def f(r: float) -> float:
        return math.fsum(s * a for s, a in zip(signs, _angles(sides, r))) - target

    def df(r: float) -> float:
        return math.fsum(s * angle_derivative(l, r) for s, l in zip(signs, sides))

    return f, df


def _pnci_signs(sides: SideList) -> tuple[int, ...]:
    k = sides.longest_index
    return tuple(-1 if i == k else 1 for i in range(sides.n))


def polish_root(
    f: Callable[[float], float],
    df: Callable[[float], float],
    a: float,
    b: float,
    fa: float | None = None,
    fb: float | None = None,
    maxiter: int = 200,
) -> float:
    """Safeguarded Newton iteration on a sign-changing bracket ``[a, b]``.

    Newton steps that leave the current bracket (or whose derivative is not
    finite) are replaced by bisection, so convergence is guaranteed.
    """
    if a > b:
        a, b = b, a
        fa, fb = fb, fa
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoConvergence(f"no sign change on [{a!r}, {b!r}]")
    x = 0.5 * (a + b)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        d = df(x)
        step = fx / d if (d != 0.0 and math.isfinite(d)) else math.nan
        xn = x - step
        if not (a < xn < b):
            xn = 0.5 * (a + b)
        if abs(xn - x) <= 2.0 * _EPS * abs(xn) or b - a <= 4.0 * _EPS * abs(b):
            # settle on whichever candidate has the smallest residual
            cands = [(abs(f(xn)), xn), (abs(fa), a), (abs(fb), b)]
            return min(cands)[1]
        x = xn
    raise NoConvergence(f"root polishing did not converge on [{a!r}, {b!r}]")


def refine_root(sides: SideList, signs: Sequence[int], target_turns: int, r: float) -> float:
    """One extended-precision Newton step so the float radius is correctly rounded.

    Double-precision ``asin`` rounding limits the plain iteration to a couple
    of ulps; this removes that last error.
    """
    if r <= sides.longest / 2.0:
        return r
    with mpmath.workdps(40):
        x = mpmath.mpf(r)
        f = mpmath.fsum(s * 2 * mpmath.asin(mpmath.mpf(l) / (2 * x)) for s, l in zip(signs, sides))
        f -= 2 * mpmath.pi * target_turns
        d = mpmath.fsum(
            s * -2 * mpmath.mpf(l) / (x * mpmath.sqrt(4 * x * x - mpmath.mpf(l) ** 2))
            for s, l in zip(signs, sides)
        )
        if d == 0:
            return r
        xn = x - f / d
    out = float(xn)
    # guard: the correction is tiny near a genuine root
    return out if abs(out - r) <= 1e-9 * r and out >= sides.longest / 2.0 else r


def _expand_bracket(f, lo: float, start: float, flo: float) -> tuple[float, float]:
    """Double ``hi`` from ``start`` until ``f(hi)`` has the opposite sign to ``flo``."""
    hi = max(start, lo * (1.0 + 1e-12))
    for _ in range(MAX_DOUBLINGS):
        v = f(hi)
        if (v > 0) != (flo > 0) and v != 0.0:
            return hi, v
        hi *= 2.0
    raise NoConvergence("could not bracket the radius")


def _solution(
    sides: SideList,
    r: float,
    cls: Classification,
    branch: str,
    signs: Sequence[int],
    winding: int,
    sig: Signature | None,
) -> RadiusSolution:
    f, _ = _signed_equation(sides, signs, TWO_PI * winding)
    res_sig = Signature(tuple(signs), max(winding, 1))
    return RadiusSolution(
        r=r,
        classification=cls,
        branch=branch,
        residual=abs(product_residual(sides, res_sig, r)),
        equation_value=f(r),
        winding=winding,
        signature=sig,
    )


def solve_radius_convex(sides: SidesLike, tol: float = RESIDUAL_TOL) -> RadiusSolution:
    """Circumradius of the convex cyclic polygon with the given sides."""
    sides = as_sides(sides)
    cls = classify_a_priori(sides)
    lo = sides.longest / 2.0
    allplus = (1,) * sides.n
    if cls.kind is Kind.CENTER_ON_SIDE:
        return _solution(sides, lo, cls, BRANCH_PCI, allplus, 1, None)
    if cls.kind is Kind.PCI:
        signs, winding, branch = allplus, 1, BRANCH_PCI
    else:
        signs, winding, branch = _pnci_signs(sides), 0, BRANCH_PNCI
    f, df = _signed_equation(sides, signs, TWO_PI * winding)
    flo = f(lo)
    hi, fhi = _expand_bracket(f, lo, sides.perimeter / 2.0, flo)
    r = polish_root(f, df, lo, hi, flo, fhi)
    r = refine_root(sides, signs, winding, r)
    sol = _solution(sides, r, cls, branch, signs, winding, None)
    if not abs(sol.equation_value) <= tol:
        raise NoConvergence(f"residual {sol.equation_value!r} above tolerance at r={r!r}")
    return sol


def _repeated_vertex(sides: SideList, signs: Sequence[int], r: float) -> bool:
    """True when two vertices of the traversal coincide (e.g. {6/2}, {4/2})."""
    theta = 0.0
    pts = []
    for s, a in zip(signs, _angles(sides, r)):
        pts.append(theta % TWO_PI)
        theta += s * a
    pts.sort()
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(TWO_PI - pts[-1] + pts[0])
    return min(gaps) <= 1e-7


def _scan_brackets(f, lo: float, hi: float, cells: int = SCAN_CELLS, lmax: float = 1.0):
    """Sign-change brackets of ``f`` on ``[lo, hi]``.

    The grid is uniform in ``phi = asin(lmax / 2r)``, which clusters points
    near ``r = lmax/2`` where the chord angles have unbounded slope.  Cells
    with a large jump in ``f`` are subdivided further.
    """
    phi_hi = math.pi / 2.0
    phi_lo = math.asin(min(lmax / (2.0 * hi), 1.0))

    def r_of(phi):
        return lo if phi >= phi_hi else lmax / (2.0 * math.sin(phi))

    def cell(pa, pb, ra, rb, fa, fb, depth):
        if abs(fb - fa) > math.pi / 16 and depth < 4:
            k = 8
            ps = [pa + (pb - pa) * j / k for j in range(k + 1)]
            rs = [ra] + [r_of(p) for p in ps[1:-1]] + [rb]
            fs = [fa] + [f(x) for x in rs[1:-1]] + [fb]
            for j in range(k):
                yield from cell(ps[j], ps[j + 1], rs[j], rs[j + 1], fs[j], fs[j + 1], depth + 1)
        elif (fa > 0) != (fb > 0) and fa != 0.0:
            yield ra, rb, fa, fb

    ps = [phi_lo + (phi_hi - phi_lo) * j / cells for j in range(cells + 1)]
    rs = [hi] + [r_of(p) for p in ps[1:-1]] + [lo]
    fs = [f(x) for x in rs]
    for j in range(cells):
        yield from cell(ps[j], ps[j + 1], rs[j], rs[j + 1], fs[j], fs[j + 1], 0)


def _dedup(roots: list[RadiusSolution]) -> list[RadiusSolution]:
    out: list[RadiusSolution] = []
    for s in sorted(roots, key=lambda s: -s.r):
        if out and abs(out[-1].r - s.r) <= DEDUP_REL * max(out[-1].r, s.r):
            if abs(s.equation_value) < abs(out[-1].equation_value):
                out[-1] = s
            continue
        out.append(s)
    return out


def _upper_radius(sides: SideList, winding: int) -> float | None:
    """Radius beyond which ``sum(alpha) < 2 pi E``, so no signed root can exist."""
    f, df = _signed_equation(sides, (1,) * sides.n, TWO_PI * winding)
    lo = sides.longest / 2.0
    flo = f(lo)
    if flo < 0:
        return None
    if flo == 0:
        return lo
    hi, fhi = _expand_bracket(f, lo, sides.perimeter / 2.0, flo)
    return polish_root(f, df, lo, hi, flo, fhi)


def solve_radius_signed(
    sides: SidesLike, sig: Signature, tol: float = RESIDUAL_TOL
) -> RootSet:
    """All radii at which the signed traversal closes with winding ``sig.winding``."""
    sides = as_sides(sides)
    if sig.n != sides.n:
        raise InvalidSignature(f"signature has {sig.n} signs for {sides.n} sides")
    cls = classify_a_priori(sides)
    out = RootSet()
    if not sig.verified:
        out.notes.append("unverified against worked examples")
    lo = sides.longest / 2.0
    f, df = _signed_equation(sides, sig.signs, TWO_PI * sig.winding)
    hi = _upper_radius(sides, sig.winding)
    if hi is None:
        return out
    cands = []
    flo = f(lo)
    if abs(flo) <= tol:
        cands.append(lo)
    # the all-forward root sits exactly on the bound; step past it
    hi = hi * (1.0 + 1e-6)
    for ra, rb, fa, fb in _scan_brackets(f, lo, hi, lmax=sides.longest):
        r = polish_root(f, df, rb, ra, fb, fa)
        cands.append(refine_root(sides, sig.signs, sig.winding, r))
    sols = []
    for r in cands:
        s = _solution(sides, r, cls, BRANCH_SIGNED, sig.signs, sig.winding, sig)
        if not abs(s.equation_value) <= tol:
            out.rejected.append((r, f"angle residual {s.equation_value:.3e} above tolerance"))
        elif _repeated_vertex(sides, sig.signs, r):
            out.rejected.append((r, "degenerate: repeated vertices"))
        else:
            sols.append(s)
    out.roots = _dedup(sols)
    return out


def max_winding(sides: SidesLike) -> int:
    sides = as_sides(sides)
    lo = sides.longest / 2.0
    total = math.fsum(_angles(sides, lo))
    return int(math.floor(total / TWO_PI + 1e-9))


def all_positive_roots(sides: SidesLike, tol: float = RESIDUAL_TOL) -> RootSet:
    """Every radius closing an all-forward traversal, plus the PNCI radius.

    The all-forward angle sum decreases strictly with ``r``, so each winding
    ``E`` contributes at most one root.  The convex polygon is the ``E = 1``
    root (PCI) or the root of the longest-side balance equation (PNCI); the
    larger windings are regular-style stars with equal multiplicities.
    """
    sides = as_sides(sides)
    cls = classify_a_priori(sides)
    out = RootSet()
    lo = sides.longest / 2.0
    allplus = (1,) * sides.n
    for E in range(1, max_winding(sides) + 1):
        f, df = _signed_equation(sides, allplus, TWO_PI * E)
        flo = f(lo)
        if abs(flo) <= tol:
            r = lo
        else:
            hi, fhi = _expand_bracket(f, lo, sides.perimeter / 2.0, flo)
            r = refine_root(sides, allplus, E, polish_root(f, df, lo, hi, flo, fhi))
        if E == 1:
            branch, sig = BRANCH_PCI, None
        else:
            branch, sig = BRANCH_SIGNED, Signature(allplus, E)
        s = _solution(sides, r, cls, branch, allplus, E, sig)
        if not abs(s.equation_value) <= tol:
            out.rejected.append((r, f"angle residual {s.equation_value:.3e} above tolerance"))
        elif _repeated_vertex(sides, allplus, r):
            out.rejected.append((r, "degenerate: repeated vertices"))
        else:
            out.roots.append(s)
    if cls.kind is Kind.PNCI:
        out.roots.append(solve_radius_convex(sides, tol=tol))
    out.roots = _dedup(out.roots)
    return out


def select_convex_root(roots: RootSet, perimeter: float) -> RadiusSolution:
    """Pick the root whose circle is longer than the polygon's perimeter."""
    ok = [s for s in roots.roots if TWO_PI * s.r > perimeter]
    if not ok:
        raise NoQualifyingRoot(f"no root with 2*pi*r > perimeter {perimeter!r}")
    if len(ok) > 1:
        roots.multiple_qualifying = True
        roots.notes.append(f"{len(ok)} roots exceed perimeter/(2 pi); taking the largest")
        log.info("several roots qualify: %s", [s.r for s in ok])
    return max(ok, key=lambda s: s.r)
