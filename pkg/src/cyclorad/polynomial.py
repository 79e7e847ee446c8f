"""Exact radius polynomials.

Symbolic route to the radius: expand the product of the unit factors
``c_k + i s_k`` (``c_k = 1 - l_k^2/(2r^2)``, ``s_k = sqrt(1 - c_k^2)``), take
the real part, then square away the radicals until a polynomial in ``r^2``
with integer coefficients remains.  Squaring only ever adds roots, so the
geometric radius is always among them; the extra roots belong to other
sign patterns (crossed traversals).

Regular polygons get the Chebyshev shortcut ``T_n(c) - 1`` whose factors are
the minimal polynomials of ``cos(2 pi / d)``.

All arithmetic is on Python integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegreeOverflow, ValidationError

MAX_ELIMINATION_SIDES = 6

Poly = list  # ascending integer (or Fraction) coefficients


# -- dense polynomial helpers -------------------------------------------------

def ptrim(p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return ptrim(out)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, [-x for x in b])


def pscale(a: Poly, k) -> Poly:
    return ptrim([k * x for x in a])


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out)


def ppow(a: Poly, k: int) -> Poly:
    out = [1]
    for _ in range(k):
        out = pmul(out, a)
    return out


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Polynomial long division over the rationals."""
    a = [Fraction(x) for x in ptrim(a)]
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        k = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = k
        for i, y in enumerate(b):
            a[shift + i] -= k * y
        a = ptrim(a)
    return ptrim(q), a


def peval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def content(p: Iterable[int]) -> int:
    return reduce(math.gcd, (int(x) for x in p), 0)


def primitive(p: Poly) -> Poly:
    """Integer multiple of ``p`` with coprime integer coefficients."""
    p = ptrim(p)
    if not p:
        return []
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(x).denominator for x in p), 1)
    ints = [int(Fraction(x) * den) for x in p]
    g = content(ints)
    return [x // g for x in ints]


# -- result types -------------------------------------------------------------

@dataclass(frozen=True)
class RadiusPolynomial:
    """Exact polynomial in ``r^2``: ``sum(coefficients[j] * (r^2)**j)``."""

    coefficients: tuple[Fraction, ...]
    scale_note: str = ""
    label: str = ""

    def __post_init__(self):
        if not self.coefficients or self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        """Degree in ``r^2``."""
        return len(self.coefficients) - 1

    def __call__(self, r2):
        return peval(self.coefficients, r2)

    def at_radius(self, r) -> Fraction:
        """Exact value at the rational ``r`` (floats are converted exactly)."""
        r = Fraction(r)
        return self(r * r)

    def relative_residual(self, r) -> float:
        """``|p(r^2)| / sum(|c_j| r^(2j))`` evaluated exactly."""
        x = Fraction(r) ** 2
        val = abs(self(x))
        scale = peval([abs(c) for c in self.coefficients], x)
        return float(val / scale) if scale else float(val)

    def sign_changes_between(self, r_lo, r_hi) -> bool:
        a = self.at_radius(r_lo)
        b = self.at_radius(r_hi)
        return a == 0 or b == 0 or (a > 0) != (b > 0)

    def to_dict(self) -> dict:
        d = {"variable": "r2", "coefficients": [str(c) for c in self.coefficients]}
        if self.label:
            d["label"] = self.label
        if self.scale_note:
            d["scale_note"] = self.scale_note
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RadiusPolynomial":
        return cls(
            tuple(Fraction(c) for c in d["coefficients"]),
            d.get("scale_note", ""),
            d.get("label", ""),
        )


@dataclass(frozen=True)
class FactoredPolynomial:
    """``constant * prod(factor ** multiplicity)``."""

    factors: tuple[tuple[RadiusPolynomial, int], ...]
    constant: Fraction = Fraction(1)
    scale_note: str = ""

    def expand(self) -> RadiusPolynomial:
        acc: Poly = [self.constant]
        for f, m in self.factors:
            acc = pmul(acc, ppow(list(f.coefficients), m))
        return RadiusPolynomial(tuple(Fraction(c) for c in acc), self.scale_note)

    def to_dict(self) -> dict:
        full = self.expand()
        return {
            "variable": "r2",
            "coefficients": [str(c) for c in full.coefficients],
            "constant": str(self.constant),
            "factors": [
                {**f.to_dict(), "multiplicity": m} for f, m in self.factors
            ],
        }


# -- symbolic expansion -------------------------------------------------------

@dataclass(frozen=True)
class MultilinearForm:
    """Sum of terms ``coef * prod_{k in S} s_k * prod_{k in T} c_k``.

    ``terms`` maps the radical set ``S`` to ``{T: coef}``.  Each ``s_k`` and
    ``c_k`` occurs at most once per term.  ``sides`` are the exact lengths the
    symbols stand for.
    """

    sides: tuple[Fraction, ...]
    terms: dict = field(default_factory=dict)

    def items(self):
        for s_set, cs in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
            for c_set, coef in sorted(cs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
                if coef:
                    yield s_set, c_set, coef

    def monomials(self) -> dict:
        """Expand every ``c_k`` as ``1 - w_k`` with ``w_k = l_k^2 / (2 r^2)``.

        Returns ``{(S, U): coef}`` for the term ``coef * prod_S s_k * prod_U w_k``
        with the side lengths kept symbolic, i.e. the shape a CAS would print.
        """
        out: dict = {}
        for s_set, c_set, coef in self.items():
            c_list = sorted(c_set)
            for k in range(len(c_list) + 1):
                for u in combinations(c_list, k):
                    key = (s_set, frozenset(u))
                    out[key] = out.get(key, 0) + coef * (-1) ** k
        return {k: v for k, v in out.items() if v}

    def term_count(self) -> int:
        return len(self.monomials())


def _exact(x) -> Fraction:
    # floats are read through their shortest repr: 0.1 -> 1/10, not the binary value
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def expand_product(sides: Sequence) -> tuple[MultilinearForm, MultilinearForm]:
    """Real and imaginary parts of ``prod_k (c_k + i s_k)``."""
    ls = tuple(_exact(l) for l in sides)
    n = len(ls)
    re: dict = {}
    im: dict = {}
    idx = range(n)
    for k in range(n + 1):
        for s_set in combinations(idx, k):
            rest = frozenset(i for i in idx if i not in s_set)
            # i^k: real when k even, imaginary when odd
            sign = (-1) ** (k // 2)
            target = re if k % 2 == 0 else im
            target[frozenset(s_set)] = {rest: Fraction(sign)}
    return MultilinearForm(ls, re), MultilinearForm(ls, im)


def closing_equation(sides: Sequence) -> MultilinearForm:
    """``Re(prod_{k<n} (c_k + i s_k)) - c_n`` with the longest side moved last.

    It vanishes when ``cos(sum_{k<n} alpha_k) = cos(alpha_n)``, which covers
    both the centre-inside case (``sum = 2 pi - alpha_n``) and the
    centre-outside case (``sum = alpha_n``).  The longest side has to be the
    odd one out for the latter, hence the reordering.
    """
    ls = [_exact(l) for l in sides]
    if len(ls) < 2:
        raise ValidationError("need at least two sides")
    k = max(range(len(ls)), key=lambda i: (ls[i], i))
    ls.append(ls.pop(k))
    re, _ = expand_product(ls[:-1])
    n = len(ls)
    terms = {s: dict(cs) for s, cs in re.terms.items()}
    empty = terms.setdefault(frozenset(), {})
    last = frozenset({n - 1})
    empty[last] = empty.get(last, 0) - 1
    return MultilinearForm(tuple(ls), terms)


# -- radical elimination -------------------------------------------------------

def _alg_mul(a: dict, b: dict, radicands: dict) -> dict:
    """Multiply elements of Z[X][sqrt(u_1), ..., sqrt(u_m)]."""
    out: dict = {}
    for ka, pa in a.items():
        for kb, pb in b.items():
            p = pmul(pa, pb)
            for c in ka & kb:
                p = pmul(p, radicands[c])
            key = ka ^ kb
            out[key] = padd(out.get(key, []), p)
    return {k: v for k, v in out.items() if v}


def eliminate_radicals(form: MultilinearForm) -> RadiusPolynomial:
    """Square away every ``s_k`` and return the primitive polynomial in ``r^2``."""
    n = len(form.sides)
    if n > MAX_ELIMINATION_SIDES:
        raise DegreeOverflow(
            f"{n} sides: exact elimination is limited to {MAX_ELIMINATION_SIDES}; use the numeric solver"
        )
    if any(l <= 0 for l in form.sides):
        raise ValidationError("sides must be positive")
    # integer sides L = D * l; X = (D r)^2
    D = reduce(lambda a, b: a * b // math.gcd(a, b), (l.denominator for l in form.sides), 1)
    L = [int(l * D) for l in form.sides]
    two_x = [0, 2]
    # sides of equal length share one radicand u = 4X - L^2
    classes: dict[int, int] = {}
    cls_of = [classes.setdefault(v, len(classes)) for v in L]
    radicands = {c: [-v * v, 4] for v, c in classes.items()}

    terms = list(form.items())
    if not terms:
        raise ValidationError("empty form")
    N = max(len(s) + len(t) for s, t, _ in terms)
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for *_, c in terms), 1)

    # c_k = (2X - L_k^2)/(2X), s_k = L_k sqrt(u_k)/(2X); multiply through by (2X)^N
    elem: dict = {}
    for s_set, c_set, coef in terms:
        p = [int(Fraction(coef) * den)]
        for k in c_set:
            p = pmul(p, [-L[k] * L[k], 2])
        for k in s_set:
            p = pscale(p, L[k])
        p = pmul(p, ppow(two_x, N - len(s_set) - len(c_set)))
        key: frozenset = frozenset()
        for k in s_set:
            c = cls_of[k]
            if c in key:
                p = pmul(p, radicands[c])
                key = key - {c}
            else:
                key = key | {c}
        elem[key] = padd(elem.get(key, []), p)
    elem = {k: v for k, v in elem.items() if v}

    for c in sorted(radicands, reverse=True):
        P = {k: v for k, v in elem.items() if c not in k}
        Q = {k - {c}: v for k, v in elem.items() if c in k}
        if not Q:
            continue
        PP = _alg_mul(P, P, radicands)
        QQ = _alg_mul(Q, Q, radicands)
        QQu = {k: pmul(v, radicands[c]) for k, v in QQ.items()}
        keys = set(PP) | set(QQu)
        elem = {k: psub(PP.get(k, []), QQu.get(k, [])) for k in keys}
        elem = {k: v for k, v in elem.items() if v}

    if set(elem) - {frozenset()}:
        raise AssertionError("radicals left after elimination")
    poly = elem.get(frozenset(), [])
    if not poly:
        raise ValidationError("the radius equation vanishes identically")
    # drop the X = 0 factor (r = 0 is never a radius)
    while poly and poly[0] == 0:
        poly = poly[1:]
    poly = primitive(poly)
    # back to x = r^2: coefficient of x^j picks up D^(2j)
    poly = primitive([c * D ** (2 * j) for j, c in enumerate(poly)])
    poly = _sign_normalize(poly)
    note = "sides " + ", ".join(str(l) for l in form.sides) + "; variable r^2"
    return RadiusPolynomial(tuple(Fraction(c) for c in poly), note)


def radius_polynomial(sides: Sequence) -> RadiusPolynomial:
    return eliminate_radicals(closing_equation(sides))


def _sign_normalize(p: Poly) -> Poly:
    lowest = next(x for x in p if x != 0)
    return [-x for x in p] if lowest < 0 else list(p)


# -- Chebyshev / cyclotomic route for regular polygons ------------------------

@lru_cache(maxsize=None)
def chebyshev_t(n: int) -> tuple[int, ...]:
    """Integer coefficients of ``T_n`` via ``T_{k+1} = 2c T_k - T_{k-1}``."""
    a, b = [1], [0, 1]
    if n == 0:
        return tuple(a)
    for _ in range(n - 1):
        a, b = b, psub(pmul([0, 2], b), a)
    return tuple(b)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            q, rem = pdivmod(num, list(cyclotomic(e)))
            assert not rem
            num = [int(x) for x in q]
    return tuple(num)


@lru_cache(maxsize=None)
def cos_minimal_polynomial(d: int) -> tuple[int, ...]:
    """Primitive integer minimal polynomial of ``cos(2 pi / d)`` in ``c``."""
    if d == 1:
        return (-1, 1)
    if d == 2:
        return (1, 1)
    phi = list(cyclotomic(d))
    m = (len(phi) - 1) // 2
    # Phi_d(z) / z^m = a_m + sum_j a_{m+j} (z^j + z^-j), and z^j + z^-j = 2 T_j(c)
    acc: Poly = [phi[m]]
    for j in range(1, m + 1):
        acc = padd(acc, pscale(list(chebyshev_t(j)), 2 * phi[m + j]))
    p = primitive(acc)
    return tuple(p if p[-1] > 0 else [-x for x in p])


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _factor_in_c(target: Poly, candidates: Iterable[int]):
    rest = [Fraction(x) for x in target]
    found = []
    for d in candidates:
        f = list(cos_minimal_polynomial(d))
        m = 0
        while True:
            q, r = pdivmod(rest, f)
            if r:
                break
            rest, m = q, m + 1
        if m:
            found.append((d, m))
    if len(ptrim(rest)) != 1:
        raise AssertionError("Chebyshev factorization left a non-constant cofactor")
    return found, rest[0]


def _substitute_c(f: Poly, l: Fraction) -> tuple[list[int], Poly]:
    """``(2 r^2)^m f(1 - l^2/(2 r^2))`` as homogeneous coefficients in (l^2, r^2).

    Returns the primitive homogeneous coefficients ``h`` (``h[j]`` multiplies
    ``l^(2(m-j)) r^(2j)``) and the concrete polynomial in ``r^2`` for this ``l``.
    """
    m = len(f) - 1
    # with l = 1: c = (2x - 1)/(2x)
    acc: Poly = []
    for j, fj in enumerate(f):
        acc = padd(acc, pscale(pmul(ppow([-1, 2], j), ppow([0, 2], m - j)), fj))
    h = [acc[j] if j < len(acc) else 0 for j in range(m + 1)]
    g = content(h)
    h = [x // g for x in h]
    h = _sign_normalize(h)
    l2 = l * l
    concrete = ptrim([Fraction(h[j]) * l2 ** (m - j) for j in range(m + 1)])
    return h, concrete


def regular_polynomial(n: int, l=1, form: str = "full") -> FactoredPolynomial:
    """Factored radius polynomial of the regular n-gon with side ``l``.

    ``form="full"`` factors ``T_n(c) - 1`` (the n-th power of the unit factor
    equals one); its roots are every regular {n/q}.  ``form="split"`` factors
    ``T_{n-1}(c) - c`` (the first n-1 factors match the conjugate of the last),
    which is what expanding the closing equation produces and which also
    carries the {(n-2)/q} radii.
    """
    if n < 3:
        raise ValidationError(f"n must be >= 3, got {n}")
    l = _exact(l)
    if l <= 0:
        raise ValidationError("side must be positive")
    if form == "full":
        target = psub(list(chebyshev_t(n)), [1])
        cands = _divisors(n)
    elif form == "split":
        target = psub(list(chebyshev_t(n - 1)), [0, 1])
        cands = sorted(set(_divisors(n)) | set(_divisors(n - 2)))
    else:
        raise ValidationError(f"unknown form {form!r}")
    found, const = _factor_in_c(target, cands)
    factors = []
    for d, mult in found:
        h, concrete = _substitute_c(list(cos_minimal_polynomial(d)), l)
        label = "c - 1" if d == 1 else f"cos(2pi/{d})"
        factors.append((RadiusPolynomial(tuple(concrete), f"homogeneous {h}", label), mult))
    note = f"regular {n}-gon, side {l}, form {form}"
    return FactoredPolynomial(tuple(factors), Fraction(1), note)
