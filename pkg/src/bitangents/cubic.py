"""Pointed cubic surfaces and their branch quartics.

A cubic F(x0, x1, x2, x3) = sum a_{ijkl} x0^i x1^j x2^k x3^l with p = [1, 0, 0, 0]
on V(F), T_p V = V(x3) and the line V(x0, x1) on V(F) is written as
F = x0^2 A + x0 B + C with A, B, C forms in (x1, x2, x3) = (y1, y2, y3).
Projection from p is branched over the quartic B^2 - 4AC, the image of the
line is the bitangent V(y1), and the image of the tangent plane is V(y3).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DegenerateError, InputError, NotABitangentError
from .numeric.polynomials import MultiPoly
from .quartic import ProjLine, Quartic
from .qtype import GWClass, _is_same_line, is_bitangent_line, qtype
from .solver import BitangentSet, compute_bitangents

CUBIC_EXPONENTS = tuple(
    e for e in product(range(4), repeat=4) if sum(e) == 3
)
VANISHING = ((3, 0, 0, 0), (2, 1, 0, 0), (2, 0, 1, 0), (0, 0, 3, 0), (0, 0, 2, 1), (0, 0, 1, 2), (0, 0, 0, 3))
FREE = tuple(e for e in sorted(CUBIC_EXPONENTS, reverse=True) if e not in VANISHING)


class PointedCubic:
    """Coefficients a_{ijkl} of a cubic surface in the normal form above."""

    def __init__(self, coeffs: dict):
        a = {}
        for e, c in coeffs.items():
            e = tuple(e)
            if len(e) != 4 or sum(e) != 3 or min(e) < 0:
                raise InputError(f"not a cubic exponent: {e}")
            c = Fraction(c)
            if c:
                a[e] = c
        bad = [e for e in VANISHING if a.get(e, 0) != 0]
        if bad:
            raise InputError(f"coefficients {bad} must vanish")
        if not a:
            raise InputError("zero cubic")
        self.coeffs = a

    def __getitem__(self, e) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def a(self, i: int, j: int, k: int, l: int) -> Fraction:
        return self[(i, j, k, l)]

    def scaled(self, lam) -> "PointedCubic":
        return PointedCubic({e: c * lam for e, c in self.coeffs.items()})

    def __repr__(self) -> str:
        return f"PointedCubic({len(self.coeffs)} terms)"

    @classmethod
    def random(cls, rng: random.Random, bound: int = 5) -> "PointedCubic":
        """Integer coefficients in [-bound, bound] with a2001 and a1020 nonzero."""
        coeffs = {e: rng.randint(-bound, bound) for e in FREE}
        for e in ((2, 0, 0, 1), (1, 0, 2, 0)):
            while coeffs[e] == 0:
                coeffs[e] = rng.randint(-bound, bound)
        return cls(coeffs)


def _form(V: PointedCubic, i: int) -> MultiPoly:
    terms = {e[1:]: c for e, c in V.coeffs.items() if e[0] == i}
    return MultiPoly(terms, 3)


def abc_forms(V: PointedCubic) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    return _form(V, 2), _form(V, 1), _form(V, 0)


def branch_quartic(V: PointedCubic) -> Quartic:
    """The branch quartic f = B^2 - 4AC of projection from p."""
    A, B, C = abc_forms(V)
    return Quartic(B * B - A * C * 4)


@dataclass(frozen=True)
class KWDeterminant:
    value: Fraction
    matrix: tuple

    @property
    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)


def _det(m) -> Fraction:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(sub)
        total += term if j % 2 == 0 else -term
    return total


def kw_type(V: PointedCubic) -> KWDeterminant:
    """Determinant M whose sign is the type of the line V(x0, x1)."""
    b20, b11, b02 = V.a(1, 0, 2, 0), V.a(1, 0, 1, 1), V.a(1, 0, 0, 2)
    c20, c11, c02 = V.a(0, 1, 2, 0), V.a(0, 1, 1, 1), V.a(0, 1, 0, 2)
    z = Fraction(0)
    m = (
        (b20, z, c20, z),
        (b11, b20, c11, c20),
        (b02, b11, c02, c11),
        (z, b02, z, c02),
    )
    return KWDeterminant(_det([list(r) for r in m]), m)


@dataclass(frozen=True)
class QuadraticNumber:
    """x + y*d with d^2 = disc."""

    x: Fraction
    y: Fraction
    disc: Fraction

    def __add__(self, other):
        if isinstance(other, QuadraticNumber):
            return QuadraticNumber(self.x + other.x, self.y + other.y, self.disc)
        return QuadraticNumber(self.x + other, self.y, self.disc)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, QuadraticNumber):
            return QuadraticNumber(self.x * other.x + self.y * other.y * self.disc,
                                   self.x * other.y + self.y * other.x, self.disc)
        return QuadraticNumber(self.x * other, self.y * other, self.disc)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.x, -self.y, self.disc)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.disc


@dataclass(frozen=True)
class BridgeTangency:
    z1: tuple
    z2: tuple
    d2: Fraction

    @property
    def is_hyperflex(self) -> bool:
        return self.d2 == 0


def bridge_tangency(V: PointedCubic) -> BridgeTangency:
    """Tangency points [0, -a1011 +- d, 2 a1020] of V(y1), d^2 = a1011^2 - 4 a1020 a1002."""
    b20, b11, b02 = V.a(1, 0, 2, 0), V.a(1, 0, 1, 1), V.a(1, 0, 0, 2)
    if b20 == 0:
        raise DegenerateError("tangency formula degenerate")
    d2 = b11 * b11 - 4 * b20 * b02
    zero = QuadraticNumber(Fraction(0), Fraction(0), d2)
    z1 = (zero, QuadraticNumber(-b11, Fraction(1), d2), QuadraticNumber(2 * b20, Fraction(0), d2))
    z2 = tuple(c.conjugate() for c in z1)
    return BridgeTangency(z1, z2, d2)


def _eval_quadratic(p: MultiPoly, point) -> QuadraticNumber:
    disc = point[0].disc
    acc = QuadraticNumber(Fraction(0), Fraction(0), disc)
    for e, c in p.terms.items():
        term = QuadraticNumber(Fraction(c), Fraction(0), disc)
        for x, k in zip(point, e):
            for _ in range(k):
                term = term * x
        acc = acc + term
    return acc


@dataclass(frozen=True)
class SametypeResult:
    holds: bool
    lhs: Fraction
    rhs: Fraction


def verify_sametype_identity(V: PointedCubic) -> SametypeResult:
    """Exact check of df/dy1(z1) * df/dy1(z2) = 1024 a2001^2 a1020^4 M."""
    f = branch_quartic(V)
    t = bridge_tangency(V)
    dfy1 = f.poly.partial(0)
    v1 = _eval_quadratic(dfy1, t.z1)
    lhs = v1.norm()  # the value at z2 is the conjugate of the value at z1
    rhs = 1024 * V.a(2, 0, 0, 1) ** 2 * V.a(1, 0, 2, 0) ** 4 * kw_type(V).value
    return SametypeResult(lhs == rhs, lhs, rhs)


def bridge_qtype(V: PointedCubic, bts: BitangentSet | None = None, seed: int = 0) -> GWClass:
    """Qtype of V(y1) relative to V(y3), computed by the qtype module on the branch quartic."""
    f = branch_quartic(V)
    bts = bts if bts is not None else compute_bitangents(f, seed=seed)
    line = ProjLine(1, 0, 0)
    matches = [bt for bt in bts.real() if _is_same_line(bt, line)]
    if len(matches) != 1:
        raise AssertionError("V(y1) not found among the bitangents")
    return qtype(f, matches[0], ProjLine(0, 0, 1))


@dataclass(frozen=True)
class TheoremMainResult:
    gw: GWClass
    passed: bool
    excluded: int


def verify_theorem_main(f: Quartic, L_inf, bts: BitangentSet | None = None, seed: int = 0) -> TheoremMainResult:
    """Sum of the types of the 27 bitangents other than the rational bitangent L_inf.

    Passes iff the class is 15<1> + 12<-1> (rank 27, signature 3).
    """
    line = L_inf if isinstance(L_inf, ProjLine) else ProjLine(*L_inf)
    if not line.exact:
        raise InputError("L_inf must be a rational line")
    if not is_bitangent_line(f, line):
        raise NotABitangentError(f"{line} is not a bitangent")
    bts = bts if bts is not None else compute_bitangents(f, seed=seed)
    matches = [bt for bt in bts.real() if _is_same_line(bt, line)]
    if len(matches) != 1:
        raise AssertionError("L_inf not matched to exactly one computed bitangent")
    skip = matches[0]
    total = GWClass()
    for bt in bts.real():
        if bt is not skip:
            total = total + qtype(f, bt, line)
    total = total + GWClass.hyperbolic(bts.n_complex_pairs)
    return TheoremMainResult(total, total.rank == 27 and total.signature == 3, skip.index)


__all__ = [
    "PointedCubic", "KWDeterminant", "BridgeTangency", "SametypeResult", "TheoremMainResult",
    "QuadraticNumber", "branch_quartic", "abc_forms", "kw_type", "bridge_tangency",
    "verify_sametype_identity", "bridge_qtype", "verify_theorem_main", "CUBIC_EXPONENTS", "VANISHING", "FREE",
]
