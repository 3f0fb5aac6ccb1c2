"""Resultants by the subresultant pseudo-remainder sequence.

The sequence is computed over an abstract coefficient ring so the same code
serves three cases: integer coefficients, dense univariate integer
polynomials (the hot path for elimination in two variables), and general
:class:`MultiPoly` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomials import (
    MultiPoly,
    ipoly_divexact,
    ipoly_mul,
    ipoly_sub,
    ipoly_trim,
)


class _IntRing:
    zero = 0
    one = 1

    @staticmethod
    def is_zero(x) -> bool:
        return x == 0

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def sub(x, y):
        return x - y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def divexact(x, y):
        q, r = divmod(x, y)
        if r:
            raise ArithmeticError("inexact division in the integers")
        return q


class _DenseIntPolyRing:
    """Z[t] with elements stored as trimmed ``list[int]``."""

    zero: list = []
    one = [1]

    @staticmethod
    def is_zero(x) -> bool:
        return not x

    @staticmethod
    def mul(x, y):
        return ipoly_mul(x, y)

    @staticmethod
    def sub(x, y):
        return ipoly_sub(x, y)

    @staticmethod
    def neg(x):
        return [-c for c in x]

    @staticmethod
    def divexact(x, y):
        return ipoly_divexact(x, y)


class _MultiPolyRing:
    def __init__(self, arity: int):
        self.zero = MultiPoly({}, arity)
        self.one = MultiPoly.const(1, arity)

    @staticmethod
    def is_zero(x) -> bool:
        return x.is_zero()

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def sub(x, y):
        return x - y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def divexact(x, y):
        return x.divexact(y)


INT_RING = _IntRing()
DENSE_RING = _DenseIntPolyRing()


def _pow(ring, x, n: int):
    result = ring.one
    while n:
        if n & 1:
            result = ring.mul(result, x)
        n >>= 1
        if n:
            x = ring.mul(x, x)
    return result


def _trim(ring, p: list) -> list:
    while p and ring.is_zero(p[-1]):
        p.pop()
    return p


def _prem(ring, a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(da-db+1) a mod b over the ring."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [ring.mul(lb, c) for c in r]
        for i in range(db + 1):
            r[shift + i] = ring.sub(r[shift + i], ring.mul(lr, b[i]))
        r.pop()
        _trim(ring, r)
        e -= 1
    if e > 0 and r:
        f = _pow(ring, lb, e)
        r = [ring.mul(f, c) for c in r]
    return r


@dataclass
class PRSResult:
    """Outcome of the subresultant sequence.

    ``chain`` holds the polynomials produced after the two inputs (each a
    coefficient list, lowest degree first); each is a scalar multiple (by +-1)
    of the subresultant of its degree, which is what back-substitution needs.
    """

    resultant: object
    chain: list

    def of_degree(self, d: int):
        for p in self.chain:
            if len(p) - 1 == d:
                return p
        return None


def subresultant_prs(a: list, b: list, ring=DENSE_RING) -> PRSResult:
    """Resultant of two polynomials given as coefficient lists over ``ring``."""
    a = _trim(ring, list(a))
    b = _trim(ring, list(b))
    if not a or not b:
        return PRSResult(ring.zero, [])
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -s
    if len(b) == 1:
        res = _pow(ring, b[0], len(a) - 1)
        return PRSResult(res if s == 1 else ring.neg(res), [])
    g = ring.one
    h = ring.one
    chain = []
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _prem(ring, a, b)
        a = b
        if not r:
            return PRSResult(ring.zero, chain)
        den = ring.mul(g, _pow(ring, h, delta))
        b = [ring.divexact(c, den) for c in r]
        chain.append(b)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = ring.divexact(_pow(ring, g, delta), _pow(ring, h, delta - 1))
        if len(b) == 1:
            da = len(a) - 1
            lb = b[0]
            if da == 1:
                res = lb
            else:
                res = ring.divexact(_pow(ring, lb, da), _pow(ring, h, da - 1))
            return PRSResult(res if s == 1 else ring.neg(res), chain)


def resultant_dense(a: list[list[int]], b: list[list[int]]) -> PRSResult:
    """Resultant in Z[t][x]; inputs are lists (by power of x) of dense Z[t] lists."""
    a = [ipoly_trim(list(c)) for c in a]
    b = [ipoly_trim(list(c)) for c in b]
    return subresultant_prs(a, b, DENSE_RING)


def _integer_multipoly(p: MultiPoly) -> tuple[MultiPoly, int]:
    d = p.integer_scale()
    if d == 1:
        return p, 1
    return p.map_coeffs(lambda c: int(c * d)), d


def resultant(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to variable ``var``.

    The result has the same arity as the inputs and does not involve ``var``.
    """
    if p.arity != q.arity:
        raise ValueError("arity mismatch")
    dp, dq = p.degree(var), q.degree(var)
    if dp <= 0 or dq <= 0:
        raise ValueError("nothing to eliminate")
    arity = p.arity
    p_int, sp = _integer_multipoly(p)
    q_int, sq = _integer_multipoly(q)
    # Res(sp*p, sq*q) = sp^dq * sq^dp * Res(p, q)
    scale = Fraction(1, sp**dq * sq**dp)
    others = (p.variables() | q.variables()) - {var}
    pc = p_int.coeffs_in(var)
    qc = q_int.coeffs_in(var)
    if not others:
        res = subresultant_prs([c.coefficient((0,) * arity) for c in pc],
                               [c.coefficient((0,) * arity) for c in qc], INT_RING).resultant
        return MultiPoly.const(res * scale, arity)
    if len(others) == 1:
        (t,) = others
        pd = [list(c.to_unipoly(t).coeffs) if c else [] for c in pc]
        qd = [list(c.to_unipoly(t).coeffs) if c else [] for c in qc]
        res = resultant_dense(pd, qd).resultant
        out = {}
        for k, c in enumerate(res):
            if c:
                e = [0] * arity
                e[t] = k
                out[tuple(e)] = c * scale
        return MultiPoly(out, arity)
    res = subresultant_prs(pc, qc, _MultiPolyRing(arity)).resultant
    return res * scale
