"""Certified real root isolation and approximate complex root clusters.

Real roots are isolated exactly with the Descartes rule of signs on dyadic
subintervals (integer Taylor shifts only).  Complex roots are approximated with
Aberth-Ehrlich iteration: a double-precision phase in numpy followed by a
multiprecision polish in mpmath.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
import numpy as np

from .intervals import RInterval
from .polynomials import (
    UniPoly,
    ipoly_deriv,
    ipoly_divexact,
    ipoly_gcd,
    ipoly_primitive,
    ipoly_taylor_shift,
    ipoly_trim,
)

DEFAULT_WIDTH = Fraction(1, 2**20)


class RootFindingError(ArithmeticError):
    pass


def _int_coeffs(p) -> list[int]:
    if isinstance(p, UniPoly):
        return p.integer_form()[0]
    return ipoly_primitive(ipoly_trim(list(p)))


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Factors ``(g_i, i)`` with ``p = c * prod g_i**i``, each g_i square-free and primitive."""
    f = _int_coeffs(p)
    if not f:
        raise ValueError("zero polynomial has no square-free decomposition")
    if len(f) == 1:
        return []
    g = ipoly_gcd(f, ipoly_deriv(f))
    cur = ipoly_divexact(f, g)
    out = []
    i = 1
    while len(cur) > 1:
        nxt = ipoly_gcd(cur, g)
        factor = ipoly_divexact(cur, nxt)
        if len(factor) > 1:
            out.append((UniPoly(ipoly_primitive(factor)), i))
        g = ipoly_divexact(g, nxt)
        cur = nxt
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    f = _int_coeffs(p)
    if len(f) <= 1:
        return UniPoly(f)
    return UniPoly(ipoly_primitive(ipoly_divexact(f, ipoly_gcd(f, ipoly_deriv(f)))))


# ---------------------------------------------------------------------------
# Descartes isolation
# ---------------------------------------------------------------------------

def _sign_variations(cs: list[int]) -> int:
    v = 0
    last = 0
    for c in cs:
        if c:
            if last and (c > 0) != (last > 0):
                v += 1
            last = c
    return v


def _descartes_01(q: list[int]) -> int:
    """Sign variations bounding the number of roots of q in (0, 1)."""
    return _sign_variations(ipoly_taylor_shift(q[::-1], 1))


def _root_bound_exp(f: list[int]) -> int:
    """k with every root satisfying |x| < 2**k (Fujiwara)."""
    n = len(f) - 1
    lead_bits = abs(f[-1]).bit_length() - 1
    k = 0
    for i in range(1, n + 1):
        c = f[n - i]
        if c:
            k = max(k, -((lead_bits - abs(c).bit_length()) // i))
    return k + 1


def _isolate_positive(f: list[int], k: int) -> list[tuple[Fraction, Fraction]]:
    """Roots of square-free f in (0, 2**k) as open dyadic intervals or exact points (lo == hi)."""
    # q(y) = f(2^k y), roots in (0, 1)
    q = [c << (k * i) for i, c in enumerate(f)]
    out = []
    stack = [(q, 0, 0)]  # poly on (c/2^d, (c+1)/2^d) mapped to (0, 1)
    scale = Fraction(2**k)
    while stack:
        poly, c, d = stack.pop()
        v = _descartes_01(poly)
        if v == 0:
            continue
        if v == 1:
            out.append((scale * Fraction(c, 2**d), scale * Fraction(c + 1, 2**d)))
            continue
        m = len(poly) - 1
        left = [a << (m - i) for i, a in enumerate(poly)]
        right = ipoly_taylor_shift(left, 1)
        if right[0] == 0:
            out.append((scale * Fraction(2 * c + 1, 2 ** (d + 1)),) * 2)
            right = right[1:]
        stack.append((right, 2 * c + 1, d + 1))
        stack.append((left, 2 * c, d + 1))
    return out


def _isolate_squarefree(f: list[int]) -> list[tuple[Fraction, Fraction]]:
    roots = []
    if f[0] == 0:
        roots.append((Fraction(0), Fraction(0)))
        f = f[1:]
    if len(f) <= 1:
        return roots
    k = max(_root_bound_exp(f), 0)
    pos = _isolate_positive(f, k)
    fneg = [c if i % 2 == 0 else -c for i, c in enumerate(f)]
    neg = _isolate_positive(fneg, k)
    roots.extend((-hi, -lo) for lo, hi in neg)
    roots.extend(pos)
    roots.sort(key=lambda r: (r[0], r[1]))
    return roots


def _sign_at(f: list[int], x: Fraction) -> int:
    n, d = x.numerator, x.denominator
    acc = f[-1]
    dpow = 1
    for c in reversed(f[:-1]):
        dpow *= d
        acc = acc * n + c * dpow
    return (acc > 0) - (acc < 0)


def _dyadic_prec(x: Fraction) -> int:
    d = x.denominator
    if d & (d - 1):
        raise ValueError("endpoint is not dyadic")
    return d.bit_length() - 1


def _to_interval(lo: Fraction, hi: Fraction) -> RInterval:
    prec = max(_dyadic_prec(lo), _dyadic_prec(hi), 1)
    return RInterval(lo, hi, prec)


def _inner_sign(f: list[int], lo: Fraction) -> int:
    """Sign of f immediately to the right of lo (f square-free)."""
    s = _sign_at(f, lo)
    if s:
        return s
    return _sign_at(ipoly_deriv(f), lo)


def _refine_bracket(f: list[int], lo: Fraction, hi: Fraction, target: Fraction,
                    slo: int | None = None) -> tuple[Fraction, Fraction]:
    """Shrink an open isolating interval (lo, hi) to width <= target.

    On return neither endpoint is a root unless the interval collapsed to an
    exact rational root (lo == hi).
    """
    if lo == hi:
        return lo, hi
    if slo is None:
        slo = _inner_sign(f, lo)
    df = ipoly_deriv(f)
    newton = len(f) > 2
    fails = 0
    while hi - lo > target or _sign_at(f, lo) == 0 or _sign_at(f, hi) == 0:
        w = hi - lo
        if newton and fails < 2:
            proposal = _newton_bracket(f, df, lo, hi, max(min(w * w, w / 4), target / 4))
            if proposal is not None:
                a, b = proposal
                sa, sb = _sign_at(f, a), _sign_at(f, b)
                if sa == 0:
                    return a, a
                if sb == 0:
                    return b, b
                if sa != sb:
                    lo, hi, slo = a, b, sa
                    fails = 0
                    continue
            fails += 1
        else:
            fails = (fails + 1) % 4
        m = (lo + hi) / 2
        sm = _sign_at(f, m)
        if sm == 0:
            return m, m
        if sm == slo:
            lo = m
        else:
            hi = m
    return lo, hi


def _scaled_eval(f: list[int], num: int, k: int) -> int:
    """2^(k*deg f) * f(num / 2^k) as an integer."""
    acc = f[-1]
    for i, c in enumerate(reversed(f[:-1]), 1):
        acc = acc * num + (c << (k * i))
    return acc


def _newton_bracket(f: list[int], df: list[int], lo: Fraction, hi: Fraction, eps: Fraction):
    """Dyadic bracket of half-width ~eps around the Newton step from the midpoint, or None."""
    m = (lo + hi) / 2
    k = m.denominator.bit_length() - 1
    num = m.numerator
    n = len(f) - 1
    fm = _scaled_eval(f, num, k)          # f(m) * 2^(k n)
    dm = _scaled_eval(df, num, k)         # f'(m) * 2^(k (n-1))
    if dm == 0:
        return None
    step_k = max(1, eps.denominator.bit_length() - eps.numerator.bit_length() + 1)
    # x = m - fm / (dm 2^k); xd = floor(x 2^step_k) / 2^step_k
    den = dm << k
    top = (num << step_k) * den - (fm << step_k) * (1 << k)
    bottom = den << k
    if bottom < 0:
        top, bottom = -top, -bottom
    xd_num = top // bottom
    xd = Fraction(xd_num, 1 << step_k)
    step = Fraction(1, 1 << step_k)
    a, b = xd - step, xd + step
    if lo < a and b < hi:
        return a, b
    return None


def isolate_real_roots(p: UniPoly, target_width=DEFAULT_WIDTH) -> list[tuple[RInterval, int]]:
    """Disjoint intervals, one per distinct real root, each of width <= target_width.

    Returned intervals have dyadic endpoints; an interval of width zero is an
    exact rational root.  Sorted increasingly.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    target = Fraction(target_width)
    out = []
    for g, mult in squarefree_decomposition(p):
        f = list(g.coeffs)
        for lo, hi in _isolate_squarefree(f):
            lo, hi = _refine_bracket(f, lo, hi, target)
            out.append((lo, hi, mult))
    out.sort()
    return [(_to_interval(lo, hi), m) for lo, hi, m in out]


def refine_root(p: UniPoly, interval: RInterval, target_width) -> RInterval:
    """Refine an interval containing a simple root, certified by a sign change."""
    f = _int_coeffs(p)
    lo, hi = interval.lo, interval.hi
    target = Fraction(target_width)
    slo, shi = _sign_at(f, lo), _sign_at(f, hi)
    if lo == hi:
        if slo == 0:
            return interval
        raise RootFindingError("not isolating")
    if slo == 0 and shi == 0:
        raise RootFindingError("not isolating")
    if slo == 0 or shi == 0:
        # the root sits on an endpoint: return it exactly
        x = lo if slo == 0 else hi
        return _to_interval(x, x)
    if slo == shi:
        raise RootFindingError("not isolating")
    lo, hi = _refine_bracket(f, lo, hi, target, slo)
    return _to_interval(lo, hi)


class RealRoot:
    """A real algebraic number given by a square-free integer polynomial and an isolating interval.

    ``enclosure(prec)`` returns an :class:`RInterval` of width at most ``2**-prec``.
    """

    __slots__ = ("poly", "_lo", "_hi", "_slo")

    def __init__(self, poly: list[int], lo: Fraction, hi: Fraction):
        self.poly = poly
        self._lo = lo
        self._hi = hi
        self._slo = None if lo == hi else _inner_sign(poly, lo)

    @classmethod
    def all_roots(cls, p: UniPoly) -> list["RealRoot"]:
        f = _int_coeffs(p)
        sf = ipoly_primitive(ipoly_divexact(f, ipoly_gcd(f, ipoly_deriv(f))))
        return [cls(sf, lo, hi) for lo, hi in _isolate_squarefree(sf)]

    @property
    def is_rational(self) -> bool:
        return self._lo == self._hi

    def exact(self) -> Fraction | None:
        return self._lo if self._lo == self._hi else None

    def bracket(self, prec: int) -> tuple[Fraction, Fraction]:
        target = Fraction(1, 1 << prec)
        if self._hi - self._lo > target:
            self._lo, self._hi = _refine_bracket(self.poly, self._lo, self._hi, target, self._slo)
            if self._lo == self._hi:
                self._slo = None
        return self._lo, self._hi

    def enclosure(self, prec: int) -> RInterval:
        lo, hi = self.bracket(prec)
        return RInterval(lo, hi, prec + 2)

    def __float__(self) -> float:
        lo, hi = self.bracket(60)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"RealRoot(~{float(self):.17g})"


# ---------------------------------------------------------------------------
# complex roots
# ---------------------------------------------------------------------------

def _aberth_float(coeffs: list[int], rng: random.Random, maxiter: int = 800):
    n = len(coeffs) - 1
    top = max(abs(c).bit_length() for c in coeffs)
    shift = max(top - 900, 0)
    a = np.array([math.ldexp(c >> shift if c >= 0 else -((-c) >> shift), 0) for c in coeffs],
                 dtype=np.float64)
    a = a / a[-1]
    hi_first = a[::-1].astype(np.complex128)
    dcoef = np.polyder(hi_first)
    nz = np.abs(a[:-1])
    nz = nz[nz > 0]
    radius = float(np.exp(np.mean(np.log(nz)) / n)) if len(nz) else 1.0
    radius = radius if np.isfinite(radius) and radius > 0 else 1.0
    offset = rng.random() * 2 * math.pi / n
    z = radius * np.exp(1j * (offset + 2 * np.pi * np.arange(n) / n)) * (1 + 0.01 * rng.random())
    for _ in range(maxiter):
        pz = np.polyval(hi_first, z)
        dz = np.polyval(dcoef, z)
        with np.errstate(all="ignore"):
            w = pz / dz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            s = (1 / diff).sum(axis=1) - 1  # remove diagonal contribution
            corr = w / (1 - w * s)
        corr = np.where(np.isfinite(corr), corr, 0)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-14 * np.maximum(np.abs(z), 1e-300)):
            break
    return z


def _aberth_mp(coeffs: list[int], z0, prec: int, tol, maxiter: int = 200):
    n = len(coeffs) - 1
    with mpmath.workprec(prec):
        a = [mpmath.mpf(c) for c in coeffs]
        da = [a[i] * i for i in range(1, n + 1)]
        z = [mpmath.mpc(complex(x)) for x in z0]
        for _ in range(maxiter):
            done = True
            new = []
            for k in range(n):
                zk = z[k]
                pz = mpmath.mpc(0)
                for c in reversed(a):
                    pz = pz * zk + c
                dz = mpmath.mpc(0)
                for c in reversed(da):
                    dz = dz * zk + c
                if dz == 0:
                    new.append(zk)
                    continue
                w = pz / dz
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != k:
                        s += 1 / (zk - z[j])
                corr = w / (1 - w * s)
                new.append(zk - corr)
                if abs(corr) > tol * max(abs(zk), 1):
                    done = False
            z = new
            if done:
                return z, True
        return z, False


def complex_root_clusters(p: UniPoly, tol=Fraction(1, 2**60), seed: int = 0):
    """Approximate all complex roots with multiplicities.

    Returns a list of ``(mpmath.mpc, multiplicity)``.  Multiplicities come from
    the exact square-free decomposition; the real-root count of each factor is
    taken from certified isolation so the output is conjugate-closed with real
    roots returned with zero imaginary part.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    rng = random.Random(seed)
    tol_mp = mpmath.mpf(Fraction(tol).numerator) / Fraction(tol).denominator
    out = []
    for g, mult in squarefree_decomposition(p):
        f = list(g.coeffs)
        n = len(f) - 1
        real_brackets = _isolate_squarefree(f)
        nreal = len(real_brackets)
        if n == 1:
            out.append((mpmath.mpc(mpmath.mpf(-f[0]) / f[1]), mult))
            continue
        z0 = _aberth_float(f, rng)
        bits = max(abs(c).bit_length() for c in f)
        prec = max(128, 2 * bits + 64, int(-mpmath.log(tol_mp, 2)) * 2 + 64)
        z, ok = _aberth_mp(f, z0, prec, tol_mp)
        if not ok:
            z, ok = _aberth_mp(f, z, 2 * prec, tol_mp, maxiter=400)
        if not ok:
            raise RootFindingError(
                f"Aberth iteration did not converge: degree {n}, coefficient bits {bits}, tol {float(tol_mp):.3g}"
            )
        with mpmath.workprec(prec):
            order = sorted(range(n), key=lambda i: abs(z[i].imag))
            real_idx = order[:nreal]
            reals = []
            for i in real_idx:
                reals.append(mpmath.mpc(z[i].real, 0))
            # snap real approximations into their certified brackets
            reals.sort(key=lambda c: c.real)
            for (lo, hi), r in zip(real_brackets, reals):
                x = r.real
                if not (mpmath.mpf(lo.numerator) / lo.denominator <= x <= mpmath.mpf(hi.numerator) / hi.denominator):
                    x = mpmath.mpf((lo + hi).numerator) / (lo + hi).denominator / 2
                out.append((mpmath.mpc(x, 0), mult))
            rest = [z[i] for i in order[nreal:]]
            upper = sorted((c for c in rest if c.imag > 0), key=lambda c: (c.real, c.imag))
            lower = [c for c in rest if c.imag <= 0]
            if len(upper) != len(lower):
                raise RootFindingError("non-real roots are not conjugate-closed")
            for c in upper:
                # average with the nearest lower partner
                j = min(range(len(lower)), key=lambda i: abs(lower[i] - mpmath.conj(c)))
                partner = lower.pop(j)
                m = (c + mpmath.conj(partner)) / 2
                out.append((m, mult))
                out.append((mpmath.conj(m), mult))
    return out


def relative_residual(p: UniPoly, z) -> float:
    """|p(z)| / sum |a_i||z|^i, a scale-free residual."""
    num = mpmath.mpc(0)
    den = mpmath.mpf(0)
    az = abs(z)
    for c in reversed(p.coeffs):
        num = num * z + mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
        den = den * az + abs(mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator)
    return float(abs(num) / den) if den else 0.0
