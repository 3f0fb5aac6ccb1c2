"""Adaptive-precision sign determination.

Point coordinates may be exact rationals, fixed :class:`RInterval` enclosures,
or refinable reals: any object with an ``enclosure(prec) -> RInterval`` method
whose width shrinks as ``prec`` grows.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .intervals import DEFAULT_PREC, RInterval, precision_cap
from .polynomials import MultiPoly

UNKNOWN = None


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Rational)) and not isinstance(x, bool)


def enclose(x, prec: int) -> RInterval:
    """Enclosure of a point coordinate at the given working precision."""
    if isinstance(x, RInterval):
        return x.with_prec(prec) if x.prec < prec else x
    if _is_exact(x):
        return RInterval(x, x, prec)
    if hasattr(x, "enclosure"):
        return x.enclosure(prec)
    raise TypeError(f"cannot enclose {type(x).__name__}")


def eval_interval(p: MultiPoly, point, prec: int) -> RInterval:
    vals = [enclose(x, prec) for x in point]
    v = p.evaluate(vals)
    if not isinstance(v, RInterval):
        v = RInterval(v, v, prec)
    return v


def sign_at(p: MultiPoly, point, cap: int | None = None):
    """Sign of ``p`` at ``point``: -1, 0, +1, or ``None`` (unknown at the precision cap).

    0 is returned only when every coordinate is an exact rational and the
    exact value vanishes.
    """
    point = list(point)
    if len(point) != p.arity:
        raise ValueError("point arity mismatch")
    if all(_is_exact(x) for x in point):
        v = p.evaluate([Fraction(x) for x in point])
        return (v > 0) - (v < 0)
    cap = precision_cap() if cap is None else cap
    prec = DEFAULT_PREC
    while prec <= cap:
        s = eval_interval(p, point, prec).sign()
        if s == 1 or s == -1:
            return s
        prec *= 2
    return UNKNOWN


def decide_sign(fn, cap: int | None = None):
    """Sign of a quantity given by ``fn(prec) -> RInterval``, doubling precision up to the cap."""
    cap = precision_cap() if cap is None else cap
    prec = DEFAULT_PREC
    while prec <= cap:
        s = fn(prec).sign()
        if s == 1 or s == -1:
            return s
        prec *= 2
    return UNKNOWN
