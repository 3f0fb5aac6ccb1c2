"""Univariate and multivariate polynomials with exact rational coefficients.

Dense integer helpers (``ipoly_*``) operate on plain ``list[int]`` coefficient
vectors, lowest degree first; they are the fast path used by elimination and
root isolation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import product as _cartesian
from numbers import Rational


def _exact_div(a, b):
    """Quotient of rationals, staying in ``int`` when the division is exact."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return Fraction(a) / b


def _norm(c):
    """Collapse integral Fractions to int so that coefficients compare cleanly."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# dense integer polynomials
# ---------------------------------------------------------------------------

def ipoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def ipoly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ipoly_trim(out)


def ipoly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return ipoly_trim(out)


def ipoly_scale(a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [c * x for x in a]


def ipoly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return ipoly_scale(a, b[0])
    if len(b) > 24:
        return _kronecker_mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return ipoly_trim(out)


def _kronecker_mul(a: list[int], b: list[int]) -> list[int]:
    # pack into one big integer, multiply, unpack with signed digits
    bound = max(abs(x) for x in a) * max(abs(x) for x in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    pa = _pack(a, bits)
    pb = _pack(b, bits)
    return ipoly_trim(_unpack(pa * pb, bits, len(a) + len(b) - 1))


def _pack(a: list[int], bits: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc << bits) + c
    return acc


def _unpack(v: int, bits: int, n: int) -> list[int]:
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(n):
        d = v & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        v = (v - d) >> bits
    return out


def ipoly_content(a: list[int]) -> int:
    return reduce(math.gcd, a, 0)


def ipoly_primitive(a: list[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    c = ipoly_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def ipoly_divexact(a: list[int], b: list[int]) -> list[int]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[k + db], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for i in range(db + 1):
                a[k + i] -= c * b[i]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return ipoly_trim(q)


def ipoly_divexact_scalar(a: list[int], c: int) -> list[int]:
    out = []
    for x in a:
        q, r = divmod(x, c)
        if r:
            raise ArithmeticError("inexact scalar division")
        out.append(q)
    return out


def ipoly_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b."""
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i in range(db + 1):
            r[shift + i] -= lr * b[i]
        r.pop()
        ipoly_trim(r)
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return r


def ipoly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z[x] (positive leading coefficient)."""
    a = ipoly_primitive(ipoly_trim(list(a)))
    b = ipoly_primitive(ipoly_trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = ipoly_prem(a, b)
        a, b = b, ipoly_primitive(r)
    return a


def ipoly_deriv(a: list[int]) -> list[int]:
    return ipoly_trim([i * a[i] for i in range(1, len(a))])


def ipoly_eval(a: list[int], x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def ipoly_sign_at(a: list[int], x: Fraction) -> int:
    """Exact sign of ``a(x)`` for rational ``x`` using integer Horner."""
    n, d = x.numerator, x.denominator
    deg = len(a) - 1
    if deg < 0:
        return 0
    acc = 0
    dpow = 1
    # sum a_i n^i d^(deg-i) evaluated by Horner on n with d powers
    acc = a[-1]
    for c in reversed(a[:-1]):
        dpow *= d
        acc = acc * n + c * dpow
    return (acc > 0) - (acc < 0)


def ipoly_taylor_shift(a: list[int], c: int = 1) -> list[int]:
    """Coefficients of a(x + c)."""
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] += c * out[k + 1]
    return out


# ---------------------------------------------------------------------------
# UniPoly
# ---------------------------------------------------------------------------

class UniPoly:
    """Univariate polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm(c) if isinstance(c, Fraction) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_unipoly(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_unipoly(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        if self.is_integral() and other.is_integral():
            return UniPoly(ipoly_mul(list(self.coeffs), list(other.coeffs)))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lc = other.lc
        q = [0] * max(0, len(r) - d)
        for k in range(len(r) - 1 - d, -1, -1):
            c = _exact_div(r[k + d], lc)
            q[k] = c
            if c:
                for i in range(d + 1):
                    r[k + i] -= c * other.coeffs[i]
        return UniPoly(q), UniPoly(r[:d] if d > 0 else [])

    def __floordiv__(self, other) -> "UniPoly":
        return self.divmod(_as_unipoly(other))[0]

    def __mod__(self, other) -> "UniPoly":
        return self.divmod(_as_unipoly(other))[1]

    def exquo(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def integer_form(self) -> tuple[list[int], Fraction]:
        """``(ints, scale)`` with ``self == scale * UniPoly(ints)`` and ints primitive."""
        if not self.coeffs:
            return [], Fraction(0)
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        prim = ipoly_primitive(ints)
        return prim, Fraction(ints[-1], prim[-1]) / den

    def primitive(self) -> "UniPoly":
        return UniPoly(self.integer_form()[0])

    def monic(self) -> "UniPoly":
        lc = self.lc
        return UniPoly([_exact_div(c, lc) for c in self.coeffs])

    @staticmethod
    def gcd(p: "UniPoly", q: "UniPoly") -> "UniPoly":
        """Primitive integer gcd (content and units discarded)."""
        return UniPoly(ipoly_gcd(p.integer_form()[0], q.integer_form()[0]))

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs])


def _as_unipoly(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return UniPoly([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to UniPoly")


# ---------------------------------------------------------------------------
# MultiPoly
# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse polynomial in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  Coefficients are
    normally ``int``/``Fraction``; any ring element supporting ``+ - *`` works
    for evaluation.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, terms=None, arity: int | None = None):
        terms = dict(terms or {})
        if arity is None:
            if not terms:
                raise ValueError("arity required for the zero polynomial")
            arity = len(next(iter(terms)))
        clean = {}
        for e, c in terms.items():
            if len(e) != arity:
                raise ValueError(f"exponent {e} does not have arity {arity}")
            if c != 0:
                clean[tuple(e)] = _norm(c) if isinstance(c, Fraction) else c
        self.arity = arity
        self.terms = clean

    @classmethod
    def _from_clean(cls, terms: dict, arity: int) -> "MultiPoly":
        obj = object.__new__(cls)
        obj.arity = arity
        obj.terms = terms
        return obj

    @classmethod
    def var(cls, i: int, arity: int) -> "MultiPoly":
        e = [0] * arity
        e[i] = 1
        return cls({tuple(e): 1}, arity)

    @classmethod
    def const(cls, c, arity: int) -> "MultiPoly":
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def gens(cls, arity: int) -> list["MultiPoly"]:
        return [cls.var(i, arity) for i in range(arity)]

    # -- basic protocol --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other, self.arity)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiPoly(0, arity={self.arity})"
        parts = []
        for e in sorted(self.terms, reverse=True):
            parts.append(f"{self.terms[e]}*{e}")
        return "MultiPoly(" + " + ".join(parts) + ")"

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        return MultiPoly.const(other, self.arity)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly._from_clean(out, self.arity)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._from_clean({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly._from_clean({}, self.arity)
            return MultiPoly._from_clean({e: c * other for e, c in self.terms.items()}, self.arity)
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        out: dict = {}
        n = self.arity
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[k] + e2[k] for k in range(n))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._from_clean({e: c for e, c in out.items() if c != 0}, n)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        result = MultiPoly.const(1, self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structure -------------------------------------------------------
    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exponent) -> object:
        return self.terms.get(tuple(exponent), 0)

    def coeffs_in(self, var: int) -> list["MultiPoly"]:
        """Coefficients as a polynomial in ``var`` (index = power of var)."""
        deg = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            k = e[var]
            e2 = e[:var] + (0,) + e[var + 1:]
            buckets[k][e2] = c
        return [MultiPoly._from_clean(b, self.arity) for b in buckets]

    @classmethod
    def from_coeffs_in(cls, coeffs: list["MultiPoly"], var: int, arity: int) -> "MultiPoly":
        out = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                e2 = e[:var] + (e[var] + k,) + e[var + 1:]
                out[e2] = c
        return cls._from_clean(out, arity)

    def partial(self, var: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = e[:var] + (e[var] - 1,) + e[var + 1:]
                out[e2] = c * e[var]
        return MultiPoly._from_clean(out, self.arity)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.arity)]

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Evaluate at a point whose entries may be rationals, intervals, complex..."""
        point = list(point)
        if len(point) != self.arity:
            raise ValueError("point arity mismatch")
        if not self.terms:
            return 0
        maxdeg = [0] * self.arity
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxdeg[i]:
                    maxdeg[i] = k
        powers = []
        for i, x in enumerate(point):
            pw = [1, x] if maxdeg[i] >= 1 else [1]
            for _ in range(2, maxdeg[i] + 1):
                pw.append(pw[-1] * x)
            powers.append(pw)
        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = powers[i][k] if term is None else term * powers[i][k]
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        return acc

    def compose(self, subs: list) -> "MultiPoly":
        """Substitute polynomials (all of a common arity) for the variables."""
        if len(subs) != self.arity:
            raise ValueError("substitution arity mismatch")
        target = next((s.arity for s in subs if isinstance(s, MultiPoly)), None)
        if target is None:
            raise ValueError("at least one substitution must be a MultiPoly")
        subs = [s if isinstance(s, MultiPoly) else MultiPoly.const(s, target) for s in subs]
        return self.evaluate(subs) if self.terms else MultiPoly._from_clean({}, target)

    def substitute(self, var: int, value) -> "MultiPoly":
        """Specialize one variable to a scalar; arity is kept (exponent set to 0)."""
        out: dict = {}
        for e, c in self.terms.items():
            e2 = e[:var] + (0,) + e[var + 1:]
            out[e2] = out.get(e2, 0) + c * value ** e[var]
        return MultiPoly(out, self.arity)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, self.arity)

    def integer_scale(self) -> int:
        """Smallest positive integer making all coefficients integral."""
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        return den

    def to_unipoly(self, var: int) -> UniPoly:
        if self.variables() - {var}:
            raise ValueError("polynomial involves other variables")
        deg = self.degree(var)
        cs = [0] * (deg + 1)
        for e, c in self.terms.items():
            cs[e[var]] = c
        return UniPoly(cs)

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: int, arity: int) -> "MultiPoly":
        out = {}
        for k, c in enumerate(p.coeffs):
            if c != 0:
                e = [0] * arity
                e[var] = k
                out[tuple(e)] = c
        return cls._from_clean(out, arity)

    def leading_term(self) -> tuple[tuple, object]:
        e = max(self.terms)
        return e, self.terms[e]

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact division (lex order); raises ArithmeticError if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        n = self.arity
        le, lc = other.leading_term()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            d = tuple(e[k] - le[k] for k in range(n))
            if min(d) < 0:
                raise ArithmeticError("inexact multivariate division")
            qc = _exact_div(c, lc)
            quot[d] = qc
            for e2, c2 in other.terms.items():
                e3 = tuple(d[k] + e2[k] for k in range(n))
                v = rem.get(e3, 0) - qc * c2
                if v == 0:
                    rem.pop(e3, None)
                else:
                    rem[e3] = v
        return MultiPoly._from_clean(quot, n)


def monomials(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of a given total degree in graded-lex (descending) order."""
    out = [e for e in _cartesian(range(degree + 1), repeat=n_vars) if sum(e) == degree]
    return sorted(out, reverse=True)
