"""Plane quartics, lines, projective maps and restriction to lines."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational

from .errors import InputError, LineInCurveError, NotSmoothError
from .numeric.intervals import RInterval
from .numeric.polynomials import MultiPoly, UniPoly, ipoly_gcd, monomials
from .numeric.resultants import resultant_dense
from .numeric.roots import RealRoot

MONOMIALS: tuple[tuple[int, int, int], ...] = tuple(monomials(3, 4))
_MONO_INDEX = {e: i for i, e in enumerate(MONOMIALS)}


def _rat(x) -> Fraction | int:
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _rat(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _rat(Fraction(x))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Quartic:
    """Ternary quartic form with exact rational coefficients."""

    def __init__(self, coeffs):
        if isinstance(coeffs, MultiPoly):
            if coeffs.arity != 3:
                raise InputError("quartic must have three variables")
            coeffs = coeffs.terms
        if isinstance(coeffs, dict):
            vec = [0] * 15
            for e, c in coeffs.items():
                e = tuple(e)
                if e not in _MONO_INDEX:
                    raise InputError(f"monomial {e} is not of degree 4 in three variables")
                vec[_MONO_INDEX[e]] = _rat(c)
        else:
            vec = [_rat(c) for c in coeffs]
            if len(vec) != 15:
                raise InputError("a quartic has 15 coefficients")
        if not any(vec):
            raise InputError("quartic is identically zero")
        self.coeffs = tuple(vec)
        self._smooth = None

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "Quartic":
        if not p.is_homogeneous() or p.degree() != 4:
            raise InputError("polynomial is not a ternary quartic form")
        return cls(p)

    @cached_property
    def poly(self) -> MultiPoly:
        return MultiPoly({e: c for e, c in zip(MONOMIALS, self.coeffs) if c}, 3)

    def coeff(self, i: int, j: int, k: int):
        return self.coeffs[_MONO_INDEX[(i, j, k)]]

    def terms(self):
        return [(e, c) for e, c in zip(MONOMIALS, self.coeffs) if c]

    def __call__(self, x, y, z):
        return self.poly.evaluate((x, y, z))

    def __eq__(self, other) -> bool:
        return isinstance(other, Quartic) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        parts = [f"{c}*x^{e[0]}y^{e[1]}z^{e[2]}" for e, c in self.terms()]
        return "Quartic(" + " + ".join(parts) + ")"

    def scaled(self, lam) -> "Quartic":
        lam = _rat(lam)
        if lam == 0:
            raise InputError("scale factor must be nonzero")
        return Quartic([c * lam for c in self.coeffs])

    def integral(self) -> "Quartic":
        """Positive rational multiple with coprime integer coefficients."""
        d = self.poly.integer_scale()
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for c in ints:
            g = _gcd(g, c)
        return Quartic([c // g for c in ints])

    def gradient(self) -> list[MultiPoly]:
        return self.poly.gradient()

    def hessian(self) -> MultiPoly:
        g = self.gradient()
        h = [[gi.partial(j) for j in range(3)] for gi in g]
        return (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
                - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
                + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# lines and maps
# ---------------------------------------------------------------------------

class ProjLine:
    """Line V(l1*y1 + l2*y2 + l3*y3).

    Exact lines are normalized so the first nonzero coordinate is 1.  Lines
    with :class:`RInterval` (or complex) entries are stored as given.
    """

    __slots__ = ("coords",)

    def __init__(self, l1, l2=None, l3=None):
        if l2 is None and l3 is None:
            l1, l2, l3 = l1
        cs = (l1, l2, l3)
        if all(isinstance(c, (int, Fraction, Rational)) and not isinstance(c, bool) for c in cs):
            cs = tuple(Fraction(c) for c in cs)
            piv = next((c for c in cs if c != 0), None)
            if piv is None:
                raise InputError("line coordinates are all zero")
            cs = tuple(_rat(c / piv) for c in cs)
        self.coords = cs

    @property
    def exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjLine) and self.exact and other.exact and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"ProjLine({', '.join(str(c) for c in self.coords)})"

    def evaluate(self, point):
        return sum((l * x for l, x in zip(self.coords, point)), 0)

    @classmethod
    def through(cls, p, q) -> "ProjLine":
        return cls(cross(p, q))

    def as_poly(self) -> MultiPoly:
        return MultiPoly({e: c for e, c in zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), self.coords) if c != 0}, 3)


def cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def det3(m) -> object:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjugate3(m):
    return [
        [m[1][1] * m[2][2] - m[1][2] * m[2][1], m[0][2] * m[2][1] - m[0][1] * m[2][2], m[0][1] * m[1][2] - m[0][2] * m[1][1]],
        [m[1][2] * m[2][0] - m[1][0] * m[2][2], m[0][0] * m[2][2] - m[0][2] * m[2][0], m[0][2] * m[1][0] - m[0][0] * m[1][2]],
        [m[1][0] * m[2][1] - m[1][1] * m[2][0], m[0][1] * m[2][0] - m[0][0] * m[2][1], m[0][0] * m[1][1] - m[0][1] * m[1][0]],
    ]


class ProjectiveMap:
    """Invertible 3x3 rational matrix acting on points by x -> g x."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = tuple(tuple(_rat(c) for c in row) for row in matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise InputError("projective map needs a 3x3 matrix")
        if det3(m) == 0:
            raise InputError("singular matrix")
        self.matrix = m

    @classmethod
    def identity(cls) -> "ProjectiveMap":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def random(cls, rng: random.Random, bound: int = 10) -> "ProjectiveMap":
        while True:
            m = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
            if det3(m) != 0:
                return cls(m)

    def det(self):
        return det3(self.matrix)

    def adjugate(self) -> list[list]:
        return adjugate3(self.matrix)

    def inverse(self) -> "ProjectiveMap":
        d = Fraction(self.det())
        return ProjectiveMap([[c / d for c in row] for row in self.adjugate()])

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        a, b = self.matrix, other.matrix
        return ProjectiveMap([[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectiveMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"ProjectiveMap({[list(r) for r in self.matrix]})"

    def apply_point(self, x):
        m = self.matrix
        return tuple(m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2] for i in range(3))

    def apply_line(self, line):
        """Image line: V(l) -> V(l g^{-1}); coordinates are l g^{-1} up to scale (uses adj)."""
        l = line.coords if isinstance(line, ProjLine) else tuple(line)
        a = self.adjugate()
        img = tuple(l[0] * a[0][j] + l[1] * a[1][j] + l[2] * a[2][j] for j in range(3))
        return ProjLine(img) if isinstance(line, ProjLine) else img

    def pullback_line(self, line):
        """Preimage line: V(l) -> V(l g)."""
        l = line.coords if isinstance(line, ProjLine) else tuple(line)
        m = self.matrix
        img = tuple(l[0] * m[0][j] + l[1] * m[1][j] + l[2] * m[2][j] for j in range(3))
        return ProjLine(img) if isinstance(line, ProjLine) else img


def _linear_forms(m) -> list[MultiPoly]:
    return [MultiPoly({e: c for e, c in zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), row) if c != 0}, 3)
            for row in m]


def compose_quartic(f: Quartic, m) -> Quartic:
    """f(m y) for a 3x3 matrix m."""
    return Quartic(f.poly.compose(_linear_forms(m)))


def apply_map(f: Quartic, g: ProjectiveMap) -> Quartic:
    """The quartic f o g^{-1}, whose zero set is g(V(f))."""
    return compose_quartic(f, g.inverse().matrix)


def apply_map_integral(f: Quartic, g: ProjectiveMap) -> Quartic:
    """f o adj(g): a nonzero multiple of apply_map(f, g), integral when f and g are."""
    return compose_quartic(f, g.adjugate())


# ---------------------------------------------------------------------------
# restriction to lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryQuartic:
    """Binary form sum coeffs[j] * u^j * v^(4-j).

    ``chart`` is the index of the eliminated coordinate; ``variables`` are the
    indices of the coordinates that play the roles of u and v.
    """

    coeffs: tuple
    chart: int
    variables: tuple[int, int]

    def is_zero(self) -> bool:
        return all(isinstance(c, (int, Fraction)) and c == 0 for c in self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def as_poly(self) -> MultiPoly:
        """As a polynomial in (u, v)."""
        return MultiPoly({(j, 4 - j): c for j, c in enumerate(self.coeffs) if c != 0}, 2)


def _magnitude(c):
    if isinstance(c, RInterval):
        return abs(c.mid())
    if isinstance(c, complex):
        return abs(c)
    try:
        return abs(c)
    except TypeError:
        return abs(complex(c))


def chart_index(coords) -> int:
    """Index of the largest |coordinate|, ties to the lower index."""
    mags = [_magnitude(c) for c in coords]
    best = 0
    for i in range(1, 3):
        if mags[i] > mags[best]:
            best = i
    return best


def binary_restriction(terms, p, q, degree: int = 4) -> list:
    """Coefficients c_j of f(u p + v q) = sum c_j u^j v^(degree-j).

    ``terms`` is an iterable of (exponent, coefficient); entries of p, q and
    the coefficients may be any ring elements.
    """
    out = [0] * (degree + 1)
    cache = {}

    def power(m, k):
        key = (m, k)
        if key not in cache:
            base = [q[m], p[m]]  # v-part, u-part
            poly = [1]
            for _ in range(k):
                nxt = [0] * (len(poly) + 1)
                for i, a in enumerate(poly):
                    nxt[i] = nxt[i] + a * base[0]
                    nxt[i + 1] = nxt[i + 1] + a * base[1]
                poly = nxt
            cache[key] = poly
        return cache[key]

    for e, c in terms:
        poly = [c]
        for m in range(3):
            if e[m]:
                pw = power(m, e[m])
                nxt = [0] * (len(poly) + len(pw) - 1)
                for i, a in enumerate(poly):
                    for j, b in enumerate(pw):
                        nxt[i + j] = nxt[i + j] + a * b
                poly = nxt
        for j, a in enumerate(poly):
            out[j] = out[j] + a
    return out


def line_parametrization(coords, chart: int | None = None):
    """Two points (p, q) spanning the line, with u, v the kept coordinates."""
    k = chart_index(coords) if chart is None else chart
    keep = tuple(i for i in range(3) if i != k)
    lk = coords[k]
    p = [0, 0, 0]
    q = [0, 0, 0]
    p[keep[0]] = 1
    q[keep[1]] = 1
    p[k] = -coords[keep[0]] / lk if not isinstance(lk, int) or lk != 1 else -coords[keep[0]]
    q[k] = -coords[keep[1]] / lk if not isinstance(lk, int) or lk != 1 else -coords[keep[1]]
    return tuple(p), tuple(q), k, keep


def restrict_to_line(f: Quartic, line: ProjLine) -> BinaryQuartic:
    coords = line.coords
    if line.exact:
        coords = tuple(Fraction(c) for c in coords)
    p, q, k, keep = line_parametrization(coords)
    cs = binary_restriction(f.terms(), p, q)
    cs = tuple(_rat(c) if isinstance(c, Fraction) else c for c in cs)
    return BinaryQuartic(cs, k, keep)


def real_points_on_line(f: Quartic, line: ProjLine) -> int:
    """Number of distinct real points of V(f) on the (exact) line."""
    if not line.exact:
        raise InputError("real_points_on_line needs an exact line")
    bq = restrict_to_line(f, line)
    if all(c == 0 for c in bq.coeffs):
        raise LineInCurveError("line contained in curve")
    return binary_real_root_count(bq.coeffs)


def binary_real_root_count(coeffs) -> int:
    """Distinct real projective roots of sum c_j u^j v^(d-j)."""
    cs = list(coeffs)
    at_infinity = 1 if cs[-1] == 0 else 0  # v = 0 is a root when the u^d coefficient vanishes
    p = UniPoly(cs)
    if p.degree <= 0:
        return at_infinity
    return len(RealRoot.all_roots(p)) + at_infinity


# ---------------------------------------------------------------------------
# smoothness and flexes
# ---------------------------------------------------------------------------

def _dehomogenize_dense(p: MultiPoly, var_y: int = 1, var_x: int = 0) -> list[list[int]]:
    """p(x, y, 1) as a list (by power of y) of dense Z[x] lists; p must be integral."""
    dy = max((e[var_y] for e in p.terms), default=0)
    out = [[] for _ in range(dy + 1)]
    for e, c in p.terms.items():
        row = out[e[var_y]]
        k = e[var_x]
        if len(row) <= k:
            row.extend([0] * (k + 1 - len(row)))
        row[k] += int(c)
    for row in out:
        while row and row[-1] == 0:
            row.pop()
    return out


def _integral_poly(p: MultiPoly) -> MultiPoly:
    d = p.integer_scale()
    return p if d == 1 else p.map_coeffs(lambda c: c * d)


def _binary_at_infinity(p: MultiPoly) -> list[int]:
    """p(1, y, 0) as a dense integer list in y."""
    out: dict = {}
    for e, c in p.terms.items():
        if e[2] == 0:
            out[e[1]] = out.get(e[1], 0) + int(c)
    if not out:
        return []
    n = max(out)
    return [out.get(i, 0) for i in range(n + 1)]


def _smooth_certificate(f: Quartic, rng: random.Random) -> bool | None:
    """True if certified smooth in this random frame, None if inconclusive."""
    g = ProjectiveMap.random(rng, 6)
    h = apply_map_integral(f.integral(), g)
    partials = [_integral_poly(p) for p in h.gradient()]
    while True:
        comb = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        if det3(comb) != 0:
            break
    gs = [sum((partials[j] * comb[i][j] for j in range(3)), MultiPoly({}, 3)) for i in range(3)]
    if any(p.is_zero() for p in gs):
        return None
    # [0:1:0] must not be a zero of G1 (nonzero constant leading coefficient in y)
    if gs[0].coefficient((0, 3, 0)) == 0:
        return None
    dense = [_dehomogenize_dense(p) for p in gs]
    r12 = resultant_dense(dense[0], dense[1]).resultant
    r13 = resultant_dense(dense[0], dense[2]).resultant
    if not r12 or not r13:
        return None
    if len(ipoly_gcd(r12, r13)) > 1:
        return None
    # points at infinity [1:y:0]
    inf = [_binary_at_infinity(p) for p in gs]
    common = inf[0]
    for p in inf[1:]:
        common = ipoly_gcd(common, p) if common or p else []
    if not common or len(common) > 1:
        return None
    return True


def is_smooth(f: Quartic, attempts: int = 6, seed: int = 0) -> bool:
    """Exact smoothness test: the partials have no common projective zero.

    ``True`` is returned only with a resultant certificate; after ``attempts``
    inconclusive random frames the quartic is declared singular.
    """
    if f._smooth is not None:
        return f._smooth
    rng = random.Random(seed * 7919 + 17)
    result = False
    for _ in range(attempts):
        if _smooth_certificate(f, rng):
            result = True
            break
    f._smooth = result
    return result


def real_flex_count(f: Quartic, seed: int = 0, attempts: int = 8) -> int:
    """Number of real flex points, via Res_y(f, Hessian) in a random frame."""
    if not is_smooth(f):
        raise NotSmoothError("quartic is not smooth")
    rng = random.Random(seed * 104729 + 3)
    base = f.integral()
    for _ in range(attempts):
        g = ProjectiveMap.random(rng, 8)
        h = apply_map_integral(base, g)
        hess = _integral_poly(h.hessian())
        if h.coeff(0, 4, 0) == 0 or hess.coefficient((0, 6, 0)) == 0:
            continue
        prs = resultant_dense(_dehomogenize_dense(_integral_poly(h.poly)), _dehomogenize_dense(hess))
        res = prs.resultant
        if len(res) - 1 != 24:
            continue
        r1 = prs.of_degree(1)
        if r1 is None:
            continue
        roots = RealRoot.all_roots(UniPoly(res))
        sf = roots[0].poly if roots else None
        if sf is not None and len(ipoly_gcd(sf, r1[1])) > 1:
            continue
        return len(roots)
    raise NotSmoothError("could not find a generic frame for the flex computation")
