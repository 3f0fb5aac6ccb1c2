"""Qtype of a bitangent relative to a line at infinity, local indices and signed counts.

For a tangency point z with l_inf(z) != 0 and a direction w at infinity
(l_inf(w) = 0, l_L(w) != 0), the derivative of the affine equation f / l_inf^4
in direction w at z / l_inf(z) is (grad f(z) . w) / l_inf(z)^3.  So the Qtype
of a real split bitangent is the sign of

    (grad f(z1) . w) l_inf(z1) (grad f(z2) . w) l_inf(z2),

which is independent of w and of the scaling of z1, z2 because
grad f(z_i) is proportional to l_L at a tangency point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import HypothesisError, NonSimpleZeroError, UndecidableError
from .numeric.intervals import CInterval, RInterval, precision_cap
from .numeric.polynomials import MultiPoly
from .quartic import ProjLine, Quartic, adjugate3, cross, det3, restrict_to_line
from .solver import Bitangent, BitangentSet, Reality, compute_bitangents, ipoly_sign_exact


@dataclass(frozen=True)
class GWClass:
    """Element n_plus<1> + n_minus<-1> of GW(R)."""

    n_plus: int = 0
    n_minus: int = 0

    @classmethod
    def of_sign(cls, s: int) -> "GWClass":
        if s > 0:
            return cls(1, 0)
        if s < 0:
            return cls(0, 1)
        raise ValueError("a form <0> is degenerate")

    @classmethod
    def hyperbolic(cls, copies: int = 1) -> "GWClass":
        return cls(copies, copies)

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def sign(self) -> int:
        """For a rank-one class, +1 or -1."""
        if self.rank != 1:
            raise ValueError("sign is only defined for rank-one classes")
        return 1 if self.n_plus else -1

    def __add__(self, other: "GWClass") -> "GWClass":
        return GWClass(self.n_plus + other.n_plus, self.n_minus + other.n_minus)

    def __str__(self) -> str:
        return f"{self.n_plus}<1> + {self.n_minus}<-1>"

    def as_dict(self) -> dict:
        return {"plus": self.n_plus, "minus": self.n_minus, "rank": self.rank, "signature": self.signature}


ONE = GWClass(1, 0)
MINUS_ONE = GWClass(0, 1)


def _as_line(L) -> ProjLine:
    if isinstance(L, ProjLine):
        return L
    return ProjLine(*L)


def _direction_at_infinity(linf: ProjLine, lL) -> tuple:
    """Rational w with l_inf(w) = 0 maximizing |l_L(w)| over w = l_inf x e_k."""
    best = None
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        w = cross(linf.coords, e)
        if all(c == 0 for c in w):
            continue
        val = sum((lL[i] * w[i] for i in range(3) if w[i] != 0), RInterval(0, 0, lL[0].prec))
        mag = val.mignitude()
        if best is None or mag > best[0]:
            best = (mag, w)
    if best is None or best[0] == 0:
        return None
    return best[1]


def _dot(row, vec):
    acc = None
    for c, v in zip(row, vec):
        if isinstance(c, (int, Fraction)) and c == 0:
            continue
        term = v * c
        acc = term if acc is None else acc + term
    return acc if acc is not None else 0


def _grad_dot(grad: list[MultiPoly], w, X):
    """(grad f(X)) . w for a (real or complex interval) point X."""
    acc = None
    for gi, wi in zip(grad, w):
        if wi == 0:
            continue
        term = gi.evaluate(X) * wi
        acc = term if acc is None else acc + term
    return acc


def _pulled_back(bt: Bitangent, linf: ProjLine) -> list[int]:
    """Integer coordinates of L_inf in the witness frame: adj(g)^T l_inf, cleared of denominators."""
    fr = bt.frame
    m = [sum(fr.adj[i][j] * Fraction(linf.coords[i]) for i in range(3)) for j in range(3)]
    den = 1
    for c in m:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in m]


def _exact_linf_meets(bt: Bitangent, linf: ProjLine) -> bool:
    """Exact test: does a tangency point of bt lie on L_inf?"""
    fr = bt.frame
    m = _pulled_back(bt, linf)
    a, b = MultiPoly.gens(2)
    # L_inf meets V(y1 + a y2 + b y3) at (y2, y3) = (b m1 - m3, m2 - a m1)
    y2 = b * m[0] - m[2]
    y3 = a * (-m[0]) + m[1]
    q0, q1, q2, q3, q4 = fr.qs
    tq = q4 * q4 * y2 * y2 * 8 + q3 * q4 * y2 * y3 * 4 + (q2 * q4 * 4 - q3 * q3) * y3 * y3
    if tq.is_zero():
        return True
    return fr.vanishes_at(tq, bt.root)


def _is_same_line(bt: Bitangent, linf: ProjLine) -> bool:
    """Exact test that the bitangent is the rational line L_inf."""
    fr = bt.frame
    m = _pulled_back(bt, linf)
    if m[0] == 0:
        return False
    a0, b0 = Fraction(m[1], m[0]), Fraction(m[2], m[0])
    if ipoly_sign_exact(fr.eliminant, a0) != 0:
        return False
    lo, hi = bt.root.bracket(8)
    if not (lo <= a0 <= hi):
        return False
    r1 = sum(c * a0**i for i, c in enumerate(fr.r1))
    r0 = sum(c * a0**i for i, c in enumerate(fr.r0))
    return r1 != 0 and -r0 / r1 == b0


def qtype_sign_at(f: Quartic, bt: Bitangent, linf: ProjLine, prec: int):
    """Sign of the Qtype product at one precision, or None if undecided."""
    grad = f.gradient()
    st = bt.state(prec)
    X1, X2 = st.X
    w = _direction_at_infinity(linf, st.line)
    if w is None:
        return None
    l1 = _dot(linf.coords, X1)
    l2 = _dot(linf.coords, X2)
    if bt.hyperflex:
        if l1.sign() in (1, -1):
            return 1
        return None
    if bt.reality is Reality.REAL_NON_SPLIT:
        # conjugate points: the product is |grad f(z1).w * l_inf(z1)|^2
        v = _grad_dot(grad, w, X1) * l1
        mod = v.abs2() if isinstance(v, CInterval) else v.square()
        s = mod.sign()
        return 1 if s == 1 else None
    d1 = _grad_dot(grad, w, X1)
    d2 = _grad_dot(grad, w, X2)
    signs = [x.sign() for x in (d1, l1, d2, l2)]
    if any(s not in (1, -1) for s in signs):
        return None
    return signs[0] * signs[1] * signs[2] * signs[3]


def qtype(f: Quartic, bt: Bitangent, L_inf) -> GWClass:
    """Qtype_{L_inf}(L) for a real bitangent, as <1> or <-1>."""
    linf = _as_line(L_inf)
    if not linf.exact:
        raise TypeError("the line at infinity must have rational coordinates")
    if not bt.is_real:
        raise ValueError("qtype is computed for real bitangents; complex pairs contribute a hyperbolic form")
    cap = precision_cap()
    prec = bt.frame.base_prec
    checked = False
    while prec <= max(cap, bt.frame.base_prec):
        s = qtype_sign_at(f, bt, linf, prec)
        if s is not None:
            return GWClass.of_sign(s)
        if not checked and prec >= 2 * bt.frame.base_prec:
            checked = True
            if _is_same_line(bt, linf):
                raise HypothesisError("bitangent coincides with the line at infinity")
            if _exact_linf_meets(bt, linf):
                raise HypothesisError("Z meets line at infinity")
        prec *= 2
    if not checked:
        if _is_same_line(bt, linf):
            raise HypothesisError("bitangent coincides with the line at infinity")
        if _exact_linf_meets(bt, linf):
            raise HypothesisError("Z meets line at infinity")
    raise UndecidableError()


def _bitangents_of(f: Quartic, bts: BitangentSet | None, seed: int) -> BitangentSet:
    if bts is None:
        return compute_bitangents(f, seed=seed)
    if bts.quartic != f:
        raise ValueError("bitangent set belongs to a different quartic")
    return bts


def qtypes(f: Quartic, L_inf, bts: BitangentSet | None = None, seed: int = 0,
           exclude: Bitangent | None = None) -> list[tuple[Bitangent, GWClass]]:
    bts = _bitangents_of(f, bts, seed)
    out = []
    for bt in bts.real():
        if bt is exclude:
            continue
        try:
            out.append((bt, qtype(f, bt, L_inf)))
        except HypothesisError as exc:
            if "coincides" in str(exc):
                raise
            raise HypothesisError("L_inf meets a tangency point") from exc
    return out


def signed_count(f: Quartic, L_inf, bts: BitangentSet | None = None, seed: int = 0) -> int:
    """#(real bitangents of type <1>) - #(type <-1>) relative to L_inf."""
    return sum(q.signature for _, q in qtypes(f, L_inf, bts, seed))


def gw_report(f: Quartic, L_inf, bts: BitangentSet | None = None, seed: int = 0) -> GWClass:
    """Sum of the Qtypes of real bitangents plus one hyperbolic form per complex pair."""
    bts = _bitangents_of(f, bts, seed)
    total = GWClass()
    for _, q in qtypes(f, L_inf, bts):
        total = total + q
    total = total + GWClass.hyperbolic(bts.n_complex_pairs)
    if total.rank != 28:
        raise AssertionError(f"GW report has rank {total.rank}, expected 28")
    return total


# ---------------------------------------------------------------------------
# standard chart and local index
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StandardChartData:
    """Coordinates in which L = V(y1), L_inf = V(y3) and Z = V(y2^2 + alpha*y3^2).

    ``map`` is the matrix with rows (l_L, m, l_inf) taking old to new
    coordinates; ``c_coeffs`` are (c_130, c_121, c_112, c_103), the
    coefficients of y1*y2^j*y3^k in f o map^{-1} normalized so that the
    coefficient of y2^4 is 1.  Entries are rationals or intervals.
    """

    map: tuple
    alpha: object
    c_coeffs: tuple
    transformed: dict

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, (int, Fraction))


def _normalize_points(points, linf):
    out = []
    for X in points:
        l = _dot(linf.coords, X)
        out.append(tuple(x / l if not isinstance(x, CInterval) else _cdiv(x, l) for x in X))
    return out


def _cdiv(x: CInterval, l) -> CInterval:
    if isinstance(l, CInterval):
        den = l.abs2()
        num = x * l.conjugate()
        return CInterval(num.re / den, num.im / den)
    return CInterval(x.re / l, x.im / l)


def _real_part(x):
    return x.re if isinstance(x, CInterval) else x


def _transform_coefficients(f: Quartic, h) -> dict:
    """Coefficients of f o h^{-1}, up to the positive factor det(h)^4 (uses the adjugate)."""
    adj = adjugate3(h)
    out: dict = {}
    # expand f(adj . y) term by term with generic coefficients
    lin = []
    for i in range(3):
        terms = {}
        for j in range(3):
            e = [0, 0, 0]
            e[j] = 1
            terms[tuple(e)] = adj[i][j]
        lin.append(terms)
    powers: dict = {}

    def lin_pow(i, k):
        key = (i, k)
        if key not in powers:
            if k == 0:
                powers[key] = {(0, 0, 0): 1}
            else:
                prev = lin_pow(i, k - 1)
                res: dict = {}
                for e1, c1 in prev.items():
                    for e2, c2 in lin[i].items():
                        e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                        res[e] = res.get(e, 0) + c1 * c2
                powers[key] = res
        return powers[key]

    for e, coef in f.terms():
        acc = {(0, 0, 0): coef}
        for i in range(3):
            if e[i]:
                pw = lin_pow(i, e[i])
                res: dict = {}
                for e1, c1 in acc.items():
                    for e2, c2 in pw.items():
                        ee = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                        res[ee] = res.get(ee, 0) + c1 * c2
                acc = res
        for ee, cc in acc.items():
            out[ee] = out.get(ee, 0) + cc
    return out


def standard_chart_from_points(f: Quartic, line, points, L_inf) -> StandardChartData:
    """Standard chart for a bitangent given by its line and tangency points.

    Works over exact rationals (rational line and points) or intervals.
    """
    linf = _as_line(L_inf)
    lL = tuple(line)
    zh = _normalize_points(points, linf)
    s = tuple(_real_part(zh[0][i] + zh[1][i]) for i in range(3))
    # m = s x e_k with the largest coefficient, so m(s) = 0 and m is real
    best = None
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        m = cross(s, e)
        rows = (lL, m, linf.coords)
        d = det3(rows)
        mag = abs(d) if isinstance(d, (int, Fraction)) else d.mignitude()
        if best is None or mag > best[0]:
            best = (mag, m)
    if best is None or best[0] == 0:
        raise HypothesisError("Z meets line at infinity")
    m = best[1]
    if all(isinstance(c, (int, Fraction)) for c in m):
        piv = next(c for c in m if c != 0)
        m = tuple(Fraction(c) / piv for c in m)
    rows = (tuple(lL), tuple(m), tuple(linf.coords))
    coeffs = _transform_coefficients(f, rows)
    c4 = coeffs.get((0, 4, 0), 0)
    if isinstance(c4, RInterval) and c4.contains_zero():
        raise UndecidableError()
    if not isinstance(c4, RInterval) and c4 == 0:
        raise HypothesisError("degenerate standard chart")
    norm = {e: (v / c4 if not isinstance(v, int) or not isinstance(c4, int) else Fraction(v, c4))
            for e, v in coeffs.items()}
    alpha = norm.get((0, 2, 2), 0) / 2
    cc = tuple(norm.get((1, j, 3 - j), 0) for j in (3, 2, 1, 0))
    return StandardChartData(rows, alpha, cc, norm)


def standard_chart(f: Quartic, bt: Bitangent, L_inf, prec: int | None = None) -> StandardChartData:
    """Standard chart of a real bitangent at a working precision (escalating if needed)."""
    linf = _as_line(L_inf)
    prec = prec or bt.frame.base_prec
    cap = max(precision_cap(), prec)
    while prec <= cap:
        st = bt.state(prec)
        try:
            return standard_chart_from_points(f, st.line, st.X, linf)
        except (UndecidableError, ZeroDivisionError):
            prec *= 2
    raise UndecidableError()


def jacobian_matrix(alpha, c):
    c130, c121, c112, c103 = c
    return [
        [-c121, c130 * alpha * 2 - c112, -c103, c130 * alpha * alpha],
        [-c130, -c121, -c112, -c103],
        [-2, 0, alpha * (-2), 0],
        [0, -2, 0, alpha * (-2)],
    ]


def det4(m):
    def minor(mat, col):
        return [[row[j] for j in range(len(row)) if j != col] for row in mat[1:]]

    total = 0
    for j in range(4):
        if isinstance(m[0][j], int) and m[0][j] == 0:
            continue
        sub = minor(m, j)
        d3 = det3(sub)
        term = m[0][j] * d3
        total = total + term if j % 2 == 0 else total - term
    return total


def rhs_value(alpha, c):
    c130, c121, c112, c103 = c
    return (alpha**3 * c130 * c130 + (c121 * c121 - c130 * c112 * 2) * alpha**2
            + (c112 * c112 - c103 * c121 * 2) * alpha + c103 * c103)


def local_index(data: StandardChartData) -> GWClass:
    """<sign det J> for the explicit Jacobian; checks det J = 4 * rhs."""
    alpha, c = data.alpha, data.c_coeffs
    d = det4(jacobian_matrix(alpha, c))
    rhs = rhs_value(alpha, c)
    four_rhs = rhs * 4
    if isinstance(d, RInterval) or isinstance(four_rhs, RInterval):
        di = d if isinstance(d, RInterval) else RInterval(d, d)
        ri = four_rhs if isinstance(four_rhs, RInterval) else RInterval(four_rhs, four_rhs)
        if not di.intersects(ri):
            raise AssertionError("det J and 4*rhs enclosures are disjoint")
        s = di.sign()
        if s is None:
            raise UndecidableError()
        if s == 0:
            raise NonSimpleZeroError()
        return GWClass.of_sign(s)
    if d != four_rhs:
        raise AssertionError("det J != 4*rhs")
    if d == 0:
        raise NonSimpleZeroError()
    return GWClass.of_sign(1 if d > 0 else -1)


def local_index_of(f: Quartic, bt: Bitangent, L_inf) -> GWClass:
    """local_index(standard_chart(...)) with precision escalation."""
    prec = bt.frame.base_prec
    cap = max(precision_cap(), prec)
    while prec <= cap:
        try:
            return local_index(standard_chart(f, bt, L_inf, prec))
        except UndecidableError:
            prec *= 2
    raise UndecidableError()


def exact_standard_chart(f: Quartic, line: ProjLine, z1, z2, L_inf) -> StandardChartData:
    """Standard chart when the line and both tangency points are rational."""
    return standard_chart_from_points(f, line.coords, (tuple(Fraction(x) for x in z1),
                                                       tuple(Fraction(x) for x in z2)), L_inf)


def is_bitangent_line(f: Quartic, line: ProjLine) -> bool:
    """Exact test that a rational line is a bitangent: f|_L is a constant times a square."""
    bq = restrict_to_line(f, line).coeffs
    if all(c == 0 for c in bq):
        return False
    c0, c1, c2, c3, c4 = (Fraction(c) for c in bq)
    if c4 == 0 and c0 != 0:
        c0, c1, c2, c3, c4 = c4, c3, c2, c1, c0
    if c4 == 0:
        return c1 == 0 and c3 == 0
    g1 = c3**3 - 4 * c2 * c3 * c4 + 8 * c1 * c4**2
    g2 = (4 * c2 * c4 - c3**2) ** 2 - 64 * c0 * c4**3
    return g1 == 0 and g2 == 0


__all__ = [
    "GWClass", "ONE", "MINUS_ONE", "StandardChartData", "qtype", "qtypes", "signed_count",
    "gw_report", "standard_chart", "standard_chart_from_points", "exact_standard_chart",
    "local_index", "local_index_of", "jacobian_matrix", "rhs_value", "det4", "is_bitangent_line",
]
