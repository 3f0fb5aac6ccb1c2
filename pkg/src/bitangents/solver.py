"""All 28 bitangents of a smooth plane quartic by elimination.

In a random integral frame h = f o adj(g) every bitangent has the form
L_{a,b} = V(y1 + a*y2 + b*y3).  Writing f|_L = sum q_j y2^j y3^(4-j), the line is
a bitangent iff q = q4 * (y2^2 + p*y2*y3 + r*y3^2)^2, which after eliminating
the square root of q4 leaves two conditions G1(a, b) = G2(a, b) = 0.  Their
resultant in b, stripped of the spurious factors shared with q4, is the
degree-28 eliminant whose roots are the a-values of the bitangents.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

import mpmath

from .errors import GenericityError, NotSmoothError, UndecidableError
from .numeric.intervals import DEFAULT_PREC, CInterval, RInterval, precision_cap
from .numeric.polynomials import (
    MultiPoly,
    UniPoly,
    ipoly_deriv,
    ipoly_divexact,
    ipoly_eval,
    ipoly_gcd,
    ipoly_mul,
    ipoly_primitive,
)
from .numeric.resultants import resultant_dense
from .numeric.roots import RealRoot, complex_root_clusters
from .quartic import (
    ProjectiveMap,
    Quartic,
    apply_map_integral,
    binary_restriction,
    is_smooth,
)

RETRY_CAP = 8
EXPECTED_DEGREE = 28
_GUARD = 32


class Reality(str, Enum):
    REAL_SPLIT = "real_split"
    REAL_NON_SPLIT = "real_non_split"
    COMPLEX_PAIR = "complex_pair_representative"


class _NeedPrecision(Exception):
    pass


# ---------------------------------------------------------------------------
# square conditions
# ---------------------------------------------------------------------------

def restriction_coefficients(f: Quartic, chart: int = 0) -> list[MultiPoly]:
    """q_0..q_4 in Q[a, b] for the line V(y_k + a*y_i + b*y_j), k = chart, i < j the others.

    q_j multiplies y_i^j * y_j^(4-j).
    """
    keep = [i for i in range(3) if i != chart]
    a, b = MultiPoly.gens(2)
    p = [0, 0, 0]
    q = [0, 0, 0]
    p[chart] = -a
    q[chart] = -b
    p[keep[0]] = 1
    q[keep[1]] = 1
    cs = binary_restriction(f.terms(), p, q)
    return [c if isinstance(c, MultiPoly) else MultiPoly.const(c, 2) for c in cs]


def conditions_from_q(qs: list[MultiPoly]) -> tuple[MultiPoly, MultiPoly]:
    q0, q1, q2, q3, q4 = qs
    g1 = q3**3 - q2 * q3 * q4 * 4 + q1 * q4**2 * 8
    g2 = (q2 * q4 * 4 - q3**2) ** 2 - q0 * q4**3 * 64
    return g1, g2


def square_conditions(f: Quartic, chart: int = 0) -> tuple[MultiPoly, MultiPoly]:
    """Perfect-square conditions (G1, G2) on the parameters (a, b) of V(y_k + a*y_i + b*y_j).

    Where q4 != 0, f|_L is q4 times the square of a monic binary quadratic
    exactly when G1 = G2 = 0.
    """
    return conditions_from_q(restriction_coefficients(f, chart))


def _dense_ab(p: MultiPoly) -> list[list[int]]:
    """Polynomial in (a, b) as a list over powers of b of dense Z[a] lists."""
    db = p.degree(1)
    out = [[] for _ in range(max(db, 0) + 1)]
    for (ea, eb), c in p.terms.items():
        row = out[eb]
        if len(row) <= ea:
            row.extend([0] * (ea + 1 - len(row)))
        row[ea] += int(c)
    for row in out:
        while row and row[-1] == 0:
            row.pop()
    return out


# ---------------------------------------------------------------------------
# elimination in a fixed frame
# ---------------------------------------------------------------------------

@dataclass
class _Frame:
    """Elimination data in the witness frame h = f o adj(g)."""

    g: ProjectiveMap
    h: Quartic
    qs: list[MultiPoly]
    eliminant: list[int]
    r1: list[int]
    r0: list[int]
    hpoly: MultiPoly  # 3 q3^2 - 8 q2 q4: sign of the tangency discriminant
    _hyperflex_gcd: list[int] | None = None

    @cached_property
    def base_prec(self) -> int:
        """Starting precision for back-substitution, sized to the subresultant coefficients."""
        bits = max(abs(c).bit_length() for c in self.r0 + self.r1)
        return 64 * (bits // 64 + 2)

    @cached_property
    def adj(self):
        return self.g.adjugate()

    @cached_property
    def gt(self):
        m = self.g.matrix
        return [[m[j][i] for j in range(3)] for i in range(3)]

    def curve_gcd(self, poly: MultiPoly) -> list[int]:
        """gcd of the eliminant with r1^d * poly(a, -r0/r1), d = deg_b poly."""
        dense = _dense_ab(poly)
        d = len(dense) - 1
        acc: list[int] = []
        neg_r0 = [-c for c in self.r0]
        for k, hk in enumerate(dense):
            if not hk:
                continue
            term = hk
            for _ in range(k):
                term = ipoly_mul(term, neg_r0)
            for _ in range(d - k):
                term = ipoly_mul(term, self.r1)
            acc = _add(acc, term)
        return ipoly_gcd(self.eliminant, acc) if acc else list(self.eliminant)

    def vanishes_at(self, poly: MultiPoly, root: RealRoot) -> bool:
        """Exact test that poly(a, b(a)) = 0 at a real root of the eliminant."""
        g = self.curve_gcd(poly)
        if len(g) <= 1:
            return False
        ex = root.exact()
        if ex is not None:
            return ipoly_sign_exact(g, ex) == 0
        lo, hi = root.bracket(8)
        from .numeric.roots import _sign_at  # exact dyadic sign
        return _sign_at(g, lo) != _sign_at(g, hi)

    def hyperflex_gcd(self) -> list[int]:
        """gcd of the eliminant with the discriminant numerator along the curve b = -r0/r1."""
        if self._hyperflex_gcd is None:
            self._hyperflex_gcd = self.curve_gcd(self.hpoly)
        return self._hyperflex_gcd


def ipoly_sign_exact(coeffs: list[int], x: Fraction) -> int:
    v = sum(Fraction(c) * x**i for i, c in enumerate(coeffs))
    return (v > 0) - (v < 0)


def _add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _try_frame(base: Quartic, g: ProjectiveMap) -> _Frame | None:
    h = apply_map_integral(base, g)
    qs = restriction_coefficients(h, 0)
    q4 = qs[4]
    if q4.degree(1) > 0:
        raise AssertionError("q4 must not involve b")
    g1, g2 = conditions_from_q(qs)
    if g1.is_zero() or g2.is_zero() or g1.degree(1) < 1 or g2.degree(1) < 1:
        return None
    prs = resultant_dense(_dense_ab(g1), _dense_ab(g2))
    res = prs.resultant
    if not res:
        return None
    q4d = _dense_ab(q4)[0]
    e = ipoly_primitive(res)
    while True:
        common = ipoly_gcd(e, q4d)
        if len(common) <= 1:
            break
        e = ipoly_divexact(e, common)
    e = ipoly_primitive(e)
    if len(e) - 1 != EXPECTED_DEGREE:
        return None
    if len(ipoly_gcd(e, ipoly_deriv(e))) > 1:
        return None
    sub1 = prs.of_degree(1)
    if sub1 is None or len(sub1) != 2:
        return None
    r0, r1 = sub1
    if not r1 or len(ipoly_gcd(e, r1)) > 1:
        return None
    hpoly = qs[3] ** 2 * 3 - qs[2] * qs[4] * 8
    return _Frame(g, h, qs, e, list(r1), list(r0), hpoly)


# ---------------------------------------------------------------------------
# bitangents
# ---------------------------------------------------------------------------

def _ieval(coeffs: list[int], x: RInterval) -> RInterval:
    acc = None
    for c in reversed(coeffs):
        acc = RInterval._raw(c << x.prec, c << x.prec, x.prec) if acc is None else acc * x + c
    return acc if acc is not None else RInterval(0, 0, x.prec)


class _RealState:
    """Certified enclosures of all derived quantities at one working precision."""

    __slots__ = ("a", "b", "qs", "p", "r", "disc", "t", "Y", "X", "line", "prec")


class Bitangent:
    """A bitangent (L, Z) of a quartic.

    Real bitangents carry refinable certified enclosures: ``line_enclosure``,
    ``points`` and ``tangency`` accept a working precision in bits.  Complex
    bitangents are represented once per conjugate pair by a multiprecision
    approximation.
    """

    def __init__(self, index: int, frame: _Frame, reality: Reality, hyperflex: bool = False,
                 root: RealRoot | None = None, approx=None, multiplicity: int = 1):
        self.index = index
        self.frame = frame
        self.reality = reality
        self.hyperflex = hyperflex
        self.multiplicity = multiplicity
        self.root = root
        self._approx = approx  # (a, b) complex for non-real bitangents
        self._cache: dict[int, _RealState] = {}

    def __repr__(self) -> str:
        return f"Bitangent(#{self.index}, {self.reality.value}, hyperflex={self.hyperflex}, line~{self.line_float()})"

    @property
    def is_real(self) -> bool:
        return self.reality is not Reality.COMPLEX_PAIR

    @property
    def is_split(self) -> bool:
        return self.reality is Reality.REAL_SPLIT

    # -- real machinery -------------------------------------------------
    def _state(self, prec: int) -> _RealState:
        st = self._cache.get(prec)
        if st is not None:
            return st
        st = self._compute_state(prec)
        self._cache[prec] = st
        return st

    def _compute_state(self, prec: int) -> _RealState:
        if self.root is None:
            raise TypeError("complex bitangents have no interval state")
        fr = self.frame
        wp = prec + _GUARD
        a = self.root.enclosure(prec).with_prec(wp)
        r1v = _ieval(fr.r1, a)
        if r1v.contains_zero():
            raise _NeedPrecision
        b = -_ieval(fr.r0, a) / r1v
        qs = [q.evaluate((a, b)) if q.terms else RInterval(0, 0, wp) for q in fr.qs]
        qs = [q if isinstance(q, RInterval) else RInterval(q, q, wp) for q in qs]
        q0, q1, q2, q3, q4 = qs
        if q4.contains_zero():
            raise _NeedPrecision
        p = q3 / (q4 * 2)
        r = (q2 * q4 * 4 - q3.square()) / (q4.square() * 8)
        disc = p.square() - r * 4
        st = _RealState()
        st.prec = prec
        st.a, st.b, st.qs, st.p, st.r, st.disc = a, b, qs, p, r, disc
        if self.hyperflex:
            t1 = t2 = -p / 2
        elif self.reality is Reality.REAL_SPLIT:
            if disc.sign() != 1:
                raise _NeedPrecision
            s = disc.sqrt()
            t1, t2 = (-p - s) / 2, (-p + s) / 2
        else:
            if disc.sign() != -1:
                raise _NeedPrecision
            s = (-disc).sqrt()
            t1 = CInterval(-p / 2, -s / 2)
            t2 = CInterval(-p / 2, s / 2)
        st.t = (t1, t2)
        one = RInterval(1, 1, wp)
        ys = [(-(a * t) - b if not isinstance(t, CInterval) else (t * (-a)) - b, t, one) for t in (t1, t2)]
        st.Y = ys
        adj = fr.adj
        st.X = [tuple(_lin(adj[i], y) for i in range(3)) for y in ys]
        gt = fr.gt
        lv = (one, a, b)
        st.line = tuple(_lin(gt[i], lv) for i in range(3))
        return st

    def state(self, prec: int = DEFAULT_PREC) -> _RealState:
        """State at the smallest precision >= prec where every quantity is certified."""
        prec = max(prec, self.frame.base_prec)
        cap = max(precision_cap(), prec)
        while prec <= cap:
            try:
                return self._state(prec)
            except (_NeedPrecision, ZeroDivisionError):
                prec *= 2
        raise UndecidableError()

    def line_enclosure(self, prec: int = DEFAULT_PREC) -> tuple:
        """Enclosure of (unnormalized) dual coordinates of L in the input frame."""
        if self.root is None:
            return self.line_approx()
        return self.state(prec).line

    def points(self, prec: int = DEFAULT_PREC):
        """Tangency points z1, z2 in the input frame (RInterval or CInterval coordinates)."""
        if self.root is None:
            return self.points_approx()
        return tuple(self.state(prec).X)

    def tangency(self, prec: int = DEFAULT_PREC) -> tuple:
        """(1, p, r): Z = V(y2^2 + p*y2*y3 + r*y3^2) on L in the witness frame."""
        if self.root is None:
            raise TypeError("tangency quadratic is only certified for real bitangents")
        st = self.state(prec)
        return (RInterval(1, 1, st.p.prec), st.p, st.r)

    def chart_parameters(self, prec: int = DEFAULT_PREC) -> tuple:
        """(a, b) with L = V(y1 + a*y2 + b*y3) in the witness frame."""
        if self.root is None:
            return self._approx
        st = self.state(prec)
        return st.a, st.b

    def normalized_line(self, width=Fraction(1, 2**40), pivot: int | None = None) -> tuple:
        """Line coordinates divided by the pivot coordinate, each of width <= width."""
        prec = DEFAULT_PREC
        cap = precision_cap()
        while prec <= cap:
            try:
                line = self.line_enclosure(prec)
                k = pivot if pivot is not None else max(range(3), key=lambda i: abs(line[i].mid()))
                if line[k].contains_zero():
                    raise ZeroDivisionError
                out = tuple(line[i] / line[k] if i != k else RInterval(1, 1, line[k].prec) for i in range(3))
                if all(c.width() <= width for c in out):
                    return out
            except ZeroDivisionError:
                pass
            prec *= 2
        raise UndecidableError()

    # -- approximations -------------------------------------------------
    def line_approx(self) -> tuple:
        """Dual coordinates as mpmath numbers (complex for non-real bitangents)."""
        fr = self.frame
        if self.root is not None:
            prec = DEFAULT_PREC
            while True:
                line = self.state(prec).line
                scale = max(c.magnitude() for c in line)
                if all(c.width() <= scale / 2**80 for c in line) or prec >= precision_cap():
                    break
                prec = self.state(prec).prec * 2
            return tuple(mpmath.mpf(c.mid().numerator) / c.mid().denominator for c in line)
        a, b = self._approx
        lv = (mpmath.mpc(1), a, b)
        return tuple(sum(fr.gt[i][j] * lv[j] for j in range(3)) for i in range(3))

    def line_float(self) -> tuple:
        vals = self.line_approx()
        k = max(range(3), key=lambda i: abs(vals[i]))
        out = [v / vals[k] for v in vals]
        if self.root is not None:
            return tuple(float(v) for v in out)
        return tuple(complex(v) for v in out)

    def points_approx(self):
        if self.root is not None:
            return tuple(tuple(complex(c) for c in x) for x in self.points())
        fr = self.frame
        a, b = self._approx
        qs = [_mp_eval2(q, a, b) for q in fr.qs]
        q0, q1, q2, q3, q4 = qs
        p = q3 / (2 * q4)
        r = (4 * q2 * q4 - q3**2) / (8 * q4**2)
        s = mpmath.sqrt(p**2 - 4 * r)
        pts = []
        for t in ((-p - s) / 2, (-p + s) / 2):
            y = (-a * t - b, t, mpmath.mpc(1))
            pts.append(tuple(sum(fr.adj[i][j] * y[j] for j in range(3)) for i in range(3)))
        return tuple(pts)


def _lin(row, vec):
    acc = None
    for c, v in zip(row, vec):
        if c == 0:
            continue
        term = v * c
        acc = term if acc is None else acc + term
    if acc is None:
        v0 = vec[0]
        prec = v0.prec if hasattr(v0, "prec") else DEFAULT_PREC
        return RInterval(0, 0, prec)
    return acc


def _mp_eval2(p: MultiPoly, a, b):
    acc = mpmath.mpc(0)
    for (ea, eb), c in p.terms.items():
        acc += int(c) * a**ea * b**eb
    return acc


@dataclass
class BitangentSet:
    """The 28 bitangents of a quartic, complex ones stored once per conjugate pair."""

    quartic: Quartic
    bitangents: list[Bitangent]
    witness: ProjectiveMap
    eliminant: UniPoly
    seed: int
    attempts: int
    n_complex_pairs: int
    _frame: _Frame = field(repr=False, default=None)
    _complex_loaded: bool = field(repr=False, default=False)

    @property
    def quartic_hash(self) -> str:
        return quartic_digest(self.quartic)

    @property
    def total_multiplicity(self) -> int:
        real = sum(bt.multiplicity for bt in self.real())
        return real + 2 * self.n_complex_pairs

    def real(self) -> list[Bitangent]:
        return [bt for bt in self.bitangents if bt.is_real]

    def split(self) -> list[Bitangent]:
        return [bt for bt in self.bitangents if bt.reality is Reality.REAL_SPLIT]

    def non_split(self) -> list[Bitangent]:
        return [bt for bt in self.bitangents if bt.reality is Reality.REAL_NON_SPLIT]

    def complex_pairs(self) -> list[Bitangent]:
        """Complex representatives, computed on first use (approximations only)."""
        if not self._complex_loaded:
            self._load_complex()
        return [bt for bt in self.bitangents if bt.reality is Reality.COMPLEX_PAIR]

    def all(self) -> list[Bitangent]:
        self.complex_pairs()
        return list(self.bitangents)

    def _load_complex(self) -> None:
        fr = self._frame
        clusters = complex_root_clusters(self.eliminant, seed=self.seed)
        idx = len(self.bitangents)
        prec = 64 + max(abs(c).bit_length() for c in fr.eliminant)
        with mpmath.workprec(prec):
            for z, mult in clusters:
                if z.imag > 0:
                    a = z
                    b = -_mp_eval_dense(fr.r0, a) / _mp_eval_dense(fr.r1, a)
                    self.bitangents.append(
                        Bitangent(idx, fr, Reality.COMPLEX_PAIR, approx=(a, b), multiplicity=mult))
                    idx += 1
        self._complex_loaded = True

    def __len__(self) -> int:
        return len(self.real()) + 2 * self.n_complex_pairs


def _mp_eval_dense(coeffs, x):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def quartic_digest(f: Quartic) -> str:
    text = ";".join(str(c) for c in f.coeffs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _classify(bt: Bitangent, cap: int) -> None:
    """Certify split / non-split / hyperflex for a real bitangent."""
    fr = bt.frame
    prec = fr.base_prec
    cap = max(cap, prec)
    checked_exact = False
    while prec <= cap:
        try:
            a = bt.root.enclosure(prec).with_prec(prec + _GUARD)
            r1v = _ieval(fr.r1, a)
            if r1v.contains_zero():
                raise _NeedPrecision
            b = -_ieval(fr.r0, a) / r1v
            s = fr.hpoly.evaluate((a, b))
            s = s.sign() if isinstance(s, RInterval) else (s > 0) - (s < 0)
        except (_NeedPrecision, ZeroDivisionError):
            s = None
        if s == 1:
            bt.reality = Reality.REAL_SPLIT
            return
        if s == -1:
            bt.reality = Reality.REAL_NON_SPLIT
            return
        if not checked_exact and prec >= 4 * fr.base_prec:
            checked_exact = True
            if _is_hyperflex(bt):
                bt.reality = Reality.REAL_SPLIT
                bt.hyperflex = True
                return
        prec *= 2
    if not checked_exact and _is_hyperflex(bt):
        bt.reality = Reality.REAL_SPLIT
        bt.hyperflex = True
        return
    raise UndecidableError()


def _is_hyperflex(bt: Bitangent) -> bool:
    return bt.frame.vanishes_at(bt.frame.hpoly, bt.root)


def compute_bitangents(f: Quartic, seed: int = 0, retries: int = RETRY_CAP) -> BitangentSet:
    """Certified bitangents of a smooth quartic (see module docstring)."""
    if not is_smooth(f):
        raise NotSmoothError("quartic is not smooth")
    base = f.integral()
    rng = random.Random(seed)
    frame = None
    attempt = 0
    for attempt in range(retries + 1):
        g = ProjectiveMap.random(rng, 10 + 4 * attempt)
        frame = _try_frame(base, g)
        if frame is not None:
            break
    if frame is None:
        raise GenericityError(f"no generic frame after {retries} retries")
    cap = precision_cap()
    roots = RealRoot.all_roots(UniPoly(frame.eliminant))
    bts = []
    for i, root in enumerate(roots):
        bt = Bitangent(i, frame, Reality.REAL_SPLIT, root=root)
        _classify(bt, cap)
        bts.append(bt)
    n_pairs, rem = divmod(EXPECTED_DEGREE - len(roots), 2)
    assert rem == 0
    out = BitangentSet(f, bts, g, UniPoly(frame.eliminant), seed, attempt, n_pairs, frame)
    for bt in bts:
        verify_residual(bt)
    return out


def verify_residual(bt: Bitangent, prec: int = DEFAULT_PREC) -> bool:
    """Check f|_L - q4 * (tangency)^2 = 0 within intervals; raises if excluded."""
    st = bt.state(prec)
    q0, q1, q2, q3, q4 = st.qs
    res1 = q1 - st.p * st.r * q4 * 2
    res0 = q0 - st.r.square() * q4
    if not (res1.contains_zero() and res0.contains_zero()):
        raise AssertionError(f"bitangent #{bt.index} fails the residual check")
    return True


def tangency_points(bt: Bitangent, prec: int = DEFAULT_PREC):
    """Roots of the tangency quadratic as points of P^2 (input frame)."""
    return bt.points(prec)
