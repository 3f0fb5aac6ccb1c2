"""Grates, the dual grate arrangement and the sweep over lines at infinity.

With a reference line M, each real split bitangent L has a grate: the affine
segment (in the chart where M is at infinity) joining its two tangency points.
For another line at infinity l, the type of L flips exactly when l separates
the two endpoints, so

    s_l = s_M - 2 * sum(Qtype_M(L) for L whose grate meets l).

Lines through the dual point [M] form pencils l_c = n + c*M with n = (n1, n2, 0);
along such a pencil an endpoint P (normalized with M(P) = 1) changes side at
c = -(n . P).  All regions of the dual arrangement are reached by sweeping one
pencil per open interval between critical directions (the directions of
segments joining two endpoints).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import HypothesisError, UndecidableError
from .numeric.intervals import RInterval, precision_cap
from .quartic import ProjectiveMap, ProjLine, Quartic, apply_map, cross
from .qtype import GWClass, _exact_linf_meets, qtypes, signed_count
from .solver import Bitangent, BitangentSet, compute_bitangents

CONJECTURED = frozenset({0, 2, 4, 6, 8})
CLUSTER_TOL = Fraction(1, 2**60)
M_RETRIES = 6


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator (then numerator) in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    return _simplest_positive(lo, hi)


def _simplest_positive(lo: Fraction, hi: Fraction | None) -> Fraction:
    # open interval (lo, hi) with 0 <= lo, hi = None meaning +infinity
    n = floor(lo) + 1
    if hi is None or n < hi:
        return Fraction(n)
    fl = floor(lo)
    # lo and hi lie in [fl, fl + 1]
    inner_lo = 1 / (hi - fl)
    inner_hi = None if lo == fl else 1 / (lo - fl)
    return fl + 1 / _simplest_positive(inner_lo, inner_hi)


# ---------------------------------------------------------------------------
# grates
# ---------------------------------------------------------------------------

def _as_line(L) -> ProjLine:
    return L if isinstance(L, ProjLine) else ProjLine(*L)


def _dot(row, vec):
    acc = None
    for c, v in zip(row, vec):
        if c == 0:
            continue
        term = v * c
        acc = term if acc is None else acc + term
    return acc


@dataclass
class Grate:
    """Segment joining the tangency points of a real split bitangent, in the chart of M."""

    bitangent: Bitangent
    M: ProjLine
    qtype_at_M: GWClass
    _cache: dict = field(default_factory=dict, repr=False)

    def endpoints(self, prec: int | None = None) -> tuple:
        """Points P1, P2 (3-vectors of RInterval) normalized so that M(P) = 1."""
        prec = max(prec or 0, self.bitangent.frame.base_prec)
        if prec not in self._cache:
            pts = []
            for X in self.bitangent.state(prec).X:
                m = _dot(self.M.coords, X)
                if m.contains_zero():
                    raise UndecidableError()
                pts.append(tuple(x / m for x in X))
            self._cache[prec] = tuple(pts)
        return self._cache[prec]

    def affine_endpoints(self, prec: int | None = None) -> tuple:
        """(x, y) coordinates of the endpoints."""
        return tuple((P[0], P[1]) for P in self.endpoints(prec))

    def side_signs(self, line: ProjLine, prec: int) -> tuple:
        P1, P2 = self.endpoints(prec)
        return _dot(line.coords, P1).sign(), _dot(line.coords, P2).sign()

    def meets(self, line: ProjLine) -> bool:
        """Certified test that line separates the two endpoints."""
        prec = self.bitangent.frame.base_prec
        cap = max(precision_cap(), prec)
        checked = False
        while prec <= cap:
            s1, s2 = self.side_signs(line, prec)
            if s1 in (1, -1) and s2 in (1, -1):
                return s1 != s2
            if not checked and prec >= 2 * self.bitangent.frame.base_prec:
                checked = True
                if _exact_linf_meets(self.bitangent, line):
                    raise HypothesisError("L_inf passes through a grate endpoint")
            prec *= 2
        raise UndecidableError()


def _default_M() -> ProjLine:
    return ProjLine(0, 0, 1)


def grates(f: Quartic, M=None, bts: BitangentSet | None = None, seed: int = 0) -> list[Grate]:
    """One grate per real split (non-hyperflex) bitangent."""
    M = _as_line(M) if M is not None else _default_M()
    bts = bts if bts is not None else compute_bitangents(f, seed=seed)
    out = []
    for bt, q in qtypes(f, M, bts):
        if bt.is_split and not bt.hyperflex:
            out.append(Grate(bt, M, q))
    return out


def transform_count(s_M: int, gs: list[Grate], L_inf) -> int:
    """s_{L_inf} from s_M by flipping the grates met by L_inf."""
    line = _as_line(L_inf)
    s = s_M
    for g in gs:
        if g.meets(line):
            s -= 2 * g.qtype_at_M.signature
    return s


@dataclass
class DualGrateArrangement:
    """Dual lines of grate endpoints; vertices are the lines joining two endpoints."""

    M: ProjLine
    grates: list[Grate]

    @property
    def base_point(self) -> tuple:
        return self.M.coords

    def lines(self, prec: int | None = None) -> list[tuple]:
        out = []
        for g in self.grates:
            out.extend(g.endpoints(prec))
        return out

    def vertices(self, prec: int | None = None) -> list[tuple]:
        ls = self.lines(prec)
        return [cross(ls[i], ls[j]) for i in range(len(ls)) for j in range(i + 1, len(ls))]


# ---------------------------------------------------------------------------
# pencils through [M]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountBand:
    """Counts along the pencil of lines y = slope*x + beta (in the chart of M).

    ``breakpoints`` are enclosures of the beta values where the line passes a
    grate endpoint, in increasing order; ``counts`` has one more entry than
    ``breakpoints`` (counts[0] below the first breakpoint); ``witnesses`` are
    rational beta values, one inside each interval.
    """

    slope: Fraction
    breakpoints: tuple
    counts: tuple
    witnesses: tuple
    M: ProjLine
    requested_slope: Fraction | None = None

    def line(self, beta) -> ProjLine:
        return _pencil_line(self.M, self.slope, Fraction(beta))

    def count_at(self, beta) -> int:
        beta = Fraction(beta)
        for k, bp in enumerate(self.breakpoints):
            if beta < bp.lo:
                return self.counts[k]
            if beta <= bp.hi:
                raise HypothesisError("beta is on a breakpoint")
        return self.counts[-1]


def _pencil_line(M: ProjLine, slope, beta) -> ProjLine:
    """The line -slope*x + y - beta*M (slope None means the vertical pencil x - beta*M)."""
    if slope is None:
        n = (Fraction(1), Fraction(0), Fraction(0))
    else:
        n = (-Fraction(slope), Fraction(1), Fraction(0))
    return ProjLine(*(n[i] - beta * Fraction(M.coords[i]) for i in range(3)))


def _breakpoints(gs: list[Grate], slope, prec: int) -> list[tuple[RInterval, int]]:
    """(beta enclosure, grate index) for every endpoint."""
    out = []
    for gi, g in enumerate(gs):
        for P in g.endpoints(prec):
            beta = P[0] if slope is None else P[1] - P[0] * Fraction(slope)
            out.append((beta, gi))
    return out


def _sorted_breakpoints(gs: list[Grate], slope):
    """Breakpoints sorted and certified pairwise distinct, or None at the precision cap."""
    if not gs:
        return []
    prec = max((g.bitangent.frame.base_prec for g in gs), default=64)
    cap = max(precision_cap(), prec)
    while prec <= cap:
        raw = _breakpoints(gs, slope, prec)
        p = max(b.prec for b, _ in raw)
        bps = sorted(((b.with_prec(p), gi) for b, gi in raw), key=lambda t: t[0].mantissas)
        if all(bps[k][0].mantissas[1] < bps[k + 1][0].mantissas[0] for k in range(len(bps) - 1)):
            return bps
        prec *= 2
    return None


def _sweep_counts(s_M: int, gs: list[Grate], bps) -> list[int]:
    straddle = [0] * len(gs)
    counts = [s_M]
    s = s_M
    for _, gi in bps:
        straddle[gi] ^= 1
        q = gs[gi].qtype_at_M.signature
        s += -2 * q if straddle[gi] else 2 * q
        counts.append(s)
    return counts


def _witness(bps, k: int) -> Fraction:
    """A rational intercept strictly inside the k-th interval of the sorted breakpoints."""
    if not bps:
        return Fraction(0)
    if k == 0:
        return Fraction(floor(bps[0][0].lo) - 1)
    if k == len(bps):
        return Fraction(floor(bps[-1][0].hi) + 1)
    return simplest_between(bps[k - 1][0].hi, bps[k][0].lo)


def _band(s_M: int, gs: list[Grate], M: ProjLine, slope) -> CountBand | None:
    bps = _sorted_breakpoints(gs, slope)
    if bps is None:
        return None
    counts = _sweep_counts(s_M, gs, bps)
    wit = [_witness(bps, k) for k in range(len(counts))]
    if counts[-1] != s_M:
        raise AssertionError("pencil sweep does not return to s_M")
    return CountBand(None if slope is None else Fraction(slope), tuple(b for b, _ in bps),
                     tuple(counts), tuple(wit), M)


@dataclass
class _Setup:
    f: Quartic
    bts: BitangentSet
    M: ProjLine
    s_M: int
    grates: list[Grate]
    perturbed: bool


def _setup(f: Quartic, bts: BitangentSet | None, seed: int, M=None) -> _Setup:
    bts = bts if bts is not None else compute_bitangents(f, seed=seed)
    rng = random.Random(seed)
    M = _as_line(M) if M is not None else _default_M()
    perturbed = False
    for _ in range(M_RETRIES):
        try:
            gs = grates(f, M, bts)
            s_M = signed_count(f, M, bts)
            return _Setup(f, bts, M, s_M, gs, perturbed)
        except HypothesisError:
            # M meets a tangency point: move it slightly within the pencil family
            M = ProjLine(Fraction(rng.randint(-99, 99), 1000), Fraction(rng.randint(-99, 99), 1000), 1)
            perturbed = True
    raise HypothesisError("no admissible reference line M found")


def count_band(f: Quartic, slope, bts: BitangentSet | None = None, seed: int = 0, M=None) -> CountBand:
    """Signed counts along the pencil of lines with the given slope."""
    st = _setup(f, bts, seed, M)
    requested = Fraction(slope)
    s = requested
    rng = random.Random(seed + 1)
    for attempt in range(8):
        band = _band(st.s_M, st.grates, st.M, s)
        if band is not None:
            if attempt:
                return CountBand(band.slope, band.breakpoints, band.counts, band.witnesses, band.M, requested)
            return band
        s = requested + Fraction(rng.randint(1, 99), 2 ** (30 + attempt))
    raise UndecidableError()


def _critical_slopes(gs: list[Grate]) -> tuple[list[tuple[Fraction, Fraction]], bool]:
    """Enclosures of the slopes of segments joining two endpoints, and whether any is vertical."""
    pts = []
    for g in gs:
        pts.extend(g.affine_endpoints())
    slopes = []
    vertical = False
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            if dx.contains_zero():
                vertical = True
                continue
            s = dy / dx
            slopes.append((s.lo, s.hi))
    return slopes, vertical


def _sample_slopes(gs: list[Grate]) -> list:
    """One rational slope in each open interval between clustered critical slopes, plus vertical."""
    slopes, vertical = _critical_slopes(gs)
    if not slopes:
        return [Fraction(0), None]
    slopes.sort()
    clusters = []
    lo, hi = slopes[0]
    for a, b in slopes[1:]:
        if a <= hi + CLUSTER_TOL:
            hi = max(hi, b)
        else:
            clusters.append((lo, hi))
            lo, hi = a, b
    clusters.append((lo, hi))
    samples = [simplest_between(clusters[k][1], clusters[k + 1][0]) for k in range(len(clusters) - 1)]
    samples.append(Fraction(floor(clusters[-1][1]) + 1))
    samples.append(Fraction(floor(clusters[0][0]) - 1))
    if not vertical:
        samples.append(None)
    return samples


@dataclass
class AttainableCounts:
    counts: frozenset
    witnesses: dict
    M: ProjLine
    s_M: int
    n_pencils: int
    n_grates: int
    perturbed_M: bool
    skipped_pencils: int = 0

    def as_dict(self) -> dict:
        return {
            "counts": sorted(self.counts),
            "witnesses": {str(k): [str(c) for c in v.coords] for k, v in sorted(self.witnesses.items())},
            "M": [str(c) for c in self.M.coords],
            "s_M": self.s_M,
            "pencils": self.n_pencils,
            "grates": self.n_grates,
            "perturbed_M": self.perturbed_M,
            "skipped_pencils": self.skipped_pencils,
        }


def all_signed_counts(f: Quartic, bts: BitangentSet | None = None, seed: int = 0, M=None) -> AttainableCounts:
    """Every signed count attained by some line at infinity, with one witness line each."""
    st = _setup(f, bts, seed, M)
    counts = {st.s_M: st.M}
    skipped = 0
    samples = _sample_slopes(st.grates) if st.grates else []
    for slope in samples:
        bps = _sorted_breakpoints(st.grates, slope)
        if bps is None:
            skipped += 1
            continue
        sweep = _sweep_counts(st.s_M, st.grates, bps)
        if sweep[-1] != st.s_M:
            raise AssertionError("pencil sweep does not return to s_M")
        for k, c in enumerate(sweep):
            if c not in counts:
                counts[c] = _pencil_line(st.M, slope, _witness(bps, k))
    return AttainableCounts(frozenset(counts), counts, st.M, st.s_M, len(samples), len(st.grates),
                            st.perturbed, skipped)


# ---------------------------------------------------------------------------
# conjecture scan
# ---------------------------------------------------------------------------

BANNER = "randomized search: reports counterexamples only, not a proof"


@dataclass
class ScanEntry:
    name: str
    sample: int
    counts: tuple = ()
    witnesses: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def flagged(self) -> bool:
        return self.error is None and not set(self.counts) <= CONJECTURED


@dataclass
class ScanReport:
    entries: list
    banner: str = BANNER

    @property
    def counterexamples(self) -> list:
        return [e for e in self.entries if e.flagged]

    @property
    def failures(self) -> list:
        return [e for e in self.entries if e.error is not None]

    def tally(self) -> dict:
        out: dict = {}
        for e in self.entries:
            if e.error is None:
                key = tuple(sorted(e.counts))
                out[key] = out.get(key, 0) + 1
        return out

    def as_dict(self) -> dict:
        return {
            "banner": self.banner,
            "scanned": len(self.entries),
            "failures": [{"name": e.name, "sample": e.sample, "error": e.error} for e in self.failures],
            "counterexamples": [
                {"name": e.name, "sample": e.sample, "counts": list(e.counts),
                 "witnesses": {str(k): [str(c) for c in v.coords] for k, v in e.witnesses.items()}}
                for e in self.counterexamples
            ],
            "tally": {",".join(map(str, k)): v for k, v in sorted(self.tally().items())},
        }


def conjecture_scan(corpus, samples_per_quartic: int = 1, seed: int = 0) -> ScanReport:
    """Run all_signed_counts on each quartic and on random projective images of it.

    Sample 0 is the quartic itself.  Failures are recorded, never raised.
    """
    rng = random.Random(seed)
    entries = []
    for idx, item in enumerate(corpus):
        name, f = item if isinstance(item, tuple) else (f"q{idx}", item)
        for k in range(samples_per_quartic):
            g = f if k == 0 else apply_map(f, ProjectiveMap.random(rng, 3))
            try:
                res = all_signed_counts(g, seed=seed)
                entries.append(ScanEntry(name, k, tuple(sorted(res.counts)), dict(res.witnesses)))
            except Exception as exc:  # noqa: BLE001 - the scan logs and continues
                entries.append(ScanEntry(name, k, error=f"{type(exc).__name__}: {exc}"))
    return ScanReport(entries)


__all__ = [
    "Grate", "DualGrateArrangement", "CountBand", "AttainableCounts", "ScanEntry", "ScanReport",
    "grates", "transform_count", "all_signed_counts", "count_band", "conjecture_scan",
    "simplest_between", "CONJECTURED", "BANNER",
]
