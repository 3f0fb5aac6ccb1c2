import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitangents.arrangement import (
    BANNER,
    CONJECTURED,
    DualGrateArrangement,
    all_signed_counts,
    conjecture_scan,
    count_band,
    grates,
    simplest_between,
    transform_count,
)
from bitangents.numeric.polynomials import MultiPoly
from bitangents.quartic import ProjectiveMap, ProjLine, Quartic, apply_map, is_smooth
from bitangents.qtype import signed_count
from bitangents.solver import compute_bitangents

VZ = ProjLine(0, 0, 1)
# pencil y = 1.25 x + beta and reference intercepts of L0..L8
REFERENCE_LINES = {0: Fraction("-0.3075"), 2: Fraction("1.415"), 4: Fraction(0), 6: Fraction("-1.233"), 8: Fraction("-1.296")}


def _pencil(beta):
    return ProjLine(Fraction(-5, 4), 1, -beta)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=60),
       st.fractions(min_value=Fraction(1, 60), max_value=5, max_denominator=60))
def test_simplest_between(lo, width):
    hi = lo + width
    q = simplest_between(lo, hi)
    assert lo < q < hi
    for d in range(1, q.denominator):
        # nothing with a smaller denominator fits
        n = (lo * d).__floor__() + 1
        assert not Fraction(n, d) < hi


def test_simplest_between_rejects_empty():
    with pytest.raises(ValueError):
        simplest_between(Fraction(1), Fraction(1))


def test_grate_counts(trott_curve, trott_bts, fermat_curve, fermat_bts):
    assert len(grates(trott_curve, VZ, trott_bts)) == 28
    assert grates(fermat_curve, VZ, fermat_bts) == []


def test_hyperflex_has_no_grate():
    x, y, z = MultiPoly.gens(3)
    rng = random.Random(4)
    while True:
        cubic = MultiPoly({}, 3)
        for e in [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2), (0, 3, 0), (0, 2, 1),
                  (0, 1, 2), (0, 0, 3)]:
            cubic = cubic + MultiPoly({e: rng.randint(-4, 4)}, 3)
        f = Quartic(y**4 + x * cubic)
        if is_smooth(f):
            break
    bts = compute_bitangents(f)
    assert sum(bt.hyperflex for bt in bts.real()) == 1
    gs = grates(f, ProjLine(1, 3, 7), bts)
    assert len(gs) == len(bts.split()) - 1
    assert not any(g.bitangent.hyperflex for g in gs)


def test_dual_arrangement_sizes(trott_curve, trott_bts):
    arr = DualGrateArrangement(VZ, grates(trott_curve, VZ, trott_bts))
    assert len(arr.lines()) == 56
    assert len(arr.vertices()) == 56 * 55 // 2


def test_far_line_meets_no_grate(trott_curve, trott_bts):
    gs = grates(trott_curve, VZ, trott_bts)
    far = ProjLine(1, 0, 100)
    assert not any(g.meets(far) for g in gs)
    assert transform_count(4, gs, far) == signed_count(trott_curve, far, trott_bts) == 4


def test_transform_count_matches_direct_count(trott_curve, trott_bts):
    gs = grates(trott_curve, VZ, trott_bts)
    rng = random.Random(17)
    for _ in range(12):
        line = ProjLine(Fraction(rng.randint(-40, 40), 20), Fraction(rng.randint(-40, 40), 20), 1)
        assert transform_count(4, gs, line) == signed_count(trott_curve, line, trott_bts)


def test_trott_band_slope_five_quarters(trott_curve, trott_bts):
    band = count_band(trott_curve, Fraction(5, 4), trott_bts)
    assert band.slope == Fraction(5, 4)
    assert set(band.counts) == {0, 2, 4, 6, 8}
    assert band.counts[0] == band.counts[-1] == 4
    for count, beta in REFERENCE_LINES.items():
        assert band.count_at(beta) == count
    gs = grates(trott_curve, VZ, trott_bts)
    for c, w in zip(band.counts, band.witnesses):
        assert transform_count(4, gs, band.line(w)) == c


@pytest.mark.parametrize("count", sorted(REFERENCE_LINES))
def test_trott_reference_lines_direct(trott_curve, trott_bts, count):
    assert signed_count(trott_curve, _pencil(REFERENCE_LINES[count]), trott_bts) == count


def test_band_without_grates_is_constant(fermat_curve, fermat_bts):
    band = count_band(fermat_curve, Fraction(2), fermat_bts)
    assert band.breakpoints == () and band.counts == (4,)


def test_all_signed_counts_trott(trott_curve, trott_bts):
    res = all_signed_counts(trott_curve, trott_bts)
    assert res.counts == CONJECTURED
    assert res.s_M == 4 and res.n_grates == 28 and not res.perturbed_M
    for c, line in res.witnesses.items():
        assert signed_count(trott_curve, line, trott_bts) == c


def test_all_signed_counts_fermat(fermat_curve, fermat_bts):
    assert all_signed_counts(fermat_curve, fermat_bts).counts == {4}


def test_all_signed_counts_projectively_invariant(trott_curve):
    g = ProjectiveMap([[2, 1, 0], [0, 1, -1], [1, 0, 3]])
    h = apply_map(trott_curve, g)
    res = all_signed_counts(h)
    assert res.counts == CONJECTURED
    for c, line in res.witnesses.items():
        assert signed_count(h, line) == c


def test_conjecture_scan(trott_curve, fermat_curve):
    empty = conjecture_scan([])
    assert empty.entries == [] and empty.as_dict()["scanned"] == 0
    report = conjecture_scan([("trott", trott_curve), ("fermat", fermat_curve)])
    assert report.banner == BANNER
    assert report.counterexamples == [] and report.failures == []
    assert report.tally() == {(0, 2, 4, 6, 8): 1, (4,): 1}
