import random
from fractions import Fraction

import mpmath
import pytest

from bitangents.corpus import random_quartic
from bitangents.errors import NotSmoothError
from bitangents.numeric.polynomials import MultiPoly, UniPoly
from bitangents.numeric.roots import isolate_real_roots
from bitangents.quartic import ProjLine, Quartic, is_smooth, restrict_to_line
from bitangents.solver import Reality, compute_bitangents, square_conditions, verify_residual

from conftest import poly_from_terms


def test_square_conditions_match_symbolic_division(oracle):
    for case in oracle["square_conditions"]:
        f = Quartic({tuple(r[:3]): r[3] for r in case["quartic"] if r[3]})
        g1, g2 = square_conditions(f)
        assert g1 == poly_from_terms(case["G1"], 2)
        assert g2 == poly_from_terms(case["G2"], 2)


def test_trott(trott_bts):
    assert len(trott_bts) == 28
    assert len(trott_bts.real()) == 28
    assert len(trott_bts.split()) == 28
    assert trott_bts.n_complex_pairs == 0
    assert not any(bt.hyperflex for bt in trott_bts.real())
    for bt in trott_bts.real():
        assert verify_residual(bt)


def test_trott_lines_match_an_independent_eliminant(oracle, trott_bts):
    """Map every bitangent into a second frame and compare with the sympy eliminant there."""
    data = oracle["trott_chart"]
    sqf = UniPoly([Fraction(c) for c in data["eliminant_sqf"]])
    q4 = UniPoly([Fraction(c) for c in data["q4"]])
    stripped = sqf.divmod(UniPoly.gcd(sqf, q4))[0]
    assert stripped.degree == 28
    expected = sorted(float(iv.mid()) for iv, _ in isolate_real_roots(stripped, Fraction(1, 2**50)))
    assert len(expected) == 28
    # y-frame: x = y1 + 2y2 + 3y3, y = y1 + y2 - y3, z = -y1 + y2 + 5y3
    m = [[1, 2, 3], [1, 1, -1], [-1, 1, 5]]
    got = []
    for bt in trott_bts.real():
        line = bt.normalized_line(Fraction(1, 2**60))
        l = [sum(line[i] * m[i][j] for i in range(3)) for j in range(3)]
        got.append(float((l[1] / l[0]).mid()))
    assert sorted(got) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_fermat(fermat_bts):
    assert len(fermat_bts.real()) == 4
    assert len(fermat_bts.non_split()) == 4
    assert fermat_bts.n_complex_pairs == 12
    assert fermat_bts.total_multiplicity == 28
    lines = set()
    for bt in fermat_bts.real():
        line = bt.normalized_line(Fraction(1, 2**40), pivot=0)
        lines.add(tuple(round(float(c.mid())) for c in line))
        assert all(abs(float(c.mid())) == pytest.approx(1) for c in line)
    assert lines == {(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)}


def test_fermat_complex_bitangents_are_bitangent(fermat_bts, fermat_curve):
    pairs = fermat_bts.complex_pairs()
    assert len(pairs) == 12
    with mpmath.workdps(40):
        for bt in pairs:
            l = bt.line_approx()
            # the restriction to the line must be q4 times a square: its discriminant-type check
            p1, p2 = bt.points_approx()
            for pt in (p1, p2):
                assert abs(sum(a * b for a, b in zip(l, pt))) < 1e-20 * max(abs(c) for c in pt)
                val = fermat_curve.poly.evaluate([mpmath.mpc(c) for c in pt])
                assert abs(val) < 1e-15 * max(abs(c) for c in pt) ** 4
                grad = [g.evaluate([mpmath.mpc(c) for c in pt]) for g in fermat_curve.gradient()]
                # tangency: grad f is proportional to the line
                k = max(range(3), key=lambda i: abs(l[i]))
                for i in range(3):
                    assert abs(grad[i] * l[k] - grad[k] * l[i]) < 1e-12 * max(abs(g) for g in grad) * abs(l[k])


def test_random_quartics_give_28_with_small_residuals():
    rng = random.Random(11)
    done = 0
    while done < 3:
        f = random_quartic(rng)
        if not is_smooth(f):
            continue
        bts = compute_bitangents(f, seed=done)
        assert bts.total_multiplicity == 28
        assert len(bts.real()) in (4, 8, 16, 28)
        assert len(bts.real()) + 2 * bts.n_complex_pairs == 28
        for bt in bts.real():
            assert verify_residual(bt)
            assert bt.reality in (Reality.REAL_SPLIT, Reality.REAL_NON_SPLIT)
        done += 1


def test_seed_changes_the_frame_not_the_answer(trott_curve):
    a = compute_bitangents(trott_curve, seed=1)
    b = compute_bitangents(trott_curve, seed=2)
    la = sorted(tuple(round(x, 9) for x in bt.line_float()) for bt in a.real())
    lb = sorted(tuple(round(x, 9) for x in bt.line_float()) for bt in b.real())
    assert la == lb


def test_hyperflex_detected():
    x, y, z = MultiPoly.gens(3)
    rng = random.Random(4)
    while True:
        cubic = sum((MultiPoly({e: rng.randint(-4, 4)}, 3) for e in
                     [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2), (0, 3, 0), (0, 2, 1),
                      (0, 1, 2), (0, 0, 3)]), MultiPoly({}, 3))
        f = Quartic(y**4 + x * cubic)
        if is_smooth(f):
            break
    # f restricted to V(x) is y^4: the line is a hyperflex
    assert restrict_to_line(f, ProjLine(1, 0, 0)).coeffs.count(0) == 4
    bts = compute_bitangents(f)
    hyper = [bt for bt in bts.real() if bt.hyperflex]
    assert len(hyper) == 1
    bt = hyper[0]
    assert bt.is_split
    line = bt.normalized_line(Fraction(1, 2**40), pivot=0)
    assert abs(line[1].mid()) < Fraction(1, 2**30) and abs(line[2].mid()) < Fraction(1, 2**30)
    z1, z2 = bt.points()
    for c1, c2 in zip(z1, z2):
        assert c1.intersects(c2)


def test_singular_input_rejected():
    x, y, z = MultiPoly.gens(3)
    with pytest.raises(NotSmoothError):
        compute_bitangents(Quartic(x**4 + y**4 + (x**2 - y**2) * z**2))


def test_real_tangency_points_lie_on_curve_and_line(trott_bts, trott_curve):
    for bt in trott_bts.real()[:6]:
        line = bt.line_enclosure(128)
        for pt in bt.points(128):
            assert sum((a * b for a, b in zip(line, pt)), 0).contains_zero()
            assert trott_curve.poly.evaluate(pt).contains_zero()
