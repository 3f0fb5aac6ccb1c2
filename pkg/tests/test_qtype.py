import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from bitangents.errors import HypothesisError, NonSimpleZeroError
from bitangents.numeric.polynomials import MultiPoly
from bitangents.quartic import ProjectiveMap, ProjLine, Quartic, apply_map, is_smooth
from bitangents.qtype import (
    MINUS_ONE,
    ONE,
    GWClass,
    StandardChartData,
    det4,
    exact_standard_chart,
    gw_report,
    is_bitangent_line,
    jacobian_matrix,
    local_index,
    local_index_of,
    qtype,
    qtypes,
    rhs_value,
    signed_count,
)
from bitangents.solver import compute_bitangents

VZ = ProjLine(0, 0, 1)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def _chart(alpha, c):
    return StandardChartData(None, Fraction(alpha), tuple(Fraction(x) for x in c), {})


# -- GW classes --------------------------------------------------------------

def test_gw_class_arithmetic():
    total = ONE + ONE + MINUS_ONE + GWClass.hyperbolic(2)
    assert total.rank == 7
    assert total.signature == 1
    assert str(GWClass(16, 12)) == "16<1> + 12<-1>"
    assert GWClass.of_sign(-1) == MINUS_ONE
    with pytest.raises(ValueError):
        GWClass.of_sign(0)


# -- Jacobian and local index -------------------------------------------------

def test_det_j_is_four_rhs_symbolically():
    alpha, c130, c121, c112, c103 = sp.symbols("alpha c130 c121 c112 c103")
    J = sp.Matrix(jacobian_matrix(alpha, (c130, c121, c112, c103)))
    rhs = rhs_value(alpha, (c130, c121, c112, c103))
    assert sp.expand(J.det() - 4 * rhs) == 0


@settings(max_examples=50)
@given(rats, st.lists(rats, min_size=4, max_size=4))
def test_det_j_is_four_rhs_at_rational_points(alpha, c):
    m = jacobian_matrix(alpha, c)
    assert det4(m) == 4 * rhs_value(alpha, c)
    assert det4(m) == sp.Matrix(m).det()


def test_local_index_examples():
    assert local_index(_chart(3, (0, 0, 0, 1))) == ONE
    assert local_index(_chart(-1, (0, 0, 1, 0))) == MINUS_ONE
    with pytest.raises(NonSimpleZeroError):
        local_index(_chart(0, (1, 0, 0, 0)))


def _standard_form_quartic(rng, alpha, c):
    """(y2^2 + alpha y3^2)^2 + y1 * (c . cubic) + y1^2 * random quadric."""
    y1, y2, y3 = MultiPoly.gens(3)
    cubic = y2**3 * c[0] + y2**2 * y3 * c[1] + y2 * y3**2 * c[2] + y3**3 * c[3]
    quad = MultiPoly({}, 3)
    for e in [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]:
        quad = quad + MultiPoly({e: rng.randint(-3, 3)}, 3)
    return Quartic((y2**2 + y3**2 * alpha) ** 2 + y1 * cubic + y1**2 * quad)


def test_standard_form_is_its_own_chart():
    rng = random.Random(3)
    c = (2, -1, 3, 1)
    while True:
        f = _standard_form_quartic(rng, -1, c)
        if is_smooth(f):
            break
    data = exact_standard_chart(f, ProjLine(1, 0, 0), (0, 1, 1), (0, -1, 1), VZ)
    assert data.exact
    assert data.alpha == -1
    assert data.c_coeffs == c
    assert [list(r) for r in data.map] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_qtype_agrees_with_local_index_on_standard_forms():
    """Two routes: the gradient product at the tangency points and sign(det J)."""
    rng = random.Random(8)
    checked = 0
    while checked < 6:
        c = tuple(rng.randint(-4, 4) for _ in range(4))
        f = _standard_form_quartic(rng, -1, c)
        if rhs_value(-1, c) == 0 or not is_smooth(f):
            continue
        assert is_bitangent_line(f, ProjLine(1, 0, 0))
        expected = GWClass.of_sign(1 if rhs_value(-1, c) > 0 else -1)
        bts = compute_bitangents(f)
        match = [bt for bt in bts.real() if _is_line(bt, (1, 0, 0))]
        assert len(match) == 1
        assert qtype(f, match[0], VZ) == expected
        assert local_index_of(f, match[0], VZ) == expected
        checked += 1


def _is_line(bt, coords):
    line = bt.normalized_line(Fraction(1, 2**40))
    k = max(range(3), key=lambda i: abs(coords[i]))
    return all(abs(line[i].mid() * coords[k] - coords[i]) < Fraction(1, 2**30) for i in range(3))


def test_trott_local_index_matches_qtype(trott_curve, trott_bts):
    for bt in trott_bts.real():
        assert local_index_of(trott_curve, bt, VZ) == qtype(trott_curve, bt, VZ)


# -- Qtype and signed counts -------------------------------------------------

def test_trott_at_vz(trott_curve, trott_bts):
    types = [q for _, q in qtypes(trott_curve, VZ, trott_bts)]
    assert types.count(ONE) == 16 and types.count(MINUS_ONE) == 12
    assert signed_count(trott_curve, VZ, trott_bts) == 4
    assert gw_report(trott_curve, VZ, trott_bts) == GWClass(16, 12)


def test_trott_reference_line_l2(trott_curve, trott_bts):
    L2 = ProjLine(Fraction(-5, 4), 1, Fraction(-283, 200))
    assert signed_count(trott_curve, L2, trott_bts) == 2


def test_fermat_any_line(fermat_curve, fermat_bts):
    rng = random.Random(1)
    for _ in range(4):
        line = ProjLine([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)])
        types = [q for _, q in qtypes(fermat_curve, line, fermat_bts)]
        assert types == [ONE] * 4
        assert gw_report(fermat_curve, line, fermat_bts) == GWClass(16, 12)


@settings(max_examples=8, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 9))
def test_non_split_is_always_one(fermat_curve, fermat_bts, u, v, w):
    try:
        types = [q for _, q in qtypes(fermat_curve, ProjLine(u, v, w), fermat_bts)]
    except HypothesisError:
        return
    assert types == [ONE] * 4


@pytest.mark.parametrize("lam", [Fraction(3), Fraction(-2, 7)])
def test_qtype_ignores_scaling_of_f(trott_curve, lam):
    g = trott_curve.scaled(lam)
    assert signed_count(g, VZ) == 4
    assert signed_count(g, ProjLine(Fraction(-5, 4), 1, Fraction(-283, 200))) == 2


def test_signed_count_is_projectively_invariant(trott_curve):
    rng = random.Random(21)
    L2 = ProjLine(Fraction(-5, 4), 1, Fraction(-283, 200))
    for _ in range(2):
        g = ProjectiveMap.random(rng, 4)
        h = apply_map(trott_curve, g)
        assert signed_count(h, g.apply_line(VZ)) == 4
        assert signed_count(h, g.apply_line(L2)) == 2


# -- hypothesis violations ---------------------------------------------------

def test_line_at_infinity_equal_to_a_bitangent(fermat_curve, fermat_bts):
    with pytest.raises(HypothesisError, match="coincides"):
        signed_count(fermat_curve, ProjLine(1, 1, 1), fermat_bts)


def test_line_at_infinity_through_a_tangency_point():
    rng = random.Random(3)
    while True:
        f = _standard_form_quartic(rng, -1, (2, -1, 3, 1))
        if is_smooth(f):
            break
    bts = compute_bitangents(f)
    # V(y2 - y3) passes through the tangency point [0:1:1] of V(y1)
    with pytest.raises(HypothesisError, match="tangency point"):
        signed_count(f, ProjLine(0, 1, -1), bts)


def test_is_bitangent_line(fermat_curve, trott_curve):
    assert is_bitangent_line(fermat_curve, ProjLine(1, 1, -1))
    assert not is_bitangent_line(fermat_curve, ProjLine(1, 2, 3))
    assert not is_bitangent_line(trott_curve, VZ)
