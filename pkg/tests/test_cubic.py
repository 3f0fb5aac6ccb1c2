import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitangents.corpus import fermat
from bitangents.cubic import (
    FREE,
    PointedCubic,
    branch_quartic,
    bridge_qtype,
    bridge_tangency,
    kw_type,
    verify_sametype_identity,
    verify_theorem_main,
)
from bitangents.errors import DegenerateError, InputError, NotABitangentError
from bitangents.quartic import ProjLine, is_smooth, restrict_to_line
from bitangents.qtype import GWClass, is_bitangent_line

from conftest import poly_from_terms

cubics = st.builds(
    lambda vals, a, b: PointedCubic({**dict(zip(FREE, vals)), (2, 0, 0, 1): a, (1, 0, 2, 0): b}),
    st.lists(st.integers(-6, 6), min_size=len(FREE), max_size=len(FREE)),
    st.integers(1, 6) | st.integers(-6, -1),
    st.integers(1, 6) | st.integers(-6, -1),
)


def _cubic(rows):
    return PointedCubic({tuple(r[:4]): r[4] for r in rows})


def test_free_coefficients():
    assert len(FREE) == 13


def test_vanishing_coefficients_enforced():
    with pytest.raises(InputError):
        PointedCubic({(3, 0, 0, 0): 1, (2, 0, 0, 1): 1})
    with pytest.raises(InputError):
        PointedCubic({(2, 0, 0, 0): 1})


def test_against_symbolic_oracle(oracle):
    for case in oracle["cubics"]:
        V = _cubic(case["cubic"])
        assert branch_quartic(V).poly == poly_from_terms(case["quartic"], 3)
        assert kw_type(V).value == Fraction(case["M"])
        res = verify_sametype_identity(V)
        assert res.lhs == Fraction(case["lhs"])
        assert res.holds


def test_oracle_values_satisfy_the_identity(oracle):
    # the identity checked on the sympy values alone
    for case in oracle["cubics"]:
        V = _cubic(case["cubic"])
        rhs = 1024 * V.a(2, 0, 0, 1) ** 2 * V.a(1, 0, 2, 0) ** 4 * Fraction(case["M"])
        assert Fraction(case["lhs"]) == rhs


@settings(max_examples=60)
@given(cubics)
def test_identity_holds(V):
    res = verify_sametype_identity(V)
    assert res.holds and res.lhs == res.rhs


@settings(max_examples=25)
@given(cubics, st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool))
def test_identity_is_homogeneous_of_degree_ten(V, lam):
    a, b = verify_sametype_identity(V), verify_sametype_identity(V.scaled(lam))
    assert b.holds
    assert b.lhs == lam**10 * a.lhs and b.rhs == lam**10 * a.rhs


def test_block_diagonal_determinant():
    rng = random.Random(2)
    for _ in range(10):
        V = PointedCubic.random(rng)
        coeffs = dict(V.coeffs)
        coeffs.pop((1, 0, 1, 1), None)
        coeffs.pop((0, 1, 1, 1), None)
        W = PointedCubic(coeffs)
        expected = (W.a(1, 0, 2, 0) * W.a(0, 1, 0, 2) - W.a(0, 1, 2, 0) * W.a(1, 0, 0, 2)) ** 2
        assert kw_type(W).value == expected


def test_vanishing_determinant():
    # a1011 = a0111 = 0 and a1020 a0102 = a0120 a1002 give M = 0, so both sides vanish
    V = PointedCubic({(2, 0, 0, 1): 1, (1, 0, 2, 0): 2, (1, 0, 0, 2): 3, (0, 1, 2, 0): 4, (0, 1, 0, 2): 6,
                      (1, 1, 1, 0): 1, (0, 2, 0, 1): 1})
    assert kw_type(V).value == 0
    res = verify_sametype_identity(V)
    assert res.holds and res.lhs == 0


def test_tangency_degenerate():
    with pytest.raises(DegenerateError):
        bridge_tangency(PointedCubic({(2, 0, 0, 1): 1, (1, 0, 1, 1): 1}))


@settings(max_examples=30)
@given(cubics)
def test_branch_quartic_has_two_rational_bitangents(V):
    f = branch_quartic(V)
    assert is_bitangent_line(f, ProjLine(1, 0, 0))
    assert is_bitangent_line(f, ProjLine(0, 0, 1))
    # f|V(y1) is B|^2, a perfect square
    bq = restrict_to_line(f, ProjLine(1, 0, 0)).coeffs
    b20, b11, b02 = V.a(1, 0, 2, 0), V.a(1, 0, 1, 1), V.a(1, 0, 0, 2)
    square = [b02**2, 2 * b02 * b11, b11**2 + 2 * b20 * b02, 2 * b11 * b20, b20**2]
    assert list(bq) in (square, square[::-1])


def _smooth_branch_cubics(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        V = PointedCubic.random(rng)
        if kw_type(V).value != 0 and is_smooth(branch_quartic(V)):
            out.append(V)
    return out


def test_bridge_qtype_is_sign_of_determinant():
    """Qtype of V(y1) from gradients agrees with the sign of the 4x4 determinant."""
    for V in _smooth_branch_cubics(5, 31):
        assert bridge_qtype(V) == GWClass.of_sign(kw_type(V).sign)


@pytest.mark.parametrize("line", [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)])
def test_theorem_main_fermat(line, fermat_curve, fermat_bts):
    res = verify_theorem_main(fermat_curve, ProjLine(*line), fermat_bts)
    assert res.passed
    assert res.gw == GWClass(15, 12)


def test_theorem_main_branch_quartics():
    for V in _smooth_branch_cubics(2, 5):
        res = verify_theorem_main(branch_quartic(V), ProjLine(1, 0, 0))
        assert res.gw.rank == 27 and res.gw.signature == 3


def test_theorem_main_rejects_non_bitangent():
    with pytest.raises(NotABitangentError):
        verify_theorem_main(fermat(), ProjLine(1, 2, 3))
