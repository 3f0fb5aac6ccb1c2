"""Regenerate the oracle fixtures with sympy (run once: python3 tests/fixtures/generate_fixtures.py).

Every value here is computed by sympy alone, without importing the package,
so the tests compare two independent routes.
"""

import json
import random
from pathlib import Path

import sympy as sp

HERE = Path(__file__).parent
x, t, u = sp.symbols("x t u")
y1, y2, y3 = sp.symbols("y1 y2 y3")
a, b, d = sp.symbols("a b d")


def terms(expr, gens):
    poly = sp.Poly(sp.expand(expr), *gens)
    return [[*map(int, m), str(sp.Rational(c))] for m, c in poly.terms()]


def sylvester(A, B, var):
    ca = sp.Poly(A, var).all_coeffs()
    cb = sp.Poly(B, var).all_coeffs()
    m, n = len(ca) - 1, len(cb) - 1
    rows = [[0] * i + ca + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + cb + [0] * (m - 1 - i) for i in range(m)]
    return sp.expand(sp.Matrix(rows).det())


def resultant_cases(rng):
    cases = []
    while len(cases) < 40:
        nv = len(cases) % 3 + 1
        gens = [x, t, u][:nv]

        def rp():
            dx = rng.randint(1, 4)
            e = x**dx
            for i in range(dx + 1):
                mono = x**i * (t ** rng.randint(0, 2) if nv > 1 else 1) * (u ** rng.randint(0, 1) if nv > 2 else 1)
                e += sp.Rational(rng.randint(-5, 5), rng.randint(1, 3)) * mono
            return sp.expand(e)

        A, B = rp(), rp()
        if sp.degree(A, x) < 1 or sp.degree(B, x) < 1:
            continue
        cases.append({"arity": nv, "p": terms(A, gens), "q": terms(B, gens),
                      "resultant": terms(sylvester(A, B, x), gens)})
    return cases


QUARTIC_MONOMIALS = [(i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)]


def random_quartic(rng, bound=6):
    return {m: rng.randint(-bound, bound) for m in QUARTIC_MONOMIALS}


def as_expr(coeffs):
    return sum(c * y1**i * y2**j * y3**k for (i, j, k), c in coeffs.items())


def square_condition_cases(rng):
    """Conditions for f|_L = q4 (t^2 + p t + r)^2 on L = V(y1 + a y2 + b y3), by symbolic division."""
    out = []
    for _ in range(5):
        coeffs = random_quartic(rng)
        f = as_expr(coeffs)
        g = sp.expand(f.subs(y1, -a * y2 - b * y3).subs({y2: t, y3: 1}))
        q = [sp.expand(g.coeff(t, j)) for j in range(5)]
        p = q[3] / (2 * q[4])
        r = (q[2] - q[4] * p**2) / (2 * q[4])
        rem = sp.expand(sp.Poly(g - q[4] * (t**2 + p * t + r) ** 2, t).as_expr())
        c1 = sp.factor(sp.together(rem.coeff(t, 1)))
        c0 = sp.factor(sp.together(rem.coeff(t, 0)))
        g1 = sp.expand(sp.cancel(c1 * 8 * q[4] ** 2))
        g2 = sp.expand(sp.cancel(-c0 * 64 * q[4] ** 3))
        out.append({"quartic": [[*m, c] for m, c in coeffs.items()],
                    "G1": terms(g1, [a, b]), "G2": terms(g2, [a, b])})
    return out


def trott_chart_eliminant():
    """Trott curve composed with (y1 + 2y2 + 3y3, y1 + y2 - y3, -y1 + y2 + 5y3).

    In this frame no bitangent has l1 = 0 and all 28 have distinct a = l2/l1.
    """
    X, Y, Z = y1 + 2 * y2 + 3 * y3, y1 + y2 - y3, -y1 + y2 + 5 * y3
    f = 144 * (X**4 + Y**4) - 225 * (X**2 + Y**2) * Z**2 + 350 * X**2 * Y**2 + 81 * Z**4
    h = sp.expand(f)
    g = sp.expand(h.subs(y1, -a * y2 - b * y3).subs({y2: t, y3: 1}))
    q = [sp.expand(g.coeff(t, j)) for j in range(5)]
    G1 = sp.expand(q[3] ** 3 - 4 * q[2] * q[3] * q[4] + 8 * q[1] * q[4] ** 2)
    G2 = sp.expand((4 * q[2] * q[4] - q[3] ** 2) ** 2 - 64 * q[0] * q[4] ** 3)
    res = sp.resultant(G1, G2, b)
    res = sp.Poly(res, a)
    sqf = sp.Poly(sp.quo(res, sp.gcd(res, res.diff(a))), a)
    return {"quartic": terms(h, [y1, y2, y3]), "eliminant_sqf": [str(c) for c in reversed(sqf.all_coeffs())],
            "q4": [str(c) for c in reversed(sp.Poly(q[4], a).all_coeffs())]}


CUBIC_VANISHING = {(3, 0, 0, 0), (2, 1, 0, 0), (2, 0, 1, 0), (0, 0, 3, 0), (0, 0, 2, 1), (0, 0, 1, 2), (0, 0, 0, 3)}
CUBIC_FREE = sorted(
    [e for e in ((i, j, k, 3 - i - j - k) for i in range(4) for j in range(4 - i) for k in range(4 - i - j))
     if e not in CUBIC_VANISHING], reverse=True)


def cubic_cases(rng):
    """Branch quartic of x0^2 A + x0 B + C, the KW determinant and the product of y1-derivatives."""
    x0, x1, x2, x3 = sp.symbols("x0 x1 x2 x3")
    out = []
    for _ in range(20):
        cf = {e: rng.randint(-5, 5) for e in CUBIC_FREE}
        cf[(2, 0, 0, 1)] = cf[(2, 0, 0, 1)] or 1
        cf[(1, 0, 2, 0)] = cf[(1, 0, 2, 0)] or 2
        F = sum(c * x0**i * x1**j * x2**k * x3**l for (i, j, k, l), c in cf.items())
        P = sp.Poly(F, x0)
        A = P.coeff_monomial(x0**2)
        B = P.coeff_monomial(x0)
        C = P.coeff_monomial(1)
        f = sp.expand((B**2 - 4 * A * C).subs({x1: y1, x2: y2, x3: y3}))
        aa = lambda *e: cf.get(e, 0)  # noqa: E731
        Mmat = sp.Matrix([
            [aa(1, 0, 2, 0), 0, aa(0, 1, 2, 0), 0],
            [aa(1, 0, 1, 1), aa(1, 0, 2, 0), aa(0, 1, 1, 1), aa(0, 1, 2, 0)],
            [aa(1, 0, 0, 2), aa(1, 0, 1, 1), aa(0, 1, 0, 2), aa(0, 1, 1, 1)],
            [0, aa(1, 0, 0, 2), 0, aa(0, 1, 0, 2)],
        ])
        d2 = aa(1, 0, 1, 1) ** 2 - 4 * aa(1, 0, 2, 0) * aa(1, 0, 0, 2)
        df = sp.diff(f, y1)
        z1 = {y1: 0, y2: -aa(1, 0, 1, 1) + sp.sqrt(d2), y3: 2 * aa(1, 0, 2, 0)}
        z2 = {y1: 0, y2: -aa(1, 0, 1, 1) - sp.sqrt(d2), y3: 2 * aa(1, 0, 2, 0)}
        lhs = sp.nsimplify(sp.expand(df.subs(z1) * df.subs(z2)))
        out.append({"cubic": [[*e, c] for e, c in cf.items()], "quartic": terms(f, [y1, y2, y3]),
                    "M": str(Mmat.det()), "lhs": str(lhs)})
    return out


def main():
    rng = random.Random(20260)
    data = {
        "resultants": resultant_cases(rng),
        "square_conditions": square_condition_cases(rng),
        "trott_chart": trott_chart_eliminant(),
        "cubics": cubic_cases(rng),
    }
    (HERE / "oracle.json").write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
