"""Quartic records, corpus files and seeded generators.

Record format, one per line::

    name | i,j,k:num/den i,j,k:num ... [| provenance]

Exponent triples refer to x^i y^j z^k; omitted monomials are zero.  Blank
lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .numeric.polynomials import MultiPoly
from .quartic import MONOMIALS, ProjectiveMap, ProjLine, Quartic, apply_map, is_smooth, real_points_on_line


@dataclass(frozen=True)
class QuarticRecord:
    name: str
    quartic: Quartic
    provenance: str = ""

    def serialize(self) -> str:
        return format_record(self.name, self.quartic, self.provenance)


def format_record(name: str, f: Quartic, provenance: str = "") -> str:
    terms = " ".join(f"{i},{j},{k}:{f.coeff(i, j, k)}" for (i, j, k) in MONOMIALS if f.coeff(i, j, k) != 0)
    line = f"{name} | {terms}"
    return f"{line} | {provenance}" if provenance else line


def parse_record(line: str) -> QuarticRecord:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) not in (2, 3) or not parts[0]:
        raise InputError(f"malformed record: {line!r}")
    name = parts[0]
    if any(c.isspace() for c in name):
        raise InputError(f"record name contains whitespace: {name!r}")
    coeffs: dict = {}
    for tok in parts[1].split():
        try:
            exps, val = tok.split(":")
            e = tuple(int(x) for x in exps.split(","))
            c = Fraction(val)
        except ValueError as exc:
            raise InputError(f"malformed term {tok!r} in record {name!r}") from exc
        if len(e) != 3 or sum(e) != 4 or min(e) < 0:
            raise InputError(f"not a quartic monomial: {exps!r} in record {name!r}")
        if e in coeffs:
            raise InputError(f"repeated monomial {exps!r} in record {name!r}")
        coeffs[e] = c
    if not any(coeffs.values()):
        raise InputError(f"zero quartic in record {name!r}")
    return QuarticRecord(name, Quartic(coeffs), parts[2] if len(parts) == 3 else "")


def parse_corpus(text: str) -> list[QuarticRecord]:
    out = []
    seen = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rec = parse_record(line)
        if rec.name in seen:
            raise InputError(f"duplicate record name {rec.name!r}")
        seen.add(rec.name)
        out.append(rec)
    return out


def load_corpus(path) -> list[QuarticRecord]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_corpus(text)


def write_corpus(path, records) -> None:
    Path(path).write_text("".join(r.serialize() + "\n" for r in records))


# ---------------------------------------------------------------------------
# named quartics
# ---------------------------------------------------------------------------

def trott() -> Quartic:
    """144(x^4 + y^4) - 225(x^2 + y^2)z^2 + 350x^2y^2 + 81z^4."""
    return Quartic({(4, 0, 0): 144, (0, 4, 0): 144, (2, 0, 2): -225, (0, 2, 2): -225,
                    (2, 2, 0): 350, (0, 0, 4): 81})


def fermat() -> Quartic:
    return Quartic({(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


BUILTINS = {"trott": trott, "fermat": fermat}


def resolve_quartic(source: str, name: str | None = None) -> QuarticRecord:
    """A builtin name, or a corpus file (first record, or the record called name)."""
    if source in BUILTINS and not Path(source).exists():
        return QuarticRecord(source, BUILTINS[source](), "builtin")
    records = load_corpus(source)
    if not records:
        raise InputError(f"{source} contains no records")
    if name is None:
        return records[0]
    for r in records:
        if r.name == name:
            return r
    raise InputError(f"no record named {name!r} in {source}")


# ---------------------------------------------------------------------------
# topological type representatives and generators
# ---------------------------------------------------------------------------

def _poly(expr) -> Quartic:
    return Quartic(expr)


def _xyz():
    return MultiPoly.gens(3)


def type_representatives() -> dict[str, Quartic]:
    """One smooth quartic for each of the six real topological types."""
    x, y, z = _xyz()
    q1 = x * x + y * y * 4 - z * z * 4
    q2 = x * x * 4 + y * y - z * z * 4
    c1 = (x - z * 2) ** 2 + y * y * 2 - z * z
    c2 = (x + z * 2) ** 2 + y * y * 3 - z * z
    eps = Fraction(1, 10)
    return {
        "empty": fermat(),
        "one_oval": _poly(x**4 + y**4 + x * x * y * y + x * y**3 * Fraction(1, 3) - z**4),
        "two_ovals": _poly(c1 * c2 + z**4 * eps),
        "three_ovals": _poly(q1 * q2 + z**3 * (z - (x + y) * Fraction(4, 5)) * eps),
        "four_ovals": trott(),
        "nested": _poly(q1 * q2 - z**4 * eps),
    }


# expected number of real bitangents for each type
REAL_BITANGENTS = {"empty": 4, "one_oval": 4, "two_ovals": 8, "three_ovals": 16, "four_ovals": 28, "nested": 4}
TYPES = tuple(REAL_BITANGENTS)


def _noise(rng: random.Random, f: Quartic, scale: Fraction) -> Quartic:
    small = min(abs(c) for _, c in f.terms() if c)
    coeffs = {m: f.coeff(*m) + small * scale * Fraction(rng.randint(-100, 100), 100) for m in MONOMIALS}
    return Quartic(coeffs)


def _affine_map(rng: random.Random, bound: int = 3) -> ProjectiveMap:
    while True:
        m = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(2)] + [[0, 0, 1]]
        m[0][2] = Fraction(rng.randint(-bound, bound), 4)
        m[1][2] = Fraction(rng.randint(-bound, bound), 4)
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return ProjectiveMap(m)


def random_typed_quartic(rng: random.Random, kind: str, noise=Fraction(1, 200), bound: int = 3) -> Quartic:
    """Noisy random projective image of a type representative, checked smooth."""
    base = type_representatives()[kind]
    while True:
        f = apply_map(_noise(rng, base, noise), ProjectiveMap.random(rng, bound)).integral()
        if is_smooth(f):
            return f


def random_quartic(rng: random.Random, bound: int = 9) -> Quartic:
    """Integer coefficients uniform in [-bound, bound], checked smooth."""
    while True:
        f = Quartic({m: rng.randint(-bound, bound) for m in MONOMIALS})
        if any(c for _, c in f.terms()) and is_smooth(f):
            return f


def random_compact_quartic(rng: random.Random, kinds=TYPES, noise=Fraction(1, 200)) -> Quartic:
    """Smooth quartic with no real point on V(z), from an affine image of a type representative."""
    reps = type_representatives()
    z_line = ProjLine(0, 0, 1)
    while True:
        kind = kinds[rng.randrange(len(kinds))]
        f = apply_map(_noise(rng, reps[kind], noise), _affine_map(rng)).integral()
        if real_points_on_line(f, z_line) == 0 and is_smooth(f):
            return f


def scan_corpus(n: int, seed: int = 0) -> list[tuple[str, Quartic]]:
    """n quartics cycling through the six types, plus a fully random one every seventh entry."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        if i % 7 == 6:
            out.append((f"random_{i}", random_quartic(rng)))
        else:
            kind = TYPES[i % 7]
            out.append((f"{kind}_{i}", random_typed_quartic(rng, kind)))
    return out


__all__ = [
    "QuarticRecord", "format_record", "parse_record", "parse_corpus", "load_corpus", "write_corpus",
    "trott", "fermat", "BUILTINS", "resolve_quartic", "type_representatives", "REAL_BITANGENTS", "TYPES",
    "random_typed_quartic", "random_quartic", "random_compact_quartic", "scan_corpus",
]
