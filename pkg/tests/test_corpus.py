import random
from fractions import Fraction

import pytest

from bitangents.corpus import (
    REAL_BITANGENTS,
    QuarticRecord,
    format_record,
    load_corpus,
    parse_corpus,
    parse_record,
    random_compact_quartic,
    random_typed_quartic,
    resolve_quartic,
    scan_corpus,
    trott,
    type_representatives,
    write_corpus,
)
from bitangents.errors import InputError
from bitangents.quartic import ProjLine, is_smooth, real_points_on_line
from bitangents.solver import compute_bitangents


def test_record_round_trip(tmp_path):
    recs = [QuarticRecord("trott", trott(), "builtin"),
            QuarticRecord("half", type_representatives()["two_ovals"])]
    path = tmp_path / "c.txt"
    write_corpus(path, recs)
    assert load_corpus(path) == recs
    assert parse_record(format_record("t", trott())).quartic == trott()


def test_trott_record_text():
    rec = parse_record("t | 4,0,0:144 0,4,0:144 2,0,2:-225 0,2,2:-225 2,2,0:350 0,0,4:81 | hand entered")
    assert rec.quartic == trott()
    assert rec.provenance == "hand entered"


@pytest.mark.parametrize("line", [
    "no_bar 4,0,0:1",
    "bad | 4,0,0:1 4,0,0:2",
    "bad | 3,0,0:1",
    "bad | 4,0,0:x",
    "bad | 4,0,0:0",
    "two words | 4,0,0:1",
    " | 4,0,0:1",
])
def test_parse_errors(line):
    with pytest.raises(InputError):
        parse_record(line)


def test_corpus_comments_and_duplicates():
    text = "# header\n\na | 4,0,0:1 0,4,0:1 0,0,4:1\nb | 4,0,0:1/2 0,4,0:1 0,0,4:1\n"
    recs = parse_corpus(text)
    assert [r.name for r in recs] == ["a", "b"]
    assert recs[1].quartic.coeff(4, 0, 0) == Fraction(1, 2)
    with pytest.raises(InputError, match="duplicate"):
        parse_corpus(text + "a | 4,0,0:2 0,4,0:1 0,0,4:1\n")


def test_resolve(tmp_path):
    assert resolve_quartic("trott").quartic == trott()
    path = tmp_path / "c.txt"
    write_corpus(path, [QuarticRecord("x", trott()), QuarticRecord("y", type_representatives()["empty"])])
    assert resolve_quartic(str(path)).name == "x"
    assert resolve_quartic(str(path), "y").quartic == type_representatives()["empty"]
    with pytest.raises(InputError):
        resolve_quartic(str(path), "z")
    with pytest.raises(InputError):
        resolve_quartic(str(tmp_path / "missing.txt"))


@pytest.mark.parametrize("kind", sorted(REAL_BITANGENTS))
def test_type_representatives(kind):
    f = type_representatives()[kind]
    assert is_smooth(f)
    assert len(compute_bitangents(f).real()) == REAL_BITANGENTS[kind]


def test_noisy_types_keep_their_counts():
    rng = random.Random(9)
    for kind in ("two_ovals", "three_ovals", "four_ovals"):
        f = random_typed_quartic(rng, kind)
        assert len(compute_bitangents(f).real()) == REAL_BITANGENTS[kind]


def test_compact_quartics_miss_the_line_at_infinity():
    rng = random.Random(2)
    for _ in range(3):
        f = random_compact_quartic(rng)
        assert is_smooth(f)
        assert real_points_on_line(f, ProjLine(0, 0, 1)) == 0


def test_scan_corpus_is_seeded():
    a = scan_corpus(8, seed=3)
    b = scan_corpus(8, seed=3)
    assert [n for n, _ in a] == [n for n, _ in b]
    assert [f for _, f in a] == [f for _, f in b]
    assert a[6][0].startswith("random_")
