"""Command line interface: ``bitangents <command> ...``.

Every command prints a JSON report (``schema: 1``) to stdout or ``--out``.
Exit codes: 0 success, 1 a check failed or a computation could not be
certified, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from . import arrangement, cubic, qtype
from .corpus import BUILTINS, load_corpus, random_compact_quartic, resolve_quartic, scan_corpus
from .errors import BitangentError, HypothesisError, InputError, NotABitangentError, NotSmoothError
from .numeric.intervals import precision_cap
from .quartic import ProjLine, is_smooth, real_flex_count, real_points_on_line
from .solver import compute_bitangents

SCHEMA = 1
# let argparse read "-5/4" as a value, not an option
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def _rat(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {s!r}") from exc


def _line(values) -> ProjLine:
    try:
        return ProjLine(*(_rat(v) for v in values))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc


def _interval_json(iv) -> list[str]:
    return [str(iv.lo), str(iv.hi)]


def _bitangent_json(bt, width: Fraction) -> dict:
    d = {"index": bt.index, "reality": bt.reality.value, "hyperflex": bt.hyperflex}
    if bt.is_real:
        bits = width.denominator.bit_length() + 3
        line = [c.with_prec(bits) for c in bt.normalized_line(width / 2)]
        d["line"] = [_interval_json(c) for c in line]
        d["line_float"] = [float(c.mid()) for c in line]
    else:
        d["line_approx"] = [[repr(c.real), repr(c.imag)] for c in bt.line_float()]
    return d


def _write(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    _atomic_write(out, text)


def _atomic_write(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=".tmp-", suffix=target.suffix)
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _report(command: str, inputs: dict, result: dict, seed: int, started: float, passed: bool = True) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "result": result,
        "passed": passed,
        "seed": seed,
        "precision_cap": precision_cap(),
        "wall_time_s": round(time.perf_counter() - started, 3),
    }


def _load(args):
    rec = resolve_quartic(args.quartic, getattr(args, "name", None))
    if not is_smooth(rec.quartic):
        raise NotSmoothError(f"quartic {rec.name!r} is not smooth")
    return rec


def _quartic_inputs(rec, bts=None) -> dict:
    d = {"quartic": rec.name}
    if bts is not None:
        d["quartic_hash"] = bts.quartic_hash
    return d


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bitangents(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    rec = _load(args)
    bts = compute_bitangents(rec.quartic, seed=args.seed)
    width = Fraction(1, 2**args.precision)
    items = [_bitangent_json(bt, width) for bt in bts.all()]
    result = {
        "total": bts.total_multiplicity,
        "real": len(bts.real()),
        "real_split": len(bts.split()),
        "real_non_split": len(bts.non_split()),
        "complex_pairs": bts.n_complex_pairs,
        "hyperflexes": sum(bt.hyperflex for bt in bts.real()),
        "bitangents": items,
        "base_precision_bits": bts._frame.base_prec,
    }
    return _report("bitangents", _quartic_inputs(rec, bts), result, args.seed, t0), 0


def cmd_signed_count(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    rec = _load(args)
    line = _line(args.line)
    bts = compute_bitangents(rec.quartic, seed=args.seed)
    pairs = qtype.qtypes(rec.quartic, line, bts)
    gw = qtype.gw_report(rec.quartic, line, bts)
    result = {
        "signed_count": gw.signature,
        "gw": gw.as_dict(),
        "gw_str": str(gw),
        "qtypes": [{"index": bt.index, "reality": bt.reality.value, "qtype": q.signature} for bt, q in pairs],
    }
    inputs = dict(_quartic_inputs(rec, bts), line=[str(c) for c in line.coords])
    return _report("signed-count", inputs, result, args.seed, t0), 0


def cmd_all_counts(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    rec = _load(args)
    bts = compute_bitangents(rec.quartic, seed=args.seed)
    res = arrangement.all_signed_counts(rec.quartic, bts, seed=args.seed)
    return _report("all-counts", _quartic_inputs(rec, bts), res.as_dict(), args.seed, t0), 0


def cmd_band(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    rec = _load(args)
    slope = _rat(args.slope)
    bts = compute_bitangents(rec.quartic, seed=args.seed)
    band = arrangement.count_band(rec.quartic, slope, bts, seed=args.seed)
    result = {
        "slope": str(band.slope),
        "requested_slope": str(band.requested_slope or band.slope),
        "breakpoints": [_interval_json(b) for b in band.breakpoints],
        "breakpoints_float": [float(b.mid()) for b in band.breakpoints],
        "counts": list(band.counts),
        "witness_intercepts": [str(w) for w in band.witnesses],
        "values": sorted(set(band.counts)),
    }
    inputs = dict(_quartic_inputs(rec, bts), slope=str(slope))
    return _report("band", inputs, result, args.seed, t0), 0


def cmd_plot(args) -> tuple[dict, int]:
    from .plot import render_svg

    t0 = time.perf_counter()
    rec = _load(args)
    line = _line(args.line) if args.line else ProjLine(0, 0, 1)
    window = tuple(_rat(w) for w in args.window)
    if not (window[0] < window[1] and window[2] < window[3]):
        raise InputError("window must satisfy xmin < xmax and ymin < ymax")
    svg = render_svg(rec.quartic, line, window, args.resolution, show_grates=args.grates, seed=args.seed)
    try:
        _atomic_write(args.svg, svg)
    except OSError as exc:
        raise InputError(f"cannot write {args.svg}: {exc}") from exc
    inputs = dict(_quartic_inputs(rec), line=[str(c) for c in line.coords], window=[str(w) for w in window])
    return _report("plot", inputs, {"svg": args.svg}, args.seed, t0), 0


# -- verification suites -----------------------------------------------------

def _corpus_or(args, default):
    if args.corpus:
        return [(r.name, r.quartic) for r in load_corpus(args.corpus)]
    return default()


def _suite_cap(args) -> list[dict]:
    rng = random.Random(args.seed)
    corpus = _corpus_or(args, lambda: [(f"compact_{i}", random_compact_quartic(rng)) for i in range(args.n)])
    z = ProjLine(0, 0, 1)
    cases = []
    for name, f in corpus:
        if real_points_on_line(f, z) != 0:
            cases.append({"name": name, "skipped": "real points on V(z)"})
            continue
        gw = qtype.gw_report(f, z, seed=args.seed)
        cases.append({"name": name, "gw": str(gw), "signed_count": gw.signature,
                      "passed": gw.signature == 4 and gw.n_plus == 16 and gw.n_minus == 12})
    return cases


def _suite_main(args) -> list[dict]:
    cases = []
    fermat = BUILTINS["fermat"]()
    for line in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)):
        r = cubic.verify_theorem_main(fermat, line, seed=args.seed)
        cases.append({"name": f"fermat L_inf={line}", "gw": str(r.gw), "passed": r.passed})
    rng = random.Random(args.seed)
    done = 0
    while done < args.n:
        V = cubic.PointedCubic.random(rng)
        f = cubic.branch_quartic(V)
        if not is_smooth(f):
            continue
        r = cubic.verify_theorem_main(f, (1, 0, 0), seed=args.seed)
        cases.append({"name": f"branch_{done}", "gw": str(r.gw), "passed": r.passed})
        done += 1
    return cases


def _suite_klein(args) -> list[dict]:
    corpus = _corpus_or(args, lambda: [(k, v()) for k, v in BUILTINS.items()])
    cases = []
    for name, f in corpus:
        if not is_smooth(f):
            cases.append({"name": name, "skipped": "not smooth"})
            continue
        flexes = real_flex_count(f, seed=args.seed)
        nsp = len(compute_bitangents(f, seed=args.seed).non_split())
        cases.append({"name": name, "real_flexes": flexes, "real_non_split": nsp,
                      "passed": flexes + 2 * nsp == 8})
    return cases


def _suite_sametype(args) -> list[dict]:
    rng = random.Random(args.seed)
    cases = []
    for i in range(args.n):
        r = cubic.verify_sametype_identity(cubic.PointedCubic.random(rng))
        cases.append({"name": f"cubic_{i}", "lhs": str(r.lhs), "rhs": str(r.rhs), "passed": r.holds})
    return cases


def _suite_conjecture(args) -> tuple[list[dict], dict]:
    corpus = _corpus_or(args, lambda: scan_corpus(args.n, args.seed))
    rep = arrangement.conjecture_scan(corpus, 1, args.seed)
    cases = [{"name": e.name, "counts": list(e.counts), "error": e.error,
              "passed": not e.flagged} for e in rep.entries]
    return cases, rep.as_dict()


SUITES = ("cap", "main", "klein", "sametype", "conjecture")


def cmd_verify(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    extra = {}
    if args.suite == "conjecture":
        cases, extra = _suite_conjecture(args)
    else:
        cases = {"cap": _suite_cap, "main": _suite_main, "klein": _suite_klein,
                 "sametype": _suite_sametype}[args.suite](args)
    failed = [c["name"] for c in cases if c.get("passed") is False]
    result = {"cases": cases, "failed": failed, "n_cases": len(cases)}
    result.update(extra)
    inputs = {"suite": args.suite, "corpus": args.corpus, "n": args.n}
    passed = not failed
    return _report("verify", inputs, result, args.seed, t0, passed), 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bitangents", description="Bitangents of plane quartics and their signed counts.")
    sub = p.add_subparsers(dest="command", required=True)

    def quartic_cmd(name, help_text, json_out=True):
        sp = sub.add_parser(name, help=help_text)
        sp._negative_number_matcher = _NEGATIVE
        sp.add_argument("quartic", help="builtin name (trott, fermat) or corpus file")
        sp.add_argument("--name", help="record name inside a corpus file")
        sp.add_argument("--seed", type=int, default=0)
        if json_out:
            sp.add_argument("--out", help="write the JSON report here instead of stdout")
        return sp

    sp = quartic_cmd("bitangents", "compute all 28 bitangents")
    sp.add_argument("--precision", type=int, default=40, help="width of reported line enclosures, in bits")
    sp.set_defaults(func=cmd_bitangents)

    sp = quartic_cmd("signed-count", "signed count and GW class relative to a line at infinity")
    sp.add_argument("--line", nargs=3, required=True, metavar=("L1", "L2", "L3"))
    sp.set_defaults(func=cmd_signed_count)

    sp = quartic_cmd("all-counts", "every attainable signed count with witness lines")
    sp.set_defaults(func=cmd_all_counts)

    sp = quartic_cmd("band", "signed counts along a pencil of parallel lines")
    sp.add_argument("--slope", required=True)
    sp.set_defaults(func=cmd_band)

    sp = quartic_cmd("plot", "render an SVG figure", json_out=False)
    sp.add_argument("--line", nargs=3, metavar=("L1", "L2", "L3"))
    sp.add_argument("--out", dest="svg", required=True, help="output SVG file")
    sp.add_argument("--window", nargs=4, default=["-2", "2", "-2", "2"], metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    sp.add_argument("--resolution", type=int, default=512)
    sp.add_argument("--grates", action="store_true")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--corpus")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (InputError, NotSmoothError, NotABitangentError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BitangentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "verify" and args.suite == "conjecture":
        print(arrangement.BANNER, file=sys.stderr)
    _write(report, None if args.command == "plot" else args.out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
