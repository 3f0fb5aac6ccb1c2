"""SVG rendering of a quartic, its real bitangents and a line at infinity."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import BitangentError
from .quartic import ProjLine, Quartic
from .qtype import qtype
from .solver import BitangentSet, compute_bitangents

COLORS = {1: "#c0392b", -1: "#2e6fd1", None: "#888888"}
SIZE = 800


def _grid_values(f: Quartic, window, n: int) -> np.ndarray:
    x0, x1, y0, y1 = (float(w) for w in window)
    xs = np.linspace(x0, x1, n + 1)
    ys = np.linspace(y0, y1, n + 1)
    X, Y = np.meshgrid(xs, ys)
    Z = np.zeros_like(X)
    for (i, j, k), c in f.terms():
        Z += float(c) * X**i * Y**j
    return Z


# edges of a cell: 0 bottom, 1 right, 2 top, 3 left; corners 0 (0,0) 1 (1,0) 2 (1,1) 3 (0,1)
_CASES = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 5: [(3, 2), (0, 1)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(2, 3)], 9: [(0, 2)], 10: [(0, 3), (1, 2)], 11: [(1, 2)], 12: [(1, 3)], 13: [(0, 1)], 14: [(0, 3)],
}


def marching_squares(f: Quartic, window, n: int = 512) -> list[tuple]:
    """Segments ((x, y), (x, y)) approximating the affine curve f(x, y, 1) = 0."""
    x0, x1, y0, y1 = (float(w) for w in window)
    Z = _grid_values(f, window, n)
    dx, dy = (x1 - x0) / n, (y1 - y0) / n
    segs = []
    inside = Z > 0
    for r in range(n):
        for c in range(n):
            code = (inside[r, c] * 1 | inside[r, c + 1] * 2 | inside[r + 1, c + 1] * 4 | inside[r + 1, c] * 8)
            if code in (0, 15):
                continue
            v = (Z[r, c], Z[r, c + 1], Z[r + 1, c + 1], Z[r + 1, c])
            corners = ((c, r), (c + 1, r), (c + 1, r + 1), (c, r + 1))

            def edge_point(e):
                a, b = e, (e + 1) % 4
                t = v[a] / (v[a] - v[b])
                px = corners[a][0] + t * (corners[b][0] - corners[a][0])
                py = corners[a][1] + t * (corners[b][1] - corners[a][1])
                return (x0 + px * dx, y0 + py * dy)

            for e1, e2 in _CASES[code]:
                segs.append((edge_point(e1), edge_point(e2)))
    return segs


def clip_line(coeffs, window):
    """Intersection of a*x + b*y + c = 0 with the window, as a segment or None."""
    a, b, c = (float(v) for v in coeffs)
    x0, x1, y0, y1 = (float(w) for w in window)
    pts = []
    if abs(b) > 1e-300:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 <= y <= y1:
                pts.append((x, y))
    if abs(a) > 1e-300:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 <= x <= x1:
                pts.append((x, y))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def render_svg(f: Quartic, L_inf=None, window=(-2, 2, -2, 2), resolution: int = 512,
               bts: BitangentSet | None = None, show_grates: bool = False, seed: int = 0) -> str:
    L_inf = ProjLine(0, 0, 1) if L_inf is None else (L_inf if isinstance(L_inf, ProjLine) else ProjLine(*L_inf))
    x0, x1, y0, y1 = (float(w) for w in window)
    if not (x0 < x1 and y0 < y1):
        raise ValueError("empty window")
    bts = bts if bts is not None else compute_bitangents(f, seed=seed)
    sx = SIZE / (x1 - x0)
    sy = SIZE / (y1 - y0)

    def px(p):
        return f"{(p[0] - x0) * sx:.3f} {(y1 - p[1]) * sy:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    lines = []
    for bt in bts.real():
        try:
            s = qtype(f, bt, L_inf).signature
        except BitangentError:
            s = None
        seg = clip_line(bt.line_float(), window)
        if seg is not None:
            lines.append(f'<path class="bitangent" d="M {px(seg[0])} L {px(seg[1])}" stroke="{COLORS[s]}" '
                         f'stroke-width="1.2" fill="none"/>')
        if show_grates and bt.is_split:
            z1, z2 = bt.points_approx()
            if abs(z1[2]) > 0 and abs(z2[2]) > 0:
                a = (z1[0].real / z1[2].real, z1[1].real / z1[2].real)
                b = (z2[0].real / z2[2].real, z2[1].real / z2[2].real)
                lines.append(f'<path class="grate" d="M {px(a)} L {px(b)}" stroke="black" stroke-width="2.5" '
                             f'fill="none"/>')
    out.append('<g id="bitangents">')
    out.extend(lines)
    out.append("</g>")
    segs = marching_squares(f, window, resolution)
    out.append('<g id="curve">')
    if segs:
        d = " ".join(f"M {px(a)} L {px(b)}" for a, b in segs)
        out.append(f'<path class="curve" d="{d}" stroke="black" stroke-width="1.5" fill="none"/>')
    out.append("</g>")
    if L_inf.coords != (0, 0, 1):
        seg = clip_line(tuple(Fraction(c) for c in L_inf.coords), window)
        if seg is not None:
            out.append(f'<path class="line-at-infinity" d="M {px(seg[0])} L {px(seg[1])}" stroke="black" '
                       f'stroke-dasharray="8 5" stroke-width="1.5" fill="none"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
