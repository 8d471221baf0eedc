"""Deterministic SVG drawings of planar polytopes and chain snapshots.

Geometry is exact; only the pixel placement goes through floats, always
printed with two decimals so the bytes never depend on the platform.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HPolytope
from lctpoly.exactgeom.linalg import fmt_q

SIZE = 480
MARGIN = 60
PALETTE = ("#1f4e79", "#2e7d32", "#b35806", "#6a1b9a", "#00838f", "#5d4037")


def _ordered(vertices: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Counter-clockwise order around the centroid, sorted by an exact pseudo-angle."""
    n = len(vertices)
    cx = sum(v[0] for v in vertices) / n
    cy = sum(v[1] for v in vertices) / n

    def key(v):
        dx, dy = v[0] - cx, v[1] - cy
        upper = dy > 0 or (dy == 0 and dx > 0)
        return (0 if upper else 1, -dx / (abs(dx) + abs(dy)) if upper else dx / (abs(dx) + abs(dy)))

    return sorted(vertices, key=key)


def _fmt_ineq(normal, bound) -> str:
    terms = []
    for i, a in enumerate(normal):
        if a == 0:
            continue
        mono = ("" if abs(a) == 1 else fmt_q(abs(a))) + f"x{i + 1}"
        if not terms:
            terms.append(("-" if a < 0 else "") + mono)
        else:
            terms.append(("- " if a < 0 else "+ ") + mono)
    return f"{' '.join(terms)} &lt;= {fmt_q(bound)}"


def plot2d(layers: Sequence[tuple[str, HPolytope]], markers: Sequence[tuple[Fraction, Fraction]] = (),
           title: str = "", label_facets: bool = True) -> str:
    """SVG text for one or more nested planar polytopes; ``markers`` are drawn as crosses."""
    if not layers:
        raise PreconditionError("nothing to plot")
    for name, p in layers:
        if p.dim != 2:
            raise PreconditionError(f"plot needs ambient dimension 2, {name!r} has {p.dim}")
        if p.is_empty:
            raise PreconditionError(f"cannot plot the empty polytope {name!r}")
        if not p.is_bounded:
            raise PreconditionError(f"cannot plot the unbounded polyhedron {name!r}")
    pts = [v for _, p in layers for v in p.vrep.vertices] + [tuple(Fraction(x) for x in m) for m in markers]
    xs = [v[0] for v in pts] + [Fraction(0)]
    ys = [v[1] for v in pts] + [Fraction(0)]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1))
    scale = Fraction(SIZE - 2 * MARGIN) / span

    def px(v):
        return float(MARGIN + (v[0] - x0) * scale), float(SIZE - MARGIN - (v[1] - y0) * scale)

    def f2(x: float) -> str:
        return f"{x:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
           '<rect width="100%" height="100%" fill="white"/>']
    if title:
        out.append(f'<text x="{SIZE // 2}" y="24" text-anchor="middle" font-family="monospace" font-size="14">{title}</text>')
    ox, oy = px((Fraction(0), Fraction(0)))
    out.append(f'<line x1="{f2(MARGIN / 2)}" y1="{f2(oy)}" x2="{f2(SIZE - MARGIN / 2)}" y2="{f2(oy)}" stroke="#888" stroke-width="1"/>')
    out.append(f'<line x1="{f2(ox)}" y1="{f2(SIZE - MARGIN / 2)}" x2="{f2(ox)}" y2="{f2(MARGIN / 2)}" stroke="#888" stroke-width="1"/>')
    out.append(f'<text x="{f2(SIZE - MARGIN / 2)}" y="{f2(oy - 6)}" font-family="monospace" font-size="11">x1</text>')
    out.append(f'<text x="{f2(ox + 6)}" y="{f2(MARGIN / 2)}" font-family="monospace" font-size="11">x2</text>')
    vertex_labels = {}
    for k, (name, p) in enumerate(layers):
        colour = PALETTE[k % len(PALETTE)]
        verts = _ordered(list(p.vrep.vertices))
        path = " ".join(f"{f2(a)},{f2(b)}" for a, b in map(px, verts))
        out.append(f'<polygon points="{path}" fill="{colour}" fill-opacity="0.08" stroke="{colour}" stroke-width="1.5">'
                   f'<title>{name}</title></polygon>')
        if label_facets and k == len(layers) - 1:
            for h in p.facets:
                tight = [v for v in verts if h.is_tight(v)]
                if len(tight) < 2:
                    continue
                mid = ((tight[0][0] + tight[-1][0]) / 2, (tight[0][1] + tight[-1][1]) / 2)
                mx, my = px(mid)
                out.append(f'<text x="{f2(mx + 4)}" y="{f2(my - 4)}" font-family="monospace" font-size="10" '
                           f'fill="{colour}">{_fmt_ineq(h.normal, h.bound)}</text>')
        for v in verts:
            vertex_labels.setdefault(v, colour)
    for v, colour in sorted(vertex_labels.items()):
        vx, vy = px(v)
        out.append(f'<circle cx="{f2(vx)}" cy="{f2(vy)}" r="2.5" fill="{colour}"/>')
        out.append(f'<text x="{f2(vx + 4)}" y="{f2(vy + 12)}" font-family="monospace" font-size="9">'
                   f'({fmt_q(v[0])}, {fmt_q(v[1])})</text>')
    for m in markers:
        mx, my = px(m)
        out.append(f'<path d="M {f2(mx - 6)} {f2(my - 6)} L {f2(mx + 6)} {f2(my + 6)} M {f2(mx - 6)} {f2(my + 6)} '
                   f'L {f2(mx + 6)} {f2(my - 6)}" stroke="#c62828" stroke-width="2"/>')
        out.append(f'<text x="{f2(mx + 8)}" y="{f2(my - 8)}" font-family="monospace" font-size="10" fill="#c62828">'
                   f'unstable ({fmt_q(m[0])}, {fmt_q(m[1])})</text>')
    legend_y = SIZE - 18
    for k, (name, _) in enumerate(layers):
        out.append(f'<text x="{MARGIN + 90 * k}" y="{legend_y}" font-family="monospace" font-size="11" '
                   f'fill="{PALETTE[k % len(PALETTE)]}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
