"""SVG drawings of the dual arrangement for d = 3 and DOT text for type graphs."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .core import NdType, dimension, faces, is_face, popcount, type_graph
from .subdivision import MixedSubdivision, lattice_point_of

SCALE = 100
MARGIN = 40
COLORS = ("#c0392b", "#2471a3", "#229954", "#b9770e", "#7d3c98", "#17a589", "#5d6d7e")


def _xy(q, n: int) -> tuple[Fraction, Fraction]:
    # corner 1 bottom left, corner 2 bottom right, corner 3 on top
    x = Fraction(q[1]) + Fraction(q[2], 2)
    y = Fraction(n) - Fraction(q[2])
    return x * SCALE + MARGIN, y * SCALE + MARGIN


def _vertices(A: NdType) -> list[tuple[int, ...]]:
    return sorted({lattice_point_of(T) for T in faces(A) if T.is_tope()})


def _centroid(points, n: int) -> tuple[Fraction, Fraction]:
    xs = [_xy(p, n) for p in points]
    return sum(x for x, _ in xs) / len(xs), sum(y for _, y in xs) / len(xs)


def _fmt(v: Fraction) -> str:
    return f"{float(v):.2f}"


def render_svg(S: MixedSubdivision, labels: bool = False) -> str:
    """The subdivision in grey and, per position i, the dual hyperplane as
    segments from cell centroids to the midpoints of edges running along
    summand i. Output depends only on S."""
    if S.d != 3:
        raise ValueError("rendering needs d = 3")
    n = S.n
    size = n * SCALE + 2 * MARGIN
    edges = sorted(E for E in S.all_cells if dimension(E) == 1)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g id="subdivision" stroke="#bbbbbb" stroke-width="1">',
    ]
    for E in edges:
        (x1, y1), (x2, y2) = (_xy(p, n) for p in _vertices(E))
        lines.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    lines.append("</g>")
    cells = sorted(S.maximal_cells)
    centers = {C: _centroid(_vertices(C), n) for C in cells}
    for i in range(1, n + 1):
        color = COLORS[(i - 1) % len(COLORS)]
        lines.append(f'<g id="hyperplane-{i}" stroke="{color}" stroke-width="2">')
        for C in cells:
            cx, cy = centers[C]
            for E in edges:
                if popcount(E[i]) < 2:
                    continue
                if not is_face(E, C):
                    continue
                mx, my = _centroid(_vertices(E), n)
                lines.append(f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(mx)}" y2="{_fmt(my)}"/>')
        lines.append("</g>")
    if labels:
        lines.append('<g id="labels" font-family="monospace" font-size="10" text-anchor="middle">')
        for C in cells:
            cx, cy = centers[C]
            lines.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy)}">{escape(str(C))}</text>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def type_graph_dot(A: NdType, name: str = "K") -> str:
    g = type_graph(A)
    out = [f'graph "{name}" {{', f'  label="{A}";']
    for kind, k in g.nodes():
        shape = "circle" if kind == "N" else "box"
        out.append(f"  {kind}{k} [shape={shape}];")
    for i, j in sorted(g.edges):
        out.append(f"  N{i} -- D{j};")
    out.append("}")
    return "\n".join(out) + "\n"


def types_dot(types) -> str:
    return "".join(type_graph_dot(A, f"K{k}") for k, A in enumerate(sorted(types), 1))
