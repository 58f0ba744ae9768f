"""Schematic SVG of a real algebraic curve with quadrature nodes and branch points.

The real locus ``P(z, conj z) = 0`` is traced by marching squares on a fixed
grid.  Nodes are drawn red, branch points and cuts green.  No axes or ticks.
"""
from __future__ import annotations

import numpy as np

from .curves import HermitianCurve
from .sphere import is_infinity

__all__ = ["marching_segments", "render_svg"]

CANVAS = 480
NODE_COLOR = "red"
BRANCH_COLOR = "green"

# edge index pairs crossed for each of the 16 corner sign patterns
# corners: 0 = (i, j), 1 = (i+1, j), 2 = (i+1, j+1), 3 = (i, j+1); edges k joins corner k and k+1
_CASES = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 5: [(3, 0), (1, 2)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(2, 3)], 9: [(0, 2)], 10: [(0, 1), (2, 3)], 11: [(1, 2)], 12: [(1, 3)], 13: [(0, 1)], 14: [(3, 0)],
}


def marching_segments(fun, extent: float, n: int = 240) -> list[tuple[complex, complex]]:
    """Segments of the zero set of a real function on ``[-extent, extent]^2``."""
    xs = np.linspace(-extent, extent, n + 1)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    F = np.real(fun(X + 1j * Y))
    F = np.where(F == 0, 1e-300, F)
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    segs = []
    for i in range(n):
        for j in range(n):
            v = [F[i + di, j + dj] for di, dj in corners]
            code = sum(1 << k for k in range(4) if v[k] > 0)
            for e1, e2 in _CASES.get(code, []):
                pts = []
                for e in (e1, e2):
                    a, b = e, (e + 1) % 4
                    t = v[a] / (v[a] - v[b])
                    (ia, ja), (ib, jb) = corners[a], corners[b]
                    x = xs[i + ia] + t * (xs[i + ib] - xs[i + ia])
                    y = xs[j + ja] + t * (xs[j + jb] - xs[j + ja])
                    pts.append(complex(x, y))
                segs.append((pts[0], pts[1]))
    return segs


def _to_canvas(z: complex, extent: float) -> tuple[float, float]:
    s = CANVAS / (2 * extent)
    return (z.real + extent) * s, (extent - z.imag) * s


def render_svg(curve: HermitianCurve, extent: float, nodes=(), branch_points=(), cuts=()) -> str:
    """SVG 1.1 text.  ``cuts`` is a list of ``(z0, z1)`` segments."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    path = []
    for p, q in marching_segments(curve.on_real_locus, extent):
        (x0, y0), (x1, y1) = _to_canvas(p, extent), _to_canvas(q, extent)
        path.append(f"M{x0:.2f} {y0:.2f}L{x1:.2f} {y1:.2f}")
    out.append(f'<path d="{"".join(path)}" stroke="black" stroke-width="1.5" fill="none"/>')
    for p, q in cuts:
        (x0, y0), (x1, y1) = _to_canvas(complex(p), extent), _to_canvas(complex(q), extent)
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
                   f'stroke="{BRANCH_COLOR}" stroke-width="1" stroke-dasharray="4 3"/>')
    for pts, color in ((branch_points, BRANCH_COLOR), (nodes, NODE_COLOR)):
        for z in pts:
            if is_infinity(z) or abs(complex(z)) > extent:
                continue
            x, y = _to_canvas(complex(z), extent)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
