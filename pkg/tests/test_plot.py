import xml.etree.ElementTree as ET

import numpy as np

from conicquad.curves import Conic, conic_polynomial
from conicquad.plot import marching_segments, render_svg

SVG = "{http://www.w3.org/2000/svg}"


def test_marching_circle():
    segs = marching_segments(lambda z: np.abs(z) ** 2 - 1, 2.0, n=80)
    pts = np.array([p for s in segs for p in s])
    assert len(segs) > 50
    assert np.max(np.abs(np.abs(pts) - 1)) < 2e-3


def test_render_svg_structure():
    curve = conic_polynomial(Conic("ellipse", 2, 1))
    text = render_svg(curve, 3.0, nodes=[1.0j, -1.0j, 100.0], branch_points=[3 ** 0.5, -3 ** 0.5],
                      cuts=[(-3 ** 0.5, 3 ** 0.5)])
    root = ET.fromstring(text.split("\n", 1)[1])
    assert root.get("version") == "1.1" and root.get("width") == "480"
    circles = root.findall(f"{SVG}circle")
    assert sorted(c.get("fill") for c in circles) == ["green", "green", "red", "red"]
    assert root.find(f"{SVG}line").get("stroke-dasharray")
    assert len(root.find(f"{SVG}path").get("d")) > 1000
    assert "text" not in text  # no axes labels or ticks


def test_render_is_deterministic():
    curve = conic_polynomial(Conic("parabola", 1))
    assert render_svg(curve, 5.0) == render_svg(curve, 5.0)
