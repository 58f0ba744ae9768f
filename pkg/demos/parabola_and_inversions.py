"""Parabola y^2 = 4a(a - x) domains, the a = 1/2 double node, and the inverted quartics.

Writes SVG sketches into the current directory.
Run: python demos/parabola_and_inversions.py
"""
from conicquad import Conic, conic_polynomial, genus_report, invert_curve, singular_points
from conicquad import catalog
from conicquad.cli import run

for a in (0.3, 0.5, 1.0):
    e = catalog.parabola_entry(a)
    print(f"a={a} [{e.regime}]")
    for n in e.physical.nodes:
        print("   z =", n.z, " coefficients", [complex(round(c.real, 10), round(c.imag, 10)) for c in n.coefficients])

# inverting the conics gives degree 4 curves with three singular points and genus zero
pairs = [("hippopede", Conic("ellipse", 2, 1), "antipodal"), ("lemniscate", Conic("hyperbola", 1, 1), "antipodal"),
         ("cardioid", Conic("parabola", 1), 1 + 0j)]
for name, c, where in pairs:
    C = invert_curve(conic_polynomial(c), where)
    rep = genus_report(C.degree, len(singular_points(C)), 2)
    print(f"{name:>10}: degree {rep.degree}, singular points {rep.singular_count}, genus {rep.genus}")

# planar identity of the hippopede: weight 5/16 at +-i sqrt(3)/4
for n in catalog.hippopede_entry(2, 1).planar.physical().nodes:
    print("hippopede planar node", n.z, "weight", n.weight.real)

run(["plot", "--conic", "parabola", "--a", "0.5", "--out", "parabola.svg"])
run(["plot", "--conic", "parabola", "--a", "1", "--invert", "focus", "--out", "cardioid.svg"])
run(["plot", "--conic", "hyperbola", "--a", "1", "--b", "0.5", "--out", "hyperbola.svg"])
