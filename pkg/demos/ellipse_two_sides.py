"""Ellipse a=2, b=1: the disk maps onto the exterior of the ellipse, its complement onto the interior.

Run: python demos/ellipse_two_sides.py
"""
from conicquad import Conic, spherical_identity, standard_family, standard_map, verify_identity
from conicquad import catalog

f, s = standard_map(Conic("ellipse", 2, 1))
print("f(zeta) =", f.num, "/", f.den)

# two nodes on the imaginary axis in each half, equal weights
inner = spherical_identity(f, s)
outer = spherical_identity(f, s.other_half())
for label, ident in (("disk side", inner), ("exterior side", outer)):
    for n in ident.nodes:
        print(f"{label:>14}: zeta={n.zeta:.6f}  z={n.z:.6f}  weight={n.weight.real:.10f}")

# the closed forms agree and the two weights add up to one
d = catalog.ellipse_entry(2, 1).extras
print("A_int + A_ext =", d["A_int"] + d["A_ext"])
print("|zeta_int * zeta_ext| =", abs(d["zeta_int"] * d["zeta_ext"]))

# numeric check against adaptive cubature of the pulled-back spherical area
rep = verify_identity(inner, standard_family(s, f), tol=1e-8)
print(rep.table())

# the whole sphere is covered twice: masses of both halves add to the degree
print("total weight over both halves:", (inner.total_weight() + outer.total_weight()).real)
