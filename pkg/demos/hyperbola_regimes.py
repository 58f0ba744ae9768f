"""Hyperbola x^2/a^2 - y^2/b^2 = 1 in its three regimes, and the loss of weight at b = sqrt(1+a^2).

Run: python demos/hyperbola_regimes.py
"""
from conicquad import Conic, TestFunction, integrate_pullback, spherical_identity, standard_map
from conicquad import catalog

# b<1: complex weights.  b>1: real weights.  Either way A_+ + A_- = 1.
for a, b in [(1.0, 0.5), (1.0, 2.0)]:
    e = catalog.hyperbola_entry(a, b)
    ap, am = e.extras["A_plus"], e.extras["A_minus"]
    print(f"a={a} b={b} [{e.regime}]  A+={ap:.8f}  A-={am:.8f}  sum={ap + am:.3g}")

# b=1: the two nodes merge into a double node at zeta=i; the h' coefficient is negative
f, s = standard_map(Conic("hyperbola", 1, 1))
ident = spherical_identity(f, s)
(n,) = ident.physical().nodes
print("b=1 physical functional: h(1) coefficient", n.coefficients[0].real, " h'(1) coefficient",
      n.coefficients[1].real)

# cubature settles the sign: only the minus version matches
h = TestFunction.pole_basis(-1j, 2)
lhs = integrate_pullback(f, s, h, 1e-9)
t = h.taylor(1j, 2)
print("  cubature      ", lhs)
print("  h - h'/2      ", t[0] - 0.5 * t[1])
print("  h + h'/2      ", t[0] + 0.5 * t[1])

# loss of weight: the node over the focus c sits on a branch point and carries nothing
for a in (0.5, 1.0, 3.0):
    e = catalog.loss_of_weight(a)
    fmap = e.identity.map
    v, w = e.identity.nodes
    print(f"a={a}: zero-weight node z={v.z.real:.6f} (c={e.extras['c']:.6f}), |f'|={abs(fmap.derivative()(v.zeta)):.1e};"
          f" surviving node z={w.z.real:.6f} = 1/c={1 / e.extras['c']:.6f}")

# for b<1 the same functional can be written with real coefficients: two point masses and a line dipole
dip = catalog.hyperbola_dipole_form(1.0, 0.5)
print("dipole density", dip.density, "at", dip.z1)
print("h = 1/(z+3):", dip.value(lambda z: 1 / (z + 3), lambda z: -1 / (z + 3) ** 2),
      catalog.hyperbola_entry(1.0, 0.5).physical.evaluate(TestFunction.pole_basis(-3)))
print("b = 1 - 1e-6 agrees with the double node:",
      abs(catalog.hyperbola_entry(1, 1 - 1e-6).identity.evaluate(h) - ident.evaluate(h)) < 1e-4)
