"""Exterior of the ellipse x^2 + 2y^2 < 1 against the Euclidean area: every decaying h integrates to zero.

Run: python demos/null_quadrature.py
"""
import math

from conicquad import Conic, TestFunction, euclidean_limit_check, null_quadrature_check

c = Conic("ellipse", 1.0, 1 / math.sqrt(2))
for h in [TestFunction.monomial(-3), TestFunction.monomial(-4), TestFunction.pole_basis(0.2, 3),
          TestFunction.pole_basis(0.1 + 0.3j, 4)]:
    r = null_quadrature_check(c, h)
    print(f"{h.label:>22}: {abs(r.value):.2e}")

# 1/z^2 only converges conditionally; the answer depends on how the plane is exhausted
h = TestFunction.monomial(-2)
print("1/z^2, homothetic ellipses:", abs(null_quadrature_check(c, h).value))
print("1/z^2, circles            :", null_quadrature_check(c, h, exhaustion="circle").value.real,
      " vs -pi (a-b)^2/c^2 =", -math.pi * (c.a - c.b) ** 2 / c.c ** 2)

# scaling the spherical measure by eps -> 0 recovers null quadrature on the hyperbola domain
for row in euclidean_limit_check(Conic("hyperbola", 1, 1), [1.0, 0.1, 0.01, 0.001]):
    print(f"eps={row.eps:<6g} identity {abs(row.rhs):.3e}  cubature error {row.abs_err:.1e}")
