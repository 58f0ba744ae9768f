import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicquad.curves import (
    BranchPointError,
    Conic,
    DegenerateCircle,
    HermitianCurve,
    asymptotic_directions,
    conic_polynomial,
    genus_report,
    invert_curve,
    schwarz_branches,
    singular_points,
)
from conicquad.maps import reflect, standard_map
from conicquad.sphere import ProjectivePoint

CONICS = [Conic("ellipse", 2, 1), Conic("ellipse", 3, 0.4), Conic("hyperbola", 1, 1), Conic("hyperbola", 1, 0.5),
          Conic("hyperbola", 0.7, 2), Conic("parabola", 0.5), Conic("parabola", 2)]


def test_conic_validation():
    with pytest.raises(ValueError):
        Conic("ellipse", 1, 2)
    with pytest.raises(ValueError):
        Conic("parabola", 1, 1)
    with pytest.raises(ValueError):
        Conic("hyperbola", 1)
    assert Conic("ellipse", 1, 1).is_circle
    assert Conic("ellipse", 5, 3).c == 4
    assert Conic("hyperbola", 3, 4).c == 5


def test_ellipse_polynomial_coefficients():
    P = conic_polynomial(Conic("ellipse", 2, 1))
    assert P.coefficient(2, 0) == 1 and P.coefficient(0, 2) == 1
    assert P.coefficient(1, 1) == pytest.approx(-10 / 3)
    assert P.coefficient(0, 0) == pytest.approx(16 / 3)


def test_hyperbola_unit_polynomial():
    P = conic_polynomial(Conic("hyperbola", 1, 1))
    assert P.coefficient(1, 1) == 0 and P.coefficient(0, 0) == -2


def test_parabola_polynomial():
    a = 0.7
    P = conic_polynomial(Conic("parabola", a))
    z, w = 0.3 + 1.1j, -2 + 0.5j
    assert abs(P(z, w) - (8 * a * (z + w) + (z - w) ** 2)) < 1e-12


def test_degenerate_circle_signal():
    with pytest.raises(DegenerateCircle):
        conic_polynomial(Conic("ellipse", 1, 1))
    with pytest.raises(DegenerateCircle):
        schwarz_branches(Conic("ellipse", 1, 1), 2)


@pytest.mark.parametrize("c", CONICS)
def test_real_locus_vanishes(c):
    P = conic_polynomial(c)
    scale = max(abs(v) for v in P.coeffs.values())
    vals = P.on_real_locus(c.boundary_points(200))
    assert np.max(np.abs(vals)) / scale <= 1e-9
    assert np.max(np.abs(np.imag(P.on_real_locus(np.array([0.3 + 2j, -5 + 1j]))))) < 1e-12


@pytest.mark.parametrize("c", CONICS)
def test_standard_map_satisfies_curve(c):
    f, s = standard_map(c)
    fs = reflect(f, s)
    P = conic_polynomial(c)
    rng = np.random.default_rng(5)
    zeta = rng.normal(size=100) + 1j * rng.normal(size=100)
    vals = P(f(zeta), fs(zeta))
    size = np.abs(f(zeta)) ** 2 + np.abs(fs(zeta)) ** 2 + 1
    assert np.max(np.abs(vals) / size) <= 1e-9


def test_ellipse_principal_branch_is_conjugate_on_boundary():
    c = Conic("ellipse", 2, 1)
    for z in c.boundary_points(50):
        assert abs(schwarz_branches(c, z)[0] - z.conjugate()) <= 1e-10


def test_hyperbola_anchor_value():
    for a, b in [(1, 1), (2, 0.5), (0.3, 1.7)]:
        c = Conic("hyperbola", a, b)
        assert abs(schwarz_branches(c, 0)[0] - 2 * a * b / c.c) < 1e-12


def test_hyperbola_branch_on_right_branch():
    c = Conic("hyperbola", 1, 0.5)
    for u in np.linspace(-1.5, 1.5, 9):
        z = math.cosh(u) + 0.5j * math.sinh(u)
        assert abs(schwarz_branches(c, z)[0] - z.conjugate()) <= 1e-10


def test_parabola_vertex_and_boundary():
    c = Conic("parabola", 1.3)
    assert abs(schwarz_branches(c, 0)[0]) < 1e-12
    P = conic_polynomial(c)
    for z in c.boundary_points(30):
        w = schwarz_branches(c, z)
        assert min(abs(w[0] - z.conjugate()), abs(w[1] - z.conjugate())) < 1e-9
        assert abs(P(z, w[0])) < 1e-9 and abs(P(z, w[1])) < 1e-9


def test_branch_points_rejected():
    with pytest.raises(BranchPointError):
        schwarz_branches(Conic("ellipse", 2, 1), math.sqrt(3))
    with pytest.raises(BranchPointError):
        schwarz_branches(Conic("parabola", 0.5), 0.5)


def test_hippopede_inversion():
    a, b = 2.0, 1.0
    H = invert_curve(conic_polynomial(Conic("ellipse", a, b)))
    rng = np.random.default_rng(6)
    for _ in range(20):
        x, y = rng.normal(size=2)
        r2 = x * x + y * y
        want = a * a * b * b * r2 * r2 - a * a * y * y - b * b * x * x
        got = H.on_real_locus(complex(x, y)).real
        assert got == pytest.approx(want / (a * a * b * b), rel=1e-12, abs=1e-12)


def test_lemniscate_inversion():
    L = invert_curve(conic_polynomial(Conic("hyperbola", 1, 1)))
    ref = HermitianCurve({(2, 0): 1, (0, 2): 1, (2, 2): -2})
    assert L.proportional_to(ref)
    t = np.linspace(0, 2 * np.pi, 40)
    z = np.sqrt(0.5 + 0.5 * np.exp(1j * t))
    assert np.max(np.abs(L.on_real_locus(z))) < 1e-12


def test_cardioid_inversion_at_focus():
    a = 0.8
    C = invert_curve(conic_polynomial(Conic("parabola", a)), complex(a))
    rng = np.random.default_rng(7)
    for _ in range(10):
        u, v = rng.normal(size=2)
        r2 = u * u + v * v
        want = 4 * a * a * r2 * r2 + 4 * a * u * r2 - v * v
        got = C.on_real_locus(complex(u, v)).real
        assert got * 4 * a * a == pytest.approx(want, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("c", CONICS[:5])
def test_double_antipodal_inversion(c):
    P = conic_polynomial(c)
    assert invert_curve(invert_curve(P)).proportional_to(P)


def test_hermitian_symmetry_enforced():
    with pytest.raises(ValueError):
        HermitianCurve({(1, 0): 1j, (0, 1): 1j})
    HermitianCurve({(1, 0): 1j, (0, 1): -1j})


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.floats(-5, 5), st.floats(-5, 5)), min_size=1,
                max_size=6))
def test_curve_json_round_trip_bit_exact(terms):
    coeffs = {}
    for j, k, re, im in terms:
        v = complex(re, im) if j != k else complex(re, 0)
        coeffs[(j, k)] = v
        coeffs[(k, j)] = v.conjugate()
    if not any(v != 0 for v in coeffs.values()):
        return
    P = HermitianCurve(coeffs)
    back = HermitianCurve.from_json(json.loads(json.dumps(P.to_json())))
    assert back.coeffs == P.coeffs


def test_genus_examples():
    r = genus_report(2, 0, 2)
    assert (r.genus, r.branch_count) == (0, 2)
    r = genus_report(2, 0, 1)
    assert (r.genus, r.branch_count) == (0, 0)
    r = genus_report(4, 3, 2)
    assert (r.genus, r.branch_count) == (0, 2)
    with pytest.raises(ValueError):
        genus_report(2, 1, 2)


@given(st.integers(1, 8), st.integers(1, 6), st.data())
def test_genus_invariants(d, m, data):
    budget = (d - 1) * (d - 2) // 2
    sing = data.draw(st.integers(0, budget))
    r = genus_report(d, sing, m)
    assert r.genus + r.singular_count == budget
    assert 2 * m - r.branch_count == 2 * (1 - r.genus)


def test_asymptotic_directions():
    d = asymptotic_directions(Conic("hyperbola", 1, 1))
    assert {round(p.phi, 12) for p in d} == {round(math.pi / 4, 12), round(3 * math.pi / 4, 12)}
    assert asymptotic_directions(Conic("ellipse", 2, 1)) == []
    assert asymptotic_directions(Conic("parabola", 3)) == [ProjectivePoint(phi=0.0)]
    a, b = 2.0, 0.5
    for p in asymptotic_directions(Conic("hyperbola", a, b)):
        assert math.cos(2 * p.phi) == pytest.approx((a * a - b * b) / (a * a + b * b))


@pytest.mark.parametrize("conic, mode", [(Conic("ellipse", 2, 1), "antipodal"),
                                         (Conic("hyperbola", 1, 1), "antipodal"),
                                         (Conic("parabola", 1), 1 + 0j)])
def test_inverted_curves_have_three_singular_points(conic, mode):
    pts = singular_points(invert_curve(conic_polynomial(conic), mode))
    assert len(pts) == 3
    # the origin [1:0:0] and the two circular points at infinity
    keys = sorted(tuple(int(round(abs(x))) for x in p) for p in pts)
    assert keys == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_smooth_conic_has_no_singular_points():
    assert singular_points(conic_polynomial(Conic("ellipse", 2, 1))) == []
