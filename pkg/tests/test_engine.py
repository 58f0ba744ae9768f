import cmath
import math

import numpy as np
import pytest

from conicquad import catalog
from conicquad.classify import residue_oracle
from conicquad.curves import Conic
from conicquad.engine import (
    LaurentError,
    PreconditionError,
    QuadratureIdentity,
    check_precondition,
    euclidean_identity,
    node_locus,
    physical_nodes,
    pushforward_coefficients,
    rotate_for_regularity,
    scaled_identity,
    spherical_identity,
    taylor_at,
)
from conicquad.maps import REAL_AXIS, UNIT_CIRCLE, RationalMap, power_map, reflect, standard_map
from conicquad.sphere import INFINITY
from conicquad.verify import TestFunction

TESTS = [TestFunction.monomial(0), TestFunction.pole_basis(-2j), TestFunction.pole_basis(1 - 1.5j, 2),
         TestFunction.rational([1.0, 0.5], [3j, 1.0]), TestFunction.pole_basis(-0.5 - 3j, 3)]


def _locus_sorted(f, s):
    return sorted(node_locus(f, s), key=lambda t: (round(t[0].real, 9), t[0].imag))


def test_ellipse_node_locus():
    loc = _locus_sorted(*standard_map(Conic("ellipse", 2, 1)))
    assert [m for _, m in loc] == [1, 1]
    zi = sorted(z.imag for z, _ in loc)
    assert zi[0] == pytest.approx(-0.47450, abs=5e-6) and zi[1] == pytest.approx(0.47450, abs=5e-6)


def test_hyperbola_unit_double_node():
    loc = node_locus(*standard_map(Conic("hyperbola", 1, 1)))
    assert len(loc) == 1 and loc[0][1] == 2 and abs(loc[0][0] - 1j) < 1e-7


def test_parabola_half_double_node():
    loc = node_locus(*standard_map(Conic("parabola", 0.5)))
    assert len(loc) == 1 and loc[0][1] == 2 and abs(loc[0][0] - 1j / math.sqrt(2)) < 1e-7


def test_ellipse_weights_closed_form():
    ident = spherical_identity(*standard_map(Conic("ellipse", 2, 1)))
    for n in ident.nodes:
        assert n.weight == pytest.approx((1 - 2 / math.sqrt(10)) / 2, abs=1e-12)
    assert ident.cross_check <= 1e-9


def test_hyperbola_unit_functional():
    a = 1.0
    ident = spherical_identity(*standard_map(Conic("hyperbola", a, 1)))
    (n,) = ident.nodes
    assert n.order == 2
    assert np.allclose(n.coefficients, [1.0, -a / (1 + a * a)], atol=1e-9)
    phys = ident.physical().nodes[0]
    assert abs(phys.z - 1) < 1e-9
    assert np.allclose(phys.coefficients, [1.0, -0.5], atol=1e-9)


@pytest.mark.parametrize("a", [0.4, 1.0, 2.5])
def test_hyperbola_unit_functional_general_a(a):
    (n,) = spherical_identity(*standard_map(Conic("hyperbola", a, 1))).nodes
    assert np.allclose(n.coefficients, [1.0, -a / (1 + a * a)], atol=1e-8)


def test_square_map_weights():
    ident = spherical_identity(power_map(2), REAL_AXIS)
    pts = sorted((n.zeta for n in ident.nodes), key=lambda z: z.real)
    assert np.allclose(pts, [cmath.exp(3j * math.pi / 4), cmath.exp(1j * math.pi / 4)])
    assert all(abs(n.weight - 0.5) < 1e-12 for n in ident.nodes)


@pytest.mark.parametrize("conic", [Conic("ellipse", 2, 1), Conic("ellipse", 3, 0.5), Conic("hyperbola", 1, 0.5),
                                   Conic("hyperbola", 0.8, 1.7), Conic("parabola", 0.3), Conic("parabola", 2)])
def test_mass_over_both_halves_is_degree(conic):
    f, s = standard_map(conic)
    plus = spherical_identity(f, s).total_weight()
    minus = spherical_identity(f, s.other_half()).total_weight()
    assert abs(plus + minus - f.degree) <= 1e-9


def test_disk_exterior_node_at_infinity():
    ident = spherical_identity(RationalMap.identity(), UNIT_CIRCLE.other_half())
    (n,) = ident.nodes
    assert n.zeta is INFINITY and abs(n.weight - 0.5) < 1e-12


def test_rotation_leaves_regular_map_alone():
    f, s = standard_map(Conic("ellipse", 2, 1))
    g, rot = rotate_for_regularity(f, s)
    assert g is f and rot == (1.0, 0.0)


def test_rotation_moves_boundary_poles():
    f, s = standard_map(Conic("hyperbola", 1, 0.5))
    g, (a, b) = rotate_for_regularity(f, s)
    assert b != 0
    for z in np.roots(g.den[::-1]):
        assert abs(z.imag) > 1e-8
    # rotations preserve the spherical measure, so the functional on h(zeta) is unchanged
    i1 = spherical_identity(f, s)
    i2 = spherical_identity(g, s, rotate=False)
    for h in TESTS:
        assert abs(i1.evaluate(h) - i2.evaluate(h)) <= 1e-8


def test_rotated_identity_matches_unrotated_functional():
    # the Möbius rotation of the sphere preserves the spherical measure, so the
    # functional on h(zeta) does not change
    f, s = standard_map(Conic("ellipse", 2, 1))
    a, b = 0.6 + 0.48j, 0.64j
    g = f.post_mobius(a, b, -np.conj(b), np.conj(a))
    i1 = spherical_identity(f, s)
    i2 = spherical_identity(g, s)
    for h in TESTS:
        assert abs(i1.evaluate(h) - i2.evaluate(h)) <= 1e-8


def test_reparametrisation_invariance():
    # zeta -> -conj-preserving Möbius of the upper half-plane: zeta -> (2 zeta + 1)/(zeta + 1)
    f, s = standard_map(Conic("hyperbola", 1, 2))
    al, be, ga, de = 2.0, 1.0, 1.0, 1.0
    g = f.compose_mobius(al, be, ga, de)
    p1 = spherical_identity(f, s).physical()
    p2 = spherical_identity(g, s).physical()
    for h in [TestFunction.pole_basis(p) for p in (3j, -2 + 1j)] + [TestFunction.monomial(0)]:
        assert abs(p1.evaluate(h) - p2.evaluate(h)) <= 1e-8
    z1 = sorted(complex(n.z).real for n in p1.nodes)
    z2 = sorted(complex(n.z).real for n in p2.nodes)
    assert np.allclose(z1, z2, atol=1e-8)


def test_residue_forms_agree_with_oracle():
    f, s = standard_map(Conic("ellipse", 2, 1))
    ident = spherical_identity(f, s)
    one = RationalMap([1.0])
    for n in ident.nodes:
        r = residue_oracle(f, reflect(f, s), one, n.zeta, "first")
        assert abs(-r - n.weight) <= 1e-8
        r2 = residue_oracle(f, reflect(f, s), one, n.zeta, "second")
        assert abs(r2 - n.weight) <= 1e-8


def test_double_node_coefficients_from_oracle():
    f, s = standard_map(Conic("hyperbola", 1, 1))
    fs = reflect(f, s)
    r0 = -residue_oracle(f, fs, RationalMap([1.0]), 1j)
    r1 = -residue_oracle(f, fs, RationalMap([-1j, 1.0]), 1j)
    (n,) = spherical_identity(f, s).nodes
    assert abs(r0 - n.coefficients[0]) < 1e-8 and abs(r1 - n.coefficients[1]) < 1e-8


def test_precondition_violation_reported():
    f = RationalMap([1j, 1.0], [-1j, 1.0])  # f* = 1/f
    assert check_precondition(f, REAL_AXIS)
    with pytest.raises(PreconditionError):
        node_locus(f, REAL_AXIS)
    with pytest.raises(PreconditionError):
        spherical_identity(f, REAL_AXIS, rotate=False)


def test_constant_map_rejected():
    with pytest.raises(ValueError):
        spherical_identity(RationalMap([2.0]), REAL_AXIS)


def test_scaled_identity_eps_one():
    f, s = standard_map(Conic("ellipse", 2, 1))
    a, b = spherical_identity(f, s), scaled_identity(f, s, 1.0)
    for x, y in zip(a.nodes, b.nodes):
        assert x.zeta == y.zeta and x.coefficients == y.coefficients
    with pytest.raises(ValueError):
        scaled_identity(f, s, 0.0)


def test_scaled_nodes_drift_to_poles():
    f, s = standard_map(Conic("ellipse", 2, 1))
    r = [max(abs(n.zeta) for n in scaled_identity(f, s, e).nodes) for e in (1.0, 0.1, 1e-3)]
    assert r[0] > r[1] > r[2] and r[2] < 1e-3


def test_euclidean_identity_rejects_poles():
    f, s = standard_map(Conic("ellipse", 2, 1))
    with pytest.raises(ValueError):
        euclidean_identity(f, s)
    with pytest.raises(ValueError):
        euclidean_identity(power_map(2), REAL_AXIS)


def test_euclidean_identity_of_disk_polynomial():
    # w = zeta + zeta^2/4 on the disk: area/pi = 1 + 2/16
    f = RationalMap([0.0, 1.0, 0.25])
    ident = euclidean_identity(f, UNIT_CIRCLE)
    assert abs(ident.evaluate(RationalMap([1.0])) - (1 + 2 / 16)) < 1e-12


def test_physical_nodes():
    zs = physical_nodes(Conic("ellipse", 2, 1))
    assert all(abs(z.real) < 1e-9 and m == 1 for z, m in zs)
    zint = catalog.ellipse_entry(2, 1).extras["z_int"]
    assert sorted(abs(z) for z, _ in zs) == pytest.approx([abs(zint)] * 2)
    (z, m), = physical_nodes(Conic("hyperbola", 1, 1))
    assert m == 2 and abs(z - 1) < 1e-7
    f, s = standard_map(Conic("hyperbola", 1, 2))
    engine = sorted(complex(n.z).real for n in spherical_identity(f, s).nodes)
    assert sorted(z.real for z, _ in physical_nodes(Conic("hyperbola", 1, 2))) == pytest.approx(engine, abs=1e-9)


def test_taylor_at_infinity():
    h = RationalMap([1.0], [0.0, 0.0, 1.0])  # 1/z^2 = t^2 in t = 1/z
    assert np.allclose(taylor_at(h, INFINITY, 4), [0, 0, 1, 0])


def test_pushforward_chain_rule():
    F = RationalMap([0.0, 0.0, 1.0])  # zeta^2 at zeta=1: u = 2t + t^2
    d = pushforward_coefficients([1.0, 3.0, 5.0], F, 1.0)
    # d_k = sum_j c_j [t^j] u^k
    assert np.allclose(d, [1.0, 3.0 * 2 + 5.0 * 1, 5.0 * 4])


def test_identity_json_round_trip():
    ident = spherical_identity(*standard_map(Conic("hyperbola", 1, 0.5)))
    back = QuadratureIdentity.from_json(ident.to_json())
    assert back.to_json() == ident.to_json()
    assert abs(back.evaluate(TESTS[1]) - ident.evaluate(TESTS[1])) == 0
