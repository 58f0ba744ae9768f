import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicquad.curves import Conic, DegenerateCircle
from conicquad.maps import (
    ANTIPODAL_FREE,
    REAL_AXIS,
    UNIT_CIRCLE,
    RationalMap,
    SymmetricSurface,
    branch_points,
    divisor_of,
    local_degree_at_infinity,
    power_map,
    reflect,
    standard_map,
)
from conicquad.sphere import INFINITY

coef = st.integers(-4, 4).map(float)


def test_reflection_examples():
    a, b = 2.0, 1.0
    f, s = standard_map(Conic("ellipse", a, b))
    want = RationalMap([(a - b) / 2, 0, (a + b) / 2], [0, 1])
    assert reflect(f, s).allclose(want)
    a = 0.7
    f, s = standard_map(Conic("parabola", a))
    assert reflect(f, s).allclose(RationalMap([0, -4j * a, 4 * a]))
    for n in (1, 2, 5):
        assert reflect(power_map(n), REAL_AXIS).allclose(power_map(n))


@pytest.mark.parametrize("s", [UNIT_CIRCLE, REAL_AXIS, ANTIPODAL_FREE])
def test_reflection_matches_definition(s):
    f = RationalMap([1 + 2j, -0.5j, 0.3], [0.2 - 1j, 1.0])
    fs = reflect(f, s)
    rng = np.random.default_rng(1)
    zeta = rng.normal(size=30) + 1j * rng.normal(size=30)
    assert np.allclose(fs(zeta), np.conj(f(s.J(zeta))), rtol=1e-10, atol=1e-10)
    assert reflect(fs, s).allclose(f, 1e-10)


def test_reflection_equals_conjugate_on_fixed_set():
    f = RationalMap([1.0, 2j, 0.5], [3.0, 1.0])
    t = np.exp(1j * np.linspace(0, 6, 25))
    assert np.allclose(reflect(f, UNIT_CIRCLE)(t), np.conj(f(t)))
    x = np.linspace(-4, 4, 24)
    assert np.allclose(reflect(f, REAL_AXIS)(x), np.conj(f(x)))


def test_antipodal_involution_has_no_fixed_points():
    z = np.array([0.3 + 0.1j, 1.0, 1j, -2.0])
    assert np.all(np.abs(ANTIPODAL_FREE.J(z) - z) > 0.1)
    assert not ANTIPODAL_FREE.dividing
    with pytest.raises(ValueError):
        ANTIPODAL_FREE.signed_distance(0.5)


def test_surface_halves():
    assert UNIT_CIRCLE.contains(0.5j) and not UNIT_CIRCLE.contains(2)
    ext = UNIT_CIRCLE.other_half()
    assert ext.contains(2) and ext.contains(INFINITY)
    assert REAL_AXIS.contains(1j) and REAL_AXIS.other_half().contains(-1j)
    assert UNIT_CIRCLE.on_fixed_set(np.exp(0.3j))
    with pytest.raises(ValueError):
        SymmetricSurface("torus")


def test_circle_has_no_standard_map():
    with pytest.raises(DegenerateCircle):
        standard_map(Conic("ellipse", 1, 1))


def test_common_factors_cancel():
    f = RationalMap(np.polynomial.polynomial.polymul([1, 1], [2, 1]), [1, 1])
    assert f.degree == 1
    assert np.allclose(f.num, [2, 1])


@settings(max_examples=60)
@given(st.lists(coef, min_size=2, max_size=4), st.lists(coef, min_size=1, max_size=4))
def test_divisor_balances(num, den):
    try:
        f = RationalMap(num, den)
    except ValueError:
        return
    if f.degree == 0 or not f.num.any():
        return
    d = divisor_of(f)
    assert d.zero_count == d.pole_count == f.degree


@pytest.mark.parametrize("f", [
    standard_map(Conic("ellipse", 2, 1))[0],
    standard_map(Conic("hyperbola", 1, 0.5))[0],
    standard_map(Conic("parabola", 1))[0],
    power_map(3),
    RationalMap([1.0, 0.5, 0.2, 1j], [2.0, 0.0, 1.0]),
])
def test_riemann_hurwitz(f):
    assert sum(e for _, _, e in branch_points(f)) == 2 * f.degree - 2


def test_ellipse_branch_points_are_foci():
    f, _ = standard_map(Conic("ellipse", 2, 1))
    vals = sorted(complex(v).real for _, v, _ in branch_points(f))
    assert np.allclose(vals, [-np.sqrt(3), np.sqrt(3)])


def test_parabola_branch_point_is_focus():
    a = 0.5
    f, _ = standard_map(Conic("parabola", a))
    finite = [(z, v) for z, v, _ in branch_points(f) if z is not INFINITY]
    assert len(finite) == 1
    assert abs(finite[0][0] + 0.5j) < 1e-12 and abs(finite[0][1] - a) < 1e-12


def test_local_degree_at_infinity():
    assert local_degree_at_infinity(power_map(4)) == 4
    assert local_degree_at_infinity(standard_map(Conic("hyperbola", 1, 1))[0]) == 1
    assert local_degree_at_infinity(RationalMap([0, 0, 1], [1, 0, 1])) == 2


def test_json_round_trip():
    f = RationalMap([0.1 + 0.2j, 3.0], [1j, 1.0])
    g = RationalMap.from_json(f.to_json())
    assert np.array_equal(f.num, g.num) and np.array_equal(f.den, g.den)


def test_mobius_composition():
    f = RationalMap([1.0, 0.0, 1.0], [0.0, 1.0])
    g = f.compose_mobius(0.0, 1.0, 1.0, 0.0)
    z = np.array([0.3 + 0.4j, 2.0])
    assert np.allclose(g(z), f(1 / z))
    h = f.post_mobius(0.0, -1.0, 1.0, 0.0)
    assert np.allclose(h(z), -1 / f(z))


def test_constant_and_zero_denominator():
    with pytest.raises(ValueError):
        RationalMap([1.0], [0.0])
    assert RationalMap([2.0]).is_constant()
    with pytest.raises(ValueError):
        power_map(0)
