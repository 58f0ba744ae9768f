"""Closed-form quadrature identities for conics, power maps and inverted conics.

Every entry is built from explicit formulas, never from a root solve of the
node equation.  Physical nodes come from pushing parameter nodes through the
entry's map.  The residue engine is tested against these entries.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .curves import Conic, DegenerateCircle, GenusReport, genus_report
from .engine import QuadratureIdentity, QuadratureNode
from .maps import REAL_AXIS, UNIT_CIRCLE, RationalMap, SymmetricSurface, standard_map
from .maps import power_map as _power_map
from .sphere import INFINITY

__all__ = [
    "CatalogEntry",
    "DipoleForm",
    "disk_and_halfplane",
    "disk_exterior",
    "power_map",
    "ellipse_entry",
    "hyperbola_entry",
    "loss_of_weight",
    "hyperbola_dipole_form",
    "parabola_entry",
    "inversion_entries",
    "hippopede_entry",
    "lemniscate_entry",
    "cardioid_entry",
    "list_entries",
    "show",
    "catalog_maps",
]

INVERSION = (0.0, -1.0, 1.0, 0.0)  # z -> -1/z, a rotation of the sphere


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: dict
    identity: QuadratureIdentity
    regime: str | None = None
    extras: dict = field(default_factory=dict)
    planar: QuadratureIdentity | None = None

    @property
    def physical(self) -> QuadratureIdentity:
        return self.identity.physical()

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "descriptor": self.descriptor,
            "regime": self.regime,
            "identity": self.identity.to_json(),
            "physical": self.physical.to_json(),
        }
        if self.planar is not None:
            out["planar"] = self.planar.physical().to_json()
        if self.extras:
            out["extras"] = {k: _jsonable(v) for k, v in self.extras.items()}
        return out


def _jsonable(v):
    if v is INFINITY:
        return "inf"
    if isinstance(v, GenusReport):
        return v.to_json()
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _identity(f: RationalMap, s: SymmetricSurface, nodes, measure: str = "spherical") -> QuadratureIdentity:
    """``nodes`` is a list of ``(zeta, coefficients)`` in the parameter plane."""
    out = []
    for zeta, coeffs in nodes:
        coeffs = tuple(complex(c) for c in coeffs)
        out.append(QuadratureNode(zeta, f.eval_extended(zeta), len(coeffs), coeffs))
    return QuadratureIdentity(measure, s, f, tuple(out))


# --- disk, half-plane, power maps --------------------------------------------


def disk_and_halfplane() -> tuple[CatalogEntry, CatalogEntry]:
    f = RationalMap.identity()
    disk = CatalogEntry("disk", {"map": "identity", "surface": "unit_circle"},
                        _identity(f, UNIT_CIRCLE, [(0j, [0.5])]))
    half = CatalogEntry("halfplane", {"map": "identity", "surface": "real_axis"},
                        _identity(f, REAL_AXIS, [(1j, [0.5])]))
    return disk, half


def disk_exterior() -> CatalogEntry:
    s = UNIT_CIRCLE.other_half()
    return CatalogEntry("disk_exterior", {"map": "identity", "surface": "unit_circle", "half": -1},
                        _identity(RationalMap.identity(), s, [(INFINITY, [0.5])]))


def power_map(n: int) -> CatalogEntry:
    if n < 1:
        raise ValueError("n must be >= 1")
    nodes = [(cmath.exp(1j * math.pi * (2 * k - 1) / (2 * n)), [0.5]) for k in range(1, n + 1)]
    return CatalogEntry(f"power_map:{n}", {"map": "power", "n": n},
                        _identity(_power_map(n), REAL_AXIS, nodes))


# --- ellipse --------------------------------------------------------------------


def _ellipse_data(a: float, b: float) -> dict:
    c = math.sqrt(a * a - b * b)
    root = math.sqrt((1 + a * a) * (1 + b * b))
    s = 2 + a * a + b * b
    q = a * b / root
    return {
        "c": c,
        "A_int": 0.5 * (1 - q),
        "A_ext": 0.5 * (1 + q),
        "zeta_int": 1j * math.sqrt(s - 2 * root) / c,
        "zeta_ext": 1j * math.sqrt(s + 2 * root) / c,
        "z_int": 1j * math.sqrt(2 * a * a * b * b + a * a + b * b + 2 * a * b * root) / c,
        "z_ext": 1j * math.sqrt(2 * a * a * b * b + a * a + b * b - 2 * a * b * root) / c,
    }


def ellipse_entry(a: float, b: float, side: str = "interior_of_disk") -> CatalogEntry:
    """Nodes ``+-zeta_int`` in the disk or ``+-zeta_ext`` outside it.

    The disk maps onto the exterior of the ellipse.
    """
    if not a > b > 0:
        if a == b:
            raise DegenerateCircle("ellipse with a == b is a circle")
        raise ValueError("ellipse entry needs a > b > 0")
    f, s = standard_map(Conic("ellipse", a, b))
    d = _ellipse_data(a, b)
    if side == "interior_of_disk":
        z, w = d["zeta_int"], d["A_int"]
    elif side == "exterior":
        s = s.other_half()
        z, w = d["zeta_ext"], d["A_ext"]
    else:
        raise ValueError("side must be 'interior_of_disk' or 'exterior'")
    ident = _identity(f, s, [(z, [w]), (-z, [w])])
    name = f"ellipse:{a:g},{b:g}" + ("" if side == "interior_of_disk" else ":exterior")
    return CatalogEntry(name, {"conic": "ellipse", "a": a, "b": b, "side": side}, ident, extras=d)


# --- hyperbola ------------------------------------------------------------------


def _hyperbola_weights(a: float, b: float) -> tuple[complex, complex]:
    """``(A_plus, A_minus)``."""
    if b < 1:
        q = 1j * a * b / math.sqrt((1 + a * a) * (1 - b * b))
    else:
        q = a * b / math.sqrt((a * a + 1) * (b * b - 1))
    return 0.5 * (1 + q), 0.5 * (1 - q)


def _hyperbola_zetas(a: float, b: float) -> list[complex]:
    """``zeta_1 .. zeta_4`` with the ordering conventions of each regime."""
    c = math.sqrt(a * a + b * b)
    if b < 1:
        root = 2 * math.sqrt((1 + a * a) * (1 - b * b))
        s = 2 + a * a - b * b
        z1 = 1j * math.sqrt(s - root) / c
        z2 = 1j * math.sqrt(s + root) / c
        return [z1, z2, -z1, -z2]
    alpha = -(2 + a * a - b * b)
    beta = 2 * math.sqrt((a * a + 1) * (b * b - 1))
    z1 = cmath.sqrt(complex(alpha, beta)) / c
    z4 = cmath.sqrt(complex(alpha, -beta)) / c
    return [z1, -z4, -z1, z4]


def hyperbola_entry(a: float, b: float) -> CatalogEntry:
    """Regimes ``b<1``, ``b=1`` (double node at ``i``) and ``b>1``.

    Weights are assigned as ``A_1 = A_3 = A_-`` and ``A_2 = A_4 = A_+``, which
    makes the ``h(zeta_1) - h(zeta_2)`` coefficient ``(A_- - A_+)/2``.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    f, s = standard_map(Conic("hyperbola", a, b))
    desc = {"conic": "hyperbola", "a": a, "b": b}
    name = f"hyperbola:{a:g},{b:g}"
    if b == 1:
        ident = _identity(f, s, [(1j, [1.0, -a / (1 + a * a)])])
        return CatalogEntry(name, desc, ident, regime="b=1", extras={"A_plus": 0.5, "A_minus": 0.5})
    ap, am = _hyperbola_weights(a, b)
    zs = _hyperbola_zetas(a, b)
    ident = _identity(f, s, [(zs[0], [am]), (zs[1], [ap])])
    extras = {
        "A_plus": ap,
        "A_minus": am,
        "zetas": zs,
        "z": [f(z) for z in zs],
        "c": math.sqrt(a * a + b * b),
    }
    return CatalogEntry(name, desc, ident, regime="b<1" if b < 1 else "b>1", extras=extras)


def loss_of_weight(a: float) -> CatalogEntry:
    """``b = sqrt(1 + a^2)``: the node over the focus ``c`` carries no weight.

    Here ``sqrt((a^2+1)(b^2-1)) = a b`` exactly, so ``A_- = 0`` and ``A_+ = 1``.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    b = math.sqrt(1 + a * a)
    f, s = standard_map(Conic("hyperbola", a, b))
    zs = _hyperbola_zetas(a, b)
    c = math.sqrt(a * a + b * b)
    ident = _identity(f, s, [(zs[0], [0.0]), (zs[1], [1.0])])
    extras = {
        "A_plus": 1.0,
        "A_minus": 0.0,
        "b": b,
        "c": c,
        "virtual_node": {"zeta": zs[0], "z": c},
        "surviving_node": {"zeta": zs[1], "z": 1 / c},
    }
    return CatalogEntry(f"loss_of_weight:{a:g}", {"conic": "hyperbola", "a": a, "b": b}, ident,
                        regime="loss_of_weight", extras=extras)


@dataclass(frozen=True)
class DipoleForm:
    """Two point masses at ``z1``, ``conj(z1)`` plus a line dipole between them.

    ``value(h, dh_dx)`` is
    ``(h(z1) + h(conj z1))/2 + density * int_{-y1}^{y1} dh_dx(x1 + i y) dy``.
    """

    z1: complex
    density: float
    points: int = 64

    def value(self, h, dh_dx) -> complex:
        x1, y1 = self.z1.real, self.z1.imag
        t, w = np.polynomial.legendre.leggauss(self.points)
        y = y1 * t
        integral = y1 * np.sum(w * np.asarray(dh_dx(x1 + 1j * y)))
        return 0.5 * (h(self.z1) + h(self.z1.conjugate())) + self.density * integral


def hyperbola_dipole_form(a: float, b: float) -> DipoleForm:
    if not 0 < b < 1:
        raise ValueError("the dipole form needs 0 < b < 1")
    entry = hyperbola_entry(a, b)
    z1 = complex(entry.extras["z"][0])
    return DipoleForm(z1, a * b / (2 * math.sqrt((1 + a * a) * (1 - b * b))))


# --- parabola -------------------------------------------------------------------


def _parabola_zetas(a: float) -> list[complex]:
    """The two roots of ``1 + 16 a^2 zeta^2 (zeta^2 + 1)`` in the upper half-plane."""
    disc = cmath.sqrt(1 - 1 / (4 * a * a))
    out = []
    for sq in (-0.5 + 0.5 * disc, -0.5 - 0.5 * disc):
        r = cmath.sqrt(sq)
        out.append(r if r.imag > 0 else -r)
    return sorted(out, key=lambda z: (z.real, z.imag))


def _parabola_weight(a: float, z: complex) -> complex:
    return -(2 * z + 1j) / (32 * a * a * z * z * (2 * z * z + 1) * (z + 1j))


def parabola_entry(a: float) -> CatalogEntry:
    if a <= 0:
        raise ValueError("a must be positive")
    f, s = standard_map(Conic("parabola", a))
    desc = {"conic": "parabola", "a": a}
    name = f"parabola:{a:g}"
    if a == 0.5:
        zeta = 1j / math.sqrt(2)
        d0 = 1 - 1 / (2 * math.sqrt(2))
        d1 = (1 + math.sqrt(2)) / 2
        fp = complex(f.derivative()(zeta))
        ident = _identity(f, s, [(zeta, [d0, d1 / fp])])
        return CatalogEntry(name, desc, ident, regime="a=1/2",
                            extras={"z": -1 - math.sqrt(2), "physical_coefficients": [d0, d1]})
    zs = _parabola_zetas(a)
    ident = _identity(f, s, [(z, [_parabola_weight(a, z)]) for z in zs])
    return CatalogEntry(name, desc, ident, regime="a<1/2" if a < 0.5 else "a>1/2",
                        extras={"zetas": zs, "z": [f(z) for z in zs]})


# --- inversions -----------------------------------------------------------------


def _budget(extra: str) -> dict:
    n = 2
    return {
        "degree": 4,
        "node_singularities": n * (n - 1),
        "extra_singularity": extra,
        "singular_count": n * (n - 1) + 1,
        "genus": genus_report(4, n * (n - 1) + 1, 2),
    }


def hippopede_entry(a: float, b: float) -> CatalogEntry:
    """Antipodal image of the ellipse; the spherical nodes are ``+-1/conj(z_int)``."""
    base = ellipse_entry(a, b)
    f, s = base.identity.map, base.identity.surface
    g = f.post_mobius(*INVERSION)
    d = base.extras
    ident = _identity(g, s, [(d["zeta_int"], [d["A_int"]]), (-d["zeta_int"], [d["A_int"]])])
    c = d["c"]
    w = (a * a + b * b) / (4 * a * a * b * b)
    p = 1j * math.sqrt((a - b) / (a + b))
    planar = _identity(g, s, [(p, [w]), (-p, [w])], measure="euclidean")
    extras = {
        "planar_weight": w,
        "planar_nodes": [1j * c / (2 * a * b), -1j * c / (2 * a * b)],
        "spherical_nodes": [1 / d["z_int"].conjugate(), -1 / d["z_int"].conjugate()],
        "budget": _budget("special point at the origin"),
    }
    return CatalogEntry(f"hippopede:{a:g},{b:g}", {"inverts": "ellipse", "a": a, "b": b}, ident,
                        regime=None, extras=extras, planar=planar)


def lemniscate_entry(a: float, b: float) -> CatalogEntry:
    """Hyperbola identity transported by the rotation ``z -> -1/z``."""
    base = hyperbola_entry(a, b)
    g = base.identity.map.post_mobius(*INVERSION)
    nodes = [(n.zeta, n.coefficients) for n in base.identity.nodes]
    ident = _identity(g, base.identity.surface, nodes)
    return CatalogEntry(f"lemniscate:{a:g},{b:g}", {"inverts": "hyperbola", "a": a, "b": b}, ident,
                        regime=base.regime, extras={"budget": _budget("crossing at the origin")})


def cardioid_entry(a: float) -> CatalogEntry:
    """``w = (zeta - zeta^2/2)/(2a) - 1/(4a)`` on the disk; planar double node at ``-1/(4a)``.

    Only the Euclidean identity is closed form here: inversion in the focus
    is not a rotation of the sphere.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    w = RationalMap([-1 / (4 * a), 1 / (2 * a), -1 / (4 * a)])
    planar = _identity(w, UNIT_CIRCLE, [(0j, [3 / (8 * a * a), -1 / (8 * a * a)])], measure="euclidean")
    extras = {
        "planar_node": -1 / (4 * a),
        "physical_coefficients": [3 / (8 * a * a), -1 / (16 * a ** 3)],
        "cusp": 0j,
        "budget": _budget("cusp at the origin"),
    }
    return CatalogEntry(f"cardioid:{a:g}", {"inverts": "parabola", "a": a}, planar, extras=extras, planar=planar)


def inversion_entries(c: Conic) -> CatalogEntry:
    if c.kind == "ellipse":
        return hippopede_entry(c.a, c.b)
    if c.kind == "hyperbola":
        return lemniscate_entry(c.a, c.b)
    return cardioid_entry(c.a)


# --- registry -------------------------------------------------------------------


_DEFAULTS = [
    "disk",
    "disk_exterior",
    "halfplane",
    "power_map:1",
    "power_map:2",
    "power_map:3",
    "power_map:4",
    "ellipse:2,1",
    "ellipse:2,1:exterior",
    "hyperbola:1,0.5",
    "hyperbola:1,1",
    "hyperbola:1,2",
    "loss_of_weight:1",
    "parabola:0.3",
    "parabola:0.5",
    "parabola:1",
    "hippopede:2,1",
    "lemniscate:1,1",
    "cardioid:1",
]


def list_entries() -> list[str]:
    return list(_DEFAULTS)


def show(name: str) -> CatalogEntry:
    """Build an entry from a name such as ``hyperbola:1,2`` or ``ellipse:2,1:exterior``."""
    head, _, rest = name.partition(":")
    parts = rest.split(":") if rest else []
    args = [float(x) for x in parts[0].split(",")] if parts else []
    simple = {"disk": lambda: disk_and_halfplane()[0], "halfplane": lambda: disk_and_halfplane()[1],
              "disk_exterior": disk_exterior}
    try:
        if head in simple and not args:
            return simple[head]()
        if head == "power_map" and len(args) == 1:
            return power_map(int(args[0]))
        if head == "ellipse" and len(args) == 2:
            side = "exterior" if parts[1:] == ["exterior"] else "interior_of_disk"
            return ellipse_entry(*args, side=side)
        one = {"loss_of_weight": loss_of_weight, "parabola": parabola_entry, "cardioid": cardioid_entry}
        two = {"hyperbola": hyperbola_entry, "hippopede": hippopede_entry, "lemniscate": lemniscate_entry}
        if head in one and len(args) == 1:
            return one[head](*args)
        if head in two and len(args) == 2:
            return two[head](*args)
    except ValueError as exc:
        raise KeyError(f"{name}: {exc}") from exc
    raise KeyError(f"unknown catalog entry {name!r}")


def catalog_maps() -> list[tuple[str, RationalMap, SymmetricSurface]]:
    """``(name, f, surface)`` for every default entry, deduplicated by map."""
    out = []
    for name in _DEFAULTS:
        e = show(name)
        ident = e.identity
        key = (ident.map.to_json().__repr__(), ident.surface.involution)
        if any(k == key for k, *_ in out):
            continue
        out.append((key, name, ident.map, SymmetricSurface(ident.surface.involution)))
    return [(n, f, s) for _, n, f, s in out]
