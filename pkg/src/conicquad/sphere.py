"""Coordinates on the Riemann sphere, the unit sphere and the reduced real projective plane.

Points of the extended plane are either Python complex numbers or the
:data:`INFINITY` sentinel.  IEEE ``inf``/``nan`` never stand for the point at
infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "INFINITY",
    "Infinity",
    "ExtendedComplex",
    "SpherePoint",
    "ProjectivePoint",
    "is_infinity",
    "stereographic_to_sphere",
    "sphere_to_stereographic",
    "sphere_to_ray",
    "stereographic_to_ray",
    "mobius_rotate",
    "antipode",
    "spherical_density",
]


class Infinity:
    """The single point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()
ExtendedComplex = Union[complex, Infinity]


def is_infinity(z) -> bool:
    return z is INFINITY


def _finite(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("non-finite complex value; use INFINITY for the point at infinity")
    return z


@dataclass(frozen=True)
class SpherePoint:
    """Point ``(x0, x1, x2)`` on the unit sphere; ``x0`` is the polar axis."""

    x0: float
    x1: float
    x2: float

    def __post_init__(self):
        r2 = self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2
        if abs(r2 - 1.0) > 1e-12:
            raise ValueError(f"not on the unit sphere: |p|^2 = {r2!r}")

    def __neg__(self) -> "SpherePoint":
        return SpherePoint(-self.x0, -self.x1, -self.x2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2])


MERGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Point of the reduced real projective plane.

    Either a finite point ``[1 : z]`` (``finite`` set) or a point at infinity
    ``[0 : e^{i phi}]`` with ``phi`` normalised into ``[0, pi)``.
    """

    finite: complex | None = None
    phi: float | None = None

    def __post_init__(self):
        if (self.finite is None) == (self.phi is None):
            raise ValueError("exactly one of finite / phi must be given")
        if self.phi is not None:
            phi = math.fmod(self.phi, math.pi)
            if phi < 0:
                phi += math.pi
            # half-open interval: values within the merge tolerance of pi wrap to 0
            if math.pi - phi <= MERGE_TOL:
                phi = 0.0
            object.__setattr__(self, "phi", phi)

    @property
    def is_infinite(self) -> bool:
        return self.phi is not None

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.is_infinite != other.is_infinite:
            return False
        if self.is_infinite:
            d = abs(self.phi - other.phi)
            return min(d, math.pi - d) <= MERGE_TOL
        return self.finite == other.finite

    def __hash__(self):
        if self.is_infinite:
            return hash(("inf", round(self.phi, 10) % round(math.pi, 10)))
        return hash(self.finite)

    def __repr__(self):
        if self.is_infinite:
            return f"ProjectivePoint(phi={self.phi!r})"
        return f"ProjectivePoint(finite={self.finite!r})"


def stereographic_to_sphere(z: ExtendedComplex) -> SpherePoint:
    """Inverse stereographic projection from the north pole ``(1, 0, 0)``."""
    if z is INFINITY:
        return SpherePoint(1.0, 0.0, 0.0)
    z = _finite(z)
    r2 = abs(z) ** 2
    d = r2 + 1.0
    x0, x1, x2 = (r2 - 1.0) / d, 2.0 * z.real / d, 2.0 * z.imag / d
    # renormalise away the last-ulp drift so the sphere invariant holds exactly
    n = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
    return SpherePoint(x0 / n, x1 / n, x2 / n)


def sphere_to_stereographic(p: SpherePoint) -> ExtendedComplex:
    if p.x0 == 1.0:
        return INFINITY
    w = complex(p.x1, p.x2)
    if p.x0 > 0:
        # (x1 + i x2)/(1 - x0) cancels badly near the north pole; use
        # 1 - x0 = (x1^2 + x2^2)/(1 + x0) instead.
        r2 = p.x1 ** 2 + p.x2 ** 2
        if r2 == 0.0:
            return INFINITY
        return w * (1.0 + p.x0) / r2
    return w / (1.0 - p.x0)


def sphere_to_ray(p: SpherePoint) -> ProjectivePoint:
    """Class of the line through the origin and ``p``; antipodes coincide."""
    if p.x0 != 0.0:
        # z_K(-p) = z_K(p) exactly: negate both parts when x0 < 0
        if p.x0 < 0:
            p = -p
        return ProjectivePoint(finite=complex(p.x1, p.x2) / p.x0)
    x1, x2 = p.x1, p.x2
    if x2 < 0 or (x2 == 0 and x1 < 0):
        x1, x2 = -x1, -x2
    return ProjectivePoint(phi=math.atan2(x2, x1))


def stereographic_to_ray(z: ExtendedComplex) -> ProjectivePoint:
    return sphere_to_ray(stereographic_to_sphere(z))


def mobius_rotate(a: complex, b: complex, z: ExtendedComplex) -> ExtendedComplex:
    """Rigid rotation ``(a z + b) / (-conj(b) z + conj(a))`` of the sphere."""
    a, b = complex(a), complex(b)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-10:
        raise ValueError("rotation parameters must satisfy |a|^2 + |b|^2 = 1")
    if z is INFINITY:
        if b == 0:
            return INFINITY
        return a / (-b.conjugate())
    z = _finite(z)
    den = -b.conjugate() * z + a.conjugate()
    if den == 0:
        return INFINITY
    return (a * z + b) / den


def antipode(z: ExtendedComplex) -> ExtendedComplex:
    """The fixed-point-free involution ``z -> -1/conj(z)``."""
    if z is INFINITY:
        return 0j
    z = _finite(z)
    if z == 0:
        return INFINITY
    return -1.0 / z.conjugate()


def spherical_density(z):
    """Density ``1/(pi (1+|z|^2)^2)`` of the unit-mass spherical area against dx dy."""
    z = np.asarray(z)
    out = 1.0 / (np.pi * (1.0 + np.abs(z) ** 2) ** 2)
    return out if out.ndim else float(out)
