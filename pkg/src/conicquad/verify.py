"""Numerical verification of quadrature identities by adaptive cubature."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from . import poly
from .cubature import CubatureResult, integrate_rectangle
from .curves import Conic
from .engine import QuadratureIdentity, scaled_identity, taylor_at
from .maps import RationalMap, SymmetricSurface, local_degree_at_infinity, standard_map
from .sphere import INFINITY

__all__ = [
    "TestFunction",
    "NotIntegrable",
    "VerifyRow",
    "VerifyReport",
    "check_admissible",
    "integrate_pullback",
    "verify_identity",
    "standard_family",
    "null_quadrature_check",
    "euclidean_limit_check",
    "integrate_star_region",
]


class NotIntegrable(ValueError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """Holomorphic test function: ``z^r``, ``(z - p)^-m`` or a rational ``num/den``."""

    __test__ = False  # keep pytest from collecting this class

    kind: str
    r: int = 0
    p: complex = 0j
    m: int = 1
    num: tuple = ()
    den: tuple = ()

    @classmethod
    def monomial(cls, r: int) -> "TestFunction":
        return cls("monomial", r=int(r))

    @classmethod
    def pole_basis(cls, p: complex, m: int = 1) -> "TestFunction":
        if m < 1:
            raise ValueError("m must be >= 1")
        return cls("pole_basis", p=complex(p), m=int(m))

    @classmethod
    def rational(cls, num, den=(1.0,)) -> "TestFunction":
        return cls("rational", num=tuple(complex(c) for c in num), den=tuple(complex(c) for c in den))

    @property
    def label(self) -> str:
        if self.kind == "monomial":
            return f"z^{self.r}"
        if self.kind == "pole_basis":
            return f"(z-({self.p:.6g}))^-{self.m}"
        return "rational"

    def as_map(self) -> RationalMap:
        if self.kind == "monomial":
            if self.r >= 0:
                c = np.zeros(self.r + 1, dtype=complex)
                c[-1] = 1.0
                return RationalMap(c, [1.0], reduce=False)
            d = np.zeros(-self.r + 1, dtype=complex)
            d[-1] = 1.0
            return RationalMap([1.0], d, reduce=False)
        if self.kind == "pole_basis":
            return RationalMap([1.0], P.polypow([-self.p, 1.0], self.m), reduce=False)
        return RationalMap(self.num, self.den)

    def __call__(self, z):
        return self.as_map()(z)

    def taylor(self, x0, n: int) -> np.ndarray:
        return taylor_at(self.as_map(), x0, n)

    def to_json(self) -> dict:
        if self.kind == "monomial":
            return {"kind": "monomial", "r": self.r}
        if self.kind == "pole_basis":
            return {"kind": "pole_basis", "p": [self.p.real, self.p.imag], "m": self.m}
        return {"kind": "rational", "num": [[c.real, c.imag] for c in self.num],
                "den": [[c.real, c.imag] for c in self.den]}

    @classmethod
    def from_json(cls, d: dict) -> "TestFunction":
        if d["kind"] == "monomial":
            return cls.monomial(d["r"])
        if d["kind"] == "pole_basis":
            return cls.pole_basis(complex(*d["p"]), d.get("m", 1))
        return cls.rational([complex(*c) for c in d["num"]], [complex(*c) for c in d["den"]])


def _as_map(h) -> RationalMap:
    return h.as_map() if isinstance(h, TestFunction) else h


def check_admissible(f: RationalMap, s: SymmetricSurface, h, measure: str = "spherical") -> None:
    """Sufficient integrability test; raises :class:`NotIntegrable`.

    ``h`` must be pole-free on the closed half.  On the half-plane a pole of
    order ``q`` at infinity is allowed when ``q < 2 e`` with ``e`` the local
    degree of ``f`` at infinity (the spherical density decays like
    ``|zeta|^(-2e-2)``).
    """
    H = _as_map(h)
    for z, _ in poly.clustered_roots(H.den):
        if s.signed_distance(z) > -1e-12:
            raise NotIntegrable(f"test function has a pole at {z} in the closed half")
    q = -H.order_at_infinity if np.any(H.num) else 0
    if s.involution == "real_axis" and q > 0:
        if measure == "euclidean":
            raise NotIntegrable("Euclidean pulled-back area on a half-plane needs h to decay")
        e = local_degree_at_infinity(f)
        if q >= 2 * e:
            raise NotIntegrable(f"h grows like |z|^{q}; need order < {2 * e} for this map")
    if s.involution == "unit_circle" and s.half == -1 and q > 0:
        raise NotIntegrable("h must be finite at infinity on the exterior of the disk")


def _density_parts(F: RationalMap, measure: str, eps: float | None):
    W = F.derivative_parts()
    A, B = F.num, F.den
    e2 = (eps or 1.0) ** 2

    def dens(w):
        Wv = np.abs(P.polyval(w, W)) ** 2
        Bv = np.abs(P.polyval(w, B)) ** 2
        if measure == "euclidean":
            return Wv / (np.pi * Bv * Bv)
        Av = np.abs(P.polyval(w, A)) ** 2
        return Wv / (np.pi * (Bv + e2 * Av) ** 2)

    return dens


def _pull_back_to_disk(f: RationalMap, s: SymmetricSurface, H: RationalMap, p: complex):
    """Rational maps on the unit disk and the geometry tag for the chart."""
    if s.involution == "unit_circle":
        if s.half == 1:
            return f, H, "center"
        inv = RationalMap([1.0], [0.0, 1.0], reduce=False)
        return f.compose(inv), H.compose(inv), "center"
    if s.involution == "real_axis":
        p = complex(p)
        if p.imag <= 0:
            raise ValueError("compactification point must lie in the upper half-plane")
        if s.half == -1:
            p = p.conjugate()
        M = RationalMap([p, -p.conjugate()], [1.0, -1.0], reduce=False)
        return f.compose(M), H.compose(M), "edge"
    raise ValueError("antipodal_free surface has no halves")


def integrate_pullback(f: RationalMap, s: SymmetricSurface, h, tol: float = 1e-6,
                       measure: str = "spherical", eps: float | None = None,
                       compactification: complex = 1j, max_cells: int = 200_000,
                       full_output: bool = False):
    """``(1/pi) int h |f'|^2 / (1 + eps^2 |f|^2)^2 dx dy`` over the selected half.

    ``measure`` is ``"spherical"`` (``eps = 1``), ``"euclidean_scaled"`` or
    ``"euclidean"``.  The half is first mapped onto the unit disk: the disk
    exterior by ``1/w``, a half-plane by ``w -> (p - conj(p) w)/(1 - w)``.
    Disk charts use polar cells about the centre; compactified half-planes
    use polar cells about ``w = 1`` (the preimage of infinity), which absorbs
    the admissible growth of ``h`` there.
    """
    if measure not in ("spherical", "euclidean_scaled", "euclidean"):
        raise ValueError(f"unknown measure {measure!r}")
    if measure == "euclidean_scaled" and not (eps and eps > 0):
        raise ValueError("euclidean_scaled needs eps > 0")
    H = _as_map(h)
    check_admissible(f, s, H, measure)
    F, G, chart = _pull_back_to_disk(f, s, H, compactification)
    dens = _density_parts(F, measure, eps if measure == "euclidean_scaled" else None)
    gn, gd = G.num, G.den

    if chart == "center":
        def fun(r, th):
            w = r * np.exp(1j * th)
            return P.polyval(w, gn) / P.polyval(w, gd) * dens(w) * r

        res = integrate_rectangle(fun, 0.0, 1.0, 0.0, 2 * np.pi, tol, max_cells, initial=(4, 8))
    else:
        def fun(t, psi):
            c = np.cos(psi)
            rho = 2.0 * t * c
            w = 1.0 - rho * np.exp(1j * psi)
            return P.polyval(w, gn) / P.polyval(w, gd) * dens(w) * rho * 2.0 * c

        res = integrate_rectangle(fun, 0.0, 1.0, -np.pi / 2, np.pi / 2, tol, max_cells, initial=(4, 8))
    return res if full_output else res.value


@dataclass
class VerifyRow:
    label: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    cells: int
    est_err: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "test_function": self.label,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "cells": self.cells,
            "est_err": self.est_err,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    tol: float
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def max_abs_err(self) -> float:
        return max((r.abs_err for r in self.rows), default=0.0)

    def to_json(self) -> dict:
        return {"tol": self.tol, "pass": self.passed, "rows": [r.to_json() for r in self.rows]}

    def table(self) -> str:
        head = f"{'test function':<28} {'lhs':>34} {'rhs':>34} {'abs_err':>10} {'status':>6}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r.label:<28} {r.lhs.real:>16.12g}{r.lhs.imag:+16.12g}i {r.rhs.real:>16.12g}{r.rhs.imag:+16.12g}i "
                f"{r.abs_err:>10.2e} {'PASS' if r.passed else 'FAIL':>6}"
            )
        return "\n".join(lines)


def verify_identity(identity: QuadratureIdentity, family, tol: float = 1e-6, **kw) -> VerifyReport:
    """Compare each identity value with the integral of the pulled-back form.

    For physical-plane identities the test functions live in the ``z``-plane
    and are pulled back through the map before integrating.
    """
    f, s = identity.map, identity.surface
    measure = identity.measure
    report = VerifyReport(tol)
    for h in family:
        H = _as_map(h)
        Hp = H.compose(f) if identity.plane == "physical" else H
        res = integrate_pullback(f, s, Hp, tol, measure=measure, eps=identity.eps, full_output=True, **kw)
        rhs = identity.evaluate(H)
        err = abs(res.value - rhs)
        label = h.label if isinstance(h, TestFunction) else "rational"
        report.rows.append(VerifyRow(label, res.value, rhs, err, err / max(abs(rhs), 1e-300), res.cells,
                                     res.error, err <= 10 * tol))
    return report


def standard_family(s: SymmetricSurface, f: RationalMap | None = None) -> list[TestFunction]:
    """``1``, the admissible monomials up to degree 3, and six pole-basis members."""
    fam = [TestFunction.monomial(0)]
    if s.involution == "unit_circle":
        if s.half == 1:
            fam += [TestFunction.monomial(r) for r in (1, 2, 3)]
            poles = [2.0, 2j, -1.5 + 1.5j, 3.0, -2.5j, 1.2 - 1.2j]
        else:
            fam += [TestFunction.monomial(-r) for r in (1, 2, 3)]
            poles = [0.5, 0.5j, -0.3 + 0.3j, 0.1, -0.4j, 0.2 - 0.2j]
    else:
        e = local_degree_at_infinity(f) if f is not None else 1
        fam += [TestFunction.monomial(r) for r in range(1, min(3, 2 * e - 1) + 1)]
        sgn = -1 if s.half == 1 else 1
        poles = [sgn * 1j, 1 + sgn * 1j, -1 + sgn * 2j, sgn * 0.5j, 2 + sgn * 1j, -0.5 + sgn * 1.5j]
    fam += [TestFunction.pole_basis(p, 1 + (k % 2)) for k, p in enumerate(poles)]
    return fam


# --- planar checks -----------------------------------------------------------------


def integrate_star_region(h, rho, r_outer, tol: float = 1e-8, max_cells: int = 200_000) -> CubatureResult:
    """``int h dx dy`` over ``{rho(t) < |z| < r_outer(t)}`` in polar form.

    ``rho`` and ``r_outer`` are vectorised functions of the angle; either may
    be a constant.
    """

    def as_fun(v):
        return v if callable(v) else (lambda t: np.full_like(t, float(v)))

    rin, rout = as_fun(rho), as_fun(r_outer)

    def fun(u, t):
        a, b = rin(t), rout(t)
        r = a + u * (b - a)
        z = r * np.exp(1j * t)
        return h(z) * r * (b - a)

    return integrate_rectangle(fun, 0.0, 1.0, 0.0, 2 * np.pi, tol, max_cells, initial=(4, 16))


@dataclass
class NullQuadratureResult:
    value: complex
    tail_bound: float
    est_err: float
    r_max: float
    exhaustion: str = "ellipse"

    def holds(self, tol: float) -> bool:
        return abs(self.value) <= self.tail_bound + tol


def null_quadrature_check(c: Conic, h, r_max: float = 3.0, tol: float = 1e-8,
                          exhaustion: str = "ellipse") -> NullQuadratureResult:
    """Euclidean integral of ``h`` over the ellipse exterior, truncated at semi-axis ``r_max``.

    ``h`` must be holomorphic on the closed exterior and ``O(z^-2)``.  With
    ``exhaustion="ellipse"`` the outer boundary is the homothetic ellipse
    ``(r_max/a) E``.  Green's formula with the Schwarz function of ``t E``
    shows that every Laurent term ``z^-k`` (``k >= 2``) integrates to zero
    between two homothetic ellipses, so the omitted tail is exactly zero.

    ``exhaustion="circle"`` truncates at ``|z| = r_max`` instead.  For
    ``k >= 3`` the result is the same; the ``z^-2`` term, which is not
    absolutely integrable, then contributes ``-pi a_2 (a-b)^2/c^2``.
    """
    if c.kind != "ellipse":
        raise ValueError("null quadrature check is for ellipses")
    if r_max <= c.a:
        raise ValueError("r_max must exceed the semi-major axis")
    if exhaustion not in ("ellipse", "circle"):
        raise ValueError("exhaustion must be 'ellipse' or 'circle'")
    H = _as_map(h) if isinstance(h, (TestFunction, RationalMap)) else None
    if H is not None:
        if H.order_at_infinity < 2:
            raise NotIntegrable("h must decay at least like |z|^-2")
        for z, _ in poly.clustered_roots(H.den):
            if (z.real / c.a) ** 2 + (z.imag / c.b) ** 2 >= 1.0:
                raise NotIntegrable(f"pole {z} outside the ellipse")
        fun = H
    else:
        fun = h

    def rho(t):
        return 1.0 / np.sqrt((np.cos(t) / c.a) ** 2 + (np.sin(t) / c.b) ** 2)

    outer = (lambda t: (r_max / c.a) * rho(t)) if exhaustion == "ellipse" else r_max
    res = integrate_star_region(fun, rho, outer, tol)
    return NullQuadratureResult(res.value, 0.0, res.error, r_max, exhaustion)


@dataclass
class LimitRow:
    eps: float
    lhs: complex
    rhs: complex
    abs_err: float


def euclidean_limit_check(c: Conic, eps_seq, h=None, tol: float = 1e-7) -> list[LimitRow]:
    """Scaled identity against cubature for a decreasing sequence of ``eps``.

    The default ``h = zeta^3 / (zeta + i)^6`` vanishes to third order at both
    poles ``0`` and ``infinity`` of the hyperbola map, so the values tend to
    zero like ``O(eps)``.  Second-order vanishing is not enough: the limit
    is then a nonzero constant.
    """
    if c.kind != "hyperbola":
        raise ValueError("the Euclidean limit check is for hyperbolas")
    f, s = standard_map(c)
    if h is None:
        h = TestFunction.rational([0, 0, 0, 1], P.polypow([1j, 1.0], 6))
    rows = []
    for eps in eps_seq:
        ident = scaled_identity(f, s, eps)
        lhs = integrate_pullback(f, s, h, tol, measure="euclidean_scaled", eps=eps)
        rhs = ident.evaluate(_as_map(h))
        rows.append(LimitRow(float(eps), lhs, rhs, abs(lhs - rhs)))
    return rows
