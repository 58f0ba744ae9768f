"""Rational covering maps of the sphere, their holomorphic reflections, divisors and branch points."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from . import poly
from .curves import DegenerateCircle
from .sphere import INFINITY, ExtendedComplex

__all__ = [
    "RationalMap",
    "SymmetricSurface",
    "Divisor",
    "reflect",
    "standard_map",
    "divisor_of",
    "branch_points",
    "local_degree_at_infinity",
    "DegenerateCircle",
    "UNIT_CIRCLE",
    "REAL_AXIS",
    "ANTIPODAL_FREE",
]

COMMON_ROOT_TOL = 1e-8


def _poly_at_infinity_order(num, den) -> int:
    """Order of ``num/den`` at infinity: positive for a zero, negative for a pole."""
    return poly.degree(den) - poly.degree(num)


class RationalMap:
    """``f = num/den`` with ascending complex coefficients.

    Numerator and denominator are reduced on construction: common roots
    closer than ``1e-8`` (relative) are divided out.
    """

    def __init__(self, num: Sequence[complex], den: Sequence[complex] = (1.0,), reduce: bool = True):
        num = poly.trim(num)
        den = poly.trim(den)
        if not np.any(den):
            raise ValueError("denominator is identically zero")
        if reduce and np.any(num):
            num, den = _cancel_common(num, den)
        # normalise so the leading denominator coefficient is 1
        lead = den[-1]
        self.num = num / lead
        self.den = den / lead

    # construction helpers -------------------------------------------------
    @classmethod
    def polynomial(cls, coeffs) -> "RationalMap":
        return cls(coeffs, [1.0])

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls([0.0, 1.0], [1.0])

    # basic properties ------------------------------------------------------
    @property
    def degree(self) -> int:
        return max(poly.degree(self.num), poly.degree(self.den))

    @property
    def order_at_infinity(self) -> int:
        if not np.any(self.num):
            raise ValueError("zero map")
        return _poly_at_infinity_order(self.num, self.den)

    def is_constant(self) -> bool:
        return self.degree < 1

    def __repr__(self):
        return f"RationalMap(num={self.num.tolist()}, den={self.den.tolist()})"

    # evaluation -------------------------------------------------------------
    def __call__(self, z):
        if z is INFINITY:
            return self.value_at_infinity()
        z = np.asarray(z, dtype=complex)
        out = P.polyval(z, self.num) / P.polyval(z, self.den)
        return out if out.ndim else complex(out)

    def eval_extended(self, z) -> ExtendedComplex:
        if z is INFINITY:
            return self.value_at_infinity()
        d = P.polyval(complex(z), self.den)
        n = P.polyval(complex(z), self.num)
        if d == 0 or (abs(d) <= 1e-300 and n != 0):
            return INFINITY
        return complex(n / d)

    def value_at_infinity(self) -> ExtendedComplex:
        k = self.order_at_infinity if np.any(self.num) else 1
        if k < 0:
            return INFINITY
        if k > 0:
            return 0j
        return complex(self.num[-1] / self.den[-1])

    def derivative_parts(self) -> np.ndarray:
        """Numerator ``W = num' den - num den'`` of ``f' = W / den^2``."""
        return P.polysub(P.polymul(P.polyder(self.num), self.den), P.polymul(self.num, P.polyder(self.den)))

    def derivative(self) -> "RationalMap":
        return RationalMap(self.derivative_parts(), P.polymul(self.den, self.den))

    # algebra ---------------------------------------------------------------
    def scaled(self, s: complex) -> "RationalMap":
        return RationalMap(self.num * s, self.den, reduce=False)

    def post_mobius(self, a, b, c, d) -> "RationalMap":
        """``(a f + b) / (c f + d)``."""
        num = P.polyadd(a * self.num, b * self.den)
        den = P.polyadd(c * self.num, d * self.den)
        return RationalMap(num, den)

    def compose(self, g: "RationalMap") -> "RationalMap":
        """``f o g``, built from the homogeneous forms of ``f``."""
        n = self.degree
        gn, gd = g.num, g.den

        def homog(c):
            c = np.concatenate([c, np.zeros(n + 1 - c.size)])
            out = np.zeros(1, dtype=complex)
            for k, ck in enumerate(c):
                if ck != 0:
                    out = P.polyadd(out, ck * P.polymul(P.polypow(gn, k), P.polypow(gd, n - k)))
            return out

        return RationalMap(homog(self.num), homog(self.den))

    def compose_mobius(self, alpha, beta, gamma, delta) -> "RationalMap":
        """``f((alpha w + beta) / (gamma w + delta))`` as a rational map in ``w``."""
        return self.compose(RationalMap([beta, alpha], [delta, gamma], reduce=False))

    def allclose(self, other: "RationalMap", tol: float = 1e-12) -> bool:
        """Coefficient-wise comparison after scaling both to unit max-norm."""

        def norm(f):
            a = np.concatenate([f.num, np.zeros(max(0, 64 - f.num.size))])[:64]
            b = np.concatenate([f.den, np.zeros(max(0, 64 - f.den.size))])[:64]
            v = np.concatenate([a, b])
            k = np.argmax(np.abs(v))
            return v / v[k]

        return bool(np.max(np.abs(norm(self) - norm(other))) <= tol)

    # serialisation ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "num": [[float(c.real), float(c.imag)] for c in self.num],
            "den": [[float(c.real), float(c.imag)] for c in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalMap":
        num = [complex(re, im) for re, im in data["num"]]
        den = [complex(re, im) for re, im in data["den"]]
        return cls(num, den)


def _cancel_common(num, den):
    if poly.degree(num) < 1 or poly.degree(den) < 1:
        return num, den
    changed = True
    while changed:
        changed = False
        rn = poly.roots(num)
        rd = poly.roots(den)
        for z in rn:
            close = np.abs(rd - z) <= COMMON_ROOT_TOL * max(1.0, abs(z)) if rd.size else np.array([], bool)
            if np.any(close):
                lin = np.array([-z, 1.0], dtype=complex)
                num = poly.trim(poly.polydiv_exact(num, lin))
                den = poly.trim(poly.polydiv_exact(den, lin))
                changed = True
                break
        if poly.degree(num) < 1 or poly.degree(den) < 1:
            break
    return num, den


@dataclass(frozen=True)
class SymmetricSurface:
    """The sphere with an anticonformal involution and a chosen half.

    ``involution`` is ``"unit_circle"`` (``J = 1/conj``, plus-half the unit
    disk), ``"real_axis"`` (``J = conj``, plus-half the upper half-plane) or
    ``"antipodal_free"`` (``J = -1/conj``, no fixed points, no halves).
    ``half = -1`` selects the complementary half.
    """

    involution: str
    half: int = 1

    def __post_init__(self):
        if self.involution not in ("unit_circle", "real_axis", "antipodal_free"):
            raise ValueError(f"unknown involution {self.involution!r}")
        if self.half not in (1, -1):
            raise ValueError("half must be +1 or -1")

    @property
    def dividing(self) -> bool:
        return self.involution != "antipodal_free"

    def other_half(self) -> "SymmetricSurface":
        return SymmetricSurface(self.involution, -self.half)

    def J(self, zeta):
        if zeta is INFINITY:
            return {"unit_circle": 0j, "real_axis": INFINITY, "antipodal_free": 0j}[self.involution]
        zeta = np.asarray(zeta, dtype=complex)
        if self.involution == "real_axis":
            out = np.conj(zeta)
        elif self.involution == "unit_circle":
            with np.errstate(divide="ignore", invalid="ignore"):
                out = 1.0 / np.conj(zeta)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = -1.0 / np.conj(zeta)
        return out if out.ndim else complex(out)

    def signed_distance(self, zeta) -> float:
        """Positive inside the selected half, negative outside, zero on the fixed set."""
        if zeta is INFINITY:
            if self.involution == "real_axis":
                return 0.0
            return -self.half * 1.0 if self.involution == "unit_circle" else 0.0
        zeta = complex(zeta)
        if self.involution == "real_axis":
            return self.half * zeta.imag
        if self.involution == "unit_circle":
            return self.half * (1.0 - abs(zeta))
        raise ValueError("antipodal_free surface has no halves")

    def contains(self, zeta, margin: float = 0.0) -> bool:
        return self.signed_distance(zeta) > margin

    def on_fixed_set(self, zeta, tol: float = 1e-8) -> bool:
        if not self.dividing:
            return False
        return abs(self.signed_distance(zeta)) <= tol

    def to_json(self) -> dict:
        return {"involution": self.involution, "half": self.half}


UNIT_CIRCLE = SymmetricSurface("unit_circle")
REAL_AXIS = SymmetricSurface("real_axis")
ANTIPODAL_FREE = SymmetricSurface("antipodal_free")


def _reflect_poly(c, n, kind):
    c = np.concatenate([np.asarray(c, dtype=complex), np.zeros(n + 1 - len(c))])
    if kind == "real_axis":
        return np.conj(c)
    k = np.arange(n + 1)
    out = np.conj(c)
    if kind == "antipodal_free":
        out = out * (-1.0) ** k
    return out[::-1]


def reflect(f: RationalMap, s: SymmetricSurface) -> RationalMap:
    """Holomorphic reflection ``f* = conj(f o J)``."""
    kind = s.involution
    if kind == "real_axis":
        return RationalMap(np.conj(f.num), np.conj(f.den))
    n = f.degree
    # conj(f(J z)) = conj(A(J z)) / conj(B(J z)); both multiplied by z^n
    return RationalMap(_reflect_poly(f.num, n, kind), _reflect_poly(f.den, n, kind))


@dataclass
class Divisor:
    zeros: list[tuple[ExtendedComplex, int]] = field(default_factory=list)
    poles: list[tuple[ExtendedComplex, int]] = field(default_factory=list)

    @property
    def zero_count(self) -> int:
        return sum(m for _, m in self.zeros)

    @property
    def pole_count(self) -> int:
        return sum(m for _, m in self.poles)


def divisor_of(f: RationalMap) -> Divisor:
    zeros = list(poly.clustered_roots(f.num))
    poles = list(poly.clustered_roots(f.den))
    k = f.order_at_infinity
    if k > 0:
        zeros.append((INFINITY, k))
    elif k < 0:
        poles.append((INFINITY, -k))
    d = Divisor(zeros, poles)
    if d.zero_count != f.degree or d.pole_count != f.degree:
        raise poly.RootFindingError("divisor does not balance to the degree", f.num)
    return d


def local_degree_at_infinity(f: RationalMap) -> int:
    k = f.order_at_infinity
    if k != 0:
        return abs(k)
    c = f.num[-1] / f.den[-1]
    diff = P.polysub(f.num, c * f.den)
    diff[np.abs(diff) <= 1e-14 * np.max(np.abs(f.num))] = 0
    return poly.degree(f.den) - poly.degree(diff)


def branch_points(f: RationalMap) -> list[tuple[ExtendedComplex, ExtendedComplex, int]]:
    """Critical points with their critical values and ramification ``e - 1``.

    The ramification counts sum to ``2 m - 2`` for a degree-``m`` map.
    """
    W = poly.trim(f.derivative_parts(), 1e-14)
    out = []
    for z, mult in poly.clustered_roots(W):
        out.append((z, f.eval_extended(z), mult))
    e = local_degree_at_infinity(f)
    if e > 1:
        out.append((INFINITY, f.value_at_infinity(), e - 1))
    return out


def standard_map(conic) -> tuple[RationalMap, SymmetricSurface]:
    """Uniformising map for a conic together with its symmetric surface."""
    a, b = conic.a, conic.b
    if conic.kind == "ellipse":
        if conic.is_circle:
            raise DegenerateCircle("ellipse with a == b is a circle")
        # ((a-b) z + (a+b)/z) / 2
        return RationalMap([(a + b) / 2, 0.0, (a - b) / 2], [0.0, 1.0]), UNIT_CIRCLE
    if conic.kind == "hyperbola":
        ab = complex(a, -b)
        return RationalMap([ab.conjugate() / 2, 0.0, ab / 2], [0.0, 1.0]), REAL_AXIS
    if conic.kind == "parabola":
        return RationalMap([0.0, 4j * a, 4 * a], [1.0]), REAL_AXIS
    raise ValueError(f"unknown conic kind {conic.kind!r}")


def is_self_reflected(f: RationalMap, s: SymmetricSurface) -> bool:
    """True when ``f* == f``; the boundary is then not a full algebraic curve."""
    return reflect(f, s).allclose(f, 1e-12)


def power_map(n: int) -> RationalMap:
    if n < 1:
        raise ValueError("n must be >= 1")
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    return RationalMap(c, [1.0])
