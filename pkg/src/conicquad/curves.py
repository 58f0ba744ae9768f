"""Conics, Hermitian boundary polynomials P(z, w), Schwarz branches and genus bookkeeping."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .sphere import ProjectivePoint

__all__ = [
    "Conic",
    "HermitianCurve",
    "GenusReport",
    "DegenerateCircle",
    "BranchPointError",
    "conic_polynomial",
    "schwarz_branches",
    "invert_curve",
    "genus_report",
    "asymptotic_directions",
    "singular_points",
]


class DegenerateCircle(ValueError):
    """An ellipse with ``a == b``; the circle identity applies instead."""


class BranchPointError(ValueError):
    pass


@dataclass(frozen=True)
class Conic:
    kind: str
    a: float
    b: float | None = None

    def __post_init__(self):
        if self.kind not in ("ellipse", "hyperbola", "parabola"):
            raise ValueError(f"unknown conic kind {self.kind!r}")
        if not self.a > 0:
            raise ValueError("a must be positive")
        if self.kind == "parabola":
            if self.b is not None:
                raise ValueError("a parabola takes no b")
            return
        if self.b is None or not self.b > 0:
            raise ValueError("b must be positive")
        if self.kind == "ellipse" and self.a < self.b:
            raise ValueError("ellipse requires a >= b (swap the axes)")

    @property
    def is_circle(self) -> bool:
        return self.kind == "ellipse" and self.a == self.b

    @property
    def c(self) -> float:
        """Focal distance; the focus itself for a parabola."""
        if self.kind == "ellipse":
            return math.sqrt(self.a ** 2 - self.b ** 2)
        if self.kind == "hyperbola":
            return math.sqrt(self.a ** 2 + self.b ** 2)
        return self.a

    def boundary_points(self, n: int) -> np.ndarray:
        """``n`` points on the real curve (both branches for a hyperbola)."""
        t = np.linspace(0.0, 2 * np.pi, n, endpoint=False) + 0.1234
        if self.kind == "ellipse":
            return self.a * np.cos(t) + 1j * self.b * np.sin(t)
        if self.kind == "hyperbola":
            u = np.linspace(-2.0, 2.0, n)
            sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
            return sign * self.a * np.cosh(u) + 1j * self.b * np.sinh(u)
        y = np.linspace(-3.0, 3.0, n) * self.a
        return y ** 2 / (4 * self.a) + 1j * y


class HermitianCurve:
    """``P(z, w) = sum c[j, k] z^j w^k`` with ``c[j, k] = conj(c[k, j])``.

    Stored as a dict keyed by ``(j, k)``; zero entries are dropped.
    """

    def __init__(self, coeffs: dict, check: bool = True):
        self.coeffs = {(int(j), int(k)): complex(v) for (j, k), v in coeffs.items() if v != 0}
        if not self.coeffs:
            raise ValueError("zero polynomial")
        if check:
            scale = max(abs(v) for v in self.coeffs.values())
            for (j, k), v in self.coeffs.items():
                if abs(v - self.coeffs.get((k, j), 0j).conjugate()) > 1e-12 * scale:
                    raise ValueError(f"coefficient ({j},{k}) breaks Hermitian symmetry")

    @property
    def degree(self) -> int:
        return max(j + k for j, k in self.coeffs)

    @property
    def bidegree(self) -> int:
        return max(max(j, k) for j, k in self.coeffs)

    def __call__(self, z, w):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for (j, k), v in self.coeffs.items():
            out = out + v * z ** j * w ** k
        return out if out.ndim else complex(out)

    def on_real_locus(self, z):
        """``P(z, conj z)``, real up to rounding."""
        return self(z, np.conj(z))

    def partial(self, var: str) -> "HermitianCurve | None":
        d = {}
        for (j, k), v in self.coeffs.items():
            if var == "z" and j > 0:
                d[(j - 1, k)] = d.get((j - 1, k), 0) + j * v
            if var == "w" and k > 0:
                d[(j, k - 1)] = d.get((j, k - 1), 0) + k * v
        if not d:
            return None
        return HermitianCurve(d, check=False)

    def normalized(self) -> "HermitianCurve":
        key = max(self.coeffs, key=lambda jk: (abs(self.coeffs[jk]), -jk[0] - jk[1], -jk[0]))
        v = self.coeffs[key]
        # only real rescaling preserves the Hermitian symmetry
        lead = v.real if abs(v.real) > 1e-12 * abs(v) else v.imag
        pivot = abs(v) * math.copysign(1.0, lead)
        return HermitianCurve({jk: c / pivot for jk, c in self.coeffs.items()}, check=False)

    def proportional_to(self, other: "HermitianCurve", tol: float = 1e-10) -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        a = np.array([self.coeffs.get(k, 0j) for k in keys])
        b = np.array([other.coeffs.get(k, 0j) for k in keys])
        i = int(np.argmax(np.abs(a)))
        if b[i] == 0:
            return False
        lam = a[i] / b[i]
        return bool(np.max(np.abs(a - lam * b)) <= tol * np.max(np.abs(a)))

    def coefficient(self, j: int, k: int) -> complex:
        return self.coeffs.get((j, k), 0j)

    def __repr__(self):
        terms = ", ".join(f"({j},{k}): {v:.12g}" for (j, k), v in sorted(self.coeffs.items()))
        return f"HermitianCurve({{{terms}}})"

    def to_json(self) -> dict:
        return {
            "monomials": [[j, k, v.real, v.imag] for (j, k), v in sorted(self.coeffs.items())]
        }

    @classmethod
    def from_json(cls, data: dict) -> "HermitianCurve":
        return cls({(j, k): complex(re, im) for j, k, re, im in data["monomials"]})


def conic_polynomial(c: Conic) -> HermitianCurve:
    """Boundary polynomial with unit ``z^2`` (or ``zw``-free) leading term."""
    a, b = c.a, c.b
    if c.kind == "ellipse":
        if c.is_circle:
            raise DegenerateCircle("ellipse with a == b")
        d = a * a - b * b
        return HermitianCurve({(2, 0): 1, (0, 2): 1, (1, 1): -2 * (a * a + b * b) / d, (0, 0): 4 * a * a * b * b / d})
    if c.kind == "hyperbola":
        s = a * a + b * b
        return HermitianCurve({(2, 0): 1, (0, 2): 1, (1, 1): -2 * (a * a - b * b) / s, (0, 0): -4 * a * a * b * b / s})
    # 8a(z + w) + (z - w)^2
    return HermitianCurve({(1, 0): 8 * a, (0, 1): 8 * a, (2, 0): 1, (0, 2): 1, (1, 1): -2})


def _is_branch_point(c: Conic, z: complex) -> bool:
    pts = [c.a] if c.kind == "parabola" else [c.c, -c.c]
    return any(abs(z - p) <= 1e-14 * max(1.0, abs(p)) for p in pts)


def schwarz_branches(c: Conic, z: complex) -> tuple[complex, complex]:
    """Both roots ``w`` of ``P(z, w) = 0``; the principal Schwarz branch first.

    Anchors: the ellipse exterior branch is continued in from large positive
    ``z`` (cut ``[-c, c]``); the hyperbola branch satisfies ``S(0) = 2ab/c``
    (cuts along the real axis beyond the foci); the parabola branch vanishes at
    the vertex (cut ``[a, +inf)``).
    """
    z = complex(z)
    if c.is_circle:
        raise DegenerateCircle("ellipse with a == b")
    if _is_branch_point(c, z):
        raise BranchPointError(f"z = {z} is a branch point")
    a, b = c.a, c.b
    if c.kind == "ellipse":
        cc = c.c
        root = cmath.sqrt(z - cc) * cmath.sqrt(z + cc)
        base, amp = (a * a + b * b) * z / cc ** 2, 2 * a * b * root / cc ** 2
        return base - amp, base + amp
    if c.kind == "hyperbola":
        cc = c.c
        root = cmath.sqrt(cc - z) * cmath.sqrt(cc + z)
        base, amp = (a * a - b * b) * z / cc ** 2, 2 * a * b * root / cc ** 2
        return base + amp, base - amp
    root = cmath.sqrt(16 * a * (a - z))
    return z - 4 * a + root, z - 4 * a - root


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (j1, k1), v1 in p.items():
        for (j2, k2), v2 in q.items():
            key = (j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + v1 * v2
    return out


def _poly_pow(p: dict, n: int) -> dict:
    out = {(0, 0): 1.0}
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def invert_curve(curve: HermitianCurve, mode="antipodal") -> HermitianCurve:
    """Image of the curve under ``z -> -1/conj z`` (``"antipodal"``) or under
    ``z -> 1/(z - center)`` (pass the center as a complex number).

    Denominators are cleared with ``(z w)^n``, ``n`` the bidegree, and the
    result is normalised by its coefficient of largest modulus.
    """
    n = curve.bidegree
    out: dict = {}
    if isinstance(mode, str):
        if mode != "antipodal":
            raise ValueError(f"unknown inversion mode {mode!r}")
        # z = -1/w', w = -1/z'  ->  z^j w^k (z'w')^n = (-1)^(j+k) z'^(n-k) w'^(n-j)
        for (j, k), v in curve.coeffs.items():
            key = (n - k, n - j)
            out[key] = out.get(key, 0) + v * (-1) ** (j + k)
    else:
        z0 = complex(mode)
        # z = z0 + 1/z', w = conj z0 + 1/w'
        for (j, k), v in curve.coeffs.items():
            term = _poly_mul(_poly_pow({(1, 0): z0, (0, 0): 1.0}, j), _poly_pow({(0, 1): z0.conjugate(), (0, 0): 1.0}, k))
            term = _poly_mul(term, {(n - j, n - k): 1.0})
            for key, t in term.items():
                out[key] = out.get(key, 0) + v * t
    scale = max(abs(v) for v in out.values())
    out = {k: v for k, v in out.items() if abs(v) > 1e-14 * scale}
    return HermitianCurve(out, check=False).normalized()


@dataclass(frozen=True)
class GenusReport:
    degree: int
    singular_count: int
    genus: int
    sheets: int
    branch_count: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "singular_count": self.singular_count,
            "genus": self.genus,
            "sheets": self.sheets,
            "branch_count": self.branch_count,
        }


def genus_report(d: int, singular_count: int, m: int) -> GenusReport:
    if d < 1 or m < 1 or singular_count < 0:
        raise ValueError("need d >= 1, m >= 1, singular_count >= 0")
    g = (d - 1) * (d - 2) // 2 - singular_count
    if g < 0:
        raise ValueError(f"negative genus: {singular_count} singular points exceed the budget for degree {d}")
    return GenusReport(d, singular_count, g, m, 2 * (m - 1 + g))


def asymptotic_directions(c: Conic) -> list[ProjectivePoint]:
    if c.kind == "ellipse":
        return []
    if c.kind == "parabola":
        return [ProjectivePoint(phi=0.0)]
    half = 0.5 * math.acos((c.a ** 2 - c.b ** 2) / (c.a ** 2 + c.b ** 2))
    return [ProjectivePoint(phi=half), ProjectivePoint(phi=math.pi - half)]


# --- singular points ---------------------------------------------------------


def _eval_dict(p: dict, z, w):
    return sum(v * z ** j * w ** k for (j, k), v in p.items())


def _homog(curve: HermitianCurve):
    """``F(t, z, w)`` as a dict keyed ``(i, j, k)`` for ``t^i z^j w^k``."""
    d = curve.degree
    return {(d - j - k, j, k): v for (j, k), v in curve.coeffs.items()}


def _grad_h(F: dict, t, z, w):
    gt = gz = gw = 0j
    for (i, j, k), v in F.items():
        if i:
            gt += v * i * t ** (i - 1) * z ** j * w ** k
        if j:
            gz += v * j * t ** i * z ** (j - 1) * w ** k
        if k:
            gw += v * k * t ** i * z ** j * w ** (k - 1)
    return np.array([gt, gz, gw])


def singular_points(curve: HermitianCurve, seed: int = 0, starts: int = 400, tol: float = 1e-8) -> list[tuple]:
    """Singular points of the projective closure in homogeneous ``[t : z : w]``.

    Finite points are found by Newton iteration on ``P_z = P_w = 0`` from
    seeded random starts and kept when ``P`` also vanishes; points at infinity
    are the roots of the top-degree part whose full gradient vanishes.  The
    search is numerical and does not certify completeness.
    """
    P = curve.normalized()
    Pz, Pw = P.partial("z"), P.partial("w")
    found: list[tuple] = []

    def add(pt):
        v = np.array(pt, dtype=complex)
        v = v / v[np.argmax(np.abs(v))]
        for q in found:
            if np.max(np.abs(np.array(q) - v)) < 1e-6:
                return
        found.append(tuple(v))

    if Pz is not None and Pw is not None:
        Pzz, Pzw = Pz.partial("z"), Pz.partial("w")
        Pwz, Pww = Pw.partial("z"), Pw.partial("w")

        def ev(p, z, w):
            return 0j if p is None else p(z, w)

        rng = np.random.default_rng(seed)
        for _ in range(starts):
            z, w = (rng.normal(size=2) + 1j * rng.normal(size=2)) * rng.choice([0.3, 1.0, 3.0])
            for _ in range(60):
                F = np.array([Pz(z, w), Pw(z, w)])
                J = np.array([[ev(Pzz, z, w), ev(Pzw, z, w)], [ev(Pwz, z, w), ev(Pww, z, w)]])
                try:
                    dz, dw = np.linalg.solve(J, -F)
                except np.linalg.LinAlgError:
                    break
                z, w = z + dz, w + dw
                if abs(dz) + abs(dw) < 1e-15 * (1 + abs(z) + abs(w)):
                    break
            if not (np.isfinite(z) and np.isfinite(w)) or abs(z) > 1e6:
                continue
            scale = 1 + abs(z) ** P.degree + abs(w) ** P.degree
            if abs(P(z, w)) < tol * scale and abs(Pz(z, w)) + abs(Pw(z, w)) < tol * scale:
                add((1.0, z, w))

    # points at infinity
    d = P.degree
    F = _homog(P)
    top = {(j, k): v for (j, k), v in P.coeffs.items() if j + k == d}
    coeffs = np.zeros(d + 1, dtype=complex)  # P_d(z, 1) ascending in z
    for (j, k), v in top.items():
        coeffs[j] += v
    dirs = []
    nz = np.nonzero(np.abs(coeffs) > 1e-14)[0]
    if nz.size:
        deg = nz[-1]
        for r in np.polynomial.polynomial.polyroots(coeffs[: deg + 1]) if deg > 0 else []:
            dirs.append((0.0, complex(r), 1.0))
        if deg < d:
            dirs.append((0.0, 1.0, 0.0))
    for pt in dirs:
        g = _grad_h(F, *pt)
        if np.max(np.abs(g)) < 1e-8:
            add(pt)
    return found
