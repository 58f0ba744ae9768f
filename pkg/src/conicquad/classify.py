"""Local residue analysis of the two node differentials.

Near a point with local coordinate ``zeta`` write ``f ~ a zeta^k``,
``f' ~ b zeta^ell``, ``f* ~ c zeta^j``, ``h ~ zeta^r`` and, when
``1 + a c = 0`` (with ``k + j = 0``), ``1 + f f* ~ q zeta^s``.
:func:`classify_local` predicts what the residue of

* ``first``:  ``h df / (f (1 + f f*))``
* ``second``: ``h f* df / (1 + f f*)``

does at that point; :func:`residue_oracle` measures it by contour
integration.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from . import poly
from .maps import RationalMap

__all__ = [
    "LocalData",
    "Verdict",
    "classify_local",
    "residue_oracle",
    "OracleError",
    "LocalModel",
    "random_local_model",
    "oracle_verdict",
    "predicted_residue",
]

NO_RESIDUE = "no_residue"
CANCELS = "cancels_with_divisor_term"
SURVIVING = "surviving_node"
EXCLUDED = "excluded_by_assumption"


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalData:
    k: int
    ell: int
    j: int
    r: int
    s: int | None = None
    one_plus_ac_zero: bool = False

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if self.k != 0 and self.ell != self.k - 1:
            raise ValueError("ell must equal k - 1 when k != 0")
        if self.k == 0 and self.ell < 0:
            raise ValueError("ell must be >= 0 when k == 0")
        if self.one_plus_ac_zero != (self.s is not None):
            raise ValueError("s is given exactly when 1 + ac = 0")
        if self.s is not None and self.s < 1:
            raise ValueError("s must be >= 1")
        if self.one_plus_ac_zero and self.k + self.j != 0:
            raise ValueError("1 + ac = 0 only makes sense when k + j = 0")

    @property
    def threshold(self) -> int | None:
        """The ``r`` at which the leading term of a surviving node carries the residue."""
        return None if self.s is None else self.s + self.k - self.ell - 1


@dataclass(frozen=True)
class Verdict:
    kind: str
    count: int | None = None

    def __str__(self):
        return f"{self.kind}({self.count})" if self.kind == CANCELS else self.kind


def classify_local(d: LocalData, which: str = "first") -> Verdict:
    if which not in ("first", "second"):
        raise ValueError("which must be 'first' or 'second'")
    k, j, r = d.k, d.j, d.r
    if d.one_plus_ac_zero:
        return Verdict(SURVIVING) if r <= d.threshold else Verdict(NO_RESIDUE)
    if which == "first":
        if k + j < 0 or k == 0 or r != 0:
            return Verdict(NO_RESIDUE)
        if k > 0 and k + j > 0:
            return Verdict(CANCELS, k)
        # f* has a pole at a zero of f (k + j = 0), or a zero at a pole of f
        return Verdict(EXCLUDED)
    if k + j > 0 or k == 0 or r != 0:
        return Verdict(NO_RESIDUE)
    if k + j < 0 and k < 0:
        return Verdict(CANCELS, -k)
    return Verdict(EXCLUDED)


def predicted_residue(d: LocalData, which: str, a: complex, c: complex, q: complex | None = None,
                      b: complex | None = None):
    """Leading-order residue for ``h = zeta^r + ...``; ``None`` when it depends on higher terms.

    ``b`` is the leading coefficient of ``f'``; it defaults to ``k a``.
    """
    v = classify_local(d, which)
    k = d.k
    if v.kind == NO_RESIDUE:
        return 0j
    if v.kind == SURVIVING:
        if d.r != d.threshold:
            return None
        if b is None and k != 0:
            b = k * a
        if b is None:
            return None
        return b / (a * q) if which == "first" else b * c / q
    if v.kind == CANCELS:
        return complex(k)
    # excluded
    if which == "first":
        return complex(k) if k + d.j > 0 else k / (1 + a * c)
    return k * a * c / (1 + a * c) if k + d.j == 0 else complex(k)


# --- oracle -----------------------------------------------------------------------


def _differential(f: RationalMap, fs: RationalMap, h: RationalMap, which: str):
    W = f.derivative_parts()
    # f'/f = W/(A B); 1 + f f* = (B D + A C)/(B D)
    A, B, C, D = f.num, f.den, fs.num, fs.den
    N = P.polyadd(P.polymul(B, D), P.polymul(A, C))
    if which == "first":
        num = P.polymul(P.polymul(h.num, W), D)
        den = P.polymul(P.polymul(h.den, A), N)
    else:
        num = P.polymul(P.polymul(h.num, W), C)
        den = P.polymul(P.polymul(h.den, B), N)
    return num, den


def _strip_root(p, z0):
    """Divide out every factor ``(zeta - z0)`` of ``p``."""
    p = poly.trim(p)
    while p.size > 1 and abs(P.polyval(z0, p)) <= 1e-13 * np.max(np.abs(p)):
        p = poly.trim(poly.polydiv_exact(p, [-z0, 1.0]))
    return p


def _other_singularities(den, z0):
    return [z for z, _ in poly.clustered_roots(_strip_root(den, z0))]


def _contour(num, den, z0, rho, n=512):
    t = np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
    z = z0 + rho * t
    vals = P.polyval(z, num) / P.polyval(z, den)
    return complex(np.mean(vals * rho * t))


def residue_oracle(f: RationalMap, fs: RationalMap, h: RationalMap, point: complex, which: str = "first",
                   rtol: float = 1e-6) -> complex:
    """Residue of the chosen differential at ``point`` from two contour integrals."""
    num, den = _differential(f, fs, h, which)
    point = complex(point)
    others = [abs(z - point) for z in _other_singularities(den, point)]
    d = min(others) if others else 1.0
    r1, r2 = 0.25 * d, 0.5 * d
    v1 = _contour(num, den, point, r1)
    v2 = _contour(num, den, point, r2)
    scale = max(abs(v1), abs(v2), 1.0)
    if abs(v1 - v2) > rtol * scale:
        raise OracleError(f"contour integrals disagree: {v1} vs {v2}")
    return v2


def _winding(F: RationalMap, z0, rho, n=512) -> int:
    t = np.exp(2j * np.pi * np.arange(n + 1) / n)
    v = F(z0 + rho * t)
    return int(round(np.sum(np.angle(v[1:] / v[:-1])) / (2 * np.pi)))


def _order(num, den, z0, rho) -> int:
    return _winding(RationalMap(num, den, reduce=False), z0, rho)


@dataclass
class LocalModel:
    data: LocalData
    f: RationalMap
    fs: RationalMap
    h: RationalMap
    a: complex
    c: complex
    q: complex | None
    b: complex


def _noise(rng, n, size=0.2):
    return np.concatenate([[1.0], size * (rng.normal(size=n) + 1j * rng.normal(size=n))])


def random_local_model(d: LocalData, rng: np.random.Generator) -> LocalModel:
    """Rational ``f``, ``f*``, ``h`` at ``zeta = 0`` realising the given local data."""

    def unit():
        return cmath.exp(2j * np.pi * rng.random()) * (0.5 + rng.random())

    a = unit()
    k, ell = d.k, d.ell
    b = k * a
    if k > 0:
        A, B = a * P.polymul(P.polypow([0, 1], k), _noise(rng, 2)), np.array([1.0 + 0j])
    elif k < 0:
        A, B = a * _noise(rng, 2), P.polypow([0, 1], -k).astype(complex)
    else:
        b = unit()
        tail = np.concatenate([np.zeros(ell + 1), (b / (ell + 1)) * _noise(rng, 2)])
        A, B = P.polyadd([a], tail), np.array([1.0 + 0j])
    f = RationalMap(A, B, reduce=False)
    q = None
    if d.one_plus_ac_zero:
        q = unit()
        c = -1.0 / a
        u = P.polymul(P.polypow([0, 1], d.s), q * _noise(rng, 2))
        # f* = (-1 + q zeta^s u) / f = (-1 + ...) B / A
        fs = RationalMap(P.polymul(P.polyadd([-1.0], u), B), A, reduce=False)
    else:
        c = unit()
        if k + d.j == 0:
            while abs(1 + a * c) < 0.2:
                c = unit()
        if d.j >= 0:
            fs = RationalMap(c * P.polymul(P.polypow([0, 1], d.j), _noise(rng, 2)), [1.0], reduce=False)
        else:
            fs = RationalMap(c * _noise(rng, 2), P.polypow([0, 1], -d.j).astype(complex), reduce=False)
    hc = P.polymul(P.polypow([0, 1], d.r), _noise(rng, 6, 0.5))
    h = RationalMap(hc, [1.0], reduce=False)
    return LocalModel(d, f, fs, h, a, c, q, b)


def oracle_verdict(model: LocalModel, which: str, tol: float = 1e-9) -> tuple[Verdict, complex]:
    """Verdict derived only from measured quantities at ``zeta = 0``.

    Orders of ``f``, ``f*`` and ``1 + f f*`` come from argument-principle
    windings; the residue from :func:`residue_oracle`.
    """
    f, fs = model.f, model.fs
    R = residue_oracle(f, fs, model.h, 0j, which)
    if abs(R) <= tol:
        return Verdict(NO_RESIDUE), R
    A, B, C, D = f.num, f.den, fs.num, fs.den
    N = P.polyadd(P.polymul(B, D), P.polymul(A, C))
    rho = 0.5 * _isolation_radius([A, B, C, D, N])
    k = _order(A, B, 0j, rho)
    j = _order(C, D, 0j, rho)
    if _order(N, P.polymul(B, D), 0j, rho) > 0:
        return Verdict(SURVIVING), R
    if which == "first" and k > 0 and abs(R - k) <= 1e-7:
        return Verdict(CANCELS, k), R
    if which == "second" and k < 0 and abs(R - k) <= 1e-7:
        return Verdict(CANCELS, -k), R
    if (k < 0 < j) or (j < 0 < k):
        return Verdict(EXCLUDED), R
    raise OracleError(f"unexplained residue {R} (k={k}, j={j})")


def _isolation_radius(polys) -> float:
    d = 1.0
    for p in polys:
        for z in _other_singularities(p, 0j):
            d = min(d, abs(z))
    return d
