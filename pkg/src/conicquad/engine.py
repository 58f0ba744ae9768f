"""Residue computation of quadrature identities for rational maps on symmetric surfaces.

For ``f = A/B`` with reflection ``f* = C/D`` the nodes are the zeros of
``N = B D + A C`` in the plus-half.  At a node of multiplicity ``s`` the
functional is read off two Laurent expansions, computed with truncated
Taylor arithmetic:

* ``-Res h W D / (A N)`` and
* ``+Res h W C / (B N)``,

where ``W = A' B - A B'``.  Both must agree; the first is reported.
Coefficients follow the Taylor convention: ``coeffs[j]`` multiplies
``h^(j)(zeta) / j!``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import polynomial as P

from . import poly
from .curves import Conic, conic_polynomial
from .maps import RationalMap, SymmetricSurface, reflect, standard_map
from .sphere import INFINITY, ExtendedComplex
from .taylor import Taylor, polyval_taylor

__all__ = [
    "QuadratureNode",
    "QuadratureIdentity",
    "PreconditionError",
    "ConsistencyError",
    "LaurentError",
    "node_locus",
    "check_precondition",
    "spherical_identity",
    "rotate_for_regularity",
    "scaled_identity",
    "euclidean_identity",
    "physical_nodes",
    "pushforward_coefficients",
    "taylor_at",
]

MATCH_TOL = 1e-8
INTERIOR_MARGIN = 1e-10
CROSS_CHECK_TOL = 1e-9
ROTATION_SEED = 20240611
ROTATION_RETRIES = 32


class PreconditionError(ValueError):
    """``f*`` vanishes at a pole of ``f`` (or ``f`` at a pole of ``f*``)."""


class ConsistencyError(RuntimeError):
    pass


class LaurentError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureNode:
    zeta: ExtendedComplex
    z: ExtendedComplex
    order: int
    coefficients: tuple

    def __post_init__(self):
        if self.order != len(self.coefficients):
            raise ValueError("order must equal the number of coefficients")

    @property
    def weight(self) -> complex:
        return self.coefficients[0]

    def to_json(self) -> dict:
        return {
            "zeta": _pt_json(self.zeta),
            "z": _pt_json(self.z),
            "order": self.order,
            "coeffs": [[c.real, c.imag] for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, d: dict) -> "QuadratureNode":
        return cls(_pt_from_json(d["zeta"]), _pt_from_json(d["z"]), int(d["order"]),
                   tuple(complex(re, im) for re, im in d["coeffs"]))


def _pt_json(p):
    return "inf" if p is INFINITY else [complex(p).real, complex(p).imag]


def _pt_from_json(p):
    return INFINITY if p == "inf" else complex(p[0], p[1])


@dataclass(frozen=True)
class QuadratureIdentity:
    """A finite functional ``sum_k sum_j coeffs[k][j] h^(j)(x_k)/j!``.

    ``plane`` says whether the functional acts on ``h(zeta)`` (parameter
    plane, ``x_k = zeta_k``) or on ``h(z)`` (physical plane, ``x_k = z_k``).
    """

    measure: str
    surface: SymmetricSurface
    map: RationalMap
    nodes: tuple
    eps: float | None = None
    plane: str = "parameter"
    cross_check: float = 0.0
    rotation: tuple = (1.0, 0.0)

    @property
    def degree(self) -> int:
        return self.map.degree

    def total_weight(self) -> complex:
        return complex(sum(n.coefficients[0] for n in self.nodes))

    def points(self):
        return [n.zeta if self.plane == "parameter" else n.z for n in self.nodes]

    def evaluate(self, h) -> complex:
        """Apply the functional to ``h`` (a RationalMap or an object with ``taylor(x0, n)``)."""
        total = []
        for node, x in zip(self.nodes, self.points()):
            t = taylor_at(h, x, node.order)
            total.append(np.dot(node.coefficients, t))
        return complex(np.sum(total)) if total else 0j

    def physical(self) -> "QuadratureIdentity":
        """Same functional expressed through derivatives of ``h`` in the ``z``-plane."""
        if self.plane == "physical":
            return self
        nodes = []
        for n in self.nodes:
            d = pushforward_coefficients(n.coefficients, self.map, n.zeta)
            nodes.append(replace(n, coefficients=tuple(d)))
        return replace(self, nodes=tuple(nodes), plane="physical")

    def to_json(self) -> dict:
        out = {
            "measure": self.measure,
            "degree": self.degree,
            "plane": self.plane,
            "surface": self.surface.to_json(),
            "map": self.map.to_json(),
            "nodes": [n.to_json() for n in self.nodes],
        }
        if self.eps is not None:
            out["eps"] = self.eps
        return out

    @classmethod
    def from_json(cls, d: dict) -> "QuadratureIdentity":
        return cls(
            measure=d["measure"],
            surface=SymmetricSurface(**d["surface"]),
            map=RationalMap.from_json(d["map"]),
            nodes=tuple(QuadratureNode.from_json(n) for n in d["nodes"]),
            eps=d.get("eps"),
            plane=d.get("plane", "parameter"),
        )


# --- local series helpers ------------------------------------------------------


def _series(num, den, x0, n) -> np.ndarray:
    t = Taylor.variable(x0, n)
    return (polyval_taylor(num, t) / polyval_taylor(den, t)).c


def taylor_at(h, x0: ExtendedComplex, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients of ``h`` at ``x0`` (in ``1/x`` at infinity)."""
    if hasattr(h, "taylor"):
        return np.asarray(h.taylor(x0, n), dtype=complex)
    if not isinstance(h, RationalMap):
        raise TypeError("h must be a RationalMap or provide taylor(x0, n)")
    if x0 is INFINITY:
        g = h.compose_mobius(0.0, 1.0, 1.0, 0.0)
        return _series(g.num, g.den, 0.0, n)
    return _series(h.num, h.den, complex(x0), n)


def _local_chart_series(F: RationalMap, x0: ExtendedComplex, n: int) -> np.ndarray:
    """Series of ``F`` in local charts at ``x0`` and ``F(x0)``; constant term removed."""
    G = F.compose_mobius(0.0, 1.0, 1.0, 0.0) if x0 is INFINITY else F
    t0 = 0j if x0 is INFINITY else complex(x0)
    if G.eval_extended(t0) is INFINITY:
        G = RationalMap(G.den, G.num, reduce=False)
    c = _series(G.num, G.den, t0, n)
    c[0] = 0.0
    return c


def pushforward_coefficients(coeffs, F: RationalMap, x0: ExtendedComplex) -> np.ndarray:
    """Coefficients of the same functional written at ``F(x0)`` for ``h o F``.

    ``d_k = sum_j c_j [t^j] u(t)^k`` with ``u`` the local series of ``F``.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = c.size
    u = Taylor(_local_chart_series(F, x0, n))
    d = np.zeros(n, dtype=complex)
    uk = Taylor.constant(1.0, n)
    for k in range(n):
        d[k] = np.dot(c, uk.c)
        uk = uk * u
    return d


# --- precondition and rotation -------------------------------------------------


def _parts(f: RationalMap, s: SymmetricSurface):
    fs = reflect(f, s)
    m = f.degree
    if fs.degree != m:
        raise ConsistencyError("reflection changed the degree")
    return f.num, f.den, fs.num, fs.den, m


def _share_root(p, q, m) -> bool:
    """Common root of two degree-``m`` binary forms (infinity included)."""
    if poly.degree(p) < m and poly.degree(q) < m:
        return True
    rp = [z for z, _ in poly.clustered_roots(p)]
    rq = [z for z, _ in poly.clustered_roots(q)]
    return any(abs(x - y) <= MATCH_TOL * max(1.0, abs(x)) for x in rp for y in rq)


def check_precondition(f: RationalMap, s: SymmetricSurface) -> list[str]:
    """Violations of the coprimality hypothesis; empty when it holds."""
    A, B, C, D, m = _parts(f, s)
    out = []
    if _share_root(B, C, m):
        out.append("f* vanishes at a pole of f")
    if _share_root(A, D, m):
        out.append("f vanishes at a pole of f*")
    return out


def _boundary_zeros_or_poles(f: RationalMap, s: SymmetricSurface) -> bool:
    for p in (f.num, f.den):
        for z, _ in poly.clustered_roots(p):
            if s.on_fixed_set(z, MATCH_TOL):
                return True
    if s.involution == "real_axis" and f.order_at_infinity != 0:
        return True
    return False


def _rotated(f: RationalMap, a: complex, b: complex) -> RationalMap:
    return f.post_mobius(a, b, -np.conj(b), np.conj(a))


def rotate_for_regularity(f: RationalMap, s: SymmetricSurface, seed: int = ROTATION_SEED,
                          require_precondition: bool = False):
    """Compose ``f`` with a sphere rotation so it has no zeros or poles on the fixed set.

    With ``require_precondition`` the rotation must also make the
    coprimality hypothesis hold.  Returns ``(g, (a, b))``.
    """

    def ok(g):
        if s.dividing and _boundary_zeros_or_poles(g, s):
            return False
        return not (require_precondition and check_precondition(g, s))

    if ok(f):
        return f, (1.0 + 0j, 0j)
    rng = np.random.default_rng(seed)
    for _ in range(ROTATION_RETRIES):
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        a, b = complex(v[0], v[1]), complex(v[2], v[3])
        g = _rotated(f, a, b)
        if g.degree == f.degree and ok(g):
            return g, (a, b)
    raise ConsistencyError("no regularising rotation found after 32 attempts")


# --- nodes ---------------------------------------------------------------------


def _node_polynomial(f: RationalMap, s: SymmetricSurface):
    A, B, C, D, _ = _parts(f, s)
    return P.polyadd(P.polymul(B, D), P.polymul(A, C))


def _locus(f: RationalMap, s: SymmetricSurface):
    N = _node_polynomial(f, s)
    out = []
    for z, mult in poly.clustered_roots(N):
        d = s.signed_distance(z)
        if abs(d) <= INTERIOR_MARGIN:
            raise ConsistencyError(f"root {z} of 1 + f f* lies on the fixed set")
        if d > 0:
            out.append((z, mult))
    return out


def node_locus(f: RationalMap, s: SymmetricSurface) -> list[tuple[complex, int]]:
    """Zeros of ``1 + f f*`` in the plus-half with multiplicities."""
    if f.is_constant():
        raise ValueError("constant map")
    if s.half == -1:
        phi, _ = _flip(s)
        return [(_apply_flip(s, z), m) for z, m in node_locus(f.compose_mobius(*phi), s.other_half())]
    v = check_precondition(f, s)
    if v:
        raise PreconditionError("; ".join(v))
    return _locus(f, s)


def _flip(s: SymmetricSurface):
    """Möbius map exchanging the halves while commuting with ``J``."""
    if s.involution == "unit_circle":
        return (0.0, 1.0, 1.0, 0.0), "inverse"
    if s.involution == "real_axis":
        return (-1.0, 0.0, 0.0, 1.0), "negate"
    raise ValueError("antipodal_free surface has no halves")


def _apply_flip(s: SymmetricSurface, z):
    if s.involution == "unit_circle":
        if z is INFINITY:
            return 0j
        return INFINITY if z == 0 else 1.0 / z
    return INFINITY if z is INFINITY else -z


def _laurent_coefficients(g: RationalMap, s: SymmetricSurface, z0: complex, mult: int):
    A, B, C, D, _ = _parts(g, s)
    W = g.derivative_parts()
    N = P.polyadd(P.polymul(B, D), P.polymul(A, C))
    shifted = polyval_taylor(N, Taylor.variable(z0, 2 * mult)).c
    scale = np.max(np.abs(shifted))
    if np.max(np.abs(shifted[:mult])) > 1e-6 * max(scale, 1.0):
        raise LaurentError(f"node {z0} is not a root of multiplicity {mult}")
    Nt = Taylor(shifted[mult:])
    t = Taylor.variable(z0, mult)
    Wt, At, Bt, Ct, Dt = (polyval_taylor(p, t) for p in (W, A, B, C, D))
    if abs(At.c[0]) < 1e-14 or abs(Bt.c[0]) < 1e-14:
        raise LaurentError(f"unexpected singularity at node {z0}")
    first = (Wt * Dt) / (At * Nt)
    second = (Wt * Ct) / (Bt * Nt)
    c1 = np.array([-first.c[mult - 1 - j] for j in range(mult)])
    c2 = np.array([second.c[mult - 1 - j] for j in range(mult)])
    return c1, c2


def _identity_plus(f: RationalMap, s: SymmetricSurface, rotate: bool):
    if rotate:
        g, rot = rotate_for_regularity(f, s, require_precondition=True)
    else:
        v = check_precondition(f, s)
        if v:
            raise PreconditionError("; ".join(v))
        g, rot = f, (1.0 + 0j, 0j)
    nodes, worst = [], 0.0
    for z0, mult in _locus(g, s):
        c1, c2 = _laurent_coefficients(g, s, z0, mult)
        err = float(np.max(np.abs(c1 - c2)) / max(1.0, np.max(np.abs(c1))))
        worst = max(worst, err)
        nodes.append((z0, mult, c1))
    return nodes, worst, rot


def spherical_identity(f: RationalMap, s: SymmetricSurface, rotate: bool = True) -> QuadratureIdentity:
    """Quadrature identity for the pulled-back spherical area over the selected half.

    With ``rotate`` (default) a sphere rotation is applied first whenever
    ``f`` has zeros or poles on the fixed set or breaks the coprimality
    hypothesis; the node set and the functional are unaffected.
    """
    if f.is_constant():
        raise ValueError("constant map")
    if s.half == -1:
        phi, _ = _flip(s)
        inner = spherical_identity(f.compose_mobius(*phi), s.other_half(), rotate)
        flip = RationalMap(*( ([0.0], [0.0, 1.0]) if s.involution == "unit_circle" else ([0.0, -1.0], [1.0]) ))
        nodes = []
        for n in inner.nodes:
            near_origin = s.involution == "unit_circle" and abs(n.zeta) <= INTERIOR_MARGIN
            zeta = INFINITY if near_origin else _apply_flip(s, n.zeta)
            if zeta is INFINITY:
                coeffs = n.coefficients  # local coordinate 1/zeta at infinity
            else:
                coeffs = tuple(pushforward_coefficients(n.coefficients, flip, n.zeta))
            nodes.append(QuadratureNode(zeta, f.eval_extended(zeta), n.order, coeffs))
        return replace(inner, surface=s, map=f, nodes=tuple(nodes))
    raw, worst, rot = _identity_plus(f, s, rotate)
    if worst > 1e-6:
        raise ConsistencyError(f"the two residue forms disagree by {worst:.3g}")
    nodes = tuple(QuadratureNode(z0, f.eval_extended(z0), m, tuple(complex(x) for x in c)) for z0, m, c in raw)
    return QuadratureIdentity("spherical", s, f, nodes, cross_check=worst, rotation=rot)


def scaled_identity(f: RationalMap, s: SymmetricSurface, eps: float) -> QuadratureIdentity:
    """Identity for ``(1/pi) |f'|^2 / (1 + eps^2 |f|^2)^2 dx dy``.

    The measure is the spherical one for ``eps f`` divided by ``eps^2``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    base = spherical_identity(f.scaled(eps), s)
    nodes = tuple(
        QuadratureNode(n.zeta, f.eval_extended(n.zeta), n.order, tuple(c / eps ** 2 for c in n.coefficients))
        for n in base.nodes
    )
    return replace(base, measure="euclidean_scaled", map=f, nodes=nodes, eps=float(eps))


def euclidean_identity(f: RationalMap, s: SymmetricSurface) -> QuadratureIdentity:
    """Identity for ``(1/pi) |f'|^2 dx dy`` over the plus-half: residues of ``h f* f'``.

    ``f`` must be pole-free on the closed half.
    """
    if s.half != 1:
        raise ValueError("only the plus-half is supported for the Euclidean measure")
    for z, _ in poly.clustered_roots(f.den):
        if s.signed_distance(z) >= -INTERIOR_MARGIN:
            raise ValueError(f"f has a pole at {z} in the closed half; the area is infinite")
    if s.involution == "real_axis":
        raise ValueError("the half-plane has infinite Euclidean pulled-back area")
    A, B, C, D, _ = _parts(f, s)
    R = RationalMap(P.polymul(C, f.derivative_parts()), P.polymul(D, P.polymul(B, B)))
    nodes = []
    for p, q in poly.clustered_roots(R.den):
        if s.signed_distance(p) <= INTERIOR_MARGIN:
            continue
        shifted = polyval_taylor(R.den, Taylor.variable(p, 2 * q)).c
        Dt = Taylor(shifted[q:])
        G = polyval_taylor(R.num, Taylor.variable(p, q)) / Dt
        coeffs = tuple(complex(G.c[q - 1 - j]) for j in range(q))
        nodes.append(QuadratureNode(p, f.eval_extended(p), q, coeffs))
    return QuadratureIdentity("euclidean", s, f, tuple(nodes))


def physical_nodes(c: Conic) -> list[tuple[ExtendedComplex, int]]:
    """Solutions of ``1 + z S(z) = 0`` on the sheets of the domain.

    Candidates are the roots of ``z^n P(z, -1/z)``; the standard map's
    parameter nodes select those lying on the domain's sheets.
    """
    curve = conic_polynomial(c)
    n = curve.bidegree
    coeffs = np.zeros(2 * n + 1, dtype=complex)
    for (j, k), v in curve.coeffs.items():
        coeffs[j - k + n] += v * (-1) ** k
    cands = poly.clustered_roots(coeffs)
    f, s = standard_map(c)
    targets = [nd.z for nd in spherical_identity(f, s).nodes]
    out = []
    for z, m in cands:
        if any(t is not INFINITY and abs(z - t) <= 1e-6 * max(1.0, abs(z)) for t in targets):
            out.append((z, m))
    return out
