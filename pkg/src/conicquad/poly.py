"""Polynomial helpers.  Coefficients are ascending: ``c[k]`` multiplies ``x**k``."""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = ["trim", "degree", "roots", "clustered_roots", "RootFindingError", "polydiv_exact"]

CLUSTER_TOL = 1e-7


class RootFindingError(RuntimeError):
    def __init__(self, message, coeffs):
        super().__init__(f"{message}; polynomial (ascending) = {np.asarray(coeffs).tolist()}")
        self.coeffs = coeffs


def trim(c, rtol: float = 0.0) -> np.ndarray:
    """Drop vanishing leading coefficients (relative to the largest one)."""
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    scale = np.max(np.abs(c))
    if scale == 0:
        return np.zeros(1, dtype=complex)
    nz = np.nonzero(np.abs(c) > rtol * scale)[0]
    return c[: nz[-1] + 1].copy()


def degree(c, rtol: float = 0.0) -> int:
    c = trim(c, rtol)
    if c.size == 1 and c[0] == 0:
        return -1
    return c.size - 1


def _newton_polish(c, z, mult, maxiter=50):
    """Newton on the (mult-1)-th derivative, which has a simple root at z."""
    d = c
    for _ in range(mult - 1):
        d = P.polyder(d)
    dd = P.polyder(d)
    if dd.size == 0 or not np.any(dd):
        return z
    best, best_res = z, abs(P.polyval(z, d))
    for _ in range(maxiter):
        v = P.polyval(z, d)
        dv = P.polyval(z, dd)
        if dv == 0:
            break
        step = v / dv
        z = z - step
        res = abs(P.polyval(z, d))
        if res < best_res:
            best, best_res = z, res
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return best


def roots(c) -> np.ndarray:
    """All roots, Newton-polished, repeated by multiplicity."""
    out = []
    for z, m in clustered_roots(c):
        out.extend([z] * m)
    return np.array(out, dtype=complex)


def clustered_roots(c, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Roots merged into clusters closer than ``tol`` (relative), with multiplicities.

    Companion-matrix eigenvalues are grouped single-linkage; each cluster is
    represented by its centroid, then polished by Newton on the appropriate
    derivative.
    """
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if not np.all(np.isfinite(c)):
        raise RootFindingError("non-finite coefficients", c)
    c = trim(c)
    if c.size <= 1:
        return []
    raw = P.polyroots(c)
    if not np.all(np.isfinite(raw)):
        raise RootFindingError("eigenvalue solver failed", c)
    n = raw.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(raw[i] - raw[j]) <= tol * max(1.0, abs(raw[i]), abs(raw[j])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    result = []
    for idx in groups.values():
        z = complex(np.mean(raw[idx]))
        m = len(idx)
        z = complex(_newton_polish(c, z, m))
        result.append((z, m))
    result.sort(key=lambda zm: (round(zm[0].real, 12), round(zm[0].imag, 12)))
    return result


def polydiv_exact(num, den) -> np.ndarray:
    """Quotient of a division expected to be exact (remainder discarded)."""
    q, _ = P.polydiv(np.asarray(num, dtype=complex), np.asarray(den, dtype=complex))
    return np.atleast_1d(q)
