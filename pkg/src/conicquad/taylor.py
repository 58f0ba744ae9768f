"""Truncated power series with complex coefficients.

A :class:`Taylor` of length ``n`` holds ``c[0] + c[1] t + ... + c[n-1] t^(n-1)``.
Arithmetic truncates to the shorter operand, so evaluating a rational
expression at :func:`Taylor.variable` yields its first ``n`` Taylor
coefficients at the expansion point (``c[k] = g^(k)(x0) / k!``).
"""
from __future__ import annotations

import numpy as np

__all__ = ["Taylor", "polyval_taylor", "shift_polynomial"]


class Taylor:
    __slots__ = ("c",)
    __array_priority__ = 1000

    def __init__(self, coeffs):
        self.c = np.array(coeffs, dtype=complex)
        if self.c.ndim != 1 or self.c.size == 0:
            raise ValueError("Taylor coefficients must be a non-empty 1-d array")

    @classmethod
    def variable(cls, x0: complex, n: int) -> "Taylor":
        c = np.zeros(n, dtype=complex)
        c[0] = x0
        if n > 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: complex, n: int) -> "Taylor":
        c = np.zeros(n, dtype=complex)
        c[0] = value
        return cls(c)

    def __len__(self):
        return self.c.size

    def __repr__(self):
        return f"Taylor({self.c!r})"

    def _coerce(self, other):
        if isinstance(other, Taylor):
            n = min(len(self), len(other))
            return self.c[:n], other.c[:n]
        return self.c, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is None:
            out = a.copy()
            out[0] += other
            return Taylor(out)
        return Taylor(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Taylor(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return Taylor(a * other)
        n = a.size
        return Taylor(np.convolve(a, b)[:n])

    __rmul__ = __mul__

    def reciprocal(self) -> "Taylor":
        a = self.c
        if a[0] == 0:
            raise ZeroDivisionError("Taylor series with zero constant term has no reciprocal")
        n = a.size
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0 / a[0]
        for k in range(1, n):
            out[k] = -np.dot(a[1:k + 1], out[k - 1::-1][:k]) / a[0]
        return Taylor(out)

    def __truediv__(self, other):
        if isinstance(other, Taylor):
            return self * other.reciprocal()
        return Taylor(self.c / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if int(k) != k:
            raise ValueError("only integer powers are supported")
        k = int(k)
        base = self if k >= 0 else self.reciprocal()
        k = abs(k)
        result = Taylor.constant(1.0, len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivatives(self) -> np.ndarray:
        """``g^(k)(x0)`` for ``k = 0..n-1``."""
        k = np.arange(len(self))
        fact = np.array([float(np.prod(np.arange(1, j + 1))) for j in k])
        return self.c * fact

    def truncate(self, n: int) -> "Taylor":
        return Taylor(self.c[:n])


def polyval_taylor(coeffs, t: Taylor) -> Taylor:
    """Evaluate an ascending-order polynomial at a Taylor argument (Horner)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    out = Taylor.constant(coeffs[-1], len(t))
    for a in coeffs[-2::-1]:
        out = out * t + a
    return out


def shift_polynomial(coeffs, x0: complex, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients of a polynomial about ``x0``."""
    return polyval_taylor(coeffs, Taylor.variable(x0, n)).c
