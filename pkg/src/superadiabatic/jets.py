"""Truncated Taylor series ("jets") evaluated on a whole time grid.

A :class:`Jet` of order ``m`` stores, for every grid sample, the normalized
Taylor coefficients ``f^(k)(t) / k!`` for ``k = 0..m``.  Arithmetic on jets
propagates exact derivatives through nonlinear formulas, so nested time
derivatives never go through finite differences.
"""

from __future__ import annotations

import math

import numpy as np


class Jet:
    """Taylor coefficients with shape ``(order + 1, n_samples)``."""

    __array_priority__ = 100

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 2:
            raise ValueError("jet coefficients must have shape (order+1, n)")
        self.c = coeffs

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        """Build from stacked derivatives ``d^k f / dt^k``."""
        derivs = np.asarray(derivs, dtype=float)
        scale = np.array([1.0 / math.factorial(k) for k in range(derivs.shape[0])])
        return cls(derivs * scale[:, None])

    @classmethod
    def constant(cls, value, order: int, n: int) -> "Jet":
        c = np.zeros((order + 1, n))
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.c[0]

    def derivatives(self) -> np.ndarray:
        scale = np.array([math.factorial(k) for k in range(self.order + 1)], float)
        return self.c * scale[:, None]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.c[: order + 1])

    def diff(self) -> "Jet":
        """Time derivative; the result has one order less."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self.c[1:] * k[:, None])

    @staticmethod
    def integrate(rate: "Jet", value) -> "Jet":
        """Antiderivative jet whose samples equal ``value``."""
        c = np.empty((rate.order + 2, rate.c.shape[1]))
        c[0] = value
        k = np.arange(1, rate.order + 2, dtype=float)
        c[1:] = rate.c / k[:, None]
        return Jet(c)

    def _coerce(self, other):
        if isinstance(other, Jet):
            m = min(self.order, other.order)
            return self.c[: m + 1], other.c[: m + 1]
        other = np.asarray(other, dtype=float)
        oc = np.zeros_like(self.c)
        oc[0] = other
        return self.c, oc

    def __add__(self, other):
        a, b = self._coerce(other)
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * np.asarray(other, dtype=float))
        a, b = self._coerce(other)
        out = np.zeros_like(a)
        for k in range(a.shape[0]):
            out[k] = np.einsum("ij,ij->j", a[: k + 1], b[k::-1])
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / np.asarray(other, dtype=float))
        a, b = self._coerce(other)
        q = np.zeros_like(a)
        for k in range(a.shape[0]):
            acc = a[k] - np.einsum("ij,ij->j", b[1 : k + 1], q[k - 1 :: -1][:k]) if k else a[0]
            q[k] = acc / b[0]
        return Jet(q)

    def __rtruediv__(self, other):
        return Jet.constant(other, self.order, self.c.shape[1]) / self

    def sqrt(self) -> "Jet":
        a = self.c
        r = np.zeros_like(a)
        r[0] = np.sqrt(a[0])
        for k in range(1, a.shape[0]):
            acc = a[k] - np.einsum("ij,ij->j", r[1:k], r[k - 1 : 0 : -1])
            r[k] = acc / (2.0 * r[0])
        return Jet(r)

    def sincos(self) -> tuple["Jet", "Jet"]:
        u = self.c
        s = np.zeros_like(u)
        c = np.zeros_like(u)
        s[0] = np.sin(u[0])
        c[0] = np.cos(u[0])
        for k in range(1, u.shape[0]):
            i = np.arange(1, k + 1, dtype=float)[:, None]
            s[k] = np.sum(i * u[1 : k + 1] * c[k - 1 :: -1][:k], axis=0) / k
            c[k] = -np.sum(i * u[1 : k + 1] * s[k - 1 :: -1][:k], axis=0) / k
        return Jet(s), Jet(c)

    def sin(self) -> "Jet":
        return self.sincos()[0]

    def cos(self) -> "Jet":
        return self.sincos()[1]

    def shifted(self, h: float) -> np.ndarray:
        """Coefficients of the same polynomial re-expanded about ``t + h``."""
        m = self.order
        out = np.zeros_like(self.c)
        for k in range(m + 1):
            for i in range(k, m + 1):
                out[k] += math.comb(i, k) * self.c[i] * h ** (i - k)
        return out

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, n={self.c.shape[1]})"


def atan2_rate(y: Jet, x: Jet) -> Jet:
    """Jet of d/dt atan2(y, x); one order less than the inputs."""
    num = x * y.diff() - y * x.diff()
    return num / (x * x + y * y).truncate(num.order)
