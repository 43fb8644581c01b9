"""Truncated complex power series at the origin.

A :class:`TruncatedSeries` holds ``c_0 .. c_N``. Binary operations truncate to
the smaller of the two orders; nothing beyond the working order is ever
implied to be zero.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_ORDER, TOL
from .errors import DivisionByNonUnit, LogOfZeroConstantTerm, NonVanishingConstantTerm


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a truncated series needs at least the constant term")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    # constructors

    @classmethod
    def constant(cls, c: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        out = np.zeros(order + 1, dtype=complex)
        out[0] = c
        return cls(out)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return cls.constant(0.0, order)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, c: complex = 1.0) -> TruncatedSeries:
        out = np.zeros(order + 1, dtype=complex)
        if k <= order:
            out[k] = c
        return cls(out)

    @classmethod
    def geometric(cls, ratio: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        """Expansion of ``1 / (1 - ratio*z)``."""
        return cls(ratio ** np.arange(order + 1))

    # helpers

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self.coeffs / complex(other))

    def __rtruediv__(self, other):
        return div(_coerce(other, self.order), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers: use div")
        out = TruncatedSeries.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs[:6]}{'...' if self.order > 5 else ''})"

    def allclose(self, other: TruncatedSeries, atol: float) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.max(np.abs(self.coeffs[:n] - other.coeffs[:n])) <= atol)


def _coerce(x, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.constant(complex(x), order)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order) + 1
    return TruncatedSeries(a.coeffs[:n] + b.coeffs[:n])


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    n = min(a.order, b.order) + 1
    return TruncatedSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def div(a: TruncatedSeries, b: TruncatedSeries, tol: float = TOL.division) -> TruncatedSeries:
    """Quotient ``q`` with ``q*b == a`` up to the truncation order."""
    b0 = b.coeffs[0]
    if abs(b0) <= tol:
        raise DivisionByNonUnit(f"constant term {b0!r} of the divisor is below {tol}")
    n = min(a.order, b.order) + 1
    ac, bc = a.coeffs, b.coeffs
    q = np.zeros(n, dtype=complex)
    for k in range(n):
        # bc[1:k+1] against q[k-1::-1]
        acc = ac[k] - np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k]) if k else ac[0]
        q[k] = acc / b0
    return TruncatedSeries(q)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) from (exp a)' = a' exp a."""
    n = a.order + 1
    ka = np.arange(n) * a.coeffs  # j * a_j
    e = np.zeros(n, dtype=complex)
    e[0] = cmath.exp(a.coeffs[0])
    for k in range(1, n):
        e[k] = np.dot(ka[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return TruncatedSeries(e)


def log_series(a: TruncatedSeries, tol: float = TOL.division) -> TruncatedSeries:
    """Principal logarithm of the constant term plus the series recurrence.

    Callers that need a specific branch shift ``Im c_0`` themselves.
    """
    a0 = a.coeffs[0]
    if abs(a0) <= tol:
        raise LogOfZeroConstantTerm(f"constant term {a0!r} is below {tol}")
    n = a.order + 1
    ac = a.coeffs
    lg = np.zeros(n, dtype=complex)
    lg[0] = cmath.log(a0)
    jl = np.zeros(n, dtype=complex)  # j * l_j
    for k in range(1, n):
        s = np.dot(jl[1:k], ac[k - 1 : 0 : -1]) if k > 1 else 0.0
        lg[k] = (ac[k] - s / k) / a0
        jl[k] = k * lg[k]
    return TruncatedSeries(lg)


def nth_root_series(a: TruncatedSeries, n: int) -> TruncatedSeries:
    return exp_series(log_series(a) / n)


def shift_down(a: TruncatedSeries, tol: float = TOL.removable) -> TruncatedSeries:
    """Divide by z; the constant term must vanish."""
    if abs(a.coeffs[0]) > tol:
        raise NonVanishingConstantTerm(f"constant term {a.coeffs[0]!r} exceeds {tol}")
    if a.order == 0:
        raise NonVanishingConstantTerm("order-0 series has nothing left after division by z")
    return TruncatedSeries(a.coeffs[1:])


def shift_up(a: TruncatedSeries) -> TruncatedSeries:
    """Multiply by z; the order grows by one."""
    return TruncatedSeries(np.concatenate([[0.0], a.coeffs]))


def evaluate(a: TruncatedSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in a.coeffs[::-1]:
        out = out * z + c
    return out[()] if out.ndim == 0 else out


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.order == 0:
        return TruncatedSeries.constant(0.0, 0)
    return TruncatedSeries(a.coeffs[1:] * np.arange(1, a.order + 1))
