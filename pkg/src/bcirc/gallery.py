"""Worked examples: Dirac, two-point, Haar, cyclic Haar, Poisson, the singular
measure with characteristic pair ``(0, delta_x)``, and B*S*O compositions.

Singular example
----------------
For ``rho = delta_x`` with ``x = e^{i beta}`` the transform is
``F(z) = exp((z+x)/(z-x))`` and the measure has an atom at ``conj(z_n)`` for
every zero ``z_n`` of ``exp((x+z)/(x-z)) - z`` on the circle, with mass
``a_n = (1 - cos(beta - beta_n)) / (2 - cos(beta - beta_n))``.

On the circle write ``z = e^{i(beta + t)}`` with ``t`` in ``(-pi, pi]``,
``t != 0``. Factoring ``e^{i(2 beta + t)/2}`` out of numerator and denominator,

    (x + z)/(x - z) = cos(t/2) / (-i sin(t/2)) = i cot(t/2),

so the equation becomes ``exp(i cot(t/2)) = e^{i(beta + t)}``, i.e. the real
phase equation

    cot(t/2) - t - beta = 2 pi k,   k in Z.

``cot(t/2) - t`` decreases strictly on ``(0, pi]`` and on ``(-pi, 0)``, so
each branch ``k`` has at most one root per half; the roots accumulate at
``t = 0`` (the point ``x``) from both sides as ``|k|`` grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT_ORDER, TWO_PI, canonical_angle
from .convolution import convolve
from .errors import ParameterOutOfRange, RootBracketingFailure, VerificationFailure
from .measure import (AtomicMeasure, CircleMeasure, FiniteCircleMeasure, MomentMeasure,
                      StructuredMeasure, atomic, moments_close, moments_of)
from .transform import (BlaschkeF, ConstantF, ExpHerglotzF, SeriesF, ZeroF, moments_from_F)


def dirac(b: float = 0.0) -> AtomicMeasure:
    return atomic([b], [1.0])


def two_point(p: float, b1: float, b2: float) -> AtomicMeasure:
    """``p delta_{e^{i b1}} + (1-p) delta_{e^{i b2}}``."""
    if not 0 < p < 1:
        raise ParameterOutOfRange(f"p must lie in (0, 1), got {p}")
    if math.isclose(canonical_angle(b1), canonical_angle(b2), abs_tol=1e-12):
        raise ParameterOutOfRange("the two atoms must be distinct")
    return atomic([b1, b2], [p, 1 - p])


def haar() -> StructuredMeasure:
    return StructuredMeasure(ZeroF())


def cyclic_haar(n: int) -> AtomicMeasure:
    """Uniform measure on the n-th roots of unity; ``F = z^{n-1}``."""
    if n < 1:
        raise ParameterOutOfRange(f"n must be positive, got {n}")
    return atomic(TWO_PI * np.arange(n) / n, np.full(n, 1.0 / n))


def poisson(r: float, b: float = 0.0) -> StructuredMeasure:
    """Poisson-kernel measure with constant ``F = r e^{i b}``."""
    if not 0 <= r < 1:
        raise ParameterOutOfRange(f"r must lie in [0, 1), got {r}")
    return StructuredMeasure(ConstantF(r * np.exp(1j * b)))


def singular_measure(beta: float, mass: float = 1.0) -> StructuredMeasure:
    """The measure with characteristic pair ``(0, mass * delta_{e^{i beta}})``."""
    return StructuredMeasure(ExpHerglotzF(0.0, FiniteCircleMeasure.from_atoms([beta], [mass])))


# -- singular example --------------------------------------------------------

@dataclass(frozen=True)
class SingularExampleResult:
    beta: float
    zeros: np.ndarray  # angles beta_n of z_n, farthest from beta first
    atom_angles: np.ndarray  # -beta_n mod 2 pi
    atom_masses: np.ndarray
    branches: np.ndarray  # k of each zero
    offsets: np.ndarray  # beta_n - beta in (-pi, pi], kept unreduced for accuracy near x

    def phase_residuals(self) -> np.ndarray:
        t = self.offsets
        return np.abs(1.0 / np.tan(t / 2) - t - self.beta - TWO_PI * self.branches)

    def defining_residuals(self) -> np.ndarray:
        """``|exp((x+z)/(x-z)) - z|`` at each zero."""
        x = np.exp(1j * self.beta)
        t = self.offsets
        z = x * np.exp(1j * t)
        # x - z = -x (e^{it} - 1), computed without cancellation
        return np.abs(np.exp((x + z) / (-x * np.expm1(1j * t))) - z)


def _phase(t: float, beta: float, k: int) -> float:
    return 1.0 / math.tan(t / 2) - t - beta - TWO_PI * k


def _branch_root(beta: float, k: int, side: int) -> float | None:
    """Root of the phase equation on branch ``k`` with ``sign(t) == side``.

    The antipode ``t = pi`` belongs to the positive side; a root there is
    accepted when the phase vanishes to 1e-12.
    """
    if side > 0:
        lo, hi = 1e-300, math.pi
        fhi = _phase(hi, beta, k)
        if abs(fhi) <= 1e-12:
            return math.pi
        if fhi > 0:
            return None
        while lo < 1e-3 and _phase(lo * 10, beta, k) > 0:
            lo *= 10
    else:
        lo, hi = -math.pi, -1e-300
        flo = _phase(lo, beta, k)
        if flo <= 1e-12:
            return None
        while hi > -1e-3 and _phase(hi * 10, beta, k) < 0:
            hi *= 10
    try:
        return brentq(_phase, lo, hi, args=(beta, k), xtol=1e-300,
                      rtol=4 * np.finfo(float).eps, maxiter=500)
    except (ValueError, RuntimeError) as exc:
        raise RootBracketingFailure(f"branch {k}: {exc}") from exc


def singular_example(beta: float, count: int) -> SingularExampleResult:
    """Circle zeros of ``exp((x+z)/(x-z)) - z``, ``x = e^{i beta}``, and the atom masses.

    Returns the ``count`` outermost zeros on each side of ``x`` (the first
    ``count`` branches met when moving from the antipode of ``x`` toward it),
    ordered by decreasing distance from ``x``.
    """
    if not 1 <= count <= 200:
        raise ParameterOutOfRange(f"count must lie in [1, 200], got {count}")
    beta = canonical_angle(beta)
    found: list[tuple[float, int]] = []
    for side in (1, -1):
        # on t > 0 the phase runs from +inf down to -pi - beta; on t < 0 from
        # pi - beta down to -inf. Branches are scanned outward from the antipode.
        if side > 0:
            k0 = math.ceil((-math.pi - beta) / TWO_PI - 1e-12)
            ks = range(k0, k0 + count + 2)
        else:
            k0 = math.ceil((math.pi - beta) / TWO_PI - 1e-12) - 1
            ks = range(k0, k0 - count - 2, -1)
        roots = []
        for k in ks:
            t = _branch_root(beta, k, side)
            if t is not None:
                roots.append((t, k))
            if len(roots) == count:
                break
        if len(roots) < count:
            raise RootBracketingFailure(f"only {len(roots)} zeros found on side {side}")
        found.extend(roots)
    found.sort(key=lambda tk: -abs(tk[0]))
    t = np.array([tk[0] for tk in found])
    ks = np.array([tk[1] for tk in found])
    zeros = np.mod(beta + t, TWO_PI)
    masses = (1 - np.cos(t)) / (2 - np.cos(t))
    return SingularExampleResult(beta, zeros, np.mod(-zeros, TWO_PI), masses, ks, t)


# -- B * S * O ---------------------------------------------------------------

@dataclass(frozen=True)
class BSOResult:
    mu: CircleMeasure
    mu_B: StructuredMeasure
    mu_S: StructuredMeasure
    mu_O: StructuredMeasure
    deviation: float

    def __iter__(self):
        return iter((self.mu, self.mu_B, self.mu_S, self.mu_O))


MIN_OUTER_GRID = 256


def outer_rho(q_grid, order: int = DEFAULT_ORDER) -> FiniteCircleMeasure:
    """``q d lambda`` as a finite measure, by trapezoid on the uniform grid.

    ``q_grid[j]`` samples the outer density at ``2 pi j / len(q_grid)``.
    """
    q = np.asarray(q_grid, dtype=float)
    if q.size < MIN_OUTER_GRID:
        raise ParameterOutOfRange(f"outer density grid needs >= {MIN_OUTER_GRID} samples, got {q.size}")
    if np.any(q < 0):
        raise ParameterOutOfRange("outer density must be non-negative")
    theta = TWO_PI * np.arange(q.size) / q.size
    k = np.arange(1, order + 1)[:, None]
    r = (np.exp(-1j * k * theta[None, :]) @ q) / q.size
    return FiniteCircleMeasure(float(q.mean()), r)


def bso_compose(blaschke: BlaschkeF | None, tau: FiniteCircleMeasure | None, q_grid,
                c: complex = 1.0, order: int = DEFAULT_ORDER, tol: float = 1e-8) -> BSOResult:
    """Build ``mu`` with ``F = B S O`` together with ``mu_B``, ``mu_S``, ``mu_O``.

    ``S = exp(-int (w+z)/(w-z) d tau)`` and
    ``O = c exp(-int (w+z)/(w-z) q d lambda)``. The composite is checked
    against ``mu_B |x| mu_S |x| mu_O`` moment-wise.
    """
    if abs(abs(c) - 1) > 1e-12:
        raise ParameterOutOfRange(f"outer constant c must be unimodular, got |c| = {abs(c)}")
    B = blaschke if blaschke is not None else BlaschkeF()
    S = ExpHerglotzF(0.0, tau if tau is not None else FiniteCircleMeasure.zero())
    q = np.zeros(MIN_OUTER_GRID) if q_grid is None else q_grid
    O = ExpHerglotzF(float(np.angle(c)), outer_rho(q, order))
    mu_B, mu_S, mu_O = (StructuredMeasure(f) for f in (B, S, O))

    fs = B.to_series(order - 1) * S.to_series(order - 1) * O.to_series(order - 1)
    mu = MomentMeasure(moments_from_F(SeriesF(fs), order))
    chained = convolve(convolve(mu_B, mu_S, order), mu_O, order)
    dev = moments_close(moments_of(chained, order), mu.m)
    if dev > tol:
        raise VerificationFailure(f"mu_B * mu_S * mu_O deviates from mu by {dev}")
    return BSOResult(mu, mu_B, mu_S, mu_O, dev)
