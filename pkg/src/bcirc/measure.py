"""Probability and finite measures on the unit circle.

Three representations of a probability measure are supported:

* :class:`AtomicMeasure`  finitely many atoms ``w_j`` at ``exp(i theta_j)``;
* :class:`MomentMeasure`  the moments ``m_1 .. m_K`` only;
* :class:`StructuredMeasure`  a closed-form disk function ``F`` (see
  :mod:`bcirc.transform`), which determines the measure uniquely.

Two measures are treated as equal when their moments agree to 1e-9 up to the
working order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_ORDER, TOL, TWO_PI, canonical_angle
from .errors import InvalidInput, RadiusOutOfRange


class CircleMeasure:
    """Common base of the three probability-measure representations."""

    def moments(self, K: int = DEFAULT_ORDER) -> np.ndarray:
        return moments_of(self, K)


@dataclass(frozen=True, eq=False)
class AtomicMeasure(CircleMeasure):
    angles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.mod(np.asarray(self.angles, dtype=float).ravel(), TWO_PI)
        a[a >= TWO_PI] = 0.0
        w = np.asarray(self.weights, dtype=float).ravel()
        if a.shape != w.shape:
            raise InvalidInput(f"{a.size} angles but {w.size} weights")
        if a.size == 0:
            raise InvalidInput("an atomic measure needs at least one atom")
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "weights", w)

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def __len__(self):
        return self.angles.size


@dataclass(frozen=True, eq=False)
class MomentMeasure(CircleMeasure):
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex).ravel()
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def order(self) -> int:
        return self.m.size


@dataclass(frozen=True, eq=False)
class StructuredMeasure(CircleMeasure):
    f: object  # a bcirc.transform.StructuredF


@dataclass(frozen=True, eq=False)
class FiniteCircleMeasure:
    """Finite positive measure ``rho`` stored as total mass plus the
    conjugate moments ``r_k = int x^{-k} d rho``.

    Moments past the stored length are taken to be zero, unless atoms are
    present, in which case they are recomputed from the atoms.
    """

    mass: float
    r: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    atoms: tuple[np.ndarray, np.ndarray] | None = None

    def __post_init__(self):
        object.__setattr__(self, "mass", float(self.mass))
        r = np.array(self.r, dtype=complex).ravel()
        r.setflags(write=False)
        object.__setattr__(self, "r", r)
        if self.atoms is not None:
            ang = np.mod(np.asarray(self.atoms[0], dtype=float).ravel(), TWO_PI)
            wt = np.asarray(self.atoms[1], dtype=float).ravel()
            if ang.shape != wt.shape:
                raise InvalidInput("rho atoms: angles and weights differ in length")
            object.__setattr__(self, "atoms", (ang, wt))
        if not np.isfinite(self.mass) or self.mass < -TOL.moment_bound:
            raise InvalidInput(f"rho mass must be finite and non-negative, got {self.mass}")

    @classmethod
    def zero(cls) -> FiniteCircleMeasure:
        return cls(0.0)

    @classmethod
    def uniform(cls, mass: float, K: int = DEFAULT_ORDER) -> FiniteCircleMeasure:
        """``mass`` times the Haar measure."""
        return cls(mass, np.zeros(K, dtype=complex))

    @classmethod
    def from_atoms(cls, angles, weights, K: int = DEFAULT_ORDER) -> FiniteCircleMeasure:
        angles = np.asarray(angles, dtype=float).ravel()
        weights = np.asarray(weights, dtype=float).ravel()
        r = _atomic_moments(angles, weights, K, sign=-1)
        return cls(float(weights.sum()), r, (angles, weights))

    def conj_moments(self, K: int) -> np.ndarray:
        """``r_1 .. r_K``."""
        if self.atoms is not None:
            return _atomic_moments(self.atoms[0], self.atoms[1], K, sign=-1)
        out = np.zeros(K, dtype=complex)
        n = min(K, self.r.size)
        out[:n] = self.r[:n]
        return out

    def scaled(self, t: float) -> FiniteCircleMeasure:
        atoms = None if self.atoms is None else (self.atoms[0], t * self.atoms[1])
        return FiniteCircleMeasure(t * self.mass, t * self.r, atoms)

    def __add__(self, other: FiniteCircleMeasure) -> FiniteCircleMeasure:
        K = max(self.r.size, other.r.size)
        atoms = None
        if self.atoms is not None and other.atoms is not None:
            atoms = (np.concatenate([self.atoms[0], other.atoms[0]]),
                     np.concatenate([self.atoms[1], other.atoms[1]]))
        return FiniteCircleMeasure(self.mass + other.mass,
                                   self.conj_moments(K) + other.conj_moments(K), atoms)

    def herglotz_eval(self, z):
        """``int (x+z)/(x-z) d rho(x)`` for ``|z| < 1``; exact when atoms are known."""
        z = np.asarray(z, dtype=complex)
        if self.atoms is not None:
            x = np.exp(1j * self.atoms[0])
            out = np.zeros_like(z)
            for xj, wj in zip(x, self.atoms[1]):
                out = out + wj * (xj + z) / (xj - z)
            return out
        # mass + 2 sum_k r_k z^k
        out = np.zeros_like(z)
        for rk in self.r[::-1]:
            out = (out + 2 * rk) * z
        return out + self.mass

    def violations(self) -> list[str]:
        out = []
        if self.mass < -TOL.moment_bound:
            out.append(f"negative mass {self.mass}")
        if self.r.size and np.max(np.abs(self.r)) > self.mass + 1e-12:
            out.append(f"|r_k| exceeds mass: max {np.max(np.abs(self.r))} > {self.mass}")
        if self.atoms is not None:
            ang, wt = self.atoms
            if np.any(wt < 0):
                out.append("negative atom weight")
            if abs(wt.sum() - self.mass) > 1e-10:
                out.append(f"atom weights sum to {wt.sum()}, mass is {self.mass}")
            rr = _atomic_moments(ang, wt, self.r.size, sign=-1)
            if self.r.size and np.max(np.abs(rr - self.r)) > 1e-10:
                out.append("stored r_k disagree with the atoms")
        return out


def _atomic_moments(angles, weights, K: int, sign: int = 1) -> np.ndarray:
    k = np.arange(1, K + 1)[:, None]
    return np.exp(sign * 1j * k * np.asarray(angles)[None, :]) @ np.asarray(weights, dtype=complex)


def moments_of(mu: CircleMeasure, K: int = DEFAULT_ORDER) -> np.ndarray:
    """Moments ``m_1 .. m_K`` with ``m_k = int x^k d mu``.

    A :class:`MomentMeasure` holding fewer than ``K`` moments returns what it
    has; moments beyond the stored order are unknown.
    """
    if isinstance(mu, AtomicMeasure):
        return _atomic_moments(mu.angles, mu.weights, K)
    if isinstance(mu, MomentMeasure):
        return np.array(mu.m[:K])
    if isinstance(mu, StructuredMeasure):
        from .transform import moments_from_F

        return moments_from_F(mu.f, K)
    raise TypeError(f"not a circle measure: {type(mu).__name__}")


def toeplitz_matrix(m: np.ndarray) -> np.ndarray:
    """``T[j, l] = m_{j-l}`` with ``m_0 = 1`` and ``m_{-k} = conj(m_k)``."""
    m = np.asarray(m, dtype=complex)
    full = np.concatenate([np.conj(m[::-1]), [1.0], m])
    K = m.size
    j = np.arange(K + 1)
    return full[K + (j[:, None] - j[None, :])]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()
    min_eigenvalue: float | None = None

    def __bool__(self):
        return self.ok


def validate(mu: CircleMeasure) -> ValidationReport:
    """Check the representation invariants; never raises on an invalid measure."""
    problems: list[str] = []
    min_eig = None
    if isinstance(mu, AtomicMeasure):
        w, a = mu.weights, mu.angles
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(a))):
            problems.append("non-finite angle or weight")
        if np.any(w < 0):
            problems.append(f"negative weight {w.min()}")
        if abs(w.sum() - 1.0) > TOL.weight_sum:
            problems.append(f"weights sum to {w.sum()!r}, not 1")
        if a.size > 1:
            s = np.sort(a)
            gaps = np.diff(np.concatenate([s, [s[0] + TWO_PI]]))
            if gaps.min() <= 1e-12:
                problems.append("atoms are not pairwise distinct")
    elif isinstance(mu, MomentMeasure):
        m = mu.m
        if not np.all(np.isfinite(m)):
            problems.append("non-finite moment")
        else:
            if m.size and np.max(np.abs(m)) > 1 + TOL.moment_bound:
                k = int(np.argmax(np.abs(m))) + 1
                problems.append(f"|m_{k}| = {abs(m[k - 1])} > 1")
            min_eig = float(np.linalg.eigvalsh(toeplitz_matrix(m)).min())
            if min_eig < TOL.toeplitz_eig:
                problems.append(f"Toeplitz matrix not PSD: min eigenvalue {min_eig}")
    elif isinstance(mu, StructuredMeasure):
        from .transform import structured_violations

        problems.extend(structured_violations(mu.f))
    else:
        problems.append(f"unknown measure type {type(mu).__name__}")
    return ValidationReport(not problems, tuple(problems), min_eig)


def psi_eval(mu: CircleMeasure, z, order: int = DEFAULT_ORDER):
    """``psi_mu(z) = int xz/(1-xz) d mu(x)``, exact except for moment-only input."""
    z = np.asarray(z, dtype=complex)
    if isinstance(mu, AtomicMeasure):
        out = np.zeros_like(z)
        for x, w in zip(mu.points, mu.weights):
            out = out + w * x * z / (1 - x * z)
        return out
    if isinstance(mu, StructuredMeasure):
        fz = mu.f(z)
        return z * fz / (1 - z * fz)
    from .series import evaluate
    from .transform import psi_from_moments

    return evaluate(psi_from_moments(moments_of(mu, order)), z)


def density_approx(mu: CircleMeasure, radius: float, grid: int, order: int = DEFAULT_ORDER):
    """Poisson-smoothed density of ``mu`` at level ``radius``.

    Returns ``(theta, density)`` with ``theta_j = 2 pi j / grid`` and
    ``density_j = Re[1 + 2 psi(radius e^{-i theta_j})] / (2 pi)``.
    """
    if not 0.0 < radius < 1.0:
        raise RadiusOutOfRange(f"radius must lie in (0, 1), got {radius}")
    if grid < 1:
        raise InvalidInput("grid must be positive")
    theta = TWO_PI * np.arange(grid) / grid
    psi = psi_eval(mu, radius * np.exp(-1j * theta), order)
    return theta, np.real(1 + 2 * psi) / TWO_PI


def atom_mass_estimate(mu: CircleMeasure, angle: float,
                       radii: Sequence[float] = (0.9, 0.99, 0.999),
                       order: int = DEFAULT_ORDER) -> float:
    """Mass of the atom at ``exp(i angle)`` from the radial Poisson limit.

    ``(1-r)/2 Re[1 + 2 psi(r e^{-i angle})]`` tends to the atom mass as
    ``r -> 1``. The normalisation ``(1-r)/(1+r)`` has the same limit and makes
    the atom's own contribution exact at every ``r``. With ``h = 1 - r`` the
    rest of the measure contributes ``c_1 h + c_2 h^2 + ...``, where ``c_1`` is
    proportional to the continuous density at the angle. The values at
    ``radii`` are fitted in the basis ``1, h, h^2, ...`` and the constant term
    is returned (Richardson extrapolation to ``r = 1``). For purely atomic
    input ``c_1`` vanishes identically and the basis ``1, h^2, h^3, ...`` is
    used instead, which is markedly more accurate at the same radii.
    """
    r = np.asarray(radii, dtype=float)
    if r.size < 1 or np.any((r <= 0) | (r >= 1)) or np.any(np.diff(r) <= 0):
        raise RadiusOutOfRange("radii must increase strictly inside (0, 1)")
    h = 1.0 - r
    v = h / (1 + r) * np.real(1 + 2 * psi_eval(mu, r * np.exp(-1j * angle), order))
    powers = np.arange(r.size)
    if isinstance(mu, AtomicMeasure):
        powers = np.r_[0, powers[1:] + 1]
    return float(np.linalg.solve(h[:, None] ** powers[None, :], v)[0])


def atomic(angles, weights) -> AtomicMeasure:
    return AtomicMeasure(np.asarray(angles, dtype=float), np.asarray(weights, dtype=float))


def moments_close(a: np.ndarray, b: np.ndarray) -> float:
    """Max moment-wise deviation over the common order."""
    n = min(len(a), len(b))
    if n == 0:
        return 0.0
    return float(np.max(np.abs(np.asarray(a[:n]) - np.asarray(b[:n]))))
