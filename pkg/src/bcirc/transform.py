"""The psi and F transforms, their inverses, and Herglotz analysis/synthesis.

For a probability measure ``mu`` on the circle,

    psi(z) = int xz/(1-xz) d mu(x) = sum_{k>=1} m_k z^k,
    F(z)   = psi(z) / (z (1 + psi(z))),

and ``mu -> F`` is a bijection onto holomorphic self-maps of the closed disk.
Closed-form ``F`` are carried by the :class:`StructuredF` variants so that no
information is lost to truncation; :class:`SeriesF` is the fallback.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_ORDER, TOL, canonical_angle, sample_grid
from .errors import EvaluationOutsideDomain, InvalidInput, NotAHerglotzLogarithm, ConditioningWarning
from .measure import (AtomicMeasure, CircleMeasure, FiniteCircleMeasure, MomentMeasure,
                      StructuredMeasure, moments_of)
from .series import TruncatedSeries, div, evaluate, exp_series, shift_down, shift_up

BLASCHKE_CONDITIONING = 0.95


class StructuredF:
    """A holomorphic map of the disk into its closure, in closed form."""

    kind = "abstract"

    def __call__(self, z):
        raise NotImplementedError

    def to_series(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroF(StructuredF):
    kind = "zero"

    def __call__(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex))[()]

    def to_series(self, order=DEFAULT_ORDER):
        return TruncatedSeries.zero(order)


@dataclass(frozen=True)
class ConstantF(StructuredF):
    c: complex
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    def __call__(self, z):
        return np.full_like(np.asarray(z, dtype=complex), self.c)[()]

    def to_series(self, order=DEFAULT_ORDER):
        return TruncatedSeries.constant(self.c, order)


@dataclass(frozen=True)
class BlaschkeF(StructuredF):
    """``phase * z^p * prod ((alpha - z)/(1 - conj(alpha) z))^mult``.

    The unimodular normalisation of each factor is folded into ``phase``.
    """

    p: int = 0
    factors: tuple[tuple[complex, int], ...] = ()
    phase: complex = 1.0
    kind = "blaschke"

    def __post_init__(self):
        facs = tuple((complex(a), int(m)) for a, m in self.factors)
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "phase", complex(self.phase))
        object.__setattr__(self, "p", int(self.p))
        if self.p < 0:
            raise InvalidInput("Blaschke order p must be non-negative")
        for a, m in facs:
            if not 0 < abs(a) < 1:
                raise InvalidInput(f"Blaschke zero {a} must satisfy 0 < |alpha| < 1")
            if m < 1:
                raise InvalidInput("Blaschke multiplicities must be positive")
        if abs(abs(self.phase) - 1) > 1e-12:
            raise InvalidInput(f"Blaschke phase {self.phase} is not unimodular")

    @property
    def zeros(self) -> list[complex]:
        out = [0j] * self.p
        for a, m in self.factors:
            out.extend([a] * m)
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.phase * z ** self.p
        for a, m in self.factors:
            out = out * ((a - z) / (1 - np.conj(a) * z)) ** m
        return out[()] if np.ndim(out) == 0 else out

    def to_series(self, order=DEFAULT_ORDER):
        s = TruncatedSeries.monomial(self.p, order, self.phase)
        for a, m in self.factors:
            if abs(a) > BLASCHKE_CONDITIONING:
                warnings.warn(f"Blaschke zero {a} has |alpha| > {BLASCHKE_CONDITIONING}; "
                              "series expansion converges slowly", ConditioningWarning, stacklevel=2)
            numer = TruncatedSeries(np.r_[a, -1.0, np.zeros(max(order - 1, 0))][: order + 1])
            factor = numer * TruncatedSeries.geometric(np.conj(a), order)
            for _ in range(m):
                s = s * factor
        return s


@dataclass(frozen=True)
class ExpHerglotzF(StructuredF):
    """``exp(i b - int (x+z)/(x-z) d rho(x))``."""

    b: float
    rho: FiniteCircleMeasure
    kind = "expherglotz"

    def __post_init__(self):
        object.__setattr__(self, "b", canonical_angle(self.b))

    def __call__(self, z):
        return np.exp(1j * self.b - self.rho.herglotz_eval(z))

    def to_series(self, order=DEFAULT_ORDER):
        return exp_series(herglotz_synthesize(HerglotzData(self.b, self.rho), order))


@dataclass(frozen=True, eq=False)
class SeriesF(StructuredF):
    s: TruncatedSeries
    kind = "series"

    def __call__(self, z):
        return evaluate(self.s, z)

    def to_series(self, order=DEFAULT_ORDER):
        return self.s.truncate(min(order, self.s.order))


def structured_violations(f: StructuredF) -> list[str]:
    out = []
    if isinstance(f, ConstantF) and abs(f.c) > 1 + 1e-12:
        out.append(f"constant F = {f.c} lies outside the closed disk")
    if isinstance(f, ExpHerglotzF):
        out.extend(f"rho: {v}" for v in f.rho.violations())
    vals = np.abs(f(sample_grid()))
    if vals.max() > 1 + 1e-10:
        out.append(f"|F| reaches {vals.max()} on the sampling grid")
    return out


# -- psi / F conversions -----------------------------------------------------

def psi_from_moments(m) -> TruncatedSeries:
    """The k-th Taylor coefficient of psi is the k-th moment."""
    return TruncatedSeries(np.concatenate([[0.0], np.asarray(m, dtype=complex)]))


def F_from_psi(psi: TruncatedSeries) -> TruncatedSeries:
    """``F = psi / (z (1 + psi))``; the result has order one less than ``psi``."""
    return shift_down(div(psi, 1 + psi))


def psi_from_F(f: TruncatedSeries) -> TruncatedSeries:
    """``psi = zF / (1 - zF)``; the result has order one more than ``F``."""
    zf = shift_up(f)
    return div(zf, 1 - zf)


def F_from_measure(mu: CircleMeasure, order: int = DEFAULT_ORDER) -> StructuredF:
    """``F_mu`` as a structured function.

    Atomic and moment input yields a :class:`SeriesF` of the given order
    (computed from ``order + 1`` moments), except that a single atom gives the
    exact constant and vanishing moments give :class:`ZeroF`.
    """
    if isinstance(mu, StructuredMeasure):
        return mu.f
    if isinstance(mu, AtomicMeasure):
        nonzero = mu.weights > 0
        if np.count_nonzero(nonzero) == 1:
            return ConstantF(np.exp(1j * mu.angles[nonzero][0]))
    m = moments_of(mu, order + 1)
    if isinstance(mu, MomentMeasure) and (m.size == 0 or np.max(np.abs(m)) == 0.0):
        return ZeroF()
    return SeriesF(F_from_psi(psi_from_moments(m)))


def moments_from_F(f: StructuredF, K: int = DEFAULT_ORDER) -> np.ndarray:
    """``m_1 .. m_K`` of the unique measure with transform ``f``."""
    if isinstance(f, ZeroF):
        return np.zeros(K, dtype=complex)
    if isinstance(f, ConstantF):
        return f.c ** np.arange(1, K + 1)
    s = f.to_series(K - 1)
    return np.array(psi_from_F(s).coeffs[1:])


def cauchy_eval(f: StructuredF, w: complex) -> complex:
    """``G(w) = int 1/(w - x) d mu(x) = 1 / (w - F(1/w))`` for ``|w| > 1``."""
    w = complex(w)
    if abs(w) <= 1:
        raise EvaluationOutsideDomain(f"Cauchy transform needs |w| > 1, got |w| = {abs(w)}")
    return complex(1.0 / (w - f(1.0 / w)))


def cauchy_direct(mu: AtomicMeasure, w: complex) -> complex:
    return complex(np.sum(mu.weights / (w - mu.points)))


# -- Herglotz ---------------------------------------------------------------

@dataclass(frozen=True)
class HerglotzData:
    """``u(z) = i b - int (x+z)/(x-z) d rho(x)``."""

    b: float
    rho: FiniteCircleMeasure

    def __post_init__(self):
        object.__setattr__(self, "b", canonical_angle(self.b))


def herglotz_sample_max(u: TruncatedSeries) -> float:
    """Largest ``Re u`` over the sampling grid, using the Fejer mean of ``u``.

    A truncated Herglotz series ``-mass - 2 sum_{k<=K} r_k z^k`` is a
    truncated Poisson integral and can have positive real part near the
    circle even when ``rho`` is positive. Its Fejer (Cesaro) mean, with
    weights ``1 - k/(K+1)``, is the Poisson integral of ``rho`` smoothed by
    the non-negative Fejer kernel, so its real part is non-positive for every
    positive ``rho``; a positive sample is a genuine obstruction.
    """
    K = u.order
    fejer = TruncatedSeries(u.coeffs * (1 - np.arange(K + 1) / (K + 1)))
    return float(np.max(np.real(evaluate(fejer, sample_grid()))))


def herglotz_analyze(u: TruncatedSeries, check: bool = True) -> HerglotzData:
    """Invert :func:`herglotz_synthesize`.

    Expanding ``(x+z)/(x-z) = 1 + 2 sum (z/x)^k`` gives ``u_0 = i b - mass``
    and ``u_k = -2 r_k``. With ``check`` the sampled real part of the Fejer
    mean of ``u`` must be non-positive (tolerance 1e-9), and the moments of
    a positive ``rho`` must satisfy ``|r_k| <= mass`` (tolerance 1e-6, which
    absorbs the round-off of a series logarithm).
    """
    if check:
        worst = herglotz_sample_max(u)
        if worst > TOL.herglotz_sampling:
            raise NotAHerglotzLogarithm(f"Re u reaches {worst} > 0 on the sampling grid")
        excess = np.max(np.abs(u.coeffs[1:]) / 2, initial=0.0) + u.coeffs[0].real
        if excess > TOL.herglotz_moment:
            raise NotAHerglotzLogarithm(f"|r_k| exceeds the mass of rho by {excess}")
    u0 = u.coeffs[0]
    rho = FiniteCircleMeasure(-u0.real, -u.coeffs[1:] / 2)
    return HerglotzData(u0.imag, rho)


def herglotz_synthesize(h: HerglotzData, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    c = np.empty(order + 1, dtype=complex)
    c[0] = complex(-h.rho.mass, h.b)
    c[1:] = -2 * h.rho.conj_moments(order)
    return TruncatedSeries(c)


UNIMODULAR_SCHUR = 1e-8


def schur_parameters(c) -> np.ndarray:
    """Schur parameters ``gamma_0, gamma_1, ...`` from Taylor coefficients of F.

    ``f_0 = F``, ``gamma_j = f_j(0)``, ``f_{j+1} = (f_j - gamma_j) / (z (1 - conj(gamma_j) f_j))``;
    each step consumes one coefficient. For a measure, F is its Schur
    function and the gamma_j lie in the closed disk. A parameter within 1e-8
    of the circle ends the sequence (F is then a finite Blaschke product);
    parameters are clipped into the closed disk.
    """
    f = TruncatedSeries(np.asarray(c, dtype=complex))
    out = []
    while True:
        g = complex(f.coeffs[0])
        if abs(g) >= 1 - UNIMODULAR_SCHUR:
            out.append(g / abs(g))
            break
        out.append(g)
        if f.order == 0:
            break
        f = shift_down(div(f - g, 1 - np.conj(g) * f), tol=np.inf)
    return np.array(out)


def schur_evaluate(gammas, z):
    """The Schur function with parameters ``gammas`` and zero remainder.

    Evaluated backwards, ``f_j = (gamma_j + z f_{j+1}) / (1 + conj(gamma_j) z f_{j+1})``;
    each step maps the closed disk into itself, so ``|F| <= 1`` up to round-off.
    Its first ``len(gammas)`` Taylor coefficients are those the parameters
    came from.
    """
    z = np.asarray(z, dtype=complex)
    f = np.zeros_like(z)
    for g in np.asarray(gammas)[::-1]:
        zf = z * f
        f = (g + zf) / (1 + np.conj(g) * zf)
    return f[()] if f.ndim == 0 else f


def F_callable(mu: CircleMeasure, order: int = DEFAULT_ORDER):
    """A vectorised evaluator of ``F_mu`` on the disk.

    Atomic measures use the closed form
    ``F(z) = sum w x/(1-xz) / (1 + sum w xz/(1-xz))``, which stays exact near
    the circle where a truncated series does not. A moment sequence
    ``m_1..m_K`` is evaluated through its Schur parameters with zero
    remainder: the F of the Bernstein-Szego extension of the data, which has
    the given moments and, unlike the truncated Taylor polynomial, never
    leaves the closed disk.
    """
    if isinstance(mu, MomentMeasure) and mu.order > 0 and np.any(mu.m != 0):
        gammas = schur_parameters(F_from_psi(psi_from_moments(mu.m)).coeffs)
        return lambda z: schur_evaluate(gammas, z)
    if isinstance(mu, AtomicMeasure):
        x, w = mu.points, mu.weights

        def f(z):
            z = np.asarray(z, dtype=complex)
            num = np.zeros_like(z)
            psi = np.zeros_like(z)
            for xj, wj in zip(x, w):
                t = wj * xj / (1 - xj * z)
                num = num + t
                psi = psi + t * z
            out = num / (1 + psi)
            return out[()] if out.ndim == 0 else out

        return f
    return F_from_measure(mu, order)
