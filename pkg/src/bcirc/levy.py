"""Infinite divisibility for the multiplicative boolean convolution.

A measure other than Haar is infinitely divisible exactly when
``F = exp(u)`` with ``u(z) = i b - int (x+z)/(x-z) d rho(x)``; ``(b, rho)`` is
its characteristic pair. Divisibility fails as soon as ``F`` has a zero in the
open disk, and in particular whenever the first moment vanishes.

From truncated moment data zero-freeness can only be certified up to a radius
below one; :class:`DivisibleUpToRadius` records that limit.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_ORDER, TOL, TWO_PI, canonical_angle
from .errors import (NotDivisibleError, NumericalError, ZeroAtOrigin as ZeroAtOriginError,
                     ZeroFunction, ZeroOnContour, InvalidInput)
from .measure import AtomicMeasure, CircleMeasure, FiniteCircleMeasure, StructuredMeasure
from .series import TruncatedSeries, derivative, evaluate, log_series
from .transform import (BlaschkeF, ConstantF, ExpHerglotzF, HerglotzData, SeriesF, StructuredF,
                        ZeroF, F_callable, F_from_measure, herglotz_analyze, herglotz_synthesize)

WINDING_RADII = (0.5, 0.9, 0.99)
MAX_WINDING_GRID = 1 << 18


class CharacteristicPair(HerglotzData):
    """``(b, rho)`` with ``b`` in ``[0, 2 pi)``; same content as HerglotzData."""

    @classmethod
    def from_herglotz(cls, h: HerglotzData) -> CharacteristicPair:
        return cls(h.b, h.rho)


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class ZeroAtOrigin:
    pass


@dataclass(frozen=True)
class InteriorZero:
    location: complex
    radius: float


@dataclass(frozen=True)
class Divisible:
    pair: CharacteristicPair


@dataclass(frozen=True)
class HaarDivisible:
    pass


@dataclass(frozen=True)
class NotDivisible:
    witness: ZeroAtOrigin | InteriorZero


@dataclass(frozen=True)
class DivisibleUpToRadius:
    r: float
    pair: CharacteristicPair


DivisibilityVerdict = Divisible | HaarDivisible | NotDivisible | DivisibleUpToRadius


# -- logarithm and zero counting --------------------------------------------

def _is_zero_function(f: StructuredF) -> bool:
    return isinstance(f, ZeroF) or (isinstance(f, ConstantF) and f.c == 0)


def log_F(f: StructuredF, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``u`` with ``exp(u) = F`` and ``Im u(0)`` in ``[0, 2 pi)``."""
    if _is_zero_function(f) or (isinstance(f, SeriesF) and not np.any(f.s.coeffs)):
        raise ZeroFunction("F vanishes identically")
    if isinstance(f, ExpHerglotzF):
        return herglotz_synthesize(HerglotzData(f.b, f.rho), order)
    if isinstance(f, ConstantF):
        c = f.c
        return TruncatedSeries.constant(complex(np.log(abs(c)), canonical_angle(cmath.phase(c))), order)
    s = f.to_series(order)
    if abs(s.coeffs[0]) <= 1e-12:
        raise ZeroAtOriginError(f"F(0) = {s.coeffs[0]!r}")
    u = log_series(s)
    c = u.coeffs.copy()
    c[0] = complex(c[0].real, canonical_angle(c[0].imag))
    return TruncatedSeries(c)


def winding_number(f, r: float, start: int = 256) -> int:
    """Winding of ``theta -> f(r e^{i theta})`` about 0.

    The grid is doubled until every phase step is below ``pi/2``. By the
    argument principle this counts the zeros in ``|z| < r``.
    """
    if not 0 < r < 1:
        raise InvalidInput(f"winding radius must lie in (0, 1), got {r}")
    n = start
    while True:
        theta = TWO_PI * np.arange(n + 1) / n
        vals = np.asarray(f(r * np.exp(1j * theta)))
        if np.min(np.abs(vals)) < TOL.contour_zero:
            raise ZeroOnContour(f"|F| < {TOL.contour_zero} on |z| = {r}")
        steps = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(steps)) < np.pi / 2:
            return int(round(np.sum(steps) / TWO_PI))
        n *= 2
        if n > MAX_WINDING_GRID:
            raise NumericalError(f"phase of F on |z| = {r} not resolved with {MAX_WINDING_GRID} points")


def _newton(f, df, z0: complex, iters: int = 60) -> complex:
    z = z0
    for _ in range(iters):
        fz = complex(f(z))
        if abs(fz) < 1e-15:
            break
        d = complex(df(z))
        if d == 0:
            break
        z = z - fz / d
        if abs(z) >= 1:
            z = z / abs(z) * 0.999999
    return z


def locate_zero(f: StructuredF, r_in: float, r_out: float, df=None) -> complex:
    """A zero of ``f`` in ``r_in <= |z| < r_out``: grid scan of ``|f|`` then Newton."""
    if df is None:
        h = 1e-7

        def df(z):
            return (f(z + h) - f(z - h)) / (2 * h)

    radii = np.linspace(r_in, r_out, 64, endpoint=False)
    theta = TWO_PI * np.arange(256) / 256
    grid = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    mod = np.abs(f(grid))
    best = None
    for idx in np.argsort(mod)[:20]:
        z = _newton(f, df, complex(grid[idx]))
        if abs(f(z)) < TOL.witness and abs(z) < 1:
            return z
        if best is None or abs(f(z)) < abs(f(best)):
            best = z
    raise NumericalError(f"no zero located in {r_in} <= |z| < {r_out} (best |F| = {abs(f(best))})")


def atomic_zeros(mu: AtomicMeasure) -> list[complex]:
    """Zeros of ``F_mu`` in the open disk for an atomic measure.

    ``F = N / D`` with ``N(z) = sum_j w_j x_j prod_{i != j} (1 - x_i z)`` and
    ``D = prod (1 - x_i z) (1 + psi)``; ``Re(1 + psi) >= 1/2`` on the disk, so
    the zeros of ``F`` are the roots of ``N``. Roots are polished by Newton on
    the exact ``F`` and kept when ``|F| < 1e-6`` there.
    """
    x = mu.points[mu.weights > 0]
    w = mu.weights[mu.weights > 0]
    N = np.polynomial.Polynomial([0j])
    for j in range(x.size):
        term = np.polynomial.Polynomial([w[j] * x[j]])
        for i in range(x.size):
            if i != j:
                term = term * np.polynomial.Polynomial([1.0, -x[i]])
        N = N + term
    f = F_callable(mu)
    dN = N.deriv()
    out = []
    for z0 in N.roots():
        if abs(z0) >= 1:
            continue
        z = _newton(N, dN, complex(z0), iters=8)
        if abs(z) < 1 and abs(f(z)) < TOL.witness:
            out.append(z)
    return out


# -- verdicts ----------------------------------------------------------------

def _constant_pair(c: complex, order: int) -> CharacteristicPair:
    mass = -float(np.log(abs(c)))
    return CharacteristicPair(cmath.phase(c), FiniteCircleMeasure.uniform(max(mass, 0.0), order))


def is_infinitely_divisible(mu: CircleMeasure, r_max: float = 0.999,
                            order: int = DEFAULT_ORDER) -> DivisibilityVerdict:
    f = F_from_measure(mu, order)
    if _is_zero_function(f):
        return HaarDivisible()
    if isinstance(f, ExpHerglotzF):
        return Divisible(CharacteristicPair(f.b, f.rho))
    if isinstance(f, ConstantF):
        return Divisible(_constant_pair(f.c, order))
    if abs(complex(f(0.0))) <= 1e-12:
        return NotDivisible(ZeroAtOrigin())
    if isinstance(f, BlaschkeF):
        if not f.factors:
            return Divisible(_constant_pair(f.phase, order))
        a = f.factors[0][0]
        return NotDivisible(InteriorZero(a, abs(a)))
    # series input is judged on its Taylor polynomial, whose distance from F is certified below
    evaluator = f if isinstance(f, SeriesF) and not isinstance(mu, AtomicMeasure) else F_callable(mu, order)
    if isinstance(mu, AtomicMeasure):
        zeros = [z for z in atomic_zeros(mu) if abs(z) < r_max]
        if zeros:
            z = min(zeros, key=abs)
            return NotDivisible(InteriorZero(z, abs(z)))
        pair = CharacteristicPair.from_herglotz(herglotz_analyze(log_F(f, order)))
        return DivisibleUpToRadius(r_max, pair)
    df = None
    tail = None
    if isinstance(evaluator, SeriesF):
        ds = derivative(evaluator.s)
        df = lambda z: evaluate(ds, z)  # noqa: E731
        tail = _series_tail_bound(evaluator.s.order)
    radii = sorted({r for r in WINDING_RADII if r < r_max} | {r_max})
    prev = 0.0
    for r in radii:
        if not _certified(evaluator, r, tail):
            z = _zero_near_contour(evaluator, df, r, tail)
            if z is not None and abs(z) < r_max:
                return NotDivisible(InteriorZero(z, r))
            r_cert = _largest_certified_radius(evaluator, prev, r, tail)
            if r_cert > prev and winding_number(evaluator, r_cert) > 0:
                z = locate_zero(evaluator, prev, r_cert, df)
                return NotDivisible(InteriorZero(z, r_cert))
            pair = CharacteristicPair.from_herglotz(herglotz_analyze(log_F(f, order)))
            return DivisibleUpToRadius(max(r_cert, prev), pair)
        if winding_number(evaluator, r) > 0:
            z = locate_zero(evaluator, prev, r, df)
            return NotDivisible(InteriorZero(z, r))
        prev = r
    pair = CharacteristicPair.from_herglotz(herglotz_analyze(log_F(f, order)))
    return DivisibleUpToRadius(r_max, pair)


def _series_tail_bound(K: int):
    """Bound on the discarded tail of an order-K truncation of a self-map F.

    Taylor coefficients of a holomorphic map of the disk into its closure are
    bounded by 1, so ``|F - S_K| <= r^{K+1} / (1 - r)`` on ``|z| = r``.
    """
    return lambda r: r ** (K + 1) / (1 - r)


def _certified(f, r: float, tail, n: int = 1024) -> bool:
    """Rouche: the winding of ``S_K`` on ``|z| = r`` equals that of ``F``
    when ``min |S_K|`` there exceeds the tail bound."""
    if tail is None:
        return True
    vals = np.abs(f(r * np.exp(1j * TWO_PI * np.arange(n) / n)))
    return bool(vals.min() > 2 * tail(r))


def _zero_near_contour(f, df, r: float, tail, n: int = 1024) -> complex | None:
    """A certified zero of ``F`` close to ``|z| = r``, or None.

    Newton from the smallest samples of ``|S_K|`` on the circle; a zero ``z``
    of ``S_K`` is accepted when ``|S_K'(z)| delta`` exceeds twice the tail
    bound on a circle of radius ``delta`` around it (Rouche again), so ``F``
    has a zero within ``delta`` of ``z``.
    """
    pts = r * np.exp(1j * TWO_PI * np.arange(n) / n)
    vals = np.abs(f(pts))
    for idx in np.argsort(vals)[:4]:
        z = _newton(f, df, complex(pts[idx]))
        delta = min(1e-6, (1 - abs(z)) / 2)
        if abs(f(z)) < 1e-12 and abs(df(z)) * delta > 2 * tail(abs(z) + delta):
            return z
    return None


def _largest_certified_radius(f, lo: float, hi: float, tail, steps: int = 30) -> float:
    """Bisect in ``log(1 - r)`` for the largest certified radius in ``[lo, hi)``."""
    if lo <= 0.0:
        lo = 0.0
        if not _certified(f, 1e-3, tail):
            return 0.0
        lo = 1e-3
    a, b = np.log1p(-lo), np.log1p(-hi)
    for _ in range(steps):
        mid = 0.5 * (a + b)
        if _certified(f, -np.expm1(mid), tail):
            a = mid
        else:
            b = mid
    return float(-np.expm1(a))


def char_pair(mu: CircleMeasure, order: int = DEFAULT_ORDER) -> CharacteristicPair:
    verdict = is_infinitely_divisible(mu, order=order)
    if isinstance(verdict, (Divisible, DivisibleUpToRadius)):
        return verdict.pair
    raise NotDivisibleError(f"no characteristic pair: {verdict}")


def measure_from_char_pair(pair: HerglotzData, order: int = DEFAULT_ORDER) -> StructuredMeasure:
    """The measure with ``F = exp(i b - int (x+z)/(x-z) d rho)``."""
    return StructuredMeasure(ExpHerglotzF(pair.b, pair.rho))


def nth_root(mu: CircleMeasure, n: int, order: int = DEFAULT_ORDER) -> CircleMeasure:
    """``mu_n`` with ``F_{mu_n} = exp(u/n)``, so that its n-fold power is ``mu``."""
    if n < 1:
        raise InvalidInput("root index must be positive")
    verdict = is_infinitely_divisible(mu, order=order)
    if isinstance(verdict, HaarDivisible):
        return StructuredMeasure(ZeroF())
    if isinstance(verdict, NotDivisible):
        raise NotDivisibleError(f"{verdict}")
    pair = verdict.pair
    return StructuredMeasure(ExpHerglotzF(pair.b / n, pair.rho.scaled(1.0 / n)))


def semigroup_measure(pair: HerglotzData, t: float, order: int = DEFAULT_ORDER) -> StructuredMeasure:
    """``mu_t`` with ``F = exp(i t b - t int (x+z)/(x-z) d rho)``; ``t*b`` is stored mod 2 pi."""
    if t < 0:
        raise InvalidInput("semigroup time must be non-negative")
    return StructuredMeasure(ExpHerglotzF(canonical_angle(t * pair.b), pair.rho.scaled(t)))


def is_idempotent(mu: CircleMeasure, order: int = DEFAULT_ORDER) -> bool:
    """True iff ``F`` is identically 0 or identically 1."""
    c = F_from_measure(mu, order).to_series(order).coeffs
    tail = np.max(np.abs(c[1:]), initial=0.0)
    if tail > TOL.idempotent:
        return False
    return abs(c[0]) <= TOL.idempotent or abs(c[0] - 1) <= TOL.idempotent
