"""Multiplicative boolean convolution and two independent oracles.

``convolve`` multiplies F-transforms. The oracles never touch F:

* :func:`product_moments_combinatorial` expands ``phi((UV)^n)`` with
  ``U = X + 1``, ``V = Y + 1`` into words in X and Y and factorises every word
  by the boolean independence rule
  ``phi(X^{n1} Y^{m1} X^{n2} ...) = phi(X^{n1}) phi(Y^{m1}) phi(X^{n2}) ...``;
* :class:`OperatorPairModel` realises boolean independent ``U - 1``,
  ``V - 1`` as explicit matrices on ``C^{du} (x) C^{dv}`` and reads moments
  of ``UV`` off a vector state.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np
from scipy import sparse

from .config import DEFAULT_ORDER
from .errors import DimensionTooLarge, InvalidInput, OrderTooLargeForOracle, WordNotAlternating
from .measure import AtomicMeasure, CircleMeasure, MomentMeasure, StructuredMeasure, moments_of
from .transform import ConstantF, F_from_measure, SeriesF, ZeroF, moments_from_F

MAX_ORACLE_ORDER = 10
MAX_MODEL_DIM = 4096


def convolve(mu: CircleMeasure, nu: CircleMeasure, order: int = DEFAULT_ORDER) -> CircleMeasure:
    """Boolean convolution ``mu |x| nu`` through ``F = F_mu * F_nu``.

    Zero and constant transforms are combined exactly; everything else comes
    back as ``order`` moments.
    """
    f, g = F_from_measure(mu, order - 1), F_from_measure(nu, order - 1)
    if isinstance(f, ZeroF) or isinstance(g, ZeroF):
        return StructuredMeasure(ZeroF())
    if isinstance(f, ConstantF) and isinstance(g, ConstantF):
        return StructuredMeasure(ConstantF(f.c * g.c))
    prod = f.to_series(order - 1) * g.to_series(order - 1)
    return MomentMeasure(moments_from_F(SeriesF(prod), order))


def convolve_power(mu: CircleMeasure, n: int, order: int = DEFAULT_ORDER) -> CircleMeasure:
    """``mu`` convolved with itself ``n`` times (``F^n``)."""
    if n < 1:
        raise InvalidInput("convolution power needs n >= 1")
    if n == 1:
        return mu
    f = F_from_measure(mu, order - 1)
    if isinstance(f, ZeroF):
        return StructuredMeasure(ZeroF())
    if isinstance(f, ConstantF):
        return StructuredMeasure(ConstantF(f.c ** n))
    return MomentMeasure(moments_from_F(SeriesF(f.to_series(order - 1) ** n), order))


# -- combinatorial oracle ----------------------------------------------------

def boolean_word_moment(x_moms: Sequence[complex], y_moms: Sequence[complex],
                        word: Sequence[tuple[str, int]]) -> complex:
    """``phi`` of an alternating word under boolean independence.

    ``x_moms[k]`` is ``phi(X^k)`` (``x_moms[0] == 1``); ``word`` is a list of
    ``(letter, exponent)`` blocks that must alternate between ``"X"`` and
    ``"Y"``.
    """
    out = 1.0 + 0j
    prev = None
    for letter, e in word:
        if letter not in ("X", "Y") or e < 1:
            raise WordNotAlternating(f"bad block {(letter, e)!r}")
        if letter == prev:
            raise WordNotAlternating(f"two adjacent {letter} blocks; merge them first")
        out *= (x_moms if letter == "X" else y_moms)[e]
        prev = letter
    return out


def centered_moments(m: Sequence[complex], n: int) -> np.ndarray:
    """``phi((U-1)^k)`` for ``k = 0..n`` from ``phi(U^j) = m_j``."""
    mm = np.concatenate([[1.0], np.asarray(m, dtype=complex)[:n]])
    return np.array([sum(comb(k, j) * (-1) ** (k - j) * mm[j] for j in range(k + 1))
                     for k in range(n + 1)])


def _merge(mask: int, n: int) -> tuple[tuple[str, int], ...]:
    """Word of ``prod (X+1)(Y+1)`` picked out by ``mask``, equal letters merged."""
    blocks: list[list] = []
    for pos in range(2 * n):
        if mask >> pos & 1:
            letter = "X" if pos % 2 == 0 else "Y"
            if blocks and blocks[-1][0] == letter:
                blocks[-1][1] += 1
            else:
                blocks.append([letter, 1])
    return tuple((a, e) for a, e in blocks)


@lru_cache(maxsize=None)
def word_expansion(n: int) -> tuple[tuple[tuple[tuple[str, int], ...], int], ...]:
    """All ``4^n`` words of ``((X+1)(Y+1))^n``, grouped into (word, count)."""
    return tuple(Counter(_merge(mask, n) for mask in range(1 << (2 * n))).items())


def product_moments_combinatorial(mu: CircleMeasure, nu: CircleMeasure, n: int) -> complex:
    """``n``-th moment of ``mu |x| nu`` by brute-force word expansion."""
    if n > MAX_ORACLE_ORDER:
        raise OrderTooLargeForOracle(f"n = {n} exceeds {MAX_ORACLE_ORDER} (cost 4^n)")
    if n < 1:
        raise InvalidInput("moment index must be positive")
    xm = centered_moments(moments_of(mu, n), n)
    ym = centered_moments(moments_of(nu, n), n)
    return complex(sum(count * boolean_word_moment(xm, ym, word)
                       for word, count in word_expansion(n)))


# -- operator model ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OperatorPairModel:
    u_diag: np.ndarray
    v_diag: np.ndarray
    xi_u: np.ndarray
    xi_v: np.ndarray
    Utilde: np.ndarray
    Vtilde: np.ndarray
    state: np.ndarray

    @property
    def dim_u(self) -> int:
        return self.u_diag.size

    @property
    def dim_v(self) -> int:
        return self.v_diag.size

    @property
    def dim(self) -> int:
        return self.state.size

    def unitarity_defect(self) -> float:
        """``max |M^* M - I|`` over both matrices.

        Products are formed on sparse copies; the dense matrices are mostly
        zeros and a dense product at dimension 4096 is needlessly slow.
        """
        eye = sparse.identity(self.dim, format="csr")
        worst = 0.0
        for M in (self.Utilde, self.Vtilde):
            S = sparse.csr_matrix(M)
            D = (S.conj().T @ S - eye).tocoo()
            worst = max(worst, float(np.max(np.abs(D.data), initial=0.0)))
        return worst

    def marginal_defect(self, mu: AtomicMeasure, nu: AtomicMeasure, K: int = DEFAULT_ORDER) -> float:
        worst = 0.0
        for M, meas in ((self.Utilde, mu), (self.Vtilde, nu)):
            want = moments_of(meas, K)
            v = self.state.astype(complex)
            for k in range(K):
                v = M @ v
                worst = max(worst, abs(np.vdot(self.state, v) - want[k]))
        return worst


def operator_model_build(mu: AtomicMeasure, nu: AtomicMeasure) -> OperatorPairModel:
    """``Utilde = U (x) P_v + I (x) (I - P_v)``, ``Vtilde = P_u (x) V + (I - P_u) (x) I``.

    ``U`` and ``V`` are diagonal with the atoms on the diagonal and the
    projections are onto the square-root-weight vectors. ``Utilde - I`` and
    ``Vtilde - I`` are then boolean independent in the product state.
    """
    if not (isinstance(mu, AtomicMeasure) and isinstance(nu, AtomicMeasure)):
        raise InvalidInput("the operator model needs atomic measures")
    du, dv = len(mu), len(nu)
    if du * dv > MAX_MODEL_DIM:
        raise DimensionTooLarge(f"model dimension {du * dv} exceeds {MAX_MODEL_DIM}")
    u, v = mu.points, nu.points
    xu, xv = np.sqrt(mu.weights), np.sqrt(nu.weights)
    pu, pv = np.outer(xu, xu), np.outer(xv, xv)
    # Utilde is block diagonal: block i is (I - P_v) + u_i P_v
    Ut = np.zeros((du, dv, du, dv), dtype=complex)
    for i in range(du):
        Ut[i, :, i, :] = np.eye(dv) + (u[i] - 1) * pv
    # Vtilde[(i,a),(j,b)] = delta_ab (delta_ij + pu_ij (v_a - 1))
    Vt = np.zeros((du, dv, du, dv), dtype=complex)
    a = np.arange(dv)
    Vt[:, a, :, a] = pu[None, :, :] * (v - 1)[:, None, None]
    Ut = Ut.reshape(du * dv, du * dv)
    Vt = Vt.reshape(du * dv, du * dv)
    Vt[np.diag_indices(du * dv)] += 1.0
    return OperatorPairModel(u, v, xu, xv, Ut, Vt, np.kron(xu, xv).astype(complex))


def operator_model_moments(model: OperatorPairModel, K: int = DEFAULT_ORDER) -> np.ndarray:
    """``<state, (Utilde Vtilde)^k state>`` for ``k = 1..K`` by mat-vec products."""
    out = np.empty(K, dtype=complex)
    v = model.state.copy()
    for k in range(K):
        v = model.Utilde @ (model.Vtilde @ v)
        out[k] = np.vdot(model.state, v)
    return out


# -- randomized verification sweep ------------------------------------------

def random_atomic(rng: np.random.Generator, max_atoms: int = 5) -> AtomicMeasure:
    """Uniform angles and symmetric Dirichlet(1) weights."""
    n = int(rng.integers(1, max_atoms + 1))
    return AtomicMeasure(rng.uniform(0.0, 2 * np.pi, n), rng.dirichlet(np.ones(n)))


@dataclass(frozen=True)
class SweepReport:
    seed: int
    pairs: int
    max_moment: int
    max_dev_combinatorial: float
    max_dev_operator: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_dev_combinatorial, self.max_dev_operator)


def verify_multiplicativity(seed: int = 42, pairs: int = 200, max_moment: int = 8,
                            max_atoms: int = 5, order: int = DEFAULT_ORDER) -> SweepReport:
    """Compare ``convolve`` against both oracles on random atomic pairs."""
    rng = np.random.default_rng(seed)
    dev_c = dev_o = 0.0
    for _ in range(pairs):
        mu, nu = random_atomic(rng, max_atoms), random_atomic(rng, max_atoms)
        got = moments_of(convolve(mu, nu, max(order, max_moment)), max_moment)
        comb_m = np.array([product_moments_combinatorial(mu, nu, n) for n in range(1, max_moment + 1)])
        op_m = operator_model_moments(operator_model_build(mu, nu), max_moment)
        dev_c = max(dev_c, float(np.max(np.abs(got - comb_m))))
        dev_o = max(dev_o, float(np.max(np.abs(got - op_m))))
    return SweepReport(seed, pairs, max_moment, dev_c, dev_o)
