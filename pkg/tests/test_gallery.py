import warnings

import numpy as np
import pytest

from bcirc.config import sample_grid
from bcirc.errors import (ConditioningWarning, ParameterOutOfRange, VerificationFailure)
from bcirc.gallery import (MIN_OUTER_GRID, bso_compose, cyclic_haar, dirac, haar, outer_rho, poisson,
                           singular_example, singular_measure, two_point)
from bcirc.levy import Divisible, InteriorZero, NotDivisible, is_infinitely_divisible
from bcirc.measure import FiniteCircleMeasure, atom_mass_estimate, moments_of, validate
from bcirc.transform import BlaschkeF, F_callable, F_from_measure
from bcirc.convolution import convolve


# -- constructors -------------------------------------------------------------------

def test_constructor_examples():
    f = F_from_measure(two_point(0.5, 0, np.pi), 16)
    np.testing.assert_allclose(f.s.coeffs, np.eye(17)[1], atol=1e-12)
    np.testing.assert_allclose(moments_of(cyclic_haar(3), 9), [0, 0, 1] * 3, atol=1e-14)
    np.testing.assert_allclose(moments_of(poisson(0.5, 0.0), 10), 0.5 ** np.arange(1, 11), atol=1e-16)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_cyclic_haar_transform(n):
    f = F_from_measure(cyclic_haar(n), 20)
    want = np.zeros(21)
    want[n - 1] = 1
    np.testing.assert_allclose(f.to_series(20).coeffs, want, atol=1e-12)


def test_dirac_and_poisson_F():
    assert complex(F_from_measure(dirac(2.0))(0.4)) == pytest.approx(np.exp(2j))
    assert complex(F_from_measure(poisson(0.3, 1.0))(0.4j)) == pytest.approx(0.3 * np.exp(1j))
    assert complex(F_from_measure(haar())(0.5)) == 0


def test_constructor_errors():
    for p in (0.0, 1.0, -0.5):
        with pytest.raises(ParameterOutOfRange):
            two_point(p, 0, 1)
    with pytest.raises(ParameterOutOfRange):
        two_point(0.5, 1.0, 1.0 + 2 * np.pi)
    with pytest.raises(ParameterOutOfRange):
        cyclic_haar(0)
    for r in (1.0, -0.1):
        with pytest.raises(ParameterOutOfRange):
            poisson(r)


@pytest.mark.parametrize("mu", [dirac(0.3), two_point(0.2, 0.1, 5.0), haar(), cyclic_haar(6),
                                poisson(0.0), poisson(0.95, 3.0), singular_measure(0.0),
                                singular_measure(2.0, 3.0)])
def test_gallery_valid_and_bounded(mu):
    assert validate(mu)
    assert np.max(np.abs(F_callable(mu)(sample_grid()))) <= 1 + 1e-10


# -- singular example ----------------------------------------------------------------

def test_singular_beta_pi_zero_at_one():
    res = singular_example(np.pi, 50)
    i = int(np.argmin(np.abs(np.angle(np.exp(1j * res.zeros)))))
    assert abs(np.exp(1j * res.zeros[i]) - 1) < 1e-12
    assert res.defining_residuals()[i] < 1e-10
    assert res.atom_masses[i] == pytest.approx(2 / 3, abs=1e-10)
    assert res.atom_angles[i] == pytest.approx(0.0, abs=1e-12) or res.atom_angles[i] == pytest.approx(2 * np.pi)


@pytest.mark.parametrize("beta", [0.0, 0.5, np.pi, 4.0, 6.2])
def test_singular_invariants(beta):
    res = singular_example(beta, 60)
    assert res.zeros.size == 120
    assert np.max(res.phase_residuals()) < 1e-10
    assert np.max(res.defining_residuals()) < 1e-10
    assert np.all((res.atom_masses > 0) & (res.atom_masses <= 2 / 3 + 1e-15))
    assert np.sum(res.atom_masses) <= 1 + 1e-9
    np.testing.assert_allclose(np.mod(res.zeros + res.atom_angles, 2 * np.pi) % (2 * np.pi), 0, atol=1e-12)
    # accumulation at x from both sides
    dist = np.abs(res.offsets)
    for side in (1, -1):
        d = dist[np.sign(res.offsets) == side]
        assert np.all(np.diff(d) < 0)
    assert dist.min() < 1e-2  # |t_k| ~ 1/(pi k)


def test_singular_masses_match_poisson_limit():
    for beta in (np.pi, 1.0):
        res = singular_example(beta, 4)
        mu = singular_measure(beta)
        for a, m in zip(res.atom_angles[:6], res.atom_masses[:6]):
            assert atom_mass_estimate(mu, a) == pytest.approx(m, abs=1e-4)


def test_singular_zeros_solve_defining_equation():
    beta = 2.5
    res = singular_example(beta, 10)
    x = np.exp(1j * beta)
    z = x * np.exp(1j * res.offsets)
    lhs = np.exp((x + z) / (-x * np.expm1(1j * res.offsets)))
    np.testing.assert_allclose(lhs, z, atol=1e-10)


def test_singular_errors():
    with pytest.raises(ParameterOutOfRange):
        singular_example(1.0, 0)
    with pytest.raises(ParameterOutOfRange):
        singular_example(1.0, 201)


def test_singular_count_200():
    res = singular_example(0.3, 200)
    assert res.zeros.size == 400
    assert np.max(res.defining_residuals()) < 1e-10


# -- B * S * O -----------------------------------------------------------------------

def test_bso_trivial_is_dirac():
    res = bso_compose(None, None, None)
    np.testing.assert_allclose(moments_of(res.mu, 16), 1, atol=1e-14)


def test_bso_singular_matches_singular_measure():
    tau = FiniteCircleMeasure.from_atoms([0.0], [1.0])
    mu, mu_B, mu_S, mu_O = bso_compose(None, tau, None)
    np.testing.assert_allclose(moments_of(mu, 32), moments_of(singular_measure(0.0), 32), atol=1e-12)


def test_bso_monomial_is_cyclic_haar():
    res = bso_compose(BlaschkeF(1), None, None)
    np.testing.assert_allclose(moments_of(res.mu, 16), moments_of(cyclic_haar(2), 16), atol=1e-12)


def test_bso_mixed_and_verdicts():
    theta = 2 * np.pi * np.arange(512) / 512
    q = 0.4 + 0.3 * np.cos(theta - 1.0)
    B = BlaschkeF(0, ((0.5 - 0.2j, 1), (0.1j, 2)), np.exp(0.3j))
    tau = FiniteCircleMeasure.from_atoms([1.0, 4.0], [0.2, 0.5])
    res = bso_compose(B, tau, q, c=np.exp(0.7j))
    assert res.deviation < 1e-8
    assert validate(res.mu)
    vB = is_infinitely_divisible(res.mu_B)
    assert isinstance(vB, NotDivisible) and isinstance(vB.witness, InteriorZero)
    assert isinstance(is_infinitely_divisible(res.mu_S), Divisible)
    vO = is_infinitely_divisible(res.mu_O)
    assert isinstance(vO, Divisible)
    assert vO.pair.b == pytest.approx(0.7)
    assert vO.pair.rho.mass == pytest.approx(0.4, abs=1e-12)
    # q = 0.4 + 0.15 e^{i(theta - 1)} + 0.15 e^{-i(theta - 1)}: r_1 = 0.15 e^{-i}
    assert vO.pair.rho.r[0] == pytest.approx(0.15 * np.exp(-1j), abs=1e-12)
    # chained convolution of the parts reproduces mu
    chained = convolve(convolve(res.mu_B, res.mu_S), res.mu_O)
    np.testing.assert_allclose(moments_of(chained, 32), moments_of(res.mu, 32), atol=1e-8)


def test_outer_rho_errors():
    with pytest.raises(ParameterOutOfRange):
        outer_rho(np.ones(MIN_OUTER_GRID - 1))
    with pytest.raises(ParameterOutOfRange):
        outer_rho(-np.ones(MIN_OUTER_GRID))


def test_bso_errors():
    with pytest.raises(ParameterOutOfRange):
        bso_compose(None, None, None, c=0.5)
    with pytest.warns(ConditioningWarning):
        bso_compose(BlaschkeF(0, ((0.97, 1),)), None, None)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bso_compose(BlaschkeF(0, ((0.9, 1),)), None, None)


def test_bso_detects_inconsistency(monkeypatch):
    import bcirc.gallery as g

    monkeypatch.setattr(g, "convolve", lambda a, b, order: dirac(0.1))
    with pytest.raises(VerificationFailure):
        bso_compose(BlaschkeF(1), None, None)
