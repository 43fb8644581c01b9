import numpy as np
import pytest
from hypothesis import given

from bcirc.errors import InvalidInput, RadiusOutOfRange
from bcirc.gallery import cyclic_haar, dirac, haar, poisson, singular_measure, two_point
from bcirc.measure import (AtomicMeasure, FiniteCircleMeasure, MomentMeasure, atom_mass_estimate,
                           atomic, density_approx, moments_of, toeplitz_matrix, validate)

from conftest import atomic_measures, random_atomic

TWO_PI = 2 * np.pi


def test_moments_examples():
    np.testing.assert_allclose(moments_of(dirac(0), 3), [1, 1, 1], atol=1e-15)
    np.testing.assert_allclose(moments_of(atomic([0, np.pi], [0.5, 0.5]), 4), [0, 1, 0, 1], atol=1e-15)
    np.testing.assert_array_equal(moments_of(MomentMeasure(np.zeros(3)), 3), np.zeros(3))
    np.testing.assert_array_equal(moments_of(haar(), 3), np.zeros(3))


def test_moments_of_short_moment_measure_returns_what_it_has():
    assert moments_of(MomentMeasure([0.5, 0.25]), 10).size == 2


def test_atomic_canonicalises_angles():
    mu = atomic([-np.pi / 2, 2 * np.pi], [0.5, 0.5])
    np.testing.assert_allclose(mu.angles, [3 * np.pi / 2, 0.0])
    assert np.all((mu.angles >= 0) & (mu.angles < TWO_PI))


def test_atomic_shape_errors():
    with pytest.raises(InvalidInput):
        atomic([0, 1], [1.0])
    with pytest.raises(InvalidInput):
        atomic([], [])


def test_validate_examples():
    assert validate(atomic([0, np.pi], [0.5, 0.5]))
    assert validate(MomentMeasure([1, 1, 1]))
    rep = validate(MomentMeasure([2, 0]))
    assert not rep
    assert any("m_1" in v for v in rep.violations)


def test_validate_reports_instead_of_raising():
    assert not validate(atomic([0, 1], [0.7, 0.7]))
    assert not validate(atomic([0, 1], [1.5, -0.5]))
    assert not validate(atomic([1, 1], [0.5, 0.5]))
    # |m_k| <= 1 but the Toeplitz matrix is indefinite
    rep = validate(MomentMeasure([0.9, -0.9]))
    assert not rep and rep.min_eigenvalue < 0


def test_validate_moment_measure_reports_min_eigenvalue():
    rep = validate(MomentMeasure(moments_of(cyclic_haar(3), 6)))
    assert rep.ok and rep.min_eigenvalue > -1e-9


def test_toeplitz_layout():
    T = toeplitz_matrix(np.array([0.5j, 0.25]))
    np.testing.assert_allclose(T, [[1, -0.5j, 0.25], [0.5j, 1, -0.5j], [0.25, 0.5j, 1]])


@given(atomic_measures())
def test_random_atomic_moments_are_valid(mu):
    m = moments_of(mu, 12)
    assert validate(mu)
    assert validate(MomentMeasure(m))
    # m_{-k} = conj(m_k): the Toeplitz matrix is Hermitian
    T = toeplitz_matrix(m)
    np.testing.assert_allclose(T, T.conj().T)


# -- density ------------------------------------------------------------------

def poisson_kernel(r, theta):
    return (1 - r ** 2) / (1 - 2 * r * np.cos(theta) + r ** 2) / TWO_PI


def test_density_haar_is_flat():
    for r in (0.1, 0.5, 0.99):
        _, d = density_approx(haar(), r, 16)
        np.testing.assert_allclose(d, 1 / TWO_PI, atol=1e-15)


def test_density_dirac_matches_poisson_kernel():
    theta, d = density_approx(dirac(0), 0.9, 8)
    assert theta[4] == pytest.approx(np.pi)
    assert d[4] == pytest.approx((1 - 0.81) / (1 + 0.81 + 1.8) / TWO_PI, abs=1e-14)
    np.testing.assert_allclose(d, poisson_kernel(0.9, theta), atol=1e-13)


def test_density_poisson_measure_limit():
    # constant F = 1/2 is the Poisson kernel at level 1/2; smoothing at r gives level r/2
    for r in (0.9, 0.99, 0.999):
        _, d = density_approx(poisson(0.5), r, 4)
        assert d[0] == pytest.approx(poisson_kernel(r / 2, 0.0), rel=1e-13)
    _, d = density_approx(poisson(0.5), 1 - 1e-9, 1)
    assert d[0] == pytest.approx(3 / TWO_PI, rel=1e-8)


@pytest.mark.parametrize("mu", [dirac(1.0), two_point(0.3, 0.5, 2.0), haar(), cyclic_haar(5),
                                poisson(0.7, 1.0), singular_measure(np.pi)],
                         ids=["dirac", "two_point", "haar", "cyclic5", "poisson", "singular"])
@pytest.mark.parametrize("radius", [0.5, 0.9, 0.99])
def test_density_integrates_to_one(mu, radius):
    theta, d = density_approx(mu, radius, 4096)
    assert np.sum(d) * TWO_PI / theta.size == pytest.approx(1.0, abs=1e-6)


def test_density_radius_errors():
    for r in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(RadiusOutOfRange):
            density_approx(dirac(0), r, 8)


# -- atom masses --------------------------------------------------------------

def test_atom_mass_examples():
    assert atom_mass_estimate(dirac(0), 0.0) == pytest.approx(1.0, abs=1e-12)
    assert atom_mass_estimate(haar(), 1.3) == pytest.approx(0.0, abs=1e-6)
    assert atom_mass_estimate(cyclic_haar(2), np.pi) == pytest.approx(0.5, abs=1e-9)


def test_atom_mass_random_atomic(rng):
    for _ in range(20):
        while True:
            mu = random_atomic(rng, 6)
            s = np.sort(mu.angles)
            if len(mu) == 1 or np.diff(np.r_[s, s[0] + TWO_PI]).min() > 0.3:
                break
        for a, w in zip(mu.angles, mu.weights):
            assert atom_mass_estimate(mu, a) == pytest.approx(w, abs=1e-6)


def test_atom_mass_radii_errors():
    with pytest.raises(RadiusOutOfRange):
        atom_mass_estimate(dirac(0), 0.0, radii=(0.9, 0.8))
    with pytest.raises(RadiusOutOfRange):
        atom_mass_estimate(dirac(0), 0.0, radii=(0.9, 1.0))


# -- finite measures ------------------------------------------------------------

def test_finite_measure_from_atoms_and_herglotz_eval():
    rho = FiniteCircleMeasure.from_atoms([0.0, np.pi / 2], [1.0, 0.5], K=8)
    assert rho.mass == pytest.approx(1.5)
    np.testing.assert_allclose(rho.r[:2], [1 - 0.5j, 1 - 0.5])
    z = 0.3 + 0.2j
    direct = (1 + z) / (1 - z) + 0.5 * (1j + z) / (1j - z)
    assert rho.herglotz_eval(z) == pytest.approx(direct)
    assert not rho.violations()


def test_finite_measure_uniform_and_ops():
    lam = FiniteCircleMeasure.uniform(2.0, 4)
    assert lam.herglotz_eval(0.5j) == pytest.approx(2.0)
    both = lam + FiniteCircleMeasure.from_atoms([0.0], [1.0], 4)
    assert both.mass == pytest.approx(3.0)
    np.testing.assert_allclose(both.conj_moments(4), np.ones(4))
    np.testing.assert_allclose(both.scaled(0.5).conj_moments(4), 0.5 * np.ones(4))


def test_finite_measure_violations():
    with pytest.raises(InvalidInput):
        FiniteCircleMeasure(-1.0)
    assert FiniteCircleMeasure(0.5, [0.9]).violations()
