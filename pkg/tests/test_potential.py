import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import logistic, norm, t as student_t

from bohmscale.density import Amplitude, DensityGrid, amplitude, estimate_density
from bohmscale.errors import GridError
from bohmscale.potential import analytic_gaussian_potential, quantum_potential

from conftest import gaussian_density


def _closed_form(q, mu, sigma):
    # symbolic differentiation of sqrt(normal pdf)
    return (q - mu) ** 2 / (8 * sigma**4) - 1 / (4 * sigma**2)


def test_normal_potential_at_zero_and_two(std_normal_density):
    pot = quantum_potential(amplitude(std_normal_density))
    assert np.interp(0.0, pot.q, pot.U) == pytest.approx(-0.25, abs=1e-4)
    assert np.interp(2.0, pot.q, pot.U) == pytest.approx(0.25, abs=1e-4)


def test_flat_interior_gives_zero():
    q = np.linspace(-2, 2, 401)
    p = np.clip(2 - np.abs(q), 0, 1)  # trapezoid: flat on [-1, 1]
    pot = quantum_potential(amplitude(DensityGrid.from_values(q, p)))
    flat = np.abs(q) < 0.99
    np.testing.assert_allclose(pot.U[flat], 0.0, atol=1e-9)


def test_analytic_values():
    q = np.linspace(-4, 4, 801)
    pot = analytic_gaussian_potential(0.0, 1.0, q)
    assert pot.U[400] == -0.25
    assert pot.valid.all()
    root = np.sqrt(2.0)
    assert _closed_form(root, 0, 1) == pytest.approx(0.0, abs=1e-15)
    crossings = q[:-1][np.sign(pot.U[:-1]) != np.sign(pot.U[1:])]
    np.testing.assert_allclose(np.sort(np.abs(crossings)), [root, root], atol=q[1] - q[0])


def test_analytic_translation():
    q = np.linspace(-5, 5, 101)
    base = analytic_gaussian_potential(0.0, 1.0, q)
    shifted = analytic_gaussian_potential(3.0, 1.0, q + 3.0)
    np.testing.assert_allclose(shifted.U, base.U, atol=1e-14)


def test_analytic_rejects_bad_sigma():
    with pytest.raises(GridError):
        analytic_gaussian_potential(0.0, 0.0, np.linspace(-1, 1, 11))


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("mu", [0.0, -1.3])
def test_oracle_equivalence(mu, sigma):
    d = gaussian_density(mu, sigma)
    num = quantum_potential(amplitude(d))
    exact = analytic_gaussian_potential(mu, sigma, d.q)
    core = np.abs(d.q - mu) <= 4 * sigma
    scale = np.maximum(np.abs(exact.U[core]), 1 / (4 * sigma**2))
    assert np.max(np.abs(num.U[core] - exact.U[core]) / scale) <= 1e-4


def _max_core_error(M):
    d = gaussian_density(M=M)
    num = quantum_potential(amplitude(d))
    core = np.abs(d.q) <= 4
    return np.abs(num.U[core] - _closed_form(d.q[core], 0, 1)).max()


def test_second_order_convergence():
    # M-1 intervals halve exactly going 1025 -> 2049 -> 4097
    ratios = [_max_core_error(1025) / _max_core_error(2049), _max_core_error(2049) / _max_core_error(4097)]
    for r in ratios:
        assert 3 <= r <= 5


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 20.0), st.floats(-2, 2), st.floats(0.2, 3.0))
def test_scale_covariance_analytic(c, mu, sigma):
    q = np.linspace(mu - 5 * sigma, mu + 5 * sigma, 257)
    base = analytic_gaussian_potential(mu, sigma, q)
    scaled = analytic_gaussian_potential(c * mu, c * sigma, c * q)
    np.testing.assert_allclose(scaled.U, base.U / c**2, rtol=1e-12, atol=1e-12 * np.abs(base.U).max() / c**2)


@pytest.mark.parametrize("bandwidth", ["silverman", "curvature"])
def test_scale_covariance_kde(bandwidth):
    x = np.random.default_rng(5).standard_t(4, size=20000)
    for c in (0.01, 7.0):
        a = quantum_potential(amplitude(estimate_density(x, bandwidth=bandwidth)))
        b = quantum_potential(amplitude(estimate_density(c * x, bandwidth=bandwidth)))
        np.testing.assert_array_equal(a.valid, b.valid)
        v = a.valid
        np.testing.assert_allclose(b.U[v] * c**2, a.U[v], rtol=1e-3, atol=1e-3 * np.abs(a.U[v]).max())


@pytest.mark.parametrize(
    "pdf",
    [norm(0, 1).pdf, student_t(3).pdf, student_t(8, loc=0.5).pdf, logistic(scale=0.7).pdf],
    ids=["normal", "t3", "t8", "logistic"],
)
def test_mode_never_hosts_potential_maximum(pdf):
    q = np.linspace(-8, 8, 2001)
    d = DensityGrid.from_values(q, pdf(q))
    pot = quantum_potential(amplitude(d))
    u = np.where(pot.valid, pot.U, -np.inf)
    assert np.argmax(d.p) != np.argmax(u)


def test_masking_and_endpoints():
    q = np.linspace(-40, 40, 2001)
    d = DensityGrid.from_values(q, norm.pdf(q))
    pot = quantum_potential(amplitude(d))
    R = np.sqrt(d.p)
    assert not pot.valid[0] and not pot.valid[-1]
    np.testing.assert_array_equal(pot.valid[1:-1], (R > 1e-6 * R.max())[1:-1])
    assert np.isnan(pot.U[~pot.valid]).all()
    assert np.isfinite(pot.U[pot.valid]).all()


def test_negate_flag_and_constants(std_normal_density):
    amp = amplitude(std_normal_density)
    plain = quantum_potential(amp)
    neg = quantum_potential(amp, negate=True)
    v = plain.valid
    np.testing.assert_array_equal(neg.U[v], -plain.U[v])
    np.testing.assert_array_equal(neg.oriented[v], plain.U[v])
    scaled = quantum_potential(amp, hbar=2.0, mass=0.5)
    np.testing.assert_allclose(scaled.U[v], 8.0 * plain.U[v])


def test_too_short_grid():
    q = np.linspace(0, 1, 4)
    with pytest.raises(GridError):
        quantum_potential(Amplitude(q, np.ones(4)))
