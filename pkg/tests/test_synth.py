import numpy as np
import pytest

from bohmscale import synth
from bohmscale.errors import DataError, DegenerateDistributionError, EmbeddingError
from bohmscale.market_data import ReturnSeries, log_returns
from bohmscale.synth import (
    SynthSpec,
    fgn_autocovariance,
    generate,
    generate_fgn,
    generate_student_t,
    generate_white_noise,
    matched_white_noise,
    to_price_series,
)


def _lag_corr(x, k=1):
    x = x - x.mean()
    return float(x[:-k] @ x[k:] / (x @ x))


@pytest.mark.parametrize("kind", ["white", "fgn", "student_t"])
def test_same_seed_bitwise_identical(kind):
    spec = SynthSpec(kind, 4096, 0.02, hurst=0.7, seed=42)
    a, b = generate(spec), generate(spec)
    assert a.values.tobytes() == b.values.tobytes()
    assert a.meta["generator"] == "numpy.random.PCG64"
    assert a.meta["spec"]["seed"] == 42
    assert generate(SynthSpec(kind, 4096, 0.02, hurst=0.7, seed=43)).values.tobytes() != a.values.tobytes()


def test_white_noise_moments():
    x = generate_white_noise(SynthSpec("white", 10**6, 1.0, seed=7)).values
    assert abs(x.var() - 1.0) < 0.01
    assert abs(x.mean()) < 0.005


def test_fgn_autocovariance_closed_form():
    H, s = 0.7, 1.5
    g = fgn_autocovariance(np.arange(4), H, s)
    assert g[0] == pytest.approx(s**2)
    assert g[1] == pytest.approx(0.5 * s**2 * (2 ** (2 * H) - 2))
    assert g[1] / g[0] == pytest.approx(2 ** (2 * H - 1) - 1)
    np.testing.assert_allclose(fgn_autocovariance(np.arange(5), 0.5), [1, 0, 0, 0, 0], atol=1e-15)


def test_fgn_half_is_white():
    x = generate_fgn(SynthSpec("fgn", 2**20, 1.0, hurst=0.5, seed=3)).values
    assert abs(_lag_corr(x)) < 0.01


def test_fgn_lag_one_correlation():
    expected = 2 ** (1.4 - 1) - 1  # 0.3195
    x = generate_fgn(SynthSpec("fgn", 2**20, 1.0, hurst=0.7, seed=3)).values
    assert _lag_corr(x) == pytest.approx(expected, abs=0.01)


@pytest.mark.parametrize("H", [0.2, 0.35, 0.8])
def test_fgn_sample_autocovariance_matches(H):
    # brute-force lagged products against the closed-form autocovariance
    sigma = 0.5
    x = generate_fgn(SynthSpec("fgn", 2**18, sigma, hurst=H, seed=9)).values
    for k in (0, 1, 2, 5):
        sample = float(np.mean(x[: len(x) - k] * x[k:]))
        assert sample == pytest.approx(float(fgn_autocovariance(k, H, sigma)), abs=0.02 * sigma**2)


def test_fgn_needs_power_of_two():
    with pytest.raises(DataError, match="power of two"):
        generate_fgn(SynthSpec("fgn", 1000, 1.0, hurst=0.7))


def test_fgn_negative_eigenvalue_reported(monkeypatch):
    def bad(k, hurst, sigma=1.0):
        g = np.zeros(len(k))
        g[0], g[1] = 1.0, -0.9
        g[2] = 0.9
        return g

    monkeypatch.setattr(synth, "fgn_autocovariance", bad)
    with pytest.raises(EmbeddingError, match=r"H=0\.6, n=64"):
        generate_fgn(SynthSpec("fgn", 64, 1.0, hurst=0.6))


def test_student_t_variance():
    x = generate_student_t(SynthSpec("student_t", 10**6, 2.0, df=5.0, seed=1)).values
    assert x.std() == pytest.approx(2.0, rel=0.03)


@pytest.mark.parametrize(
    "kwargs",
    [dict(kind="pink"), dict(n=1), dict(sigma=0.0), dict(hurst=1.0), dict(hurst=0.0), dict(kind="student_t", df=2.0), dict(seed=-1)],
)
def test_spec_validation(kwargs):
    with pytest.raises(DataError):
        SynthSpec(**kwargs)


def test_matched_white_noise_parameters():
    market = ReturnSeries(np.random.default_rng(0).standard_t(4, 3800) * 0.012 / np.sqrt(2), instrument_id="m")
    target = market.values.std(ddof=1)
    out = matched_white_noise(market, seed=1)
    assert out.n == 3800
    assert out.values.std(ddof=1) == pytest.approx(target, rel=0.03)
    other = matched_white_noise(market, seed=2)
    assert other.values.tobytes() != out.values.tobytes()
    assert other.meta["spec"]["sigma"] == out.meta["spec"]["sigma"] == pytest.approx(target)
    assert other.meta["spec"]["n"] == out.meta["spec"]["n"]


def test_matched_white_noise_rejects_constant():
    with pytest.raises(DegenerateDistributionError):
        matched_white_noise(ReturnSeries(np.full(100, 0.01)))


def test_price_round_trip():
    r = generate_white_noise(SynthSpec("white", 5000, 0.01, seed=5))
    prices = to_price_series(r)
    assert prices.prices[0] == pytest.approx(100.0)
    back = log_returns(prices, 1).values
    np.testing.assert_allclose(back, r.values, rtol=1e-12, atol=1e-14)
