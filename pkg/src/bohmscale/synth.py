"""Seeded synthetic return generators.

All draws come from ``numpy.random.Generator(PCG64(seed))``; the generator
name and numpy version are stamped into ``ReturnSeries.meta`` so a run can
be reproduced. The contract is the distribution plus per-seed determinism,
not a particular bitstream across libraries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDistributionError, EmbeddingError, InsufficientDataError, DataError
from .market_data import PriceSeries, ReturnSeries

__all__ = [
    "KINDS",
    "SynthSpec",
    "generate",
    "generate_white_noise",
    "generate_fgn",
    "generate_student_t",
    "fgn_autocovariance",
    "matched_white_noise",
    "to_price_series",
]

KINDS = ("white", "fgn", "student_t")
EIGEN_TOL = 1e-10


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def _meta(spec: "SynthSpec", algorithm: str) -> dict:
    return {
        "generator": "numpy.random.PCG64",
        "numpy_version": np.__version__,
        "algorithm": algorithm,
        "spec": spec.to_dict(),
    }


@dataclass(frozen=True)
class SynthSpec:
    kind: str = "white"
    n: int = 1024
    sigma: float = 0.01
    hurst: float = 0.5
    df: float = 3.0  # student_t only
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DataError(f"unknown synth kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 2:
            raise DataError(f"n must be >= 2, got {self.n}")
        if not self.sigma > 0:
            raise DataError(f"sigma must be positive, got {self.sigma}")
        if not 0 < self.hurst < 1:
            raise DataError(f"hurst must lie in (0, 1), got {self.hurst}")
        if self.kind == "student_t" and not self.df > 2:
            raise DataError(f"df must exceed 2 for a finite variance, got {self.df}")
        if not 0 <= self.seed < 2**64:
            raise DataError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "sigma": self.sigma, "hurst": self.hurst, "df": self.df, "seed": self.seed}


def generate_white_noise(spec: SynthSpec) -> ReturnSeries:
    """iid N(0, sigma^2) returns."""
    x = _rng(spec.seed).normal(0.0, spec.sigma, spec.n)
    return ReturnSeries(x, meta=_meta(spec, "normal"))


def fgn_autocovariance(k, hurst: float, sigma: float = 1.0) -> np.ndarray:
    k = np.abs(np.asarray(k, dtype=float))
    H2 = 2.0 * hurst
    return 0.5 * sigma**2 * (np.abs(k + 1) ** H2 - 2.0 * k**H2 + np.abs(k - 1) ** H2)


def generate_fgn(spec: SynthSpec) -> ReturnSeries:
    """Fractional Gaussian noise by circulant embedding (Davies-Harte).

    The autocovariance row of length n+1 is mirrored into a circulant of
    size 2n whose eigenvalues come from one FFT; ``n`` must be a power of two.
    """
    n = spec.n
    if n & (n - 1):
        raise DataError(f"fgn needs n to be a power of two, got n={n}")
    gamma = fgn_autocovariance(np.arange(n + 1), spec.hurst, spec.sigma)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    size = len(row)
    lam = np.fft.fft(row).real
    if lam.min() < -EIGEN_TOL * lam.max():
        raise EmbeddingError(
            f"circulant embedding has negative eigenvalue {lam.min():.3e} (H={spec.hurst}, n={n})"
        )
    lam = np.clip(lam, 0.0, None)
    rng = _rng(spec.seed)
    z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    w = np.fft.fft(np.sqrt(lam / size) * z)
    return ReturnSeries(w.real[:n].copy(), meta=_meta(spec, "circulant-embedding"))


def generate_student_t(spec: SynthSpec) -> ReturnSeries:
    """Student-t(df) returns rescaled to standard deviation ``sigma``."""
    scale = spec.sigma * np.sqrt((spec.df - 2.0) / spec.df)
    x = scale * _rng(spec.seed).standard_t(spec.df, spec.n)
    return ReturnSeries(x, meta=_meta(spec, "standard_t"))


def generate(spec: SynthSpec) -> ReturnSeries:
    return {"white": generate_white_noise, "fgn": generate_fgn, "student_t": generate_student_t}[spec.kind](spec)


def matched_white_noise(market: ReturnSeries, seed: int = 0) -> ReturnSeries:
    """White noise with the market sample's length and standard deviation."""
    x = np.asarray(market.values, dtype=float)
    if len(x) < 2:
        raise InsufficientDataError("matched white noise needs at least 2 market returns")
    sigma = float(np.std(x, ddof=1))
    if sigma == 0 or np.ptp(x) == 0:
        raise DegenerateDistributionError("degenerate distribution: market returns have zero variance")
    out = generate_white_noise(SynthSpec("white", len(x), sigma, seed=seed))
    return ReturnSeries(out.values, market.scale_tau, market.stride, f"{market.instrument_id}:white", out.meta)


def to_price_series(returns: ReturnSeries, base: float = 100.0, instrument_id: str = "synthetic"):
    """Prices ``base * exp(cumsum(returns))`` with the base as the first row."""
    log_prices = np.log(base) + np.concatenate([[0.0], np.cumsum(returns.values)])
    if np.abs(log_prices).max() > 700:
        raise DataError("cumulative log-price exceeds the float range; lower sigma or n")
    return PriceSeries.from_log_prices(log_prices, instrument_id=instrument_id)
