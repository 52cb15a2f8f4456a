"""Wall width across time scales, power-law fits, and a Hurst estimator."""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import PipelineConfig
from .density import DensityGrid, amplitude, estimate_density
from .errors import BohmscaleError, FitError, InsufficientDataError, InsufficientScalesError
from .market_data import PriceSeries, ReturnSeries, log_returns
from .potential import PotentialCurve, quantum_potential
from .walls import WallPair, detect_walls

__all__ = [
    "ScaleResult",
    "WidthCurve",
    "ScalingFit",
    "PiecewiseFit",
    "analyze_returns",
    "compute_width_curve",
    "fit_scaling",
    "fit_piecewise",
    "estimate_hurst",
]

MIN_FIT_POINTS = 4
MIN_PIECEWISE_POINTS = 6
MIN_SEGMENT_POINTS = 2
# SSE per point below which a fit counts as exact (rounding noise in log space)
_SSE_NOISE_PER_POINT = 1e-20


@dataclass(frozen=True, eq=False)
class ScaleResult:
    """Everything the pipeline produced at one time scale."""

    tau: int
    n_returns: int
    density: DensityGrid
    potential: PotentialCurve
    walls: WallPair

    @property
    def width(self) -> float:
        return self.walls.width


@dataclass(frozen=True, eq=False)
class WidthCurve:
    points: tuple  # ((tau, width), ...)
    pipeline_config: dict = field(default_factory=dict)
    records: tuple = ()
    failures: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple((int(t), float(w)) for t, w in self.points)
        taus = [t for t, _ in pts]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise FitError(f"taus must be strictly increasing, got {taus}")
        if any(not w > 0 for _, w in pts):
            raise FitError("widths must be positive")
        object.__setattr__(self, "points", pts)

    @property
    def taus(self) -> np.ndarray:
        return np.array([t for t, _ in self.points], dtype=float)

    @property
    def widths(self) -> np.ndarray:
        return np.array([w for _, w in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float
    residuals: np.ndarray

    @property
    def sse(self) -> float:
        return float(np.sum(self.residuals**2))

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "residuals": [float(r) for r in self.residuals],
        }


@dataclass(frozen=True, eq=False)
class PiecewiseFit:
    breakpoint_tau: int
    slope_pre: float
    slope_post: float
    intercept_pre: float
    intercept_post: float
    sse_total: float
    sse_single: float
    preferred: bool
    delta: float
    candidates: tuple  # ((tau, sse_total), ...)

    def to_dict(self) -> dict:
        return {
            "breakpoint_tau": self.breakpoint_tau,
            "slope_pre": self.slope_pre,
            "slope_post": self.slope_post,
            "intercept_pre": self.intercept_pre,
            "intercept_post": self.intercept_post,
            "sse_total": self.sse_total,
            "sse_single": self.sse_single,
            "preferred": self.preferred,
            "delta": self.delta,
            "candidates": [{"tau": t, "sse_total": s} for t, s in self.candidates],
        }


def analyze_returns(returns, config: PipelineConfig | None = None, grid=None) -> ScaleResult:
    """density -> amplitude -> potential -> walls for one return sample."""
    cfg = config or PipelineConfig()
    tau = returns.scale_tau if isinstance(returns, ReturnSeries) else 1
    try:
        dens = estimate_density(
            returns,
            method=cfg.estimator,
            n_points=cfg.grid_points,
            pad=cfg.pad_sigma,
            bandwidth=cfg.bandwidth,
            grid=grid,
        )
    except BohmscaleError as exc:
        exc.stage, exc.tau = "density", tau
        raise
    try:
        pot = quantum_potential(amplitude(dens), cfg.hbar, cfg.mass, cfg.r_floor_rel, cfg.negate_potential)
    except BohmscaleError as exc:
        exc.stage, exc.tau = "potential", tau
        raise
    try:
        walls = detect_walls(pot, dens, cfg.wall_strategy, cfg.p_floor_rel, cfg.peak_rule)
    except BohmscaleError as exc:
        exc.stage, exc.tau = "walls", tau
        raise
    return ScaleResult(tau, dens.n_samples, dens, pot, walls)


def _run_tau(series: PriceSeries, tau: int, cfg: PipelineConfig) -> ScaleResult:
    try:
        rets = log_returns(series, tau, cfg.stride_for(tau))
    except BohmscaleError as exc:
        exc.stage, exc.tau = "returns", tau
        raise
    return analyze_returns(rets, cfg)


def compute_width_curve(
    series: PriceSeries,
    taus=None,
    config: PipelineConfig | None = None,
    max_workers: int | None = None,
) -> WidthCurve:
    """Run the wall pipeline at each time scale and collect the widths.

    Scales that fail (too long for the series, too few returns, unresolved
    tails) are omitted with a warning and listed in ``WidthCurve.failures``.
    ``max_workers > 1`` runs scales on a thread pool; results are merged in
    tau order either way.
    """
    cfg = config or PipelineConfig()
    taus = sorted(int(t) for t in (cfg.taus if taus is None else taus))
    if len(set(taus)) != len(taus):
        raise InsufficientScalesError(f"taus must be distinct, got {taus}", stage="scaling")
    if taus != sorted(cfg.taus):
        cfg = cfg.replace(taus=tuple(taus))

    def attempt(tau):
        try:
            return _run_tau(series, tau, cfg)
        except BohmscaleError as exc:
            return exc

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(attempt, taus))
    else:
        outcomes = [attempt(t) for t in taus]

    records, failures = [], {}
    for tau, out in zip(taus, outcomes):
        if isinstance(out, BohmscaleError):
            warnings.warn(f"tau={tau} omitted: {out.message}", RuntimeWarning, stacklevel=2)
            failures[tau] = out.to_dict()
        else:
            records.append(out)
    if len(records) < MIN_FIT_POINTS:
        raise InsufficientScalesError(
            f"only {len(records)} time scale(s) succeeded; at least {MIN_FIT_POINTS} are needed",
            stage="scaling",
        )
    return WidthCurve(
        tuple((r.tau, r.width) for r in records),
        pipeline_config=cfg.to_dict(),
        records=tuple(records),
        failures=failures,
    )


def _points(curve) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(curve, WidthCurve):
        return curve.taus, curve.widths
    arr = np.asarray(curve, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FitError("expected a WidthCurve or a sequence of (tau, width) pairs")
    if np.any(arr <= 0):
        raise FitError("taus and widths must be positive")
    return arr[:, 0], arr[:, 1]


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, np.ndarray]:
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0:
        raise FitError("degenerate fit: all taus are equal")
    slope = float(dx @ (y - ym)) / sxx
    intercept = float(ym - slope * xm)
    return slope, intercept, y - (intercept + slope * x)


def fit_scaling(curve) -> ScalingFit:
    """OLS of ln(width) on ln(tau)."""
    taus, widths = _points(curve)
    if len(taus) < MIN_FIT_POINTS:
        raise InsufficientScalesError(f"need at least {MIN_FIT_POINTS} points to fit, got {len(taus)}", stage="fit")
    x, y = np.log(taus), np.log(widths)
    slope, intercept, resid = _ols(x, y)
    sst = float(np.sum((y - y.mean()) ** 2))
    sse = float(resid @ resid)
    r2 = 1.0 if sst == 0 else min(1.0, max(0.0, 1.0 - sse / sst))
    return ScalingFit(slope, intercept, r2, resid)


def fit_piecewise(curve, delta: float = 0.25) -> PiecewiseFit:
    """Two free log-log segments split at the best interior tau.

    The breakpoint tau closes the first segment; each segment keeps at least
    two points. The split is ``preferred`` when the single-line SSE exceeds
    the two-segment SSE by a factor of at least ``1 + delta``.
    """
    taus, widths = _points(curve)
    n = len(taus)
    if n < MIN_PIECEWISE_POINTS:
        raise InsufficientScalesError(
            f"need at least {MIN_PIECEWISE_POINTS} points for a piecewise fit, got {n}", stage="fit"
        )
    x, y = np.log(taus), np.log(widths)
    order = np.argsort(x)
    x, y, taus = x[order], y[order], taus[order]
    single = _ols(x, y)
    sse_single = float(single[2] @ single[2])

    best = None
    candidates = []
    for k in range(MIN_SEGMENT_POINTS - 1, n - MIN_SEGMENT_POINTS):
        pre = _ols(x[: k + 1], y[: k + 1])
        post = _ols(x[k + 1 :], y[k + 1 :])
        sse = float(pre[2] @ pre[2] + post[2] @ post[2])
        candidates.append((int(taus[k]), sse))
        if best is None or sse < best[0]:
            best = (sse, k, pre, post)
    sse, k, pre, post = best
    floor = _SSE_NOISE_PER_POINT * n
    preferred = bool(sse_single > floor and sse_single >= (1.0 + delta) * sse)
    return PiecewiseFit(
        breakpoint_tau=int(taus[k]),
        slope_pre=pre[0],
        slope_post=post[0],
        intercept_pre=pre[1],
        intercept_post=post[1],
        sse_total=sse,
        sse_single=sse_single,
        preferred=preferred,
        delta=float(delta),
        candidates=tuple(candidates),
    )


def estimate_hurst(series, min_blocks: int = 64) -> float:
    """Aggregated-variance Hurst estimate.

    Block means over non-overlapping dyadic blocks m = 1, 2, 4, ... while at
    least ``min_blocks`` blocks remain; ``H = 1 + slope / 2`` from the OLS of
    ln Var(block mean) on ln m.
    """
    x = np.asarray(series.values if isinstance(series, ReturnSeries) else series, dtype=float)
    n = len(x)
    if n < 1000:
        raise InsufficientDataError(f"insufficient data for a Hurst estimate: {n} < 1000", stage="hurst")
    sizes, variances = [], []
    m = 1
    while n // m >= min_blocks:
        k = n // m
        means = x[: k * m].reshape(k, m).mean(axis=1)
        sizes.append(m)
        variances.append(means.var(ddof=1))
        m *= 2
    if len(sizes) < 3 or min(variances) <= 0:
        raise InsufficientDataError("too few usable block sizes for a Hurst estimate", stage="hurst")
    slope, _, _ = _ols(np.log(sizes), np.log(variances))
    return 1.0 + slope / 2.0
