"""Market sample versus variance-matched white noise on one shared grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .config import PipelineConfig
from .errors import DegenerateDistributionError
from .market_data import ReturnSeries
from .scaling import ScaleResult, analyze_returns
from .synth import matched_white_noise

__all__ = ["Comparison", "compare_with_white_noise", "tail_mass", "potential_rms_difference"]


@dataclass(frozen=True, eq=False)
class Comparison:
    market: ScaleResult
    white: ScaleResult
    sigma: float
    summary: dict


def tail_mass(q: np.ndarray, p: np.ndarray, q_minus: float, q_plus: float) -> float:
    """Trapezoid mass of the gridded density outside ``[q_minus, q_plus]``."""
    lo, hi = q <= q_minus, q >= q_plus
    mass = 0.0
    if lo.sum() > 1:
        mass += float(np.trapezoid(p[lo], q[lo]))
    if hi.sum() > 1:
        mass += float(np.trapezoid(p[hi], q[hi]))
    return mass


def potential_rms_difference(a: ScaleResult, b: ScaleResult, p_floor_rel: float, sigma: float, weighted: bool = True) -> float:
    """RMS of ``U_a - U_b`` in units of ``1/sigma**2``.

    Taken over grid points valid in both curves and inside both reliable
    supports. ``weighted`` averages under the mean of the two densities; the
    variance of an estimated U grows like ``1/p`` so the unweighted RMS is
    dominated by the outermost tail points.
    """
    mask = (
        a.potential.valid
        & b.potential.valid
        & (a.density.p >= p_floor_rel * a.density.p.max())
        & (b.density.p >= p_floor_rel * b.density.p.max())
    )
    if not mask.any():
        return float("nan")
    diff2 = ((a.potential.U[mask] - b.potential.U[mask]) * sigma**2) ** 2
    if not weighted:
        return float(np.sqrt(np.mean(diff2)))
    w = 0.5 * (a.density.p[mask] + b.density.p[mask])
    return float(np.sqrt(np.sum(w * diff2) / np.sum(w)))


def compare_with_white_noise(returns: ReturnSeries, seed: int = 0, config: PipelineConfig | None = None) -> Comparison:
    cfg = config or PipelineConfig()
    x = np.asarray(returns.values, dtype=float)
    sigma = float(np.std(x, ddof=1)) if len(x) > 1 else 0.0
    if sigma == 0 or np.ptp(x) == 0:
        raise DegenerateDistributionError("degenerate distribution: market returns have zero variance", stage="compare")
    white = matched_white_noise(returns, seed=seed)
    # The grid depends on the market sample only, so the market half of a
    # comparison is identical across seeds. sqrt(2 ln n) sigma is the typical
    # Gaussian extreme; with the pad on top an overflow has probability ~1e-20.
    reach = np.sqrt(2.0 * np.log(len(x))) * sigma
    lo = min(x.min(), -reach) - cfg.pad_sigma * sigma
    hi = max(x.max(), reach) + cfg.pad_sigma * sigma
    grid = np.linspace(lo, hi, cfg.grid_points)

    m = analyze_returns(returns, cfg, grid=grid)
    w = analyze_returns(white, cfg, grid=grid)
    q = grid
    qm, qp = m.walls.q_minus, m.walls.q_plus
    mode_i = int(np.argmin(np.abs(q - m.walls.mode)))
    summary = {
        "tau": returns.scale_tau,
        "n": int(len(x)),
        "sigma": sigma,
        "seed": int(seed),
        "market_walls": m.walls.to_dict(),
        "white_walls": w.walls.to_dict(),
        "density_at_market_mode": {"market": float(m.density.p[mode_i]), "white": float(w.density.p[mode_i])},
        "tail_mass_beyond_market_walls": {
            "market": tail_mass(q, m.density.p, qm, qp),
            "white": tail_mass(q, w.density.p, qm, qp),
            "gaussian": float(norm.cdf(qm, 0.0, sigma) + norm.sf(qp, 0.0, sigma)),
        },
        "potential_rms_difference": potential_rms_difference(m, w, cfg.p_floor_rel, sigma),
        "potential_rms_difference_unweighted": potential_rms_difference(m, w, cfg.p_floor_rel, sigma, weighted=False),
    }
    return Comparison(m, w, sigma, summary)
