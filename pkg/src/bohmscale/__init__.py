"""Quantum-potential walls of return distributions and their scaling across time horizons."""

__version__ = "0.1.0"

from .config import DEFAULT_TAUS, PipelineConfig
from .density import Amplitude, DensityGrid, amplitude, estimate_density
from .errors import BohmscaleError
from .market_data import FormatSpec, PriceSeries, ReturnSeries, load_price_series, log_returns
from .potential import PotentialCurve, analytic_gaussian_potential, quantum_potential
from .scaling import (
    PiecewiseFit,
    ScalingFit,
    WidthCurve,
    analyze_returns,
    compute_width_curve,
    estimate_hurst,
    fit_piecewise,
    fit_scaling,
)
from .synth import SynthSpec, generate, generate_fgn, generate_student_t, generate_white_noise, matched_white_noise, to_price_series
from .walls import WallPair, detect_walls, wall_width
from .baseline import compare_with_white_noise

__all__ = [
    "__version__",
    "DEFAULT_TAUS",
    "PipelineConfig",
    "Amplitude",
    "DensityGrid",
    "amplitude",
    "estimate_density",
    "BohmscaleError",
    "FormatSpec",
    "PriceSeries",
    "ReturnSeries",
    "load_price_series",
    "log_returns",
    "PotentialCurve",
    "analytic_gaussian_potential",
    "quantum_potential",
    "PiecewiseFit",
    "ScalingFit",
    "WidthCurve",
    "analyze_returns",
    "compute_width_curve",
    "estimate_hurst",
    "fit_piecewise",
    "fit_scaling",
    "SynthSpec",
    "generate",
    "generate_fgn",
    "generate_student_t",
    "generate_white_noise",
    "matched_white_noise",
    "to_price_series",
    "WallPair",
    "detect_walls",
    "wall_width",
    "compare_with_white_noise",
]
