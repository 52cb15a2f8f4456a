"""Pipeline configuration shared by the library and the CLI."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import ConfigError
from .walls import PEAK_RULES, STRATEGIES

__all__ = ["DEFAULT_TAUS", "PipelineConfig"]

DEFAULT_TAUS = (1, 2, 4, 8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class PipelineConfig:
    taus: tuple = DEFAULT_TAUS
    stride: object = 1  # 1, any positive int, or "tau" for non-overlapping windows
    estimator: str = "kde"
    bandwidth: object = "curvature"  # rule name or absolute width in return units
    grid_points: int = 1024
    pad_sigma: float = 3.0
    hbar: float = 1.0
    mass: float = 1.0
    negate_potential: bool = False
    r_floor_rel: float = 1e-6
    wall_strategy: str = "potential-peak"
    peak_rule: str = "dominant"
    p_floor_rel: float = 1e-3
    piecewise_delta: float = 0.25
    seed: int = 0

    def __post_init__(self):
        taus = tuple(int(t) for t in self.taus)
        object.__setattr__(self, "taus", taus)
        if any(t < 1 for t in taus):
            raise ConfigError(f"taus must be positive integers, got {taus}")
        if len(set(taus)) != len(taus):
            raise ConfigError(f"taus must be distinct, got {taus}")
        if self.stride != "tau":
            try:
                stride = int(self.stride)
            except (TypeError, ValueError):
                raise ConfigError(f"stride must be a positive integer or 'tau', got {self.stride!r}") from None
            if stride < 1:
                raise ConfigError(f"stride must be >= 1, got {stride}")
            object.__setattr__(self, "stride", stride)
        if self.estimator not in ("kde", "histogram"):
            raise ConfigError(f"estimator must be 'kde' or 'histogram', got {self.estimator!r}")
        if not isinstance(self.bandwidth, str):
            try:
                bw = float(self.bandwidth)
            except (TypeError, ValueError):
                raise ConfigError(f"bandwidth must be a rule name or a number, got {self.bandwidth!r}") from None
            if not bw > 0:
                raise ConfigError(f"bandwidth must be positive, got {bw}")
            object.__setattr__(self, "bandwidth", bw)
        elif self.bandwidth not in ("silverman", "curvature"):
            raise ConfigError(f"unknown bandwidth rule {self.bandwidth!r}")
        if self.wall_strategy not in STRATEGIES:
            raise ConfigError(f"wall_strategy must be one of {STRATEGIES}")
        if self.peak_rule not in PEAK_RULES:
            raise ConfigError(f"peak_rule must be one of {PEAK_RULES}")
        if int(self.grid_points) < 5:
            raise ConfigError("grid_points must be >= 5")
        for name in ("pad_sigma", "hbar", "mass", "r_floor_rel", "p_floor_rel"):
            if not float(getattr(self, name)) > 0:
                raise ConfigError(f"{name} must be positive")
        if not 0 < self.p_floor_rel < 1:
            raise ConfigError("p_floor_rel must lie in (0, 1)")
        if self.piecewise_delta < 0:
            raise ConfigError("piecewise_delta must be non-negative")

    def stride_for(self, tau: int) -> int:
        return tau if self.stride == "tau" else int(self.stride)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["taus"] = list(self.taus)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def replace(self, **changes) -> "PipelineConfig":
        return dataclasses.replace(self, **changes)
