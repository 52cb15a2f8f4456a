"""Locate the two potential walls that bound probable returns.

Two strategies:

``potential-peak``
    Search the quantum potential inside the reliable support
    ``{q : p(q) >= p_floor_rel * max p}`` on each side of the mode. With
    ``peak_rule="dominant"`` (default) the wall is the largest value of U on
    that side, which is the most prominent maximum once the support edge is
    admitted as a candidate. With ``peak_rule="outermost"`` it is the outermost
    interior local maximum of U. If no maximum is found the reliable-support
    edge is used and the fallback is noted in the diagnostics.

``support-edge``
    The outermost grid point on each side with ``p >= p_floor_rel * max p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .density import DensityGrid
from .errors import BohmscaleError, TailResolutionError
from .potential import PotentialCurve

__all__ = ["STRATEGIES", "PEAK_RULES", "WallPair", "mode_index", "detect_walls", "wall_width"]

STRATEGIES = ("potential-peak", "support-edge")
PEAK_RULES = ("dominant", "outermost")
MIN_SIDE_POINTS = 3


@dataclass(frozen=True)
class WallPair:
    q_minus: float
    q_plus: float
    strategy: str
    mode: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def width(self) -> float:
        return self.q_plus - self.q_minus

    def to_dict(self) -> dict:
        return {
            "q_minus": self.q_minus,
            "q_plus": self.q_plus,
            "width": self.width,
            "mode": self.mode,
            "strategy": self.strategy,
            "diagnostics": self.diagnostics,
        }


def mode_index(p: np.ndarray) -> int:
    """Global argmax of p; a plateau of maxima resolves to its midpoint."""
    top = np.flatnonzero(p == p.max())
    # the plateau containing the first maximum
    run_end = 0
    while run_end + 1 < len(top) and top[run_end + 1] == top[run_end] + 1:
        run_end += 1
    return int((top[0] + top[run_end]) // 2)


def _side_indices(n: int, mode: int, side: int) -> np.ndarray:
    """Indices strictly beyond the mode, ordered outward."""
    return np.arange(mode - 1, -1, -1) if side < 0 else np.arange(mode + 1, n)


def _outermost_local_max(U: np.ndarray, ok: np.ndarray, outward: np.ndarray) -> int | None:
    # walk inward from the outside; first local maximum met is the outermost
    n = len(U)
    for i in outward[::-1]:
        if not ok[i] or i == 0 or i == n - 1:
            continue
        lo, hi = i - 1, i + 1
        if not (ok[lo] and ok[hi]):
            continue
        if U[i] >= U[lo] and U[i] >= U[hi]:
            return int(i)
    return None


def detect_walls(
    pot: PotentialCurve,
    dens: DensityGrid,
    strategy: str = "potential-peak",
    p_floor_rel: float = 1e-3,
    peak_rule: str = "dominant",
) -> WallPair:
    if strategy not in STRATEGIES:
        raise BohmscaleError(f"unknown wall strategy {strategy!r}", stage="walls")
    if peak_rule not in PEAK_RULES:
        raise BohmscaleError(f"unknown peak rule {peak_rule!r}", stage="walls")
    if not 0 < p_floor_rel < 1:
        raise BohmscaleError(f"p_floor_rel must lie in (0, 1), got {p_floor_rel}", stage="walls")
    q = dens.q
    p = dens.p
    if len(pot.q) != len(q) or not np.allclose(pot.q, q, rtol=0, atol=1e-12 * max(1.0, np.abs(q).max())):
        raise BohmscaleError("potential and density grids differ", stage="walls")

    U = pot.oriented
    valid = pot.valid
    m = mode_index(p)
    reliable = p >= p_floor_rel * p.max()
    candidate = reliable & valid

    walls = {}
    diagnostics = {}
    for side, name in ((-1, "minus"), (1, "plus")):
        outward = _side_indices(len(q), m, side)
        if np.count_nonzero(valid[outward]) < MIN_SIDE_POINTS:
            raise TailResolutionError(
                f"insufficient tail resolution: fewer than {MIN_SIDE_POINTS} valid potential points on the {name} side",
                stage="walls",
            )
        support = outward[reliable[outward]]
        if len(support) == 0:
            raise TailResolutionError(f"insufficient tail resolution: empty reliable support on the {name} side", stage="walls")
        edge = int(support[-1])
        note = {"support_edge": float(q[edge])}

        if strategy == "support-edge":
            idx = edge
            note["method"] = "support-edge"
        else:
            cand = outward[candidate[outward]]
            idx = None
            if peak_rule == "dominant" and len(cand):
                vals = U[cand]
                # ties toward the outermost point
                idx = int(cand[len(vals) - 1 - int(np.argmax(vals[::-1]))])
            elif peak_rule == "outermost":
                idx = _outermost_local_max(U, candidate, outward)
            if idx is None:
                idx = edge
                note["method"] = "fallback-support-edge"
            else:
                note["method"] = f"{peak_rule}-peak"
                note["at_support_edge"] = bool(idx == edge)
            if np.isfinite(U[idx]):
                note["U"] = float(pot.U[idx])
        note["index"] = int(idx)
        walls[name] = float(q[idx])
        diagnostics[name] = note

    return WallPair(walls["minus"], walls["plus"], strategy, float(q[m]), diagnostics)


def wall_width(pair: WallPair) -> float:
    return pair.q_plus - pair.q_minus
