"""Quantum potential ``U = hbar**2 / (2 m R) * R''`` of a gridded amplitude.

The sign is positive as written above. Standard Bohm texts carry a minus
sign; ``negate=True`` flips the reported values but not the orientation
used for wall detection (see ``PotentialCurve.oriented``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import Amplitude, _check_uniform
from .errors import GridError

__all__ = ["R_FLOOR_REL", "PotentialCurve", "quantum_potential", "analytic_gaussian_potential"]

R_FLOOR_REL = 1e-6


@dataclass(frozen=True, eq=False)
class PotentialCurve:
    q: np.ndarray
    U: np.ndarray  # NaN where not valid
    valid: np.ndarray
    hbar: float = 1.0
    mass: float = 1.0
    negated: bool = False

    @property
    def oriented(self) -> np.ndarray:
        """U with the unnegated sign, whatever ``negated`` says."""
        return -self.U if self.negated else self.U


def quantum_potential(
    amp: Amplitude,
    hbar: float = 1.0,
    mass: float = 1.0,
    r_floor_rel: float = R_FLOOR_REL,
    negate: bool = False,
) -> PotentialCurve:
    """Central-difference quantum potential on the amplitude grid.

    Endpoints and points with ``R <= r_floor_rel * max(R)`` are masked
    (``valid`` false, ``U`` NaN) rather than clamped.
    """
    q = np.asarray(amp.q, dtype=float)
    R = np.asarray(amp.R, dtype=float)
    if len(q) < 5:
        raise GridError(f"grid too short for the potential: {len(q)} < 5 points", stage="potential")
    if hbar <= 0 or mass <= 0:
        raise GridError("hbar and mass must be positive", stage="potential")
    h = _check_uniform(q)

    valid = R > r_floor_rel * R.max()
    valid[0] = valid[-1] = False
    U = np.full(len(q), np.nan)
    inner = valid[1:-1]
    d2 = (R[2:] - 2.0 * R[1:-1] + R[:-2]) / h**2
    coef = hbar**2 / (2.0 * mass)
    U[1:-1][inner] = coef * d2[inner] / R[1:-1][inner]
    if negate:
        U = -U
    return PotentialCurve(q, U, valid, float(hbar), float(mass), bool(negate))


def analytic_gaussian_potential(mu: float, sigma: float, grid, hbar: float = 1.0, mass: float = 1.0) -> PotentialCurve:
    """Closed form for a normal density: ``(q-mu)**2/(8 sigma**4) - 1/(4 sigma**2)``.

    With general ``hbar`` and ``mass`` the curve is scaled by ``hbar**2/m``.
    """
    if not sigma > 0:
        raise GridError(f"sigma must be positive, got {sigma}")
    q = np.asarray(grid, dtype=float)
    U = (hbar**2 / mass) * ((q - mu) ** 2 / (8.0 * sigma**4) - 1.0 / (4.0 * sigma**2))
    return PotentialCurve(q, U, np.ones(len(q), dtype=bool), float(hbar), float(mass))
