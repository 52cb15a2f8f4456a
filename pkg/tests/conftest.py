import numpy as np
import pytest
from scipy.stats import norm

from bohmscale.density import DensityGrid

_ACCEPTANCE = []


def record_criterion(number, name, passed, detail):
    """``passed=None`` marks a skipped criterion."""
    _ACCEPTANCE.append((number, name, None if passed is None else bool(passed), detail))


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_ACCEPTANCE, key=lambda r: str(r[0])):
        status = "SKIP" if passed is None else "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name}: {detail}")


def gaussian_density(mu=0.0, sigma=1.0, M=4096, half_width=6.0):
    q = np.linspace(mu - half_width * sigma, mu + half_width * sigma, M)
    return DensityGrid.from_values(q, norm.pdf(q, mu, sigma))


@pytest.fixture
def std_normal_density():
    return gaussian_density()
