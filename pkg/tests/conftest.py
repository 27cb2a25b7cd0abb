import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from nblab import DilatedFracSum

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def random_constrained_sum(
    rng: np.random.Generator,
    max_terms: int = 6,
    dilation_low: float = 1.0,
    dilation_high: float = 50.0,
    coeff_scale: float = 5.0,
) -> DilatedFracSum:
    """Random constrained combination: coefficients projected onto sum h/l = 0."""
    n = int(rng.integers(2, max_terms + 1))
    while True:
        dils = np.sort(rng.uniform(dilation_low, dilation_high, size=n))
        if np.all(np.diff(dils) > 1e-6 * dils[1:]):
            break
    h = rng.uniform(-coeff_scale, coeff_scale, size=n)
    c = 1.0 / dils
    h = h - c * (c @ h) / (c @ c)
    return DilatedFracSum(terms=tuple(zip(h.tolist(), dils.tolist())), constrained=True)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)


def assert_close(actual: float, expected: float, tol: float, label: str = "") -> None:
    assert abs(actual - expected) < tol, f"{label} |{actual!r} - {expected!r}| >= {tol}"


def em_dirichlet_zeta(s: complex, n: int = 20000) -> tuple[complex, float]:
    """Independent oracle for Re s >= 2: Dirichlet partial sum plus the
    Euler-Maclaurin head correction, with a certified remainder bound."""
    sigma = s.real
    assert sigma >= 2.0
    ks = np.arange(1, n + 1, dtype=np.float64)
    partial = complex(np.sum(ks ** (-complex(s))))
    value = partial + n ** (1 - s) / (s - 1) - 0.5 * n ** (-complex(s))
    remainder = 2.0 * abs(s) * n ** (-sigma - 1) / 12.0 + 1e-15
    return value, remainder
