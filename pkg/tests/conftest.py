import math

import pytest
from hypothesis import HealthCheck, settings

from fracpast.distributions import Beta, Exponential, LogUniform, TriangularSum, Uniform

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def rel_close(got: float, want: float, rel: float) -> bool:
    return abs(got - want) <= rel * abs(want)


def ulp_close(got: float, printed: str) -> bool:
    """Match to one unit in the last printed digit of a table entry."""
    text = printed.strip().lower()
    mantissa, exponent = (text.split("e") + ["0"])[:2] if "e" in text else (text, "0")
    decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
    tol = 10.0 ** (int(exponent) - decimals)
    return abs(got - float(printed)) <= tol * (1.0 + 1e-9)


@pytest.fixture
def bounded_catalog():
    """Unit-scale bounded families used by the inequality suites."""
    return [Uniform(1.0), Beta(2.0, 2.0), LogUniform(1.0, 2.0), TriangularSum()]


@pytest.fixture
def symmetric_catalog():
    return [Uniform(1.0), Uniform(3.0), Beta(2.0, 2.0), TriangularSum()]


@pytest.fixture
def exp_unit():
    return Exponential(1.0)


def assert_close(got, want, tol, label=""):
    assert math.isfinite(got), f"{label}: non-finite value {got}"
    assert abs(got - want) <= tol, f"{label}: {got} vs {want} (tol {tol})"
