import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from zakblt.signals import make_generator, sample

settings.register_profile(
    "zakblt", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("zakblt")


@pytest.fixture(scope="session")
def chi():
    return sample(make_generator("chi01"), 32, 256)


@pytest.fixture(scope="session")
def gauss():
    return sample(make_generator("gaussian"), 32, 256)


@pytest.fixture(scope="session")
def twisted():
    return sample(make_generator("twisted_chi"), 32, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
