import random

import pytest
from hypothesis import HealthCheck, settings

from dynpat import build_index

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIG1 = b"abacabababaaca"
ALPHABETS = (1, 2, 4, 26)


def random_bytes(rng: random.Random, size: int, alphabet: int) -> bytes:
    return bytes(rng.randrange(alphabet) + ord("a") for _ in range(size))


@pytest.fixture(scope="session")
def fig1():
    return build_index(FIG1)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
