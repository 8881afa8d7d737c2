import pytest

from courtmix.court import Configuration, N_PLAYERS

# (criterion number, passed, detail) rows appended by test_acceptance
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


def random_configuration(rng) -> Configuration:
    return Configuration(tuple(int(x) for x in rng.permutation(N_PLAYERS)))
