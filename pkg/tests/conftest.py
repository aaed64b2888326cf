import numpy as np
import pytest

from kcoreset import Dataset

ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_metric(rng, n, dim=3):
    """A genuine metric: Euclidean distances of random points, rounded away from ties."""
    pts = rng.normal(size=(n, dim))
    D = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    return Dataset.from_matrix(D)


@pytest.fixture
def line3():
    return Dataset.from_points([[0.0], [1.0], [3.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
