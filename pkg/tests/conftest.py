import sys

import numpy as np
import pytest

from larspath import standardize
from larspath.data import load_diabetes

# 8x4 integer design; columns 2 and 3 are strongly negatively correlated and
# the Lasso path drops column 3 once.
DROP_X = np.array([
    [4, 3, -5, 3],
    [-3, 1, -2, 3],
    [2, -4, 4, -4],
    [-4, 3, 0, 0],
    [5, 2, 2, 0],
    [3, -3, 5, -5],
    [2, -2, -5, 3],
    [4, -4, 3, -5],
], dtype=float)
DROP_Y = np.array([-4, -5, 6, 9, -1, -8, 5, -7], dtype=float)


def orthonormal_design(n, m, seed, coef=None, noise=1.0):
    """Centered design with exactly orthonormal columns and a response."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, m))
    z -= z.mean(axis=0)
    q, _ = np.linalg.qr(z)
    if coef is None:
        coef = rng.normal(0.0, 3.0, m)
    y = q @ np.asarray(coef, dtype=float) + noise * rng.standard_normal(n)
    return q, y


def random_fixtures(count=20, seed=2024):
    """Small Gaussian designs with n <= 10 and m <= 5."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(6, 11))
        m = int(rng.integers(2, 6))
        x = rng.standard_normal((n, m))
        x[:, -1] -= 0.6 * x[:, 0]
        y = x @ rng.normal(0, 2, m) + rng.standard_normal(n)
        out.append((x, y))
    return out


@pytest.fixture
def identity_design():
    return standardize(np.eye(2), np.array([3.0, 1.0]), mode="raw")


@pytest.fixture
def drop_design():
    return standardize(DROP_X, DROP_Y)


@pytest.fixture(scope="session")
def diabetes():
    return load_diabetes()


@pytest.fixture(scope="session")
def diabetes_design(diabetes):
    x, y, _ = diabetes
    return standardize(x, y)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"{number:>2}  {'PASS' if ok else 'FAIL'}  {detail}")
