import numpy as np
import pytest

from larspath.errors import BootstrapFailureError, LarsError
from larspath.resample import bootstrap_se, cp_prediction_shift


def _sample(n=80, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 3))
    return x, x @ [1.0, 0.5, 0.0] + rng.standard_normal(n)


def test_constant_statistic_has_zero_se():
    x, y = _sample()
    report = bootstrap_se(x, y, lambda a, b: 7.0, b_reps=50)
    assert report.se == 0.0
    assert report.point_estimate == 7.0


def test_mean_statistic_matches_textbook_se():
    x, y = _sample(n=200)
    report = bootstrap_se(x, y, lambda a, b: b.mean(), b_reps=2000, seed=1)
    assert report.se == pytest.approx(y.std(ddof=1) / np.sqrt(200), rel=0.15)


def test_reproducible_bitwise():
    x, y = _sample()
    stat = cp_prediction_shift(0, quadratic=False)
    a = bootstrap_se(x, y, stat, b_reps=30, seed=5)
    b = bootstrap_se(x, y, stat, b_reps=30, seed=5)
    assert a.statistic_values.tobytes() == b.statistic_values.tobytes()
    assert a.se == b.se


def test_replicates_are_prefix_stable():
    # replicate r depends only on (seed, r), so a longer run extends a shorter one
    x, y = _sample()
    stat = lambda a, b: float(np.median(b))
    short = bootstrap_se(x, y, stat, b_reps=20, seed=3)
    long = bootstrap_se(x, y, stat, b_reps=60, seed=3)
    np.testing.assert_array_equal(long.statistic_values[:20], short.statistic_values)


def test_se_stable_in_replicate_count():
    x, y = _sample(n=100, seed=2)
    stat = lambda a, b: float(np.polyfit(a[:, 0], b, 1)[0])
    small = bootstrap_se(x, y, stat, b_reps=200, seed=0).se
    big = bootstrap_se(x, y, stat, b_reps=5000, seed=0).se
    assert small == pytest.approx(big, rel=0.2)


def test_failures_are_counted():
    x, y = _sample(n=40)
    calls = {"i": 0}

    def flaky(a, b):
        calls["i"] += 1
        if calls["i"] % 10 == 0:
            raise LarsError("refit failed")
        return float(b.mean())

    report = bootstrap_se(x, y, flaky, b_reps=50)
    assert report.n_failed == 5
    assert report.statistic_values.size == 45


def test_too_many_failures_raise():
    x, y = _sample(n=40)
    calls = {"i": 0}

    def flaky(a, b):
        calls["i"] += 1
        if calls["i"] > 1 and calls["i"] % 4 == 0:
            raise np.linalg.LinAlgError("singular")
        return 0.0

    with pytest.raises(BootstrapFailureError):
        bootstrap_se(x, y, flaky, b_reps=50)


def test_other_errors_propagate():
    x, y = _sample(n=10)

    def broken(a, b):
        if a is not x:
            raise KeyError("bug")
        return 0.0

    with pytest.raises(KeyError):
        bootstrap_se(x, y, broken, b_reps=5)


def test_argument_checks():
    x, y = _sample(n=10)
    with pytest.raises(ValueError):
        bootstrap_se(x, y[:5], lambda a, b: 0.0)
    with pytest.raises(ValueError):
        bootstrap_se(x, y, lambda a, b: 0.0, b_reps=1)


def test_linear_shift_on_saturated_signal():
    # with strong signal and tiny noise Cp keeps every column and the
    # statistic is the OLS slope times one standard deviation
    rng = np.random.default_rng(8)
    x = rng.standard_normal((60, 3))
    y = x @ [2.0, -1.0, 3.0] + 1e-3 * rng.standard_normal(60)
    value = cp_prediction_shift(1, quadratic=False)(x, y)
    a = np.column_stack([np.ones(60), x])
    slope = np.linalg.lstsq(a, y, rcond=None)[0][2]
    assert value == pytest.approx(slope * x[:, 1].std(ddof=1), rel=1e-9)
