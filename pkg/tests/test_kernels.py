import numpy as np
import pytest

from larspath import _kernels_py, kernels

compiled = pytest.importorskip("larspath._kernels")


def test_backend_reports_compiled():
    assert kernels.BACKEND == "compiled"


@pytest.mark.parametrize("seed", range(5))
def test_fs_epsilon_trace_backends_agree(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((30, 6))
    x /= np.linalg.norm(x, axis=0)
    y = rng.standard_normal(30)
    g, c0 = x.T @ x, x.T @ y
    a = compiled.fs_epsilon_trace(g, c0, 0.01, 500)
    b = _kernels_py.fs_epsilon_trace(g, c0, 0.01, 500)
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("seed", range(5))
def test_entry_step_backends_agree(seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(0, 1, 12)
    a = rng.normal(0, 0.5, 12)
    mask = (rng.random(12) > 0.3).astype(np.uint8)
    assert compiled.entry_step(c, a, 2.0, 0.8, mask) == _kernels_py.entry_step(c, a, 2.0, 0.8, mask)


def test_entry_step_empty_mask():
    assert _kernels_py.entry_step(np.ones(3), np.ones(3), 1.0, 1.0, np.zeros(3, np.uint8)) == (np.inf, -1)
    assert compiled.entry_step(np.ones(3), np.ones(3), 1.0, 1.0, np.zeros(3, np.uint8)) == (np.inf, -1)


def test_drop_step_backends_agree():
    beta = np.array([0.5, -1.0, 0.0, 2.0])
    d = np.array([-1.0, 0.25, 1.0, -0.5])
    active = np.array([0, 1, 2, 3], dtype=np.intp)
    assert compiled.drop_step(beta, d, active) == _kernels_py.drop_step(beta, d, active) == (0.5, 0)


@pytest.mark.parametrize("method", ["lar_path", "lasso_path", "fs_path"])
def test_full_paths_identical_across_backends(monkeypatch, diabetes_design, method):
    from larspath import path as path_mod

    fast = getattr(path_mod, method)(diabetes_design)
    for name in ("drop_step", "entry_step", "fs_epsilon_trace"):
        monkeypatch.setattr(path_mod, name, getattr(_kernels_py, name))
    slow = getattr(path_mod, method)(diabetes_design)
    assert fast.betas.tobytes() == slow.betas.tobytes()
