"""Compare the compiled kernels with the numpy fallback.

Run with ``python benchmarks/bench_kernels.py``. Needs the extension built
(``pip install -e . --no-build-isolation``).
"""
import argparse
import timeit

import numpy as np

from larspath import _kernels_py, path as path_mod, standardize
from larspath.data import load_diabetes
from larspath.experiments import quadratic_design

try:
    from larspath import _kernels as _compiled
except ImportError:
    _compiled = None

NAMES = ("drop_step", "entry_step", "fs_epsilon_trace")


def _best(stmt, repeat):
    return min(timeit.repeat(stmt, number=1, repeat=repeat))


def _use(backend):
    for name in NAMES:
        setattr(path_mod, name, getattr(backend, name))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _compiled is None:
        raise SystemExit("compiled extension not built")

    x, y, names = load_diabetes()
    quad, _, _, _ = quadratic_design(x, names)
    small, big = standardize(x, y), standardize(quad, y)
    gram, c0 = big.x.T @ big.x, big.x.T @ big.y
    rng = np.random.default_rng(0)
    c, a = rng.standard_normal(5000), rng.standard_normal(5000)
    mask = (rng.random(5000) < 0.9).astype(np.uint8)

    cases = {
        "fs_epsilon_trace (64 cols, 20000 steps)":
            lambda k: k.fs_epsilon_trace(gram, c0, 1e-3, 20000),
        "entry_step (5000 candidates) x200":
            lambda k: [k.entry_step(c, a, 10.0, 1.0, mask) for _ in range(200)],
        "lasso_path diabetes quadratic (64 cols)":
            lambda k: (_use(k), path_mod.lasso_path(big)),
        "fs_path diabetes (10 cols)":
            lambda k: (_use(k), path_mod.fs_path(small)),
    }
    print(f"{'case':<44}{'numpy':>10}{'compiled':>10}{'speedup':>9}")
    for label, fn in cases.items():
        slow = _best(lambda: fn(_kernels_py), args.repeat)
        fast = _best(lambda: fn(_compiled), args.repeat)
        print(f"{label:<44}{slow * 1e3:>8.1f}ms{fast * 1e3:>8.1f}ms{slow / fast:>8.1f}x")
    _use(_compiled)


if __name__ == "__main__":
    main()
