"""Backend selection for the inner loops.

The compiled extension is used when it was built; otherwise the numpy
fallback is imported. ``BACKEND`` records which one is active.
"""
try:
    from ._kernels import drop_step, entry_step, fs_epsilon_trace
    BACKEND = "compiled"
except ImportError:  # extension not built
    from ._kernels_py import drop_step, entry_step, fs_epsilon_trace
    BACKEND = "python"

__all__ = ["BACKEND", "drop_step", "entry_step", "fs_epsilon_trace"]
