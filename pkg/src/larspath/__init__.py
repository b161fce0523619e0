"""Least angle regression paths and the model-selection tools around them."""
from .design import StandardizedDesign, correlations, destandardize, standardize
from .errors import (ConstantColumnError, DimensionError, LarsError,
                     NotStandardizedError, SigmaUnestimableError,
                     SingularActiveSetError)
from .kernels import BACKEND
from .path import (CoefficientPath, EquiangularFrame, PathKnot, arc_length,
                   at_lambda, equiangular_frame, fs_epsilon, fs_path,
                   interpolate, lar_path, lasso_path)

__version__ = "0.1.0"
