"""Exception types raised across the package."""


class LarsError(Exception):
    """Base class for all errors raised by larspath."""


class ConstantColumnError(LarsError, ValueError):
    def __init__(self, index):
        self.index = int(index)
        super().__init__(f"column {self.index} is constant")


class DimensionError(LarsError, ValueError):
    pass


class SingularActiveSetError(LarsError, ArithmeticError):
    """Gram matrix of the signed active columns failed a Cholesky pivot."""

    def __init__(self, active):
        self.active = tuple(int(j) for j in active)
        super().__init__(f"active set {list(self.active)} is collinear")


class NotStandardizedError(LarsError, ValueError):
    def __init__(self):
        super().__init__("design was built in raw mode; nothing to de-standardize")


class SigmaUnestimableError(LarsError, ValueError):
    pass


class BootstrapFailureError(LarsError, RuntimeError):
    pass


class CsvFormatError(LarsError, ValueError):
    pass
