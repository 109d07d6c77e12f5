class ContractViolation(ValueError):
    """Raised when a caller breaks an operation's precondition."""


class EmptyBlockError(ValueError):
    """The requested symmetry block has no basis functions."""


class NonConvergenceError(ArithmeticError):
    """An iterative eigensolver ran out of sweeps."""


class NotPositiveDefiniteError(ArithmeticError):
    """Cholesky hit a non-positive pivot.

    ``order`` is the number of leading pivots that were positive, i.e. the
    largest leading principal submatrix that factorized.
    """

    def __init__(self, msg, order=0):
        super().__init__(msg)
        self.order = order
