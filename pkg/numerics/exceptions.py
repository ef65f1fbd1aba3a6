from numpy.linalg import LinAlgError


class SvdConvergenceError(LinAlgError):
    """Raised when every LAPACK driver fails to converge on a matrix."""

    def __init__(self, shape, drivers):
        self.shape = tuple(shape)
        self.drivers = tuple(drivers)
        super().__init__(
            f"SVD did not converge for a {self.shape[0]}x{self.shape[1]} matrix "
            f"(drivers tried: {', '.join(self.drivers)})"
        )
