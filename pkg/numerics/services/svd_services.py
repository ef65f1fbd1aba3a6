import logging

import numpy as np
import scipy.linalg
from numpy.linalg import LinAlgError

from numerics.exceptions import SvdConvergenceError
from numerics.types import SvdFactors, as_matrix, frozen

logger = logging.getLogger(__name__)

# gesdd is the fast divide-and-conquer driver; gesvd is slower but converges
# on some inputs where gesdd does not.
LAPACK_DRIVERS = ("gesdd", "gesvd")


def svd(h) -> SvdFactors:
    """
    Thin singular value decomposition of ``h``.

    Only ``p = min(rows, cols)`` singular vectors are kept on each side; the
    full U of an N x M hidden output matrix is never materialized.
    Raises SvdConvergenceError when no driver converges.
    """
    h = as_matrix(h, name="h")
    for driver in LAPACK_DRIVERS:
        try:
            u, sigma, vt = scipy.linalg.svd(
                h,
                full_matrices=False,
                check_finite=False,
                lapack_driver=driver,
            )
        except LinAlgError:
            logger.warning(f"SVD driver {driver} did not converge on a {h.shape[0]}x{h.shape[1]} matrix")
            continue
        # LAPACK returns sigma in descending order already.
        return SvdFactors(
            u=frozen(np.ascontiguousarray(u)),
            sigma=frozen(np.asarray(sigma, dtype=np.float64)),
            v=frozen(np.ascontiguousarray(vt.T)),
        )
    raise SvdConvergenceError(h.shape, LAPACK_DRIVERS)
