# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np

from . trace import ConvergenceTrace
from .. sparse import spmv
from .. utils import raise_error, logger
from .. utils.errors import (ConfigError, DimensionError, NotPositiveDefinite,
                             Stagnation)


def _initial_state(a, b, x1):
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (a.n, ):
        raise_error(f'Right-hand side of shape {b.shape} does not match a '
                    f'matrix of dimension {a.n}', klass=DimensionError)
    if x1 is None:
        x = np.zeros(a.n)
    else:
        x = np.array(x1, dtype=np.float64, copy=True)
        if x.shape != (a.n, ):
            raise_error(f'Initial guess of shape {x.shape} does not match a '
                        f'matrix of dimension {a.n}', klass=DimensionError)
    r = b - spmv(a, x)
    return b, x, r


def classical_cg(a, b, x1=None, eps_star=1e-6, max_iters=20000):
    """Hestenes-Stiefel conjugate gradient.

    Two global inner products per iteration. The run stops when the true
    residual ``||b - A x||`` is at most ``eps_star``.

    Parameters
    ----------
    a : SparseMatrixCsr
        An SPD matrix.
    b : numpy.ndarray, shape (n,)
        The right-hand side.
    x1 : numpy.ndarray | None
        The initial guess. Defaults to zero.
    eps_star : float
        The requested accuracy. Defaults to 1e-6.
    max_iters : int
        Maximum number of iterations. Defaults to 20000.

    Returns
    -------
    x : numpy.ndarray, shape (n,)
        The approximate solution.
    trace : ConvergenceTrace
        One row per iteration. The ``syncs`` column counts iterations.
    """
    if not eps_star > 0 or max_iters < 1:
        raise_error('eps_star and max_iters must be positive',
                    klass=ConfigError)
    b, x, r = _initial_state(a, b, x1)
    p = r.copy()
    rr = r @ r
    trace = ConvergenceTrace('cg', eps_star=eps_star, n=a.n,
                             inner_product_syncs=0)
    true_norm = np.sqrt(rr)
    trace.add_row(0, -1, 0, true_norm, true_norm)
    if true_norm <= eps_star:
        return x, trace.finish('converged')

    # Stagnation window in iterations
    window = 5 * a.n
    best, best_iter = true_norm, 0
    for i in range(1, max_iters + 1):
        ap = spmv(a, p)
        pap = p @ ap
        if not pap > 0:
            trace.finish('not-spd')
            raise_error(f'Nonpositive curvature p^T A p = {pap:.3e} at '
                        f'iteration {i}', klass=NotPositiveDefinite,
                        trace=trace)
        alpha = rr / pap
        x = x + alpha * p
        r = r - alpha * ap
        rr_new = r @ r
        p = r + (rr_new / rr) * p
        rr = rr_new

        true_norm = np.linalg.norm(b - spmv(a, x))
        trace.syncs = i
        trace.metadata['inner_product_syncs'] = 2 * i
        trace.add_row(i, i - 1, 1, true_norm, np.sqrt(rr))
        logger.debug(f'CG iteration {i}: ||b - Ax|| = {true_norm:.3e}')
        if true_norm <= eps_star:
            logger.info(f'CG converged in {i} iterations')
            return x, trace.finish('converged')
        if true_norm < best:
            best, best_iter = true_norm, i
        if i - best_iter >= window or rr == 0:
            trace.finish('stagnated')
            raise_error(f'CG stagnated at ||b - Ax|| = {best:.3e} after {i} '
                        'iterations', klass=Stagnation, trace=trace)
    logger.info(f'CG did not reach {eps_star:.1e} in {max_iters} iterations')
    return x, trace.finish('not-converged')
