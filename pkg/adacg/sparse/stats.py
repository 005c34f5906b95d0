# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from scipy.linalg import eigvalsh, eigvalsh_tridiagonal

from . csr import spmv
from .. utils import raise_error, logger
from .. utils.errors import ConfigError, NotPositiveDefinite

_stats_modes = ['exact-dense', 'lanczos', 'user-supplied']

# Largest dimension for which the dense eigensolver is used
DENSE_CAP = 5000


class MatrixStats(object):

    def __init__(self, norm_a, kappa_a, method, lambda_min=None,
                 lambda_max=None):
        """Spectral estimates of an SPD matrix.

        Parameters
        ----------
        norm_a : float
            Estimate of the 2-norm (largest eigenvalue).
        kappa_a : float
            Estimate of the 2-norm condition number.
        method : str
            How the estimates were obtained. One of 'exact-dense', 'lanczos'
            or 'user-supplied'.
        lambda_min, lambda_max : float | None
            The extreme eigenvalue estimates, if known.
        """
        if method not in _stats_modes:
            raise_error(f'Unknown stats method {method}. Valid options are '
                        f'{_stats_modes}', klass=ConfigError)
        if not kappa_a >= 1:
            raise_error(f'kappa_a must be >= 1 (got {kappa_a})',
                        klass=ConfigError)
        if not norm_a >= 0:
            raise_error(f'norm_a must be >= 0 (got {norm_a})',
                        klass=ConfigError)
        self.norm_a = float(norm_a)
        self.kappa_a = float(kappa_a)
        self.method = method
        self.lambda_min = lambda_min
        self.lambda_max = lambda_max

    def __repr__(self):
        return (f'MatrixStats(norm_a={self.norm_a:.3g}, '
                f'kappa_a={self.kappa_a:.3g}, method={self.method!r})')


def lanczos_extreme_eigenvalues(a, budget):
    """Extreme Ritz values of ``a`` after ``budget`` Lanczos steps.

    The Lanczos vectors are fully reorthogonalized and the start vector is
    the normalized all-ones vector.

    Parameters
    ----------
    a : SparseMatrixCsr
        A symmetric matrix.
    budget : int
        Maximum number of Lanczos steps (capped at the dimension).

    Returns
    -------
    lambda_min : float
        Smallest Ritz value.
    lambda_max : float
        Largest Ritz value.
    """
    n = a.n
    n_steps = min(int(budget), n)
    if n_steps < 1:
        raise_error(f'The Lanczos budget must be positive (got {budget})',
                    klass=ConfigError)
    basis = np.zeros((n, n_steps))
    alpha = np.zeros(n_steps)
    beta = np.zeros(n_steps)
    v = np.ones(n) / np.sqrt(n)
    n_done = n_steps
    for j in range(n_steps):
        basis[:, j] = v
        w = spmv(a, v)
        alpha[j] = v @ w
        w = w - alpha[j] * v
        if j > 0:
            w = w - beta[j - 1] * basis[:, j - 1]
        # Two passes of classical Gram-Schmidt against all Lanczos vectors
        for _ in range(2):
            w = w - basis[:, :j + 1] @ (basis[:, :j + 1].T @ w)
        beta[j] = np.linalg.norm(w)
        if beta[j] <= 1e-14 * max(np.abs(alpha[:j + 1]).max(), 1e-300):
            # Invariant subspace found
            n_done = j + 1
            break
        v = w / beta[j]
    if n_done == 1:
        return alpha[0], alpha[0]
    ritz = eigvalsh_tridiagonal(alpha[:n_done], beta[:n_done - 1])
    logger.debug(f'Lanczos: {n_done} steps, Ritz range '
                 f'[{ritz[0]:.6e}, {ritz[-1]:.6e}]')
    return ritz[0], ritz[-1]


def estimate_stats(a, mode='exact-dense', budget=100, dense_cap=DENSE_CAP,
                   norm_a=None, kappa_a=None):
    """Estimate the 2-norm and condition number of an SPD matrix.

    Parameters
    ----------
    a : SparseMatrixCsr
        The matrix.
    mode : str
        Options are:

        * 'exact-dense': all eigenvalues of the dense matrix (only for
          ``a.n <= dense_cap``). They come from LAPACK (scipy's
          ``eigvalsh``). The Jacobi solver of :mod:`adacg.dense` is meant
          for Gram matrices of order ``2s + 1`` and takes minutes at the
          dimensions of the test matrices (900 and up); both agree to
          rounding on small matrices.
        * 'lanczos': ``budget`` steps of Lanczos with full
          reorthogonalization.
        * 'user-supplied': use ``norm_a`` and ``kappa_a`` as given.

    budget : int
        Number of Lanczos steps (only for 'lanczos'). Defaults to 100.
    dense_cap : int
        Largest dimension allowed in 'exact-dense' mode. Defaults to 5000.
    norm_a, kappa_a : float | None
        The values to use in 'user-supplied' mode.

    Returns
    -------
    stats : MatrixStats
        The estimates.
    """
    if mode not in _stats_modes:
        raise_error(f'Unknown stats mode {mode}. Valid options are '
                    f'{_stats_modes}', klass=ConfigError)
    if mode == 'user-supplied':
        if norm_a is None or kappa_a is None:
            raise_error('norm_a and kappa_a must be specified in '
                        '"user-supplied" mode', klass=ConfigError)
        return MatrixStats(norm_a, kappa_a, mode)

    if mode == 'exact-dense':
        if a.n > dense_cap:
            raise_error(f'Matrix dimension {a.n} exceeds the dense cap '
                        f'({dense_cap}). Use mode="lanczos"',
                        klass=ConfigError)
        eigenvalues = eigvalsh(a.toarray())
        lambda_min, lambda_max = eigenvalues[0], eigenvalues[-1]
    else:
        lambda_min, lambda_max = lanczos_extreme_eigenvalues(a, budget)

    if not lambda_min > 0:
        raise_error(f'Smallest eigenvalue estimate is not positive '
                    f'({lambda_min:.3e}): the matrix is not SPD',
                    klass=NotPositiveDefinite)
    stats = MatrixStats(norm_a=lambda_max,
                        kappa_a=max(lambda_max / lambda_min, 1.),
                        method=mode, lambda_min=lambda_min,
                        lambda_max=lambda_max)
    logger.info(f'Matrix stats ({mode}): ||A|| = {stats.norm_a:.4g}, '
                f'kappa(A) = {stats.kappa_a:.4g}')
    return stats
