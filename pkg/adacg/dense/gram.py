# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np

from .. utils import raise_error
from .. utils.errors import DimensionError

# Relative threshold below which the smallest eigenvalue of a Gram matrix is
# treated as zero (numerically rank deficient basis)
TOL_PD = 1e-14


class GramMatrix(object):

    def __init__(self, entries, s=None):
        """Symmetric Gram matrix ``Y^T Y`` of an s-step basis.

        Parameters
        ----------
        entries : array-like, shape (2s + 1, 2s + 1)
            The matrix. It is stored symmetrized as ``(M + M^T) / 2``.
        s : int | None
            The block parameter. If None, it is inferred from the order.
        """
        entries = np.array(entries, dtype=np.float64, copy=True)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise_error(f'A Gram matrix must be square (got shape '
                        f'{entries.shape})', klass=DimensionError)
        order = entries.shape[0]
        if s is None:
            s = (order - 1) // 2
        if order != 2 * s + 1 or s < 1:
            raise_error(f'A Gram matrix with s={s} must have order '
                        f'{2 * s + 1} (got {order})', klass=DimensionError)
        entries = (entries + entries.T) / 2.
        entries.setflags(write=False)
        self.entries = entries
        self.order = order
        self.s = int(s)

    def truncate(self, i):
        """Gram matrix of the i-step basis held in the leading columns of
        both blocks (see :func:`extract_sub_gram`)."""
        return GramMatrix(extract_sub_gram(self, i), s=i)

    def __repr__(self):
        return f'GramMatrix(s={self.s}, order={self.order})'


def _as_array(g):
    return g.entries if isinstance(g, GramMatrix) else np.asarray(g)


def sym_eigenvalues(m, tol=1e-14, max_sweeps=30):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop when the off-diagonal Frobenius norm falls below
    ``tol * ||m||_F`` or after ``max_sweeps`` sweeps.

    Parameters
    ----------
    m : array-like, shape (k, k)
        A symmetric matrix.
    tol : float
        Relative stopping tolerance. Defaults to 1e-14.
    max_sweeps : int
        Maximum number of sweeps. Defaults to 30.

    Returns
    -------
    eigenvalues : numpy.ndarray, shape (k,)
        The eigenvalues in ascending order.
    """
    a = np.array(_as_array(m), dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise_error(f'Expected a square matrix (got shape {a.shape})',
                    klass=DimensionError)
    a = (a + a.T) / 2.
    k = a.shape[0]
    norm_f = np.linalg.norm(a)
    if k == 1 or norm_f == 0:
        return np.sort(np.diag(a))

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * norm_f:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[p, q]
                if apq == 0.:
                    continue
                theta = (a[q, q] - a[p, p]) / (2. * apq)
                t = 1. / (abs(theta) + np.sqrt(theta * theta + 1.))
                if theta < 0:
                    t = -t
                c = 1. / np.sqrt(t * t + 1.)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                a[p, q] = 0.
                a[q, p] = 0.
    return np.sort(np.diag(a))


def cond_from_gram(g):
    """2-norm condition number of a basis Y from its Gram matrix Y^T Y.

    Parameters
    ----------
    g : GramMatrix or array-like
        The (sub) Gram matrix.

    Returns
    -------
    kappa : float
        ``sqrt(lambda_max / lambda_min)``, or ``numpy.inf`` if the smallest
        eigenvalue is not above ``1e-14 * lambda_max``.
    """
    eigenvalues = sym_eigenvalues(g)
    lambda_min, lambda_max = eigenvalues[0], eigenvalues[-1]
    if not lambda_max > 0 or not lambda_min > TOL_PD * lambda_max:
        return np.inf
    return float(np.sqrt(lambda_max / lambda_min))


def sub_gram_indices(s_bar, i, p_equals_r=False):
    """0-based indices of the columns of the i-step basis inside an
    s_bar-step basis: P columns ``0..i`` and R columns
    ``s_bar+1..s_bar+i``.

    If ``p_equals_r``, the R block repeats the P block and only the P
    columns ``0..i`` are returned.
    """
    if p_equals_r:
        return np.arange(i + 1)
    return np.r_[np.arange(i + 1), s_bar + 1 + np.arange(i)]


def extract_sub_gram(g, i, p_equals_r=False):
    """Gram matrix of the i-step basis contained in an s_bar-step basis.

    Parameters
    ----------
    g : GramMatrix
        Gram matrix built with block parameter ``s_bar = g.s``.
    i : int
        The block parameter of the sub basis, ``1 <= i <= s_bar``.
    p_equals_r : bool
        Whether the basis was built from ``p = r`` (first outer loop). The
        R block then spans no new directions and is left out, so the
        result has order ``i + 1``. Defaults to False.

    Returns
    -------
    sub : numpy.ndarray, shape (2i + 1, 2i + 1) or (i + 1, i + 1)
        The assembled submatrix.
    """
    s_bar = g.s
    if not 1 <= i <= s_bar:
        raise_error(f'Sub basis parameter i={i} out of range [1, {s_bar}]',
                    klass=IndexError)
    idx = sub_gram_indices(s_bar, i, p_equals_r=p_equals_r)
    return g.entries[np.ix_(idx, idx)]


def g_inner(g, u, v):
    """G-weighted inner product ``u^T G v`` of two coordinate vectors"""
    entries = _as_array(g)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    order = entries.shape[0]
    if u.shape != (order, ) or v.shape != (order, ):
        raise_error(f'Coordinate vectors of shapes {u.shape} and {v.shape} '
                    f'do not match a Gram matrix of order {order}',
                    klass=DimensionError)
    return float(u @ (entries @ v))
