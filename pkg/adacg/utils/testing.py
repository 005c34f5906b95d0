# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from numpy.testing import assert_allclose
from scipy import sparse
from sklearn.utils import check_random_state

from .. sparse import SparseMatrixCsr, read_matrix_market, equilibrate


def random_spd(n, kappa, random_state=None):
    """Dense random SPD matrix with eigenvalues log-spaced in [1, kappa]"""
    rng = check_random_state(random_state)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    eigenvalues = np.logspace(0, np.log10(kappa), n)
    m = (q * eigenvalues) @ q.T
    return (m + m.T) / 2.


def random_spd_csr(n, kappa, random_state=None):
    """:func:`random_spd` as a SparseMatrixCsr"""
    return SparseMatrixCsr.from_dense(random_spd(n, kappa, random_state))


def laplacian_1d(n):
    """Tridiagonal [-1, 2, -1] matrix"""
    m = sparse.diags([-np.ones(n - 1), 2 * np.ones(n), -np.ones(n - 1)],
                     [-1, 0, 1], format='csr')
    return SparseMatrixCsr.from_scipy(m)


def laplacian_2d(k):
    """5-point Laplacian on a k x k grid (n = k^2)"""
    t = sparse.diags([-np.ones(k - 1), 2 * np.ones(k), -np.ones(k - 1)],
                     [-1, 0, 1])
    eye = sparse.identity(k)
    m = (sparse.kron(t, eye) + sparse.kron(eye, t)).tocsr()
    return SparseMatrixCsr.from_scipy(m)


def nine_point_laplacian(k):
    """9-point Laplacian on a k x k grid (n = k^2): 8 on the diagonal and
    -1 for every neighbour, diagonal ones included. ``k = 30`` is the
    gr_30_30 matrix of the test collection."""
    t = sparse.diags([np.ones(k - 1), np.ones(k), np.ones(k - 1)],
                     [-1, 0, 1])
    m = (9. * sparse.identity(k * k) - sparse.kron(t, t)).tocsr()
    return SparseMatrixCsr.from_scipy(m)


# Reference matrices rebuilt here when the file has not been fetched
_generated_references = {
    'gr_30_30': lambda: nine_point_laplacian(30),
}


def power_basis(a, p, r, s):
    """Monomial s-step basis from dense matrix powers"""
    dense = a.toarray() if hasattr(a, 'toarray') else np.asarray(a)
    cols = [np.linalg.matrix_power(dense, j) @ p for j in range(s + 1)]
    cols += [np.linalg.matrix_power(dense, j) @ r for j in range(s)]
    return np.column_stack(cols)


def assert_trajectories_close(t1, t2, rtol, column='upd_resid', n_rows=None):
    """Compare one column of two traces, row by row"""
    v1 = t1.to_frame()[column].values
    v2 = t2.to_frame()[column].values
    if n_rows is None:
        n_rows = min(len(v1), len(v2))
    assert len(v1) >= n_rows and len(v2) >= n_rows
    assert_allclose(v1[:n_rows], v2[:n_rows], rtol=rtol)


def get_reference_matrix(name, do_equilibrate=True):
    """Load a reference matrix from ``ADACG_DATA_DIR``.

    Matrices with a generator (gr_30_30) are built when the file is not
    there. For the others the calling test is skipped.
    """
    import pytest
    from .. harness import data_dir

    path = data_dir() / f'{name}.mtx'
    if path.exists():
        matrix = read_matrix_market(path)
    elif name in _generated_references:
        matrix = _generated_references[name]()
    else:
        pytest.skip(f'{path.as_posix()} not available (set ADACG_DATA_DIR '
                    'or run "adacg fetch")')
    if do_equilibrate:
        matrix, _ = equilibrate(matrix)
    return matrix
