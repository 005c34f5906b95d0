# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from scipy import sparse

from . available_bases import get_basis_coefficients, list_bases
from .. dense import GramMatrix, sub_gram_indices
from .. sparse import spmv
from .. utils import raise_error
from .. utils.errors import ConfigError, DimensionError


class BasisSpec(object):

    def __init__(self, family='monomial'):
        """Polynomial family used to build s-step bases.

        The polynomials satisfy the three-term recurrence
        ``rho_0 = 1``, ``rho_1 = (z - theta_0) rho_0 / gamma_0`` and
        ``rho_j = ((z - theta_{j-1}) rho_{j-1} - sigma_{j-2} rho_{j-2})
        / gamma_{j-1}``.

        Parameters
        ----------
        family : str
            The basis name. See :func:`.list_bases`.
        """
        if family not in list_bases():
            raise_error(f'The specified basis ({family}) is not available. '
                        f'Valid options are: {list_bases()}',
                        klass=ConfigError)
        self.family = family

    def coefficients(self, s):
        """Recurrence coefficients (theta, gamma, sigma), each of length s"""
        theta, gamma, sigma = get_basis_coefficients(self.family, s)
        if np.any(gamma == 0):
            raise_error('gamma coefficients must be nonzero',
                        klass=ConfigError)
        return theta, gamma, sigma

    def b_norm(self, s):
        """2-norm of the change-of-basis matrix for block parameter s"""
        return assemble_b(self, s).norm()

    def __repr__(self):
        return f'BasisSpec(family={self.family!r})'


class BasisMatrix(object):

    def __init__(self, columns, s):
        """The s-step basis ``Y = [P, R]`` with ``2s + 1`` columns.

        Columns ``0..s`` hold ``rho_j(A) p`` and columns ``s+1..2s`` hold
        ``rho_j(A) r``.
        """
        columns = np.asarray(columns)
        if columns.ndim != 2 or columns.shape[1] != 2 * s + 1:
            raise_error(f'A basis with s={s} must have {2 * s + 1} columns '
                        f'(got shape {columns.shape})', klass=DimensionError)
        columns.setflags(write=False)
        self.columns = columns
        self.n = columns.shape[0]
        self.s = int(s)

    @property
    def p_block(self):
        return self.columns[:, :self.s + 1]

    @property
    def r_block(self):
        return self.columns[:, self.s + 1:]

    def truncate(self, i):
        """The i-step basis held in the leading columns of both blocks"""
        if not 1 <= i <= self.s:
            raise_error(f'Sub basis parameter i={i} out of range '
                        f'[1, {self.s}]', klass=IndexError)
        if i == self.s:
            return self
        idx = sub_gram_indices(self.s, i)
        return BasisMatrix(np.asfortranarray(self.columns[:, idx]), i)

    def underline(self):
        """Copy of the basis with the last column of each block zeroed"""
        out = np.array(self.columns, copy=True)
        out[:, self.s] = 0.
        out[:, 2 * self.s] = 0.
        return out

    def __repr__(self):
        return f'BasisMatrix(n={self.n}, s={self.s})'


class ChangeOfBasis(object):

    def __init__(self, s, rows, cols, values):
        """Change-of-basis matrix B with ``A Y_ = Y B``.

        Stored as (row, col, value) triplets. The last column of each block
        (``s`` and ``2s``, 0-based) is identically zero.
        """
        order = 2 * s + 1
        self.s = int(s)
        self.entries = sparse.coo_matrix((values, (rows, cols)),
                                         shape=(order, order)).tocsr()
        dense = self.entries.toarray()
        if np.any(dense[:, s] != 0) or np.any(dense[:, 2 * s] != 0):
            raise_error('Columns s and 2s of the change-of-basis matrix '
                        'must be zero', klass=ConfigError)
        dense.setflags(write=False)
        self.dense = dense

    def norm(self):
        return float(np.linalg.norm(self.dense, 2))

    def toarray(self):
        return np.array(self.dense)

    def __repr__(self):
        return f'ChangeOfBasis(s={self.s}, nnz={self.entries.nnz})'


def _fill_block(a, v, out, theta, gamma, sigma):
    """Write rho_0(A) v, ..., rho_{k-1}(A) v into the k columns of out"""
    out[:, 0] = v
    for j in range(1, out.shape[1]):
        w = spmv(a, out[:, j - 1])
        if theta[j - 1] != 0:
            w = w - theta[j - 1] * out[:, j - 1]
        if j >= 2 and sigma[j - 2] != 0:
            w = w - sigma[j - 2] * out[:, j - 2]
        if gamma[j - 1] != 1:
            w = w / gamma[j - 1]
        out[:, j] = w


def build_basis(a, p, r, s, spec=None):
    """Compute the s-step basis ``Y = [P, R]``.

    ``P = [rho_0(A) p, ..., rho_s(A) p]`` and
    ``R = [rho_0(A) r, ..., rho_{s-1}(A) r]``, which takes ``2s - 1``
    matrix-vector products.

    Parameters
    ----------
    a : SparseMatrixCsr
        The matrix.
    p, r : numpy.ndarray, shape (n,)
        The current search direction and residual.
    s : int
        The block parameter (``s >= 1``).
    spec : BasisSpec | None
        The polynomial family. Defaults to the monomial basis.

    Returns
    -------
    basis : BasisMatrix
        The basis.
    """
    if s < 1:
        raise_error(f'The block parameter s must be >= 1 (got {s})',
                    klass=ConfigError)
    if spec is None:
        spec = BasisSpec()
    p = np.asarray(p, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    if p.shape != (a.n, ) or r.shape != (a.n, ):
        raise_error(f'Starting vectors of shapes {p.shape} and {r.shape} do '
                    f'not match a matrix of dimension {a.n}',
                    klass=DimensionError)
    theta, gamma, sigma = spec.coefficients(s)
    columns = np.empty((a.n, 2 * s + 1), order='F')
    _fill_block(a, p, columns[:, :s + 1], theta, gamma, sigma)
    _fill_block(a, r, columns[:, s + 1:], theta, gamma, sigma)
    return BasisMatrix(columns, s)


def assemble_b(spec, s):
    """Assemble the change-of-basis matrix B for block parameter s.

    Column ``c`` of a block holds ``gamma_c`` at row ``c + 1``, ``theta_c``
    at row ``c`` and ``sigma_{c-1}`` at row ``c - 1``, so that
    ``A rho_c(A) v = Y B e_c``.

    Parameters
    ----------
    spec : BasisSpec | None
        The polynomial family. Defaults to the monomial basis.
    s : int
        The block parameter.

    Returns
    -------
    b : ChangeOfBasis
        The (2s + 1) x (2s + 1) matrix.
    """
    if s < 1:
        raise_error(f'The block parameter s must be >= 1 (got {s})',
                    klass=ConfigError)
    if spec is None:
        spec = BasisSpec()
    theta, gamma, sigma = spec.coefficients(s)
    rows, cols, values = [], [], []
    # (offset, number of columns) of the P and R blocks
    for offset, n_cols in [(0, s + 1), (s + 1, s)]:
        for c in range(n_cols - 1):
            col = offset + c
            rows.append(col + 1)
            cols.append(col)
            values.append(gamma[c])
            if theta[c] != 0:
                rows.append(col)
                cols.append(col)
                values.append(theta[c])
            if c >= 1 and sigma[c - 1] != 0:
                rows.append(col - 1)
                cols.append(col)
                values.append(sigma[c - 1])
    return ChangeOfBasis(s, rows, cols, values)


def compute_gram(y):
    """Gram matrix ``Y^T Y`` of a basis (one global reduction)"""
    return GramMatrix(y.columns.T @ y.columns, s=y.s)


def recover_iterates(y, xp, rp, pp, x_base):
    """Recover full vectors from their coordinates in the basis.

    Parameters
    ----------
    y : BasisMatrix
        The basis.
    xp, rp, pp : numpy.ndarray, shape (2s + 1,)
        Coordinates of ``x - x_base``, ``r`` and ``p``.
    x_base : numpy.ndarray, shape (n,)
        The approximate solution at the start of the block.

    Returns
    -------
    x, r, p : numpy.ndarray, shape (n,)
        ``Y xp + x_base``, ``Y rp`` and ``Y pp``.
    """
    order = 2 * y.s + 1
    for name, coords in [('xp', xp), ('rp', rp), ('pp', pp)]:
        if np.shape(coords) != (order, ):
            raise_error(f'Coordinates {name} of shape {np.shape(coords)} do '
                        f'not match a basis with {order} columns',
                        klass=DimensionError)
    if np.shape(x_base) != (y.n, ):
        raise_error(f'x_base of shape {np.shape(x_base)} does not match '
                    f'the basis dimension {y.n}', klass=DimensionError)
    x = y.columns @ xp + x_base
    r = y.columns @ rp
    p = y.columns @ pp
    return x, r, p
