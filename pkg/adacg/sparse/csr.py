# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import io
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.io import mmread, mmwrite

from .. utils import raise_error, logger
from .. utils.errors import (ParseError, NotSymmetric, DimensionError,
                             SingularRow, ConfigError, IoError)

_mm_banner = '%%matrixmarket'
_mm_fields = ['real', 'integer']
_mm_symmetries = ['symmetric', 'general']

# Relative tolerance for the symmetry check of 'general' files
_general_symmetry_rtol = 1e-12


def _readonly(arr, dtype):
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


class SparseMatrixCsr(object):

    def __init__(self, n, row_offsets, col_indices, values,
                 check_symmetry=True):
        """Symmetric sparse matrix in compressed sparse row storage.

        Both triangles are stored. Instances are immutable: the arrays are
        flagged read-only after validation.

        Parameters
        ----------
        n : int
            The dimension of the (square) matrix.
        row_offsets : array-like of int, shape (n + 1,)
            Row pointers. Row ``r`` is stored in
            ``[row_offsets[r], row_offsets[r + 1])``.
        col_indices : array-like of int
            Column index of each stored value, strictly increasing within
            each row.
        values : array-like of float
            The stored values.
        check_symmetry : bool
            If True (default), check that the pattern is structurally
            symmetric and that mirrored values are identical.

        Attributes
        ----------
        n_a : int
            Maximum number of stored entries in a row.
        """
        if int(n) < 1:
            raise_error(f'The dimension must be positive (got {n})',
                        klass=DimensionError)
        self.n = int(n)
        self.row_offsets = _readonly(row_offsets, np.int64)
        self.col_indices = _readonly(col_indices, np.int64)
        self.values = _readonly(values, np.float64)
        self._validate()
        row_counts = np.diff(self.row_offsets)
        self.n_a = int(row_counts.max()) if self.n > 0 else 0
        self._csr = sparse.csr_matrix(
            (self.values, self.col_indices, self.row_offsets),
            shape=(self.n, self.n))
        if check_symmetry:
            _check_symmetry(self._csr, rtol=0.)

    def _validate(self):
        n = self.n
        offsets = self.row_offsets
        if offsets.shape != (n + 1, ):
            raise_error(f'row_offsets must have length n+1 ({n + 1}), '
                        f'got {offsets.shape[0]}', klass=DimensionError)
        if offsets[0] != 0:
            raise_error('row_offsets[0] must be 0', klass=ParseError)
        if np.any(np.diff(offsets) < 0):
            raise_error('row_offsets must be nondecreasing', klass=ParseError)
        nnz = self.values.shape[0]
        if offsets[n] != nnz or self.col_indices.shape[0] != nnz:
            raise_error(
                f'row_offsets[n] ({offsets[n]}), the number of column '
                f'indices ({self.col_indices.shape[0]}) and the number of '
                f'values ({nnz}) must agree', klass=ParseError)
        cols = self.col_indices
        if nnz > 0 and (cols.min() < 0 or cols.max() >= n):
            raise_error(f'Column indices must be in [0, {n})',
                        klass=ParseError)
        if nnz > 1:
            # Consecutive pairs that belong to the same row
            same_row = np.ones(nnz - 1, dtype=bool)
            starts = offsets[1:-1]
            starts = starts[(starts > 0) & (starts < nnz)]
            same_row[starts - 1] = False
            if np.any(np.diff(cols)[same_row] <= 0):
                raise_error('Column indices must be strictly increasing '
                            'within each row', klass=ParseError)

    @classmethod
    def from_scipy(cls, matrix, check_symmetry=True, rtol=0.):
        """Build from any scipy sparse matrix (duplicates are summed).

        Parameters
        ----------
        matrix : scipy.sparse matrix
            A square sparse matrix.
        check_symmetry : bool
            Check numerical symmetry (default True).
        rtol : float
            Relative tolerance of the symmetry check. Defaults to 0 (exact).

        Returns
        -------
        out : SparseMatrixCsr
            The matrix in CSR storage.
        """
        if matrix.shape[0] != matrix.shape[1]:
            raise_error(f'The matrix must be square (got {matrix.shape})',
                        klass=NotSymmetric)
        csr = sparse.csr_matrix(matrix, dtype=np.float64, copy=True)
        csr.sum_duplicates()
        csr.sort_indices()
        if check_symmetry:
            _check_symmetry(csr, rtol=rtol)
        return cls(csr.shape[0], csr.indptr, csr.indices, csr.data,
                   check_symmetry=False)

    @classmethod
    def from_dense(cls, matrix, check_symmetry=True):
        """Build from a dense array, storing only its nonzero entries"""
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        return cls.from_scipy(sparse.csr_matrix(matrix),
                              check_symmetry=check_symmetry)

    @classmethod
    def identity(cls, n):
        """The n x n identity matrix"""
        return cls.from_scipy(sparse.identity(n, format='csr'))

    @property
    def nnz(self):
        return self.values.shape[0]

    @property
    def shape(self):
        return (self.n, self.n)

    def to_scipy(self):
        """Return a scipy.sparse.csr_matrix sharing the (read-only) data"""
        return self._csr

    def toarray(self):
        return self._csr.toarray()

    def __repr__(self):
        return (f'SparseMatrixCsr(n={self.n}, nnz={self.nnz}, '
                f'n_a={self.n_a})')


def _check_symmetry(csr, rtol):
    """Check structural and numerical symmetry of a CSR matrix"""
    if csr.shape[0] != csr.shape[1]:
        raise_error(f'The matrix must be square (got {csr.shape})',
                    klass=NotSymmetric)
    pattern = csr.copy()
    pattern.data = np.ones_like(pattern.data)
    pattern_diff = (pattern - pattern.T)
    pattern_diff.eliminate_zeros()
    if pattern_diff.nnz > 0:
        raise_error('The stored pattern is not structurally symmetric',
                    klass=NotSymmetric)
    diff = abs(csr - csr.T)
    max_diff = diff.max() if diff.nnz > 0 else 0.
    scale = abs(csr).max() if csr.nnz > 0 else 0.
    if max_diff > rtol * scale:
        raise_error(
            f'The matrix is not symmetric (max |A - A^T| = {max_diff:.3e}, '
            f'tolerance {rtol * scale:.3e})', klass=NotSymmetric)


def _parse_banner(line):
    tokens = line.strip().lower().split()
    if len(tokens) == 0 or tokens[0] != _mm_banner:
        raise_error('The stream does not start with a "%%MatrixMarket" '
                    'banner', klass=ParseError)
    if len(tokens) != 5:
        raise_error(f'Malformed Matrix Market banner: {line.strip()}',
                    klass=ParseError)
    _, obj, fmt, field, symmetry = tokens
    if obj != 'matrix' or fmt != 'coordinate':
        raise_error(f'Only "matrix coordinate" files are supported '
                    f'(got "{obj} {fmt}")', klass=ParseError)
    if field not in _mm_fields:
        raise_error(f'Unsupported Matrix Market field "{field}". '
                    f'Valid options are: {_mm_fields}', klass=ParseError)
    if symmetry not in _mm_symmetries:
        raise_error(f'Unsupported Matrix Market symmetry "{symmetry}". '
                    f'Valid options are: {_mm_symmetries}',
                    klass=NotSymmetric)
    return field, symmetry


def _check_coordinates(content):
    """Validate the size line and the 1-based indices of the entries"""
    lines = [t_line for t_line in content.splitlines()[1:]
             if t_line.strip() != '' and not t_line.startswith('%')]
    if len(lines) == 0:
        raise_error('Missing size line in Matrix Market stream',
                    klass=ParseError)
    try:
        n_rows, n_cols, nnz = [int(x) for x in lines[0].split()]
    except ValueError:
        raise_error(f'Malformed size line: {lines[0]}', klass=ParseError)
    if n_rows != n_cols:
        raise_error(f'The matrix must be square (got {n_rows}x{n_cols})',
                    klass=NotSymmetric)
    entries = lines[1:]
    if len(entries) != nnz:
        raise_error(f'The size line announces {nnz} entries but '
                    f'{len(entries)} were found', klass=ParseError)
    if nnz == 0:
        return
    try:
        idx = np.array([t_line.split()[:2] for t_line in entries],
                       dtype=np.int64)
    except ValueError:
        raise_error('Malformed entry line in Matrix Market stream',
                    klass=ParseError)
    if idx.min() < 1 or idx.max() > n_rows:
        raise_error(f'Entry index out of range [1, {n_rows}]',
                    klass=ParseError)


def parse_matrix_market(text):
    """Parse a Matrix Market coordinate stream into a SparseMatrixCsr.

    Symmetric input is expanded to full storage, duplicate entries are summed
    and integer values are promoted to float.

    Parameters
    ----------
    text : str or file-like
        The Matrix Market content (or a text stream to read it from).

    Returns
    -------
    out : SparseMatrixCsr
        The parsed matrix.

    Raises
    ------
    ParseError
        If the banner or any entry is malformed, or an index is out of range.
    NotSymmetric
        If the matrix is not square or its content is not symmetric.
    """
    content = text.read() if hasattr(text, 'read') else text
    if isinstance(content, bytes):
        content = content.decode('ascii', errors='replace')
    first_line = content.split('\n', 1)[0]
    _, symmetry = _parse_banner(first_line)
    _check_coordinates(content)

    try:
        coo = mmread(io.BytesIO(content.encode('ascii', errors='replace')))
    except (ValueError, IndexError, OverflowError, TypeError) as e:
        raise_error(f'Could not parse Matrix Market stream: {e}',
                    klass=ParseError)
    if not sparse.issparse(coo):
        raise_error('Matrix Market stream did not contain a sparse matrix',
                    klass=ParseError)
    rtol = 0. if symmetry == 'symmetric' else _general_symmetry_rtol
    out = SparseMatrixCsr.from_scipy(coo.astype(np.float64), rtol=rtol)
    logger.info(f'Parsed Matrix Market matrix: n={out.n}, nnz={out.nnz}, '
                f'n_a={out.n_a}')
    return out


def read_matrix_market(path):
    """Read a Matrix Market file from disk.

    Parameters
    ----------
    path : str or Path
        The file to read.

    Returns
    -------
    out : SparseMatrixCsr
        The parsed matrix.
    """
    path = Path(path)
    try:
        with open(path, 'r') as fid:
            content = fid.read()
    except OSError as e:
        raise_error(f'Could not read matrix file {path}: {e}', klass=IoError,
                    path=path)
    logger.info(f'Reading matrix from {path.as_posix()}')
    return parse_matrix_market(content)


def write_matrix_market(a, path):
    """Write a SparseMatrixCsr as a symmetric Matrix Market file"""
    path = Path(path)
    try:
        mmwrite(str(path), a.to_scipy(), symmetry='symmetric')
    except OSError as e:
        raise_error(f'Could not write matrix file {path}: {e}',
                    klass=IoError, path=path)
    return path


def spmv(a, v):
    """Sparse matrix-vector product.

    Each row is summed in ascending column order, so the result is bitwise
    reproducible.

    Parameters
    ----------
    a : SparseMatrixCsr
        The matrix.
    v : numpy.ndarray, shape (n,)
        The vector.

    Returns
    -------
    out : numpy.ndarray, shape (n,)
        The product ``a @ v``.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (a.n, ):
        raise_error(f'Vector of shape {v.shape} does not match a matrix of '
                    f'dimension {a.n}', klass=DimensionError)
    return a.to_scipy() @ v


def equilibrate(a):
    """Symmetric diagonal scaling by the largest absolute entry of each row.

    Returns ``A'`` with ``A'[i, j] = A[i, j] / sqrt(d_i * d_j)`` where
    ``d_i = max_j |A[i, j]|``.

    Parameters
    ----------
    a : SparseMatrixCsr
        The matrix to scale.

    Returns
    -------
    scaled : SparseMatrixCsr
        The equilibrated matrix.
    scaling : numpy.ndarray, shape (n,)
        The row maxima ``d_i``.
    """
    csr = a.to_scipy()
    scaling = np.asarray(abs(csr).max(axis=1).todense()).ravel()
    zero_rows = np.flatnonzero(scaling <= 0)
    if zero_rows.size > 0:
        raise_error(f'Cannot equilibrate: rows {zero_rows[:10].tolist()} '
                    'have no nonzero entry', klass=SingularRow)
    rows = np.repeat(np.arange(a.n), np.diff(a.row_offsets))
    values = a.values / np.sqrt(scaling[rows] * scaling[a.col_indices])
    scaled = SparseMatrixCsr(a.n, a.row_offsets, a.col_indices, values,
                             check_symmetry=False)
    scaling.setflags(write=False)
    return scaled, scaling


def make_rhs(n):
    """Right-hand side with every entry equal to 1/sqrt(n) (unit 2-norm)"""
    if int(n) < 1:
        raise_error(f'The dimension must be positive (got {n})',
                    klass=ConfigError)
    return np.full(int(n), 1. / np.sqrt(n))
