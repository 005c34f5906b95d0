# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import io
import tempfile
from pathlib import Path

import numpy as np
from numpy.testing import assert_array_equal, assert_allclose
from scipy import sparse
import pytest

from adacg.sparse import (SparseMatrixCsr, parse_matrix_market,
                          read_matrix_market, write_matrix_market, spmv,
                          equilibrate, make_rhs)
from adacg.utils.errors import (ParseError, NotSymmetric, DimensionError,
                                SingularRow, ConfigError, IoError)
from adacg.utils.testing import random_spd, laplacian_2d

_sym_3x3 = """%%MatrixMarket matrix coordinate real symmetric
% a comment
3 3 4
1 1 2.0
2 1 -1.0
2 2 2.0
3 3 1.5
"""


def test_parse_symmetric_expands():
    """Test that a symmetric file is stored with both triangles"""
    a = parse_matrix_market(_sym_3x3)
    assert a.n == 3
    assert a.nnz == 5
    assert_array_equal(a.row_offsets, [0, 2, 4, 5])
    assert_array_equal(a.col_indices, [0, 1, 0, 1, 2])
    assert_array_equal(a.values, [2., -1., -1., 2., 1.5])
    assert a.n_a == 2


def test_parse_two_by_two():
    """Test a symmetric 2x2 matrix"""
    text = ('%%MatrixMarket matrix coordinate real symmetric\n'
            '2 2 3\n1 1 4\n2 1 1\n2 2 3\n')
    a = parse_matrix_market(text)
    assert_array_equal(a.toarray(), [[4., 1.], [1., 3.]])


def test_parse_file_like_and_integer():
    """Test parsing from a stream and promoting integers"""
    text = ('%%MatrixMarket matrix coordinate integer symmetric\n'
            '2 2 2\n1 1 3\n2 2 5\n')
    a = parse_matrix_market(io.StringIO(text))
    assert a.values.dtype == np.float64
    assert_array_equal(a.toarray(), [[3., 0.], [0., 5.]])


def test_parse_general_symmetric_content():
    """Test that a 'general' file with symmetric content is accepted"""
    text = ('%%MatrixMarket matrix coordinate real general\n'
            '2 2 4\n1 1 1\n1 2 0.5\n2 1 0.5\n2 2 1\n')
    a = parse_matrix_market(text)
    assert_array_equal(a.toarray(), [[1., .5], [.5, 1.]])


def test_parse_errors():
    """Test malformed Matrix Market streams"""
    with pytest.raises(ParseError, match='banner'):
        parse_matrix_market('2 2 1\n1 1 1\n')

    with pytest.raises(ParseError, match='coordinate'):
        parse_matrix_market('%%MatrixMarket matrix array real general\n'
                            '2 2\n1\n0\n0\n1\n')

    with pytest.raises(ParseError, match='field'):
        parse_matrix_market('%%MatrixMarket matrix coordinate complex '
                            'symmetric\n1 1 1\n1 1 1 0\n')

    with pytest.raises(ParseError, match='out of range'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'symmetric\n2 2 1\n3 1 1.0\n')

    with pytest.raises(ParseError, match='announces'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'symmetric\n2 2 3\n1 1 1.0\n')

    with pytest.raises(ParseError, match='size line'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'symmetric\n2 x 3\n')


def test_parse_not_symmetric():
    """Test that non symmetric input is rejected"""
    with pytest.raises(NotSymmetric, match='square'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'general\n2 3 1\n1 1 1.0\n')

    with pytest.raises(NotSymmetric, match='not symmetric'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'general\n2 2 4\n1 1 1\n1 2 0.5\n2 1 0.7\n2 2 1\n')

    with pytest.raises(NotSymmetric, match='structurally'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'general\n2 2 3\n1 1 1\n1 2 0.5\n2 2 1\n')

    with pytest.raises(NotSymmetric, match='symmetry'):
        parse_matrix_market('%%MatrixMarket matrix coordinate real '
                            'skew-symmetric\n2 2 1\n2 1 1.0\n')


def test_constructor_validation():
    """Test the CSR invariants"""
    with pytest.raises(DimensionError, match='n\\+1'):
        SparseMatrixCsr(2, [0, 1], [0], [1.])
    with pytest.raises(ParseError, match='nondecreasing'):
        SparseMatrixCsr(2, [0, 2, 1], [0], [1.])
    with pytest.raises(ParseError, match='strictly increasing'):
        SparseMatrixCsr(2, [0, 2, 2], [1, 0], [1., 1.],
                        check_symmetry=False)
    with pytest.raises(ParseError, match='Column indices must be in'):
        SparseMatrixCsr(1, [0, 1], [3], [1.])

    a = SparseMatrixCsr(2, [0, 1, 2], [0, 1], [1., 2.])
    with pytest.raises(ValueError):
        a.values[0] = 3.


def test_from_scipy_and_identity():
    """Test building from scipy matrices"""
    m = sparse.random(30, 30, density=0.1, random_state=0)
    m = (m + m.T).tocoo()
    a = SparseMatrixCsr.from_scipy(m)
    assert_allclose(a.toarray(), m.toarray())

    eye = SparseMatrixCsr.identity(5)
    assert eye.nnz == 5
    assert_array_equal(eye.toarray(), np.eye(5))


def test_write_read_matrix_market():
    """Test writing and reading back a matrix"""
    a = laplacian_2d(4)
    with tempfile.TemporaryDirectory() as tmp:
        path = write_matrix_market(a, Path(tmp) / 'lap.mtx')
        b = read_matrix_market(path)
    assert_array_equal(a.row_offsets, b.row_offsets)
    assert_array_equal(a.col_indices, b.col_indices)
    assert_array_equal(a.values, b.values)


def test_read_missing_file():
    """Test reading a file that does not exist"""
    with pytest.raises(IoError, match='nothere.mtx') as excinfo:
        read_matrix_market('/nonexistent/nothere.mtx')
    assert excinfo.value.path is not None


def test_spmv():
    """Test the product against the dense product"""
    dense = random_spd(20, 100., random_state=1)
    a = SparseMatrixCsr.from_dense(dense)
    v = np.linspace(-1, 1, 20)
    assert_allclose(spmv(a, v), dense @ v, rtol=1e-12)
    # bitwise reproducible
    assert_array_equal(spmv(a, v), spmv(a, v))

    with pytest.raises(DimensionError, match='does not match'):
        spmv(a, np.ones(3))


def test_equilibrate():
    """Test the scaling by the row maxima"""
    a = SparseMatrixCsr.from_dense([[4., 2.], [2., 1.]])
    scaled, d = equilibrate(a)
    assert_array_equal(d, [4., 2.])
    assert_allclose(scaled.toarray(), [[1., 1. / np.sqrt(2.)],
                                       [1. / np.sqrt(2.), .5]])

    dense = random_spd(15, 1e3, random_state=2)
    scaled, d = equilibrate(SparseMatrixCsr.from_dense(dense))
    expected = dense / np.sqrt(np.outer(d, d))
    assert_allclose(scaled.toarray(), expected, rtol=1e-14)
    assert_array_equal(scaled.toarray(), scaled.toarray().T)
    assert np.all(np.abs(scaled.toarray()) <= 1. + 1e-15)

    with pytest.raises(SingularRow, match='no nonzero'):
        equilibrate(SparseMatrixCsr(2, [0, 1, 1], [0], [1.]))


def test_make_rhs():
    """Test the default right-hand side"""
    b = make_rhs(900)
    assert_allclose(b, 1. / 30.)
    assert_allclose(np.linalg.norm(b), 1., rtol=1e-14)
    with pytest.raises(ConfigError, match='positive'):
        make_rhs(0)
