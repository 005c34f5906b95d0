# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
from scipy.linalg import eigvalsh
from sklearn.utils import check_random_state
import pytest

from adacg.dense import (GramMatrix, sym_eigenvalues, cond_from_gram,
                         extract_sub_gram, sub_gram_indices, g_inner)
from adacg.utils.errors import DimensionError


def _basis_with_singular_values(n, singular_values, random_state):
    rng = check_random_state(random_state)
    k = len(singular_values)
    u, _ = np.linalg.qr(rng.normal(size=(n, k)))
    v, _ = np.linalg.qr(rng.normal(size=(k, k)))
    return (u * singular_values) @ v.T


@pytest.mark.parametrize('k', [1, 3, 9, 21])
def test_sym_eigenvalues(k):
    """Test the Jacobi eigenvalues against LAPACK"""
    rng = check_random_state(k)
    m = rng.normal(size=(k, k))
    m = m + m.T
    assert_allclose(sym_eigenvalues(m), eigvalsh(m),
                    atol=1e-12 * np.linalg.norm(m))


def test_sym_eigenvalues_special():
    """Test diagonal, zero and non square input"""
    assert_array_equal(sym_eigenvalues(np.diag([3., 1., 2.])), [1., 2., 3.])
    assert_array_equal(sym_eigenvalues(np.zeros((3, 3))), np.zeros(3))
    with pytest.raises(DimensionError, match='square'):
        sym_eigenvalues(np.ones((2, 3)))


@pytest.mark.parametrize('kappa,rtol', [
    (1., 1e-10), (10., 1e-8), (1e3, 1e-6), (1e4, 1e-4)])
def test_cond_from_gram(kappa, rtol):
    """Test the condition number against the SVD of the basis"""
    y = _basis_with_singular_values(50, np.logspace(0, np.log10(kappa), 9),
                                    random_state=0)
    g = GramMatrix(y.T @ y)
    expected = np.linalg.cond(y)
    assert_allclose(cond_from_gram(g), expected, rtol=rtol)


def test_cond_identity_and_singular():
    """Test the extreme cases"""
    assert cond_from_gram(np.eye(5)) == 1.
    assert cond_from_gram(GramMatrix(np.eye(3))) == 1.

    # Two equal columns
    y = np.ones((10, 3))
    y[:, 2] = np.arange(10)
    assert cond_from_gram(y.T @ y) == np.inf
    assert cond_from_gram(np.zeros((3, 3))) == np.inf


def test_gram_matrix():
    """Test the construction checks"""
    m = np.arange(25.).reshape(5, 5)
    g = GramMatrix(m)
    assert g.s == 2
    assert g.order == 5
    assert_array_equal(g.entries, g.entries.T)
    with pytest.raises(ValueError):
        g.entries[0, 0] = 1.

    with pytest.raises(DimensionError, match='square'):
        GramMatrix(np.ones((3, 5)))
    with pytest.raises(DimensionError, match='order 7'):
        GramMatrix(np.eye(5), s=3)
    with pytest.raises(DimensionError, match='order'):
        GramMatrix(np.eye(4))


def test_sub_gram():
    """Test that sub Gram matrices are Gram matrices of column subsets"""
    s_bar = 4
    rng = check_random_state(42)
    y = rng.normal(size=(30, 2 * s_bar + 1))
    g = GramMatrix(y.T @ y)
    assert_array_equal(sub_gram_indices(4, 2), [0, 1, 2, 5, 6])
    assert_array_equal(sub_gram_indices(4, 4), np.arange(9))
    for i in range(1, s_bar + 1):
        idx = sub_gram_indices(s_bar, i)
        y_sub = y[:, idx]
        sub = extract_sub_gram(g, i)
        assert sub.shape == (2 * i + 1, 2 * i + 1)
        assert_allclose(sub, y_sub.T @ y_sub, rtol=1e-12, atol=1e-12)
        truncated = g.truncate(i)
        assert truncated.s == i
        assert_array_equal(truncated.entries, sub)

    assert_array_equal(extract_sub_gram(g, s_bar), g.entries)
    with pytest.raises(IndexError, match='out of range'):
        extract_sub_gram(g, 0)
    with pytest.raises(IndexError, match='out of range'):
        extract_sub_gram(g, s_bar + 1)


def test_g_inner():
    """Test the G weighted inner product"""
    rng = check_random_state(7)
    y = rng.normal(size=(20, 5))
    g = GramMatrix(y.T @ y)
    u = rng.normal(size=5)
    v = rng.normal(size=5)
    assert_allclose(g_inner(g, u, v), (y @ u) @ (y @ v), rtol=1e-10,
                    atol=1e-12)
    assert_allclose(g_inner(g.entries, u, v), g_inner(g, v, u), rtol=1e-10,
                    atol=1e-12)
    with pytest.raises(DimensionError, match='do not match'):
        g_inner(g, np.ones(3), v)


@pytest.mark.parametrize('s_bar', range(1, 11))
def test_sub_gram_all_sizes(s_bar):
    """Test every sub Gram matrix against the Gram matrix of its columns"""
    rng = check_random_state(s_bar)
    y = rng.normal(size=(40, 2 * s_bar + 1))
    g = GramMatrix(y.T @ y)
    for i in range(1, s_bar + 1):
        y_sub = y[:, sub_gram_indices(s_bar, i)]
        assert y_sub.shape[1] == 2 * i + 1
        assert_allclose(extract_sub_gram(g, i), y_sub.T @ y_sub,
                        rtol=1e-12, atol=1e-12)
        # P columns only
        y_p = y[:, :i + 1]
        assert_allclose(extract_sub_gram(g, i, p_equals_r=True),
                        y_p.T @ y_p, rtol=1e-12, atol=1e-12)
    assert_array_equal(sub_gram_indices(s_bar, s_bar, p_equals_r=True),
                       np.arange(s_bar + 1))


@pytest.mark.parametrize('scale', [1e-6, 1e-2, 10., 1e5])
def test_cond_scale_invariance(scale):
    """Test that scaling the basis leaves its condition number unchanged"""
    y = _basis_with_singular_values(30, np.logspace(0, 3, 7),
                                    random_state=3)
    g = y.T @ y
    assert_allclose(cond_from_gram(GramMatrix(scale ** 2 * g)),
                    cond_from_gram(GramMatrix(g)), rtol=1e-8)


@pytest.mark.parametrize('k', [2, 5, 9, 15, 21])
def test_sym_eigenvalues_invariants(k):
    """Test that the eigenvalues keep the trace and the determinant"""
    rng = check_random_state(100 + k)
    m = rng.normal(size=(k, k))
    spd = m @ m.T + k * np.eye(k)
    eigenvalues = sym_eigenvalues(spd)
    assert_allclose(eigenvalues.sum(), np.trace(spd), rtol=1e-12)
    sign, logdet = np.linalg.slogdet(spd)
    assert sign == 1.
    assert_allclose(np.log(eigenvalues).sum(), logdet, rtol=1e-10)
