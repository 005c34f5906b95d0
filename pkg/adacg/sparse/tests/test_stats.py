# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from numpy.testing import assert_allclose
import pytest

from adacg.dense import sym_eigenvalues
from adacg.sparse import (SparseMatrixCsr, estimate_stats, MatrixStats,
                          lanczos_extreme_eigenvalues)
from adacg.utils.errors import ConfigError, NotPositiveDefinite
from adacg.utils.testing import random_spd_csr, laplacian_2d


def test_exact_dense():
    """Test the dense estimates on a matrix with known spectrum"""
    a = random_spd_csr(40, 1e4, random_state=0)
    stats = estimate_stats(a)
    assert stats.method == 'exact-dense'
    assert_allclose(stats.norm_a, 1e4, rtol=1e-10)
    assert_allclose(stats.kappa_a, 1e4, rtol=1e-8)

    eye = estimate_stats(SparseMatrixCsr.identity(7))
    assert_allclose(eye.kappa_a, 1.)
    assert_allclose(eye.norm_a, 1.)


def test_exact_dense_matches_jacobi():
    """Test the LAPACK eigenvalues against the Jacobi solver"""
    a = laplacian_2d(5)
    stats = estimate_stats(a)
    eigenvalues = sym_eigenvalues(a.toarray())
    assert_allclose(stats.norm_a, eigenvalues[-1], rtol=1e-12)
    assert_allclose(stats.kappa_a, eigenvalues[-1] / eigenvalues[0],
                    rtol=1e-10)


def test_lanczos():
    """Test that Lanczos estimates match the exact values"""
    a = random_spd_csr(40, 100., random_state=3)
    exact = estimate_stats(a, mode='exact-dense')
    approx = estimate_stats(a, mode='lanczos', budget=40)
    assert_allclose(approx.norm_a, exact.norm_a, rtol=1e-8)
    assert_allclose(approx.kappa_a, exact.kappa_a, rtol=1e-6)

    # Fewer steps give inner estimates
    lambda_min, lambda_max = lanczos_extreme_eigenvalues(a, 10)
    assert lambda_min >= exact.lambda_min * (1 - 1e-12)
    assert lambda_max <= exact.lambda_max * (1 + 1e-12)


def test_lanczos_invariant_subspace():
    """Test early termination on a multiple of the identity"""
    eye = SparseMatrixCsr.from_dense(3. * np.eye(5))
    lambda_min, lambda_max = lanczos_extreme_eigenvalues(eye, 50)
    assert_allclose([lambda_min, lambda_max], [3., 3.])


def test_user_supplied():
    """Test user supplied stats"""
    a = SparseMatrixCsr.identity(3)
    stats = estimate_stats(a, mode='user-supplied', norm_a=2., kappa_a=10.)
    assert stats.norm_a == 2.
    assert stats.kappa_a == 10.
    with pytest.raises(ConfigError, match='must be specified'):
        estimate_stats(a, mode='user-supplied')


def test_stats_errors():
    """Test invalid modes and matrices"""
    a = SparseMatrixCsr.identity(3)
    with pytest.raises(ConfigError, match='Unknown stats mode'):
        estimate_stats(a, mode='magic')
    with pytest.raises(ConfigError, match='dense cap'):
        estimate_stats(a, dense_cap=2)
    with pytest.raises(ConfigError, match='kappa_a'):
        MatrixStats(1., .5, 'user-supplied')

    indefinite = SparseMatrixCsr.from_dense([[1., 0.], [0., -1.]])
    with pytest.raises(NotPositiveDefinite, match='not SPD'):
        estimate_stats(indefinite)
