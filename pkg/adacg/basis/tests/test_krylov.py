# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
import pytest

from adacg.basis import (BasisSpec, BasisMatrix, ChangeOfBasis, build_basis,
                         assemble_b, compute_gram, recover_iterates,
                         list_bases, get_basis_coefficients)
from adacg.dense import cond_from_gram, extract_sub_gram
from adacg.utils.errors import ConfigError, DimensionError
from adacg.utils.testing import laplacian_1d, power_basis, random_spd_csr


def _start_vectors(n):
    p = np.linspace(1, 2, n)
    r = np.cos(np.arange(n))
    return p, r


def test_available_bases():
    """Test the basis registry"""
    assert list_bases() == ['monomial']
    theta, gamma, sigma = get_basis_coefficients('monomial', 3)
    assert_array_equal(theta, np.zeros(3))
    assert_array_equal(gamma, np.ones(3))
    assert_array_equal(sigma, np.zeros(3))
    with pytest.raises(ConfigError, match='not available'):
        get_basis_coefficients('chebyshev-foo', 3)
    with pytest.raises(ConfigError, match='not available'):
        BasisSpec('newton-foo')


@pytest.mark.parametrize('s', [1, 2, 4, 6])
def test_build_basis(s):
    """Test the monomial basis against dense matrix powers"""
    a = laplacian_1d(25)
    p, r = _start_vectors(25)
    y = build_basis(a, p, r, s)
    assert y.s == s
    assert y.columns.shape == (25, 2 * s + 1)
    assert y.columns.flags['F_CONTIGUOUS']
    assert_allclose(y.columns, power_basis(a, p, r, s), rtol=1e-10,
                    atol=1e-9)
    assert_array_equal(y.p_block[:, 0], p)
    assert_array_equal(y.r_block[:, 0], r)
    with pytest.raises(ValueError):
        y.columns[0, 0] = 1.


@pytest.mark.parametrize('s', [1, 3, 5])
def test_change_of_basis_identity(s):
    """Test A times the underlined basis equals Y B"""
    a = random_spd_csr(30, 10., random_state=s)
    p, r = _start_vectors(30)
    y = build_basis(a, p, r, s)
    b = assemble_b(BasisSpec(), s)
    lhs = a.toarray() @ y.underline()
    assert_allclose(lhs, y.columns @ b.dense, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize('s', [1, 2, 8])
def test_monomial_b(s):
    """Test the structure of the monomial change-of-basis matrix"""
    b = assemble_b(None, s)
    dense = b.toarray()
    assert dense.shape == (2 * s + 1, 2 * s + 1)
    assert_array_equal(dense[:, s], 0.)
    assert_array_equal(dense[:, 2 * s], 0.)
    assert b.entries.nnz == 2 * s - 1
    for c in range(s):
        assert dense[c + 1, c] == 1.
    for c in range(s - 1):
        assert dense[s + 2 + c, s + 1 + c] == 1.
    assert_allclose(b.norm(), 1.)
    assert_allclose(BasisSpec().b_norm(s), 1.)


def test_change_of_basis_checks():
    """Test invalid change-of-basis matrices"""
    with pytest.raises(ConfigError, match='must be zero'):
        ChangeOfBasis(1, [0], [1], [1.])
    with pytest.raises(ConfigError, match='s must be >= 1'):
        assemble_b(None, 0)
    b = assemble_b(None, 2)
    with pytest.raises(ValueError):
        b.dense[0, 0] = 1.


def test_truncate_and_gram():
    """Test that truncating the basis matches truncating the Gram matrix"""
    s_bar = 5
    a = laplacian_1d(40)
    p, r = _start_vectors(40)
    y = build_basis(a, p, r, s_bar)
    g = compute_gram(y)
    assert g.s == s_bar
    assert_allclose(g.entries, y.columns.T @ y.columns, rtol=1e-12,
                    atol=1e-10)
    assert y.truncate(s_bar) is y
    for i in range(1, s_bar):
        y_i = y.truncate(i)
        assert y_i.s == i
        # The leading columns of a larger basis are the smaller basis
        assert_array_equal(y_i.columns, build_basis(a, p, r, i).columns)
        assert_allclose(compute_gram(y_i).entries, extract_sub_gram(g, i),
                        rtol=1e-12, atol=1e-10)
    with pytest.raises(IndexError, match='out of range'):
        y.truncate(0)
    with pytest.raises(IndexError, match='out of range'):
        y.truncate(s_bar + 1)


def test_monomial_conditioning_grows():
    """Test that the monomial basis gets worse conditioned with s"""
    a = laplacian_1d(50)
    p, r = _start_vectors(50)
    kappas = [cond_from_gram(compute_gram(build_basis(a, p, r, s)))
              for s in range(1, 6)]
    assert np.all(np.diff(kappas) >= 0)
    assert kappas[-1] > 10. * kappas[0]


def test_recover_iterates():
    """Test recovering vectors from coordinates"""
    s = 3
    a = laplacian_1d(20)
    p, r = _start_vectors(20)
    y = build_basis(a, p, r, s)
    x_base = np.ones(20)
    xp = np.zeros(2 * s + 1)
    rp = np.zeros(2 * s + 1)
    pp = np.zeros(2 * s + 1)
    rp[s + 1] = 1.
    pp[0] = 1.
    xp[1] = 2.
    x, r_out, p_out = recover_iterates(y, xp, rp, pp, x_base)
    assert_allclose(r_out, r)
    assert_allclose(p_out, p)
    assert_allclose(x, 2. * y.columns[:, 1] + x_base)

    with pytest.raises(DimensionError, match='xp'):
        recover_iterates(y, np.zeros(3), rp, pp, x_base)
    with pytest.raises(DimensionError, match='x_base'):
        recover_iterates(y, xp, rp, pp, np.ones(3))


def test_build_basis_errors():
    """Test invalid basis construction"""
    a = laplacian_1d(10)
    with pytest.raises(ConfigError, match='s must be >= 1'):
        build_basis(a, np.ones(10), np.ones(10), 0)
    with pytest.raises(DimensionError, match='do not match'):
        build_basis(a, np.ones(9), np.ones(10), 2)
    with pytest.raises(DimensionError, match='columns'):
        BasisMatrix(np.ones((10, 4)), 2)


@pytest.mark.parametrize('random_state', range(100))
def test_change_of_basis_random(random_state):
    """Test A times the underlined basis equals Y B on random instances"""
    rng = np.random.RandomState(random_state)
    s = 1 + random_state % 10
    n = 20 + random_state % 17
    a = random_spd_csr(n, 10. ** rng.uniform(0, 3), random_state=rng)
    y = build_basis(a, rng.normal(size=n), rng.normal(size=n), s)
    b = assemble_b(BasisSpec(), s)
    dense = a.toarray()
    err = np.linalg.norm(dense @ y.underline() - y.columns @ b.dense)
    assert err <= 1e-12 * np.linalg.norm(dense, 2) * np.linalg.norm(
        y.columns)
