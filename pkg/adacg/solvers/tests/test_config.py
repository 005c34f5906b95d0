# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from numpy.testing import assert_allclose
import pytest
from sklearn.base import clone

from adacg.solvers import (CRule, SolverConfig, UNIT_ROUNDOFF, list_solvers,
                           get_solver, get_solver_column, classical_cg,
                           adaptive_sstep_cg)
from adacg.sparse import MatrixStats
from adacg.utils.errors import ConfigError

_stats = MatrixStats(norm_a=2., kappa_a=100., method='user-supplied')


def test_c_rules():
    """Test the values of the c rules"""
    assert CRule().validate()(0, 1) == 1.
    assert CRule(value=10.)(3, 2) == 10.
    assert_allclose(CRule('sqrt_kappa_a', stats=_stats)(0, 4), 10.)

    full = CRule('full_bound', stats=_stats, n_a=3).validate()
    # N_k = 7 + 2 * 3 + 14 * 1 / 2 = 20
    assert_allclose(full(0, 1), 6. * 20. * 1 * 100.)
    assert_allclose(full(5, 3, b_norm=4.), 6. * 41. * 3 * 100.)


def test_c_rule_describe():
    """Test the labels of the c rules"""
    assert CRule().describe() == 'one'
    assert CRule(value=10.).describe() == 'const:10'
    assert CRule('sqrt_kappa_a', stats=_stats).describe() == 'sqrt-kappa'
    assert CRule('full_bound', stats=_stats, n_a=3).describe() == 'full'


def test_c_rule_errors():
    """Test invalid c rules"""
    with pytest.raises(ConfigError, match='Unknown c rule'):
        CRule('magic').validate()
    with pytest.raises(ConfigError, match='must be positive'):
        CRule(value=0.).validate()
    with pytest.raises(ConfigError, match='requires matrix stats'):
        CRule('sqrt_kappa_a').validate()
    with pytest.raises(ConfigError, match='requires n_a'):
        CRule('full_bound', stats=_stats).validate()


def test_solver_config_defaults():
    """Test the resolved defaults"""
    cfg = SolverConfig().validate()
    assert cfg.eps_star == 1e-6
    assert cfg.s_max == 4
    assert cfg.s_bar_0_ == 4
    assert cfg.f_ == 4
    assert cfg.unit_roundoff == UNIT_ROUNDOFF == 2. ** -53
    assert cfg.c_rule_.kind == 'constant'
    assert cfg.basis_spec_.family == 'monomial'
    assert cfg.c(0, 1) == 1.

    cfg = SolverConfig(s_max=8, s_bar_0=2, f=1).validate()
    assert cfg.s_bar_0_ == 2
    assert cfg.f_ == 1

    # Full bound with the monomial basis (||B|| = 1)
    cfg = SolverConfig(c_rule=CRule('full_bound', stats=_stats, n_a=3))
    assert_allclose(cfg.c(0, 2), 6. * 20. * 2 * 100.)


def test_solver_config_clone():
    """Test that configurations behave as scikit-learn estimators"""
    cfg = SolverConfig(eps_star=1e-8, c_rule=CRule(value=5.))
    params = cfg.get_params()
    assert params['eps_star'] == 1e-8
    assert params['c_rule__value'] == 5.
    cloned = clone(cfg).set_params(s_max=6, c_rule__value=2.)
    assert cloned.s_max == 6
    assert cloned.c_rule.value == 2.
    assert cfg.s_max == 4
    assert cfg.c_rule.value == 5.


@pytest.mark.parametrize('params,match', [
    (dict(s_max=0), 's_max must be a positive integer'),
    (dict(s_max=2.5), 's_max must be a positive integer'),
    (dict(s_max=4, s_bar_0=5), 's_bar_0 must be in'),
    (dict(f=0), 'f must be >= 1'),
    (dict(unit_roundoff=0.), 'unit_roundoff must be positive'),
    (dict(eps_star=1e-20), 'must be larger than the unit roundoff'),
    (dict(max_outer=0), 'must be positive'),
    (dict(stagnation_window=0), 'stagnation_window'),
    (dict(divergence_factor=1.), 'divergence_factor'),
    (dict(c_rule='one'), 'must be a CRule'),
    (dict(basis='chebyshev-foo'), 'not available'),
])
def test_solver_config_errors(params, match):
    """Test invalid configurations"""
    with pytest.raises(ConfigError, match=match):
        SolverConfig(**params).validate()


def test_available_solvers():
    """Test the solver registry"""
    assert list_solvers() == ['cg', 'sstep', 'variable', 'adaptive']
    assert get_solver('cg') is classical_cg
    assert get_solver('adaptive') is adaptive_sstep_cg
    assert get_solver_column('sstep') == 'fixed'
    assert get_solver_column('cg') == 'classical'
    with pytest.raises(ConfigError, match='not available'):
        get_solver('gmres')
    with pytest.raises(ConfigError, match='not available'):
        get_solver_column('gmres')
