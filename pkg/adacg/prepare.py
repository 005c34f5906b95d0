# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from pathlib import Path

import numpy as np
from scipy import sparse

from . sparse import (SparseMatrixCsr, read_matrix_market, equilibrate,
                      estimate_stats, make_rhs)
from . solvers import (CRule, SolverConfig, list_solvers, fibonacci_schedule)
from . utils import raise_error, logger
from . utils.errors import ConfigError, DimensionError

_c_rule_names = ['one', 'const', 'sqrt-kappa', 'full']


def prepare_matrix(a, do_equilibrate=False):
    """Turn the input into a SparseMatrixCsr.

    Parameters
    ----------
    a : SparseMatrixCsr, scipy.sparse matrix, numpy.ndarray, str or Path
        The matrix, or the path to a Matrix Market file.
    do_equilibrate : bool
        If True, scale the matrix by the largest absolute entry of each
        row. Defaults to False.

    Returns
    -------
    matrix : SparseMatrixCsr
        The (scaled) matrix.
    """
    if isinstance(a, (str, Path)):
        matrix = read_matrix_market(a)
    elif isinstance(a, SparseMatrixCsr):
        matrix = a
    elif sparse.issparse(a):
        matrix = SparseMatrixCsr.from_scipy(a)
    else:
        matrix = SparseMatrixCsr.from_dense(np.asarray(a, dtype=np.float64))
    if do_equilibrate:
        matrix, _ = equilibrate(matrix)
        logger.info('Matrix equilibrated')
    logger.info(f'Matrix: n = {matrix.n}, nnz = {matrix.nnz}')
    return matrix


def prepare_rhs(a, b):
    """The right-hand side: ``b`` or, if None, ``1/sqrt(n)`` everywhere"""
    if b is None:
        return make_rhs(a.n)
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (a.n, ):
        raise_error(f'Right-hand side of shape {b.shape} does not match a '
                    f'matrix of dimension {a.n}', klass=DimensionError)
    return b


def prepare_c_rule(c_rule, a=None, stats=None, stats_mode='exact-dense'):
    """Build a CRule from its string form.

    Parameters
    ----------
    c_rule : str, float, CRule or None
        Options are:

        * 'one' or None: ``c = 1``.
        * 'const:V' or a number: ``c = V``.
        * 'sqrt-kappa': ``c = sqrt(kappa(A))``.
        * 'full': the full rounding error bound.
        * a CRule instance, used as is.

    a : SparseMatrixCsr | None
        The matrix. Needed to estimate the stats for 'sqrt-kappa' and
        'full' if ``stats`` is None.
    stats : MatrixStats | None
        Precomputed estimates of ``||A||`` and ``kappa(A)``.
    stats_mode : str
        How to estimate the stats (see :func:`.estimate_stats`).

    Returns
    -------
    c_rule : CRule
        The validated rule.
    """
    if c_rule is None:
        return CRule().validate()
    if isinstance(c_rule, CRule):
        return c_rule.validate()
    if isinstance(c_rule, (int, float)):
        return CRule('constant', float(c_rule)).validate()
    if not isinstance(c_rule, str):
        raise_error(f'c_rule must be a string, a number or a CRule (got '
                    f'{type(c_rule)})', klass=ConfigError)
    name, _, arg = c_rule.partition(':')
    if name not in _c_rule_names:
        raise_error(f'Unknown c rule {c_rule}. Valid options are '
                    f'{_c_rule_names}', klass=ConfigError)
    if name == 'one':
        return CRule().validate()
    if name == 'const':
        try:
            value = float(arg)
        except ValueError:
            raise_error(f'Invalid constant in c rule {c_rule}',
                        klass=ConfigError)
        return CRule('constant', value).validate()
    if stats is None:
        if a is None:
            raise_error(f'The c rule "{c_rule}" needs the matrix or its '
                        'stats', klass=ConfigError)
        stats = estimate_stats(a, mode=stats_mode)
    if name == 'sqrt-kappa':
        return CRule('sqrt_kappa_a', stats=stats).validate()
    n_a = None
    if a is not None:
        n_a = int(np.diff(a.row_offsets).max())
    return CRule('full_bound', stats=stats, n_a=n_a).validate()


def prepare_solver_spec(spec):
    """Parse a solver specification string.

    Parameters
    ----------
    spec : str
        One of 'cg', 'sstep:S', 'variable:S1,S2,...', 'variable:fib:SMAX'
        or 'adaptive:SMAX'.

    Returns
    -------
    name : str
        The solver name.
    value : int | list(int) | None
        The block parameter (s or s_max), the sequence of block parameters
        or None for 'cg'.
    """
    name, _, arg = spec.partition(':')
    if name not in list_solvers():
        raise_error(f'The specified solver ({name}) is not available. '
                    f'Valid options are: {list_solvers()}',
                    klass=ConfigError)
    if name == 'cg':
        if arg != '':
            raise_error(f'Solver "cg" takes no argument (got {spec})',
                        klass=ConfigError)
        return name, None
    if arg == '':
        raise_error(f'Solver "{name}" needs a block parameter, e.g. '
                    f'"{name}:4"', klass=ConfigError)
    try:
        if name == 'variable':
            if arg.startswith('fib:'):
                value = fibonacci_schedule(int(arg[4:]))
            else:
                value = [int(t) for t in arg.split(',')]
        else:
            value = int(arg)
    except ValueError:
        raise_error(f'Invalid block parameter in solver spec {spec}',
                    klass=ConfigError)
    values = value if isinstance(value, list) else [value]
    if min(values) < 1:
        raise_error(f'Block parameters must be >= 1 (got {spec})',
                    klass=ConfigError)
    return name, value


def prepare_solver_params(name, value=None, eps_star=1e-6, c_rule=None,
                          max_outer=None, config_params=None):
    """Keyword arguments for a solver function.

    Parameters
    ----------
    name : str
        The solver name.
    value : int | list(int) | None
        As returned by :func:`prepare_solver_spec`.
    eps_star : float
        The requested accuracy.
    c_rule : CRule | None
        The rule for the constant of the adaptive bounds.
    max_outer : int | None
        Maximum number of outer loops (iterations for 'cg').
    config_params : dict | None
        Extra SolverConfig parameters (e.g. ``f``, ``s_bar_0``).

    Returns
    -------
    params : dict
        The keyword arguments.
    """
    config_params = {} if config_params is None else dict(config_params)
    if not eps_star > 0:
        raise_error(f'eps_star must be positive (got {eps_star})',
                    klass=ConfigError)
    if name == 'cg':
        params = dict(eps_star=eps_star)
        if max_outer is not None:
            params['max_iters'] = max_outer
        return params
    if max_outer is not None:
        config_params['max_outer'] = max_outer
    config = SolverConfig(eps_star=eps_star, c_rule=c_rule, **config_params)
    if name == 'sstep':
        return dict(s=value, config=config)
    if name == 'variable':
        return dict(s_sequence=value, config=config)
    config.set_params(s_max=value)
    return dict(config=config)
