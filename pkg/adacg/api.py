# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . prepare import (prepare_matrix, prepare_rhs, prepare_c_rule,
                       prepare_solver_spec, prepare_solver_params)
from . solvers import get_solver
from . utils import logger


def solve(a, b=None, solver='adaptive:4', x1=None, eps_star=1e-6,
          c_rule=None, equilibrate=False, stats_mode='exact-dense',
          max_outer=None, config_params=None):
    """Solve ``A x = b`` for an SPD matrix with one of the CG variants.

    Parameters
    ----------
    a : SparseMatrixCsr, scipy.sparse matrix, numpy.ndarray, str or Path
        The matrix, or the path to a Matrix Market file.
    b : numpy.ndarray | None
        The right-hand side. If None, every entry is ``1/sqrt(n)``.
    solver : str
        The solver and its block parameter. Options are:

        * 'cg': classical conjugate gradient.
        * 'sstep:S': s-step CG with fixed block parameter S.
        * 'variable:S1,S2,...': s-step CG with the given block parameter
          per outer loop ('variable:fib:SMAX' for 1, 1, 2, 3, 5, ...).
        * 'adaptive:SMAX': adaptive s-step CG with ``s_max = SMAX``
          (default, with SMAX = 4).

    x1 : numpy.ndarray | None
        The initial guess. Defaults to zero.
    eps_star : float
        The requested accuracy on ``||b - A x||``. Defaults to 1e-6.
    c_rule : str | float | CRule | None
        The constant of the adaptive accuracy bounds. See
        :func:`.prepare_c_rule`. Defaults to 1.
    equilibrate : bool
        If True, scale the matrix by the largest absolute entry of each row
        before solving. Defaults to False.
    stats_mode : str
        How to estimate ``kappa(A)`` when the c rule needs it.
    max_outer : int | None
        Maximum number of outer loops (iterations for 'cg').
    config_params : dict | None
        Extra :class:`.SolverConfig` parameters for the s-step solvers.

    Returns
    -------
    x : numpy.ndarray
        The approximate solution.
    trace : ConvergenceTrace
        The convergence trace.
    """
    logger.info('==== Solve ====')
    matrix = prepare_matrix(a, do_equilibrate=equilibrate)
    b = prepare_rhs(matrix, b)
    name, value = prepare_solver_spec(solver)
    rule = None
    if name != 'cg':
        rule = prepare_c_rule(c_rule, matrix, stats_mode=stats_mode)
    params = prepare_solver_params(name, value, eps_star=eps_star,
                                   c_rule=rule, max_outer=max_outer,
                                   config_params=config_params)
    logger.info(f'Solver: {solver}, eps_star = {eps_star:.1e}')
    logger.info('===============')
    x, trace = get_solver(name)(matrix, b, x1=x1, **params)
    return x, trace
