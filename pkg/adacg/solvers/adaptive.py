# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from sklearn.base import clone

from . config import SolverConfig
from . sstep import _SStepRun
from .. dense import cond_from_gram, extract_sub_gram
from .. utils import raise_error, logger, warn
from .. utils.errors import BreakdownIndefinite, NotConverged


def selection_bound(cfg, k, r_norm, s=None):
    """``eps_star / (c(k, s_max) * u * ||r||)``, the largest basis condition
    number allowed in outer loop k."""
    if not r_norm > 0:
        return np.inf
    c_k = cfg.c(k, cfg.s_max, s=s)
    return cfg.eps_star / (c_k * cfg.unit_roundoff * r_norm)


def choose_s_tilde(g, r_norm, cfg, k, p_equals_r=False):
    """Largest block parameter whose basis is conditioned well enough.

    Scans ``i = s_bar, s_bar - 1, ..., 1`` and returns the first ``i``
    with ``cond_from_gram(extract_sub_gram(g, i)) <= bound`` where
    ``bound = eps_star / (c(k, s_max) * unit_roundoff * r_norm)``. If no
    ``i`` passes, ``s_tilde = 1``.

    Parameters
    ----------
    g : GramMatrix
        Gram matrix of the basis built with ``s_bar = g.s``.
    r_norm : float
        Norm of the residual at the start of the outer loop.
    cfg : SolverConfig
        The validated configuration.
    k : int
        The outer loop index.
    p_equals_r : bool
        Whether the basis was built from ``p = r``. Its R block then
        duplicates the P block, the full sub basis is singular and only
        the P columns are screened. Defaults to False.

    Returns
    -------
    s_tilde : int
        The selected block parameter.
    kappa : float
        The condition number estimate of the selected sub basis.
    """
    bound = selection_bound(cfg, k, r_norm, s=g.s)
    kappa = np.inf
    if bound >= 1:
        for i in range(g.s, 0, -1):
            kappa = cond_from_gram(
                extract_sub_gram(g, i, p_equals_r=p_equals_r))
            if kappa <= bound:
                return i, kappa
    else:
        kappa = cond_from_gram(extract_sub_gram(g, 1, p_equals_r=p_equals_r))
    return 1, kappa


def inner_check(gamma, cfg, k, j, r_coord_norm):
    """Whether the inner iterations of a block may continue.

    True iff ``gamma <= eps_star / (c(k, j) * unit_roundoff *
    r_coord_norm)``. A zero ``r_coord_norm`` always passes and a negative
    or nan one always fails.
    """
    if r_coord_norm is None or not r_coord_norm >= 0:
        return False
    if r_coord_norm == 0:
        return True
    bound = cfg.eps_star / (cfg.c(k, j) * cfg.unit_roundoff * r_coord_norm)
    return bool(gamma <= bound)


def _block_check(cfg, k, gamma):
    if cfg.skip_inner_check:
        return None

    def check(j, r_coord_norm):
        return inner_check(gamma, cfg, k, j, r_coord_norm)
    return check


def adaptive_sstep_cg(a, b, x1=None, config=None):
    """Adaptive s-step conjugate gradient.

    In every outer loop the block parameter grows by at most ``f`` up to
    ``s_max``. After the single synchronization that yields the Gram
    matrix, the largest sub basis whose condition number keeps the
    attainable accuracy at ``eps_star`` is selected (see
    :func:`choose_s_tilde`) and the inner iterations stop as soon as the
    shrinking residual would allow the rounding errors to spoil the
    accuracy (see :func:`inner_check`). In the first outer loop ``p = r``
    and only the P columns of the basis are screened.

    A nonpositive quadratic form in the inner iterations of a block with
    ``s_tilde > 1`` reruns that block with ``s = 1`` on the same Gram
    matrix. The block is flagged as a breakdown in the trace and counts
    as a single outer loop. A nonpositive quadratic form with ``s = 1``
    is an error.

    Parameters
    ----------
    a : SparseMatrixCsr
        An SPD matrix.
    b : numpy.ndarray, shape (n,)
        The right-hand side.
    x1 : numpy.ndarray | None
        The initial guess. Defaults to zero.
    config : SolverConfig | None
        The solver parameters. Defaults to ``SolverConfig()``.

    Returns
    -------
    x : numpy.ndarray, shape (n,)
        The approximate solution.
    trace : ConvergenceTrace
        The convergence trace.

    Raises
    ------
    NotConverged
        If ``eps_star`` is not reached within the iteration budget.
    BreakdownIndefinite
        If the quadratic forms are nonpositive also with ``s = 1``.
    """
    cfg = clone(config if config is not None else SolverConfig()).validate()
    run = _SStepRun(a, b, x1, cfg, 'adaptive', s=cfg.s_max, f=cfg.f_,
                    s_bar_0=cfg.s_bar_0_)
    if run.at_boundary():
        return run.x, run.trace

    s_prev = None
    for k in range(cfg.max_outer):
        if k == 0:
            s_bar = cfg.s_bar_0_
        else:
            s_bar = min(s_prev + cfg.f_, cfg.s_max)
        y, g = run.basis(s_bar)
        # ||r|| from the Gram matrix, no extra reduction
        r_norm = float(np.sqrt(max(g.entries[s_bar + 1, s_bar + 1], 0.)))
        s_tilde, gamma = choose_s_tilde(g, r_norm, cfg, k,
                                        p_equals_r=run.p_is_r)
        bound = selection_bound(cfg, k, r_norm, s=s_bar)

        result = run.iterate(k, y, g, s_tilde, gamma,
                             check=_block_check(cfg, k, gamma))
        breakdown = result['breakdown']
        if breakdown and s_tilde > 1:
            warn(f'adaptive: nonpositive quadratic form in outer loop {k} '
                 f'(s_tilde={s_tilde}); restarting the block with s=1')
            run.trace.restart_block()
            gamma = run.basis_cond(g, 1)
            result = run.iterate(k, y, g, 1, gamma,
                                 check=_block_check(cfg, k, gamma))
        run.recover(k, s_bar, result, gamma, bound=bound,
                    breakdown=breakdown)
        s_prev = max(result['s_k'], 1)
        if run.at_boundary():
            logger.info(f'adaptive converged in {k + 1} outer loops, s_k = '
                        f'{run.trace.s_sequence}')
            return run.x, run.trace
        if result['breakdown']:
            run.trace.finish('breakdown')
            raise_error(f'adaptive: nonpositive quadratic form in outer '
                        f'loop {k} with s=1', klass=BreakdownIndefinite,
                        trace=run.trace)
        if run.m >= cfg.max_total_iters:
            break

    run.trace.finish('not-converged')
    raise_error(f'adaptive: eps_star={cfg.eps_star:.1e} not reached in '
                f'{run.trace.n_outer} outer loops (||b - Ax|| = '
                f'{run.true_norm:.3e})', klass=NotConverged, trace=run.trace)
