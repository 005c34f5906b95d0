# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from sklearn.base import clone

from . classical import _initial_state
from . config import SolverConfig, UNIT_ROUNDOFF
from . trace import ConvergenceTrace
from .. basis import assemble_b, build_basis, compute_gram, recover_iterates
from .. dense import cond_from_gram, extract_sub_gram, g_inner
from .. sparse import spmv
from .. utils import raise_error, logger
from .. utils.errors import (BreakdownIndefinite, ConfigError, Diverged,
                             Stagnation)


def coordinate_norm(rr):
    """``sqrt(r'^T G r')``, or nan if the quadratic form is negative"""
    return float(np.sqrt(rr)) if rr >= 0 else np.nan


def coordinate_iterations(g, b_mat, unit_roundoff=UNIT_ROUNDOFF, on_step=None,
                          check=None):
    """Run up to s CG iterations on the coordinates of a block.

    The coordinates start at ``p' = e_0``, ``r' = e_{s+1}`` and ``x' = 0``.
    Inner products are ``G``-weighted and products with A become products
    with B, so no global communication takes place.

    Before every iteration the residual is tested for exhaustion. It is
    exhausted when ``r'^T G r'`` is zero, when it is within the rounding
    noise of its own evaluation,
    ``|r'^T G r'| <= unit_roundoff * (2s + 1) * |r'|^T |G| |r'|``, or
    (from the second iteration on) when it is below ``unit_roundoff^2``
    times its value at the start of the block. An exhausted block ends
    quietly with the iterations done so far; its sign carries no
    information, so only a quadratic form above the noise level can
    signal a breakdown. A breakdown is a negative ``r'^T G r'`` or a
    nonpositive ``p'^T G B p'``; it ends the block with
    ``'breakdown'`` set and the caller decides how to go on.

    Parameters
    ----------
    g : GramMatrix
        Gram matrix of the block basis (block parameter ``s = g.s``).
    b_mat : ChangeOfBasis
        Change-of-basis matrix with the same block parameter.
    unit_roundoff : float
        Scales both exhaustion levels.
    on_step : callable | None
        Called as ``on_step(j, xp, rr)`` after the updates of iteration j.
    check : callable | None
        Called as ``check(j, r_coord_norm)`` after iteration j. If it
        returns False, the block ends with ``s_k = j``.

    Returns
    -------
    out : dict
        Keys 'xp', 'rp', 'pp' (final coordinates), 's_k' (iterations
        executed), 'breakdown' (a nonpositive quadratic form was met),
        'exhausted' (the residual ran out) and 'check_failed_at'
        (iteration at which ``check`` failed, or None).
    """
    s = g.s
    order = 2 * s + 1
    if b_mat.s != s:
        raise_error(f'Change-of-basis matrix (s={b_mat.s}) does not match '
                    f'the Gram matrix (s={s})', klass=ConfigError)
    gram = g.entries
    abs_gram = np.abs(gram)
    bmat = b_mat.dense
    xp = np.zeros(order)
    pp = np.zeros(order)
    pp[0] = 1.
    rp = np.zeros(order)
    rp[s + 1] = 1.

    rr = g_inner(gram, rp, rp)
    floor = (unit_roundoff ** 2) * rr
    out = dict(s_k=0, breakdown=False, exhausted=False, check_failed_at=None)
    for j in range(1, s + 1):
        abs_rp = np.abs(rp)
        noise = unit_roundoff * order * float(abs_rp @ (abs_gram @ abs_rp))
        if rr == 0 or abs(rr) <= noise or (j > 1 and abs(rr) <= floor):
            out['exhausted'] = True
            break
        if not rr > 0:
            out['breakdown'] = True
            break
        bp = bmat @ pp
        pap = g_inner(gram, pp, bp)
        if not pap > 0:
            out['breakdown'] = True
            break
        alpha = rr / pap
        xp = xp + alpha * pp
        rp = rp - alpha * bp
        rr_new = g_inner(gram, rp, rp)
        pp = rp + (rr_new / rr) * pp
        rr = rr_new
        out['s_k'] = j
        if on_step is not None:
            on_step(j, xp, rr)
        if check is not None and not check(j, coordinate_norm(rr)):
            out['check_failed_at'] = j
            break
    out.update(xp=xp, rp=rp, pp=pp)
    return out


class _SStepRun(object):
    """State of an s-step run between outer loops."""

    def __init__(self, a, b, x1, cfg, solver, **metadata):
        b, x, r = _initial_state(a, b, x1)
        self.a = a
        self.b = b
        self.x = x
        self.r = r
        self.p = r.copy()
        # Until the first block is recovered the basis repeats p in r
        self.p_is_r = True
        self.cfg = cfg
        self.m = 0
        self.b_norm = float(np.linalg.norm(b))
        self.trace = ConvergenceTrace(
            solver, eps_star=cfg.eps_star, n=a.n,
            c_rule=cfg.c_rule_.describe(), basis=cfg.basis_spec_.family,
            **metadata)
        self.true_norm = float(np.linalg.norm(r))
        self.trace.add_row(0, -1, 0, self.true_norm, self.true_norm)
        self._best = np.inf
        self._since_best = 0

    def true_residual(self, x):
        return float(np.linalg.norm(self.b - spmv(self.a, x)))

    def basis(self, s_bar):
        """Build the basis and its Gram matrix (one synchronization)"""
        y = build_basis(self.a, self.p, self.r, s_bar,
                        self.cfg.basis_spec_)
        g = compute_gram(y)
        self.trace.begin_block()
        return y, g

    def basis_cond(self, g, s_tilde):
        """Condition number of the leading s_tilde-step sub basis"""
        return cond_from_gram(
            extract_sub_gram(g, s_tilde, p_equals_r=self.p_is_r))

    def iterate(self, k, y, g, s_tilde, kappa_y, check=None):
        """Run the inner iterations of outer loop k on the leading
        ``s_tilde``-step part of the basis.

        Rows are added to the trace, the iterates are left untouched (see
        :meth:`recover`).

        Returns
        -------
        result : dict
            The output of :func:`coordinate_iterations`, plus the truncated
            basis under 'basis'.
        """
        y_t = y.truncate(s_tilde)
        g_t = g.truncate(s_tilde) if s_tilde < y.s else g
        b_mat = assemble_b(self.cfg.basis_spec_, s_tilde)

        def _record(j, xp, rr):
            true_norm = np.nan
            if self.cfg.trace_true_residual:
                true_norm = self.true_residual(y_t.columns @ xp + self.x)
            self.trace.add_row(self.m + j, k, j, true_norm,
                               coordinate_norm(rr), kappa_y)

        result = coordinate_iterations(
            g_t, b_mat, self.cfg.unit_roundoff, on_step=_record, check=check)
        result['basis'] = y_t
        return result

    def recover(self, k, s_bar, result, kappa_y, bound=np.nan,
                breakdown=False):
        """Recover the iterates from the coordinates of a block and close
        outer loop k.

        ``breakdown`` flags the block also when the iterations in
        ``result`` (a rerun) went through.
        """
        y_t = result['basis']
        s_k = result['s_k']
        self.x, self.r, self.p = recover_iterates(
            y_t, result['xp'], result['rp'], result['pp'], self.x)
        self.p_is_r = False
        self.m += s_k
        true_r = self.b - spmv(self.a, self.x)
        self.true_norm = float(np.linalg.norm(true_r))
        gap = float(np.linalg.norm(true_r - self.r))
        if s_k > 0:
            self.trace.rows[-1]['true_resid'] = self.true_norm
        self.trace.end_block(
            outer_k=k, s_bar=s_bar, s_tilde=y_t.s, s_k=s_k,
            kappa_y=kappa_y, bound=bound, gap=gap,
            breakdown=breakdown or result['breakdown'],
            check_failed_at=result['check_failed_at'])
        logger.info(f'{self.trace.solver} outer loop {k}: s_bar={s_bar} '
                    f's_tilde={y_t.s} s_k={s_k} '
                    f'||b - Ax|| = {self.true_norm:.3e} gap = {gap:.3e}')

    def run_block(self, k, y, g):
        """Run outer loop k on the whole basis"""
        kappa_y = self.basis_cond(g, y.s)
        result = self.iterate(k, y, g, y.s, kappa_y)
        self.recover(k, y.s, result, kappa_y)
        return result

    def at_boundary(self):
        """Test the true residual at an outer-loop boundary.

        Returns True on convergence. Raises ``Diverged`` or ``Stagnation``
        on failure.
        """
        cfg = self.cfg
        if self.true_norm <= cfg.eps_star:
            self.trace.finish('converged')
            return True
        if (not np.isfinite(self.true_norm) or
                self.true_norm > cfg.divergence_factor * self.b_norm):
            self.trace.finish('diverged')
            raise_error(f'{self.trace.solver}: true residual '
                        f'{self.true_norm:.3e} exceeds '
                        f'{cfg.divergence_factor:g} * ||b||', klass=Diverged,
                        trace=self.trace)
        if self.true_norm < self._best:
            self._best = self.true_norm
            self._since_best = 0
        else:
            self._since_best += 1
        if self._since_best >= cfg.stagnation_window:
            self.trace.finish('stagnated')
            raise_error(f'{self.trace.solver}: true residual stagnated at '
                        f'{self._best:.3e} for {cfg.stagnation_window} outer '
                        'loops', klass=Stagnation, trace=self.trace)
        return False


def _resolve_config(config, s_max, eps_star, max_outer):
    cfg = SolverConfig() if config is None else clone(config)
    params = dict(s_max=s_max, s_bar_0=None)
    if eps_star is not None:
        params['eps_star'] = eps_star
    if max_outer is not None:
        params['max_outer'] = max_outer
    cfg.set_params(**params)
    return cfg.validate()


def _run_schedule(a, b, x1, schedule, cfg, solver, **metadata):
    """Outer loop shared by the fixed and variable s-step solvers"""
    run = _SStepRun(a, b, x1, cfg, solver, **metadata)
    if run.at_boundary():
        return run.x, run.trace
    for k in range(cfg.max_outer):
        s = schedule(k)
        y, g = run.basis(s)
        result = run.run_block(k, y, g)
        if run.at_boundary():
            logger.info(f'{solver} converged in {k + 1} outer loops')
            return run.x, run.trace
        if result['breakdown']:
            run.trace.finish('breakdown')
            raise_error(f'{solver}: nonpositive quadratic form in outer loop '
                        f'{k} (s={s})', klass=BreakdownIndefinite,
                        trace=run.trace)
        if run.m >= cfg.max_total_iters:
            break
    logger.info(f'{solver} did not reach {cfg.eps_star:.1e} in '
                f'{run.trace.n_outer} outer loops')
    return run.x, run.trace.finish('not-converged')


def sstep_cg(a, b, x1=None, s=4, eps_star=None, max_outer=None, config=None):
    """s-step conjugate gradient with a fixed block parameter.

    Each outer loop builds a ``2s + 1`` column basis, computes its Gram
    matrix in a single global reduction and runs s CG iterations on the
    coordinates.

    Parameters
    ----------
    a : SparseMatrixCsr
        An SPD matrix.
    b : numpy.ndarray, shape (n,)
        The right-hand side.
    x1 : numpy.ndarray | None
        The initial guess. Defaults to zero.
    s : int
        The block parameter. Defaults to 4.
    eps_star : float | None
        The requested accuracy. If None, taken from ``config``
        (default 1e-6).
    max_outer : int | None
        Maximum number of outer loops. If None, taken from ``config``
        (default 2000).
    config : SolverConfig | None
        Remaining parameters (basis, unit roundoff, failure detection).

    Returns
    -------
    x : numpy.ndarray, shape (n,)
        The approximate solution.
    trace : ConvergenceTrace
        The convergence trace. Its status is 'not-converged' if the
        budget was exhausted.
    """
    if int(s) != s or s < 1:
        raise_error(f'The block parameter s must be a positive integer '
                    f'(got {s})', klass=ConfigError)
    cfg = _resolve_config(config, int(s), eps_star, max_outer)
    return _run_schedule(a, b, x1, lambda k: int(s), cfg, 'sstep', s=int(s))


def variable_sstep_cg(a, b, x1=None, s_sequence=(1, ), eps_star=None,
                      max_outer=None, config=None):
    """s-step conjugate gradient with a prescribed block parameter per outer
    loop.

    Outer loop k uses ``s_sequence[k]``. Once the sequence is exhausted its
    final value is repeated. See :func:`sstep_cg` for the other
    parameters.
    """
    s_sequence = [int(s) for s in s_sequence]
    if len(s_sequence) == 0 or min(s_sequence) < 1:
        raise_error(f'Every block parameter must be >= 1 (got {s_sequence})',
                    klass=ConfigError)
    cfg = _resolve_config(config, max(s_sequence), eps_star, max_outer)

    def _schedule(k):
        return s_sequence[min(k, len(s_sequence) - 1)]

    return _run_schedule(a, b, x1, _schedule, cfg, 'variable',
                         s=max(s_sequence), s_schedule=s_sequence)


def fibonacci_schedule(s_max):
    """Block parameters 1, 1, 2, 3, 5, ... capped at s_max (the last entry
    is s_max)."""
    if s_max < 1:
        raise_error(f's_max must be >= 1 (got {s_max})', klass=ConfigError)
    out = [1]
    prev, cur = 1, 1
    while cur < s_max:
        out.append(cur)
        prev, cur = cur, prev + cur
    out.append(s_max)
    return out
