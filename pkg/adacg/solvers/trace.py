# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
import pandas as pd

TRACE_COLUMNS = ['iter', 'outer_k', 's_k', 'true_resid', 'upd_resid',
                 'kappa_y', 'syncs', 'wasted_matvecs']

BLOCK_FIELDS = ['outer_k', 's_bar', 's_tilde', 's_k', 'kappa_y', 'bound',
                'gap', 'breakdown', 'check_failed_at']

_statuses = ['running', 'converged', 'not-converged', 'breakdown',
             'diverged', 'stagnated', 'not-spd']


class ConvergenceTrace(object):

    def __init__(self, solver, eps_star=None, n=None, **metadata):
        """Per-iteration record of a solver run.

        Rows hold one entry per inner iteration (plus the initial state as
        iteration 0) with the columns in ``TRACE_COLUMNS``. Blocks hold one
        entry per outer loop of the s-step solvers.

        Parameters
        ----------
        solver : str
            Name of the solver that produced the trace.
        eps_star : float | None
            The requested accuracy.
        n : int | None
            The problem dimension.
        **metadata
            Extra information stored with the trace (matrix name, block
            parameters, c rule, ...).
        """
        self.solver = solver
        self.metadata = dict(eps_star=eps_star, n=n, **metadata)
        self.rows = []
        self.blocks = []
        self.status = 'running'
        self.syncs = 0
        self.wasted_matvecs = 0
        self._block_start = None

    @property
    def eps_star(self):
        return self.metadata.get('eps_star')

    def add_row(self, iteration, outer_k, s_k, true_resid, upd_resid,
                kappa_y=np.nan):
        self.rows.append({
            'iter': int(iteration),
            'outer_k': int(outer_k),
            's_k': int(s_k),
            'true_resid': float(true_resid),
            'upd_resid': float(upd_resid),
            'kappa_y': float(kappa_y),
            'syncs': int(self.syncs),
            'wasted_matvecs': int(self.wasted_matvecs),
        })

    def begin_block(self):
        """Start an outer loop: one global synchronization for the Gram
        matrix."""
        self.syncs += 1
        self._block_start = len(self.rows)

    def restart_block(self):
        """Drop the rows of the current outer loop, so it can be rerun on
        the same Gram matrix (no new synchronization)."""
        if self._block_start is None:
            raise ValueError('No outer loop in progress')
        del self.rows[self._block_start:]

    def end_block(self, outer_k, s_bar, s_tilde, s_k, kappa_y=np.nan,
                  bound=np.nan, gap=np.nan, breakdown=False,
                  check_failed_at=None):
        """Close the current outer loop.

        The rows written since :meth:`begin_block` get the final ``s_k`` of
        the block and the wasted matrix-vector products counted so far.
        """
        self.wasted_matvecs += 2 * (int(s_bar) - int(s_k))
        for row in self.rows[self._block_start:]:
            row['s_k'] = int(s_k)
            row['wasted_matvecs'] = int(self.wasted_matvecs)
        self._block_start = None
        self.blocks.append({
            'outer_k': int(outer_k),
            's_bar': int(s_bar),
            's_tilde': int(s_tilde),
            's_k': int(s_k),
            'kappa_y': float(kappa_y),
            'bound': float(bound),
            'gap': float(gap),
            'breakdown': bool(breakdown),
            'check_failed_at': (None if check_failed_at is None
                                else int(check_failed_at)),
        })

    def finish(self, status):
        if status not in _statuses:
            raise ValueError(f'Unknown trace status {status}')
        self.status = status
        return self

    @property
    def converged(self):
        return self.status == 'converged'

    @property
    def sync_count(self):
        return self.syncs

    @property
    def n_outer(self):
        """Number of outer loops (iterations for classical CG)"""
        if self.solver == 'cg':
            return self.n_iterations
        return len(self.blocks)

    @property
    def n_iterations(self):
        return self.rows[-1]['iter'] if len(self.rows) > 0 else 0

    @property
    def s_sequence(self):
        """The executed block sizes ``s_k``, one per outer loop"""
        return [b['s_k'] for b in self.blocks]

    @property
    def final_true_residual(self):
        if len(self.rows) == 0:
            return np.nan
        return self.rows[-1]['true_resid']

    def to_frame(self):
        """The rows as a pandas.DataFrame with columns ``TRACE_COLUMNS``"""
        return pd.DataFrame(self.rows, columns=TRACE_COLUMNS)

    def blocks_frame(self):
        return pd.DataFrame(self.blocks, columns=BLOCK_FIELDS)

    def to_dict(self):
        """Everything but the rows, as JSON-serializable values"""
        return {
            'solver': self.solver,
            'status': self.status,
            'syncs': self.syncs,
            'wasted_matvecs': self.wasted_matvecs,
            'metadata': self.metadata,
            'blocks': self.blocks,
        }

    @classmethod
    def from_frame(cls, frame, info):
        """Rebuild a trace from its rows and :meth:`to_dict` output"""
        metadata = dict(info.get('metadata', {}))
        eps_star = metadata.pop('eps_star', None)
        n = metadata.pop('n', None)
        out = cls(info['solver'], eps_star=eps_star, n=n, **metadata)
        frame = frame[TRACE_COLUMNS]
        out.rows = [
            {
                'iter': int(t.iter),
                'outer_k': int(t.outer_k),
                's_k': int(t.s_k),
                'true_resid': float(t.true_resid),
                'upd_resid': float(t.upd_resid),
                'kappa_y': float(t.kappa_y),
                'syncs': int(t.syncs),
                'wasted_matvecs': int(t.wasted_matvecs),
            }
            for t in frame.itertuples(index=False)]
        out.blocks = [dict(b) for b in info.get('blocks', [])]
        out.syncs = int(info.get('syncs', 0))
        out.wasted_matvecs = int(info.get('wasted_matvecs', 0))
        out.status = info.get('status', 'running')
        return out

    def __repr__(self):
        return (f'ConvergenceTrace(solver={self.solver!r}, '
                f'status={self.status!r}, n_outer={self.n_outer}, '
                f'syncs={self.syncs})')
