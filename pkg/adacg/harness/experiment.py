# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from pathlib import Path

from joblib import Parallel, delayed

from . fetch import data_dir
from . presets import (get_reference_info, REFERENCE_S_VALUES,
                       REFERENCE_UNIT_ROUNDOFF)
from . tables import write_trace, emit_summary
from .. prepare import (prepare_matrix, prepare_c_rule, prepare_solver_spec,
                        prepare_solver_params)
from .. sparse import make_rhs, estimate_stats
from .. solvers import get_solver
from .. utils import raise_error, logger
from .. utils.errors import ConfigError, NotPositiveDefinite, SolverError


class ExperimentPlan(object):

    def __init__(self, matrix_path, solvers=('cg', 'sstep:4', 'adaptive:4'),
                 eps_star=(1e-6, ), output_dir='results',
                 stats_mode='exact-dense', c_rule='one', equilibrate=True,
                 max_outer=None, config_params=None, n_jobs=1, name=None):
        """A set of solver runs on one matrix.

        Parameters
        ----------
        matrix_path : str or Path
            The Matrix Market file.
        solvers : list(str)
            Solver specifications (see :func:`.prepare_solver_spec`), e.g.
            ``['cg', 'sstep:4', 'variable:1,1,2', 'adaptive:10']``.
        eps_star : list(float)
            The requested accuracies. Every solver runs with each of them.
        output_dir : str or Path
            Where traces and the summary are written.
        stats_mode : str
            How ``kappa(A)`` is estimated when the c rule needs it.
        c_rule : str
            The c rule of the adaptive solver (see
            :func:`.prepare_c_rule`). Defaults to 'one'.
        equilibrate : bool
            Scale the matrix before solving. Defaults to True.
        max_outer : int | None
            Maximum number of outer loops (iterations for 'cg').
        config_params : dict | None
            Extra :class:`.SolverConfig` parameters.
        n_jobs : int
            Number of runs executed in parallel. Defaults to 1.
        name : str | None
            Matrix name used in file names and tables. Defaults to the file
            stem.
        """
        self.matrix_path = matrix_path
        self.solvers = solvers
        self.eps_star = eps_star
        self.output_dir = output_dir
        self.stats_mode = stats_mode
        self.c_rule = c_rule
        self.equilibrate = equilibrate
        self.max_outer = max_outer
        self.config_params = config_params
        self.n_jobs = n_jobs
        self.name = name

    def validate(self):
        """Check the plan and parse the solver specifications.

        Sets ``name_`` and ``runs_`` (list of (spec, solver name, value,
        eps_star)).
        """
        if isinstance(self.solvers, str) or len(self.solvers) == 0:
            raise_error('An experiment needs a list with at least one solver',
                        klass=ConfigError)
        if len(self.eps_star) == 0 or min(self.eps_star) <= 0:
            raise_error(f'eps_star values must be positive (got '
                        f'{self.eps_star})', klass=ConfigError)
        parsed = [(spec, ) + prepare_solver_spec(spec)
                  for spec in self.solvers]
        self.name_ = (Path(self.matrix_path).stem if self.name is None
                      else self.name)
        self.runs_ = [(spec, name, value, float(eps))
                      for eps in self.eps_star
                      for spec, name, value in parsed]
        return self

    def run_stem(self, spec, eps):
        """Path of the trace files of a run, without suffix"""
        tag = spec.replace(':', '').replace(',', '-')
        return Path(self.output_dir) / f'{self.name_}_{tag}_eps{eps:.1e}'


def _run_one(matrix, b, spec, name, value, eps, plan, c_rule):
    params = prepare_solver_params(name, value, eps_star=eps, c_rule=c_rule,
                                   max_outer=plan.max_outer,
                                   config_params=plan.config_params)
    logger.info(f'Running {spec} with eps_star = {eps:.1e}')
    try:
        _, trace = get_solver(name)(matrix, b, **params)
    except (SolverError, NotPositiveDefinite) as e:
        if e.trace is None:
            raise
        logger.info(f'{spec} failed: {e}')
        trace = e.trace
    trace.metadata.update(matrix=plan.name_, solver_spec=spec)
    write_trace(trace, plan.run_stem(spec, eps))
    return trace


def run_experiment(plan):
    """Run every (solver, eps_star) pair of a plan.

    The matrix is read (and equilibrated), the right-hand side is
    ``1/sqrt(n)`` everywhere and the initial guess is zero. Every run writes
    its trace to ``plan.output_dir``; runs that fail are kept with their
    partial trace and appear as '-' in the summary.

    Parameters
    ----------
    plan : ExperimentPlan
        The plan.

    Returns
    -------
    traces : list(ConvergenceTrace)
        The traces, in the order of ``plan.runs_``.
    table : pandas.DataFrame
        The summary table (see :func:`.emit_summary`).
    """
    plan.validate()
    logger.info('==== Experiment ====')
    logger.info(f'Matrix: {plan.name_} ({plan.matrix_path})')
    matrix = prepare_matrix(plan.matrix_path, do_equilibrate=plan.equilibrate)
    b = make_rhs(matrix.n)
    c_rule = None
    if any(name != 'cg' for _, name, _, _ in plan.runs_):
        stats = None
        if plan.c_rule in ('sqrt-kappa', 'full'):
            stats = estimate_stats(matrix, mode=plan.stats_mode)
        c_rule = prepare_c_rule(plan.c_rule, matrix, stats=stats)
    logger.info(f'{len(plan.runs_)} runs, n_jobs = {plan.n_jobs}')
    logger.info('====================')

    traces = Parallel(n_jobs=plan.n_jobs)(
        delayed(_run_one)(matrix, b, spec, name, value, eps, plan, c_rule)
        for spec, name, value, eps in plan.runs_)
    text, table = emit_summary(traces, output_dir=plan.output_dir)
    logger.info(f'Summary:\n{text}')
    return traces, table


def reference_plan(name, matrix_dir=None, output_dir='results',
                   s_values=REFERENCE_S_VALUES, n_jobs=1):
    """Plan reproducing the reference tables for one test matrix.

    Runs classical CG, fixed s-step CG and adaptive s-step CG for every
    ``s`` in ``s_values`` with the matrix's smallest accuracy and 1e-6,
    using the matrix's c rule and a unit roundoff of 2^-52.

    Parameters
    ----------
    name : str
        The reference matrix name (see :func:`.list_reference_matrices`).
    matrix_dir : str, Path or None
        Directory holding ``<name>.mtx``. Defaults to ``ADACG_DATA_DIR`` or
        the current directory.
    output_dir : str or Path
        Where traces and the summary are written.
    s_values : list(int)
        The block parameters. Defaults to [4, 8, 10].
    n_jobs : int
        Number of runs executed in parallel.

    Returns
    -------
    plan : ExperimentPlan
        The plan.
    """
    info = get_reference_info(name)
    if matrix_dir is None:
        matrix_dir = data_dir()
    solvers = (['cg'] + [f'sstep:{s}' for s in s_values] +
               [f'adaptive:{s}' for s in s_values])
    return ExperimentPlan(
        Path(matrix_dir) / f'{name}.mtx', solvers=solvers,
        eps_star=[info['eps_star'], 1e-6], output_dir=output_dir,
        c_rule=info['c_rule'], n_jobs=n_jobs, name=name,
        config_params={'unit_roundoff': REFERENCE_UNIT_ROUNDOFF})
