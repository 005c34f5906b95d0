# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import argparse
import sys

from . experiment import ExperimentPlan, run_experiment, reference_plan
from . fetch import fetch_matrix, data_dir
from . presets import REFERENCE_S_VALUES
from . tables import read_traces, emit_summary
from .. utils import configure_logging, raise_error
from .. utils.errors import AdaCGError, ConfigError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2


def _config_params(args):
    params = {}
    if args.f is not None:
        params['f'] = args.f
    if args.s0 is not None:
        params['s_bar_0'] = args.s0
    if args.skip_inner_check:
        params['skip_inner_check'] = True
    return params


def _solver_specs(args):
    """The --solver entries, with bare sstep and adaptive completed by --s
    and --smax"""
    blocks = {'sstep': ('--s', args.s), 'adaptive': ('--smax', args.smax)}
    specs = []
    for spec in args.solver:
        if spec in blocks:
            flag, value = blocks[spec]
            if value is None:
                raise_error(f'--solver {spec} needs {flag}', klass=ConfigError)
            spec = f'{spec}:{value}'
        specs.append(spec)
    return specs


def _run(args):
    if args.reference is not None:
        plan = reference_plan(
            args.reference, matrix_dir=args.data_dir,
            output_dir=args.out, s_values=args.s_values, n_jobs=args.jobs)
    else:
        if args.matrix is None:
            raise_error('run needs --matrix or --reference', klass=ConfigError)
        plan = ExperimentPlan(
            args.matrix, solvers=_solver_specs(args), eps_star=args.eps_star,
            output_dir=args.out, stats_mode=args.stats_mode,
            c_rule=args.c_rule, equilibrate=not args.no_equilibrate,
            max_outer=args.max_outer, config_params=_config_params(args),
            n_jobs=args.jobs)
    traces, _ = run_experiment(plan)
    text, _ = emit_summary(traces)
    print(text, end='')
    if all(t.converged for t in traces):
        return EXIT_OK
    return EXIT_NOT_CONVERGED


def _table(args):
    traces = read_traces(args.trace_dir)
    text, _ = emit_summary(traces, output_dir=args.out)
    print(text, end='')
    return EXIT_OK


def _fetch(args):
    dest = args.dest if args.dest is not None else data_dir()
    path = fetch_matrix(args.name, dest=dest, timeout=args.timeout)
    print(path.as_posix())
    return EXIT_OK


def get_parser():
    parser = argparse.ArgumentParser(
        prog='adacg',
        description='Adaptive s-step conjugate gradient experiments',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Logging level')
    parser.add_argument('--log-file', default=None,
                        help='Log to this file instead of stdout')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    p_fetch = subparsers.add_parser(
        'fetch', help='Download a matrix of the collection',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p_fetch.add_argument('name', help='Reference matrix name or Group/name')
    p_fetch.add_argument('--dest', default=None,
                         help='Destination directory (default: '
                              '$ADACG_DATA_DIR or .)')
    p_fetch.add_argument('--timeout', type=float, default=60.,
                         help='Network timeout in seconds')
    p_fetch.set_defaults(func=_fetch)

    p_run = subparsers.add_parser(
        'run', help='Run solvers on a matrix and write traces',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p_run.add_argument('--matrix', default=None,
                       help='Matrix Market file')
    p_run.add_argument('--reference', default=None,
                       help='Run the reference plan of this test matrix')
    p_run.add_argument('--data-dir', default=None,
                       help='Directory with <name>.mtx for --reference')
    p_run.add_argument('--s-values', type=int, nargs='+',
                       default=REFERENCE_S_VALUES,
                       help='Block parameters for --reference')
    p_run.add_argument('--solver', nargs='+',
                       default=['cg', 'sstep:4', 'adaptive:4'],
                       help='Solvers: cg, sstep (with --s), adaptive (with '
                            '--smax), or the specs sstep:S, '
                            'variable:S1,S2,..., variable:fib:SMAX, '
                            'adaptive:SMAX')
    p_run.add_argument('--s', type=int, default=None,
                       help='Block parameter of --solver sstep')
    p_run.add_argument('--smax', type=int, default=None,
                       help='Largest block parameter of --solver adaptive')
    p_run.add_argument('--eps-star', type=float, nargs='+', default=[1e-6],
                       help='Requested accuracies')
    p_run.add_argument('--c-rule', default='one',
                       help='one, const:V, sqrt-kappa or full')
    p_run.add_argument('--stats-mode', default='exact-dense',
                       choices=['exact-dense', 'lanczos'],
                       help='How kappa(A) is estimated for the c rule')
    p_run.add_argument('--f', type=int, default=None,
                       help='Growth of s between outer loops (default: '
                            's_max)')
    p_run.add_argument('--s0', type=int, default=None,
                       help='s of the first outer loop (default: s_max)')
    p_run.add_argument('--skip-inner-check', action='store_true',
                       help='Never end an adaptive block early')
    p_run.add_argument('--max-outer', type=int, default=None,
                       help='Maximum number of outer loops')
    p_run.add_argument('--no-equilibrate', action='store_true',
                       help='Do not scale the matrix')
    p_run.add_argument('--jobs', type=int, default=1,
                       help='Number of runs executed in parallel')
    p_run.add_argument('--out', default='results',
                       help='Output directory')
    p_run.set_defaults(func=_run)

    p_table = subparsers.add_parser(
        'table', help='Summarize the traces in a directory',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p_table.add_argument('trace_dir', help='Directory with trace files')
    p_table.add_argument('--out', default=None,
                         help='Write summary files to this directory')
    p_table.set_defaults(func=_table)
    return parser


def main(argv=None):
    """Entry point of the ``adacg`` command.

    Returns 0 on success, 2 if a run did not converge and 1 on error.
    """
    parser = get_parser()
    args = parser.parse_args(argv)
    configure_logging(level=args.log_level, fname=args.log_file,
                      overwrite=True)
    try:
        return args.func(args)
    except AdaCGError as e:
        print(f'adacg: error: {e}', file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
