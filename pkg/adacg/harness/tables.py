# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import json
from pathlib import Path

import numpy as np
import pandas as pd

from .. solvers import ConvergenceTrace, TRACE_COLUMNS, get_solver_column
from .. utils import raise_error, logger
from .. utils.errors import IoError

SUMMARY_COLUMNS = ['fixed', 'variable', 'adaptive', 'classical']

# Output file names of emit_summary
SUMMARY_TEXT = 'summary.txt'
SUMMARY_RECORDS = 'summary.jsonl'
SEQUENCES_TEXT = 'sequences.txt'


def _trace_paths(path):
    """The CSV and JSON files of a trace, from its stem or its CSV file.

    Stems hold dots (e.g. ``eps1.0e-06``), so suffixes are appended to the
    whole name.
    """
    path = Path(path)
    name = path.name
    if name.endswith('.csv'):
        name = name[:-len('.csv')]
    return path.parent / f'{name}.csv', path.parent / f'{name}.json'


def write_trace(trace, stem):
    """Write a trace as ``<stem>.csv`` (one row per iteration) and
    ``<stem>.json`` (status, metadata and per outer loop records).

    Returns
    -------
    csv_path, json_path : Path
        The written files.
    """
    csv_path, json_path = _trace_paths(stem)
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        trace.to_frame().to_csv(csv_path, index=False, float_format='%.17g')
        with open(json_path, 'w') as fid:
            json.dump(trace.to_dict(), fid, indent=1)
    except OSError as e:
        raise_error(f'Could not write trace {csv_path.as_posix()}: {e}',
                    klass=IoError, path=csv_path)
    logger.debug(f'Trace written to {csv_path.as_posix()}')
    return csv_path, json_path


def read_trace(path):
    """Read a trace written by :func:`write_trace`.

    Parameters
    ----------
    path : str or Path
        The CSV file (the JSON file must sit next to it).

    Returns
    -------
    trace : ConvergenceTrace
        The trace.
    """
    path, json_path = _trace_paths(path)
    try:
        frame = pd.read_csv(path, dtype={'true_resid': np.float64,
                                         'upd_resid': np.float64,
                                         'kappa_y': np.float64})
        with open(json_path, 'r') as fid:
            info = json.load(fid)
    except (OSError, ValueError) as e:
        raise_error(f'Could not read trace {path.as_posix()}: {e}',
                    klass=IoError, path=path)
    if list(frame.columns) != TRACE_COLUMNS:
        raise_error(f'Trace {path.as_posix()} has columns '
                    f'{list(frame.columns)}, expected {TRACE_COLUMNS}',
                    klass=IoError, path=path)
    return ConvergenceTrace.from_frame(frame, info)


def read_traces(trace_dir):
    """Read every trace in a directory (sorted by file name)"""
    trace_dir = Path(trace_dir)
    if not trace_dir.is_dir():
        raise_error(f'Trace directory {trace_dir.as_posix()} does not exist',
                    klass=IoError, path=trace_dir)
    return [read_trace(p) for p in sorted(trace_dir.glob('*.csv'))
            if _trace_paths(p)[1].exists()]


def format_sequence(sequence):
    """``[1, 1, 2]`` -> ``'1, 1, 2'``"""
    return ', '.join(str(int(s)) for s in sequence)


def _record(trace):
    meta = trace.metadata
    return {
        'matrix': meta.get('matrix'),
        'solver': trace.solver,
        'column': get_solver_column(trace.solver),
        'eps_star': trace.eps_star,
        's': meta.get('s'),
        'c_rule': meta.get('c_rule'),
        'status': trace.status,
        'converged': trace.converged,
        'syncs': trace.sync_count,
        'n_iterations': trace.n_iterations,
        'final_true_residual': trace.final_true_residual,
        'wasted_matvecs': trace.wasted_matvecs,
        's_sequence': trace.s_sequence,
    }


def summary_frame(traces):
    """Outer loop counts per (eps_star, s) and solver column.

    Cells hold the final ``syncs`` value of converged runs and '-' for the
    others. Classical CG runs have no block parameter and fill every s row
    of their eps_star.

    Parameters
    ----------
    traces : list(ConvergenceTrace)
        Traces of runs on the same matrix.

    Returns
    -------
    table : pandas.DataFrame
        Columns 'eps_star', 's' (empty string for eps_star values with
        classical runs only) and the entries of ``SUMMARY_COLUMNS`` that
        have at least one run. Sorted by decreasing eps_star, then s.
    """
    records = [_record(t) for t in traces]
    present = {r['column'] for r in records}
    columns = [c for c in SUMMARY_COLUMNS if c in present]
    keys = sorted({(r['eps_star'], int(r['s'])) for r in records
                   if r['s'] is not None}, key=lambda t: (-t[0], t[1]))
    # eps_star values with classical runs only still get a row
    for eps in sorted({r['eps_star'] for r in records} -
                      {k[0] for k in keys}, reverse=True):
        keys.append((eps, ''))
    cells = {key: {c: '' for c in columns} for key in keys}
    for r in records:
        cell = str(r['syncs']) if r['converged'] else '-'
        if r['column'] == 'classical':
            targets = [k for k in keys if k[0] == r['eps_star']]
        else:
            targets = [(r['eps_star'], int(r['s']))]
        for key in targets:
            cells[key][r['column']] = cell
    table = pd.DataFrame(
        [dict(eps_star=eps, s=s, **cells[(eps, s)]) for eps, s in keys],
        columns=['eps_star', 's'] + columns)
    return table


def format_summary(table, title=None):
    """Text rendering of :func:`summary_frame` output"""
    lines = [] if title is None else [title]
    value_columns = [c for c in table.columns if c not in ('eps_star', 's')]
    lines.append(f'{"eps_star":>10} {"s":>4} ' +
                 ' '.join(f'{c:>10}' for c in value_columns))
    for row in table.itertuples(index=False):
        row = row._asdict()
        lines.append(f'{row["eps_star"]:>10.1e} {str(row["s"]):>4} ' +
                     ' '.join(f'{row[c]:>10}' for c in value_columns))
    return '\n'.join(lines) + '\n'


def emit_summary(traces, output_dir=None):
    """Summarize a set of traces of the same matrix.

    Writes, if ``output_dir`` is given:

    * ``summary.txt``: the text table (rows (eps_star, s), columns fixed /
      variable / adaptive / classical, '-' for runs that did not converge).
      The classical column counts iterations.
    * ``summary.jsonl``: one JSON record per trace.
    * ``sequences.txt``: the s_k sequence of every adaptive run.

    Parameters
    ----------
    traces : list(ConvergenceTrace)
        The traces.
    output_dir : str, Path or None
        Where to write the files. If None, nothing is written.

    Returns
    -------
    text : str
        The text table.
    table : pandas.DataFrame
        The table (see :func:`summary_frame`).
    """
    table = summary_frame(traces)
    matrices = sorted({str(t.metadata.get('matrix')) for t in traces})
    title = f'matrix: {", ".join(matrices)}' if len(matrices) > 0 else None
    text = format_summary(table, title=title)
    sequences = [
        f'{t.metadata.get("matrix")} adaptive s_max={t.metadata.get("s")} '
        f'eps*={t.eps_star:.1e}: {format_sequence(t.s_sequence)}'
        for t in traces if t.solver == 'adaptive']
    if output_dir is not None:
        output_dir = Path(output_dir)
        try:
            output_dir.mkdir(parents=True, exist_ok=True)
            (output_dir / SUMMARY_TEXT).write_text(text)
            with open(output_dir / SUMMARY_RECORDS, 'w') as fid:
                for t in traces:
                    fid.write(json.dumps(_record(t)) + '\n')
            (output_dir / SEQUENCES_TEXT).write_text(
                ''.join(f'{s}\n' for s in sequences))
        except OSError as e:
            raise_error(f'Could not write the summary to '
                        f'{output_dir.as_posix()}: {e}', klass=IoError,
                        path=output_dir)
        logger.info(f'Summary written to {output_dir.as_posix()}')
    return text, table
