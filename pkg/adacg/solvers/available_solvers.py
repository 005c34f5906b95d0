# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . adaptive import adaptive_sstep_cg
from . classical import classical_cg
from . sstep import sstep_cg, variable_sstep_cg
from .. utils import raise_error
from .. utils.errors import ConfigError

"""
a dictionary containing all supported solvers
name : solver function(a, b, x1=None, **params) -> (x, trace)
"""
_available_solvers = {
    'cg': classical_cg,
    'sstep': sstep_cg,
    'variable': variable_sstep_cg,
    'adaptive': adaptive_sstep_cg,
}

# Table column each solver reports to
_solver_columns = {
    'cg': 'classical',
    'sstep': 'fixed',
    'variable': 'variable',
    'adaptive': 'adaptive',
}


def list_solvers():
    """List all the available solvers

    Returns
    -------
    out : list(str)
        A list will all the available solver names.
    """
    out = list(_available_solvers.keys())
    return out


def get_solver(name):
    """Get a solver function

    Parameters
    ----------
    name : str
        The solver name

    Returns
    -------
    solver : callable
        The solver, called as ``solver(a, b, x1=None, **params)``.
    """
    if name not in _available_solvers:
        raise_error(
            f'The specified solver ({name}) is not available. '
            f'Valid options are: {list(_available_solvers.keys())}',
            klass=ConfigError)
    return _available_solvers[name]


def get_solver_column(name):
    """Summary table column of a solver"""
    get_solver(name)
    return _solver_columns[name]
