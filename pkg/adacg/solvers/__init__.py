# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . config import CRule, SolverConfig, UNIT_ROUNDOFF
from . trace import ConvergenceTrace, TRACE_COLUMNS, BLOCK_FIELDS
from . classical import classical_cg
from . sstep import (sstep_cg, variable_sstep_cg, fibonacci_schedule,
                     coordinate_iterations)
from . adaptive import (adaptive_sstep_cg, choose_s_tilde, inner_check,
                        selection_bound)
from . available_solvers import list_solvers, get_solver, get_solver_column
