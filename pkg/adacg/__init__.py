# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . import utils
from . import sparse
from . import dense
from . import basis
from . import solvers
from . import harness
from . api import solve
from . _version import __version__
