# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . import logging
from . import errors

from . logging import logger, configure_logging, raise_error, warn
