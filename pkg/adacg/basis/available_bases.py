# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np

from .. utils import raise_error
from .. utils.errors import ConfigError


def _monomial_coefficients(s):
    """rho_j(z) = z^j: theta = 0, gamma = 1, sigma = 0"""
    return np.zeros(s), np.ones(s), np.zeros(s)


"""
a dictionary containing all supported polynomial bases
name : function(s) -> (theta, gamma, sigma) recurrence coefficients
"""
_available_bases = {
    'monomial': _monomial_coefficients,
}


def list_bases():
    """List all the available polynomial basis names

    Returns
    -------
    out : list(str)
        A list will all the available basis names.
    """
    out = list(_available_bases.keys())
    return out


def get_basis_coefficients(name, s):
    """Get the three-term recurrence coefficients of a basis

    Parameters
    ----------
    name : str
        The basis name
    s : int
        Number of coefficients of each kind to generate.

    Returns
    -------
    theta, gamma, sigma : numpy.ndarray, shape (s,)
        The recurrence coefficients.
    """
    if name not in _available_bases:
        raise_error(
            f'The specified basis ({name}) is not available. '
            f'Valid options are: {list(_available_bases.keys())}',
            klass=ConfigError)
    return _available_bases[name](s)
