# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from copy import deepcopy

from .. utils import raise_error
from .. utils.errors import ConfigError

"""
a dictionary with the reference test matrices of the collection

group : collection group
n, nnz, norm_a, kappa_a : reported size and spectral data (equilibrated)
eps_star : the smallest accuracy each method is asked for (1e-6 is always
           run as well)
c_rule : rule for the constant of the adaptive bounds
classical, fixed, adaptive : reported number of outer loops per
           (eps_star, s). None means the method failed to converge.
sequences : reported s_k sequences of the adaptive solver,
           (eps_star, s_max) -> list
"""
_reference_matrices = {
    'gr_30_30': {
        'group': 'HB', 'n': 900, 'nnz': 7744, 'norm_a': 1.5,
        'kappa_a': 1.9e2, 'eps_star': 3.4e-14, 'c_rule': 'one',
        'classical': {3.4e-14: 52, 1e-6: 34},
        'fixed': {(3.4e-14, 4): 16, (3.4e-14, 8): None,
                  (3.4e-14, 10): None, (1e-6, 4): 9, (1e-6, 8): 5,
                  (1e-6, 10): 5},
        'adaptive': {(3.4e-14, 4): 17, (3.4e-14, 8): 14,
                     (3.4e-14, 10): 14, (1e-6, 4): 9, (1e-6, 8): 5,
                     (1e-6, 10): 5},
        'sequences': {
            (3.4e-14, 10): [1, 1, 2, 2, 2, 3, 3, 3, 4, 5, 6, 8, 10, 10]},
    },
    'mesh3e1': {
        'group': 'Pothen', 'n': 289, 'nnz': 1377, 'norm_a': 1.8,
        'kappa_a': 8.6, 'eps_star': 1e-14, 'c_rule': 'one',
        'classical': {1e-14: 31, 1e-6: 12},
        'fixed': {(1e-14, 4): 8, (1e-14, 8): None, (1e-14, 10): None,
                  (1e-6, 4): 3, (1e-6, 8): 2, (1e-6, 10): 99},
        'adaptive': {(1e-14, 4): 10, (1e-14, 8): 8, (1e-14, 10): 7,
                     (1e-6, 4): 3, (1e-6, 8): 2, (1e-6, 10): 2},
        'sequences': {(1e-14, 10): [1, 1, 2, 4, 6, 9, 10]},
    },
    'nos6': {
        'group': 'HB', 'n': 675, 'nnz': 3255, 'norm_a': 2.0,
        'kappa_a': 3.5e6, 'eps_star': 5.5e-10, 'c_rule': 'one',
        'classical': {5.5e-10: 103, 1e-6: 88},
        'fixed': {(5.5e-10, 4): 26, (5.5e-10, 8): None,
                  (5.5e-10, 10): None, (1e-6, 4): 22, (1e-6, 8): 19,
                  (1e-6, 10): 41},
        'adaptive': {(5.5e-10, 4): 26, (5.5e-10, 8): 29,
                     (5.5e-10, 10): 36, (1e-6, 4): 22, (1e-6, 8): 19,
                     (1e-6, 10): 29},
        'sequences': {(5.5e-10, 10): [
            6, 1, 2, 3, 4, 5, 4, 4, 1, 4, 4, 5, 6, 7, 8] + [10] * 20},
    },
    'bcsstk09': {
        'group': 'HB', 'n': 1083, 'nnz': 18437, 'norm_a': 2.0,
        'kappa_a': 1.0e4, 'eps_star': 1.6e-12, 'c_rule': 'const:10',
        'classical': {1.6e-12: 207, 1e-6: 171},
        'fixed': {(1.6e-12, 4): 59, (1.6e-12, 8): None,
                  (1.6e-12, 10): None, (1e-6, 4): 43, (1e-6, 8): 28,
                  (1e-6, 10): 122},
        'adaptive': {(1.6e-12, 4): 59, (1.6e-12, 8): 52,
                     (1.6e-12, 10): 50, (1e-6, 4): 43, (1e-6, 8): 28,
                     (1e-6, 10): 33},
        'sequences': {(1.6e-12, 10): [
            2, 2, 3, 3, 3, 3, 3, 1, 2, 3, 3, 3, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4,
            4, 4, 5, 5, 6, 7, 1, 6, 6, 7, 7, 7, 7, 8, 8, 8, 9, 9] + [10] * 10},
    },
    'ex5': {
        'group': 'FIDAP', 'n': 27, 'nnz': 279, 'norm_a': 3.8,
        'kappa_a': 5.7e7, 'eps_star': 1e-8, 'c_rule': 'sqrt-kappa',
        'classical': {1e-8: 76, 1e-6: 49},
        'fixed': {(1e-8, 4): 59, (1e-8, 8): None, (1e-8, 10): None,
                  (1e-6, 4): 34, (1e-6, 8): None, (1e-6, 10): None},
        'adaptive': {(1e-8, 4): 48, (1e-8, 8): 45, (1e-8, 10): 45,
                     (1e-6, 4): 27, (1e-6, 8): 27, (1e-6, 10): 27},
        'sequences': {(1e-8, 10): [1] * 17 + [
            3, 1, 1, 2, 1, 1, 1, 3, 3, 2, 1, 1, 1, 2, 1, 1, 2, 4, 6, 2, 4, 5,
            7, 2, 6, 1, 7, 6]},
    },
}

# s (fixed) and s_max (adaptive) values of the reference tables
REFERENCE_S_VALUES = [4, 8, 10]

# The reference tables count the unit roundoff as machine epsilon
REFERENCE_UNIT_ROUNDOFF = 2. ** -52


def list_reference_matrices():
    """List the names of the reference test matrices

    Returns
    -------
    out : list(str)
        The matrix names.
    """
    out = list(_reference_matrices.keys())
    return out


def get_reference_info(name):
    """Reported data of a reference test matrix

    Parameters
    ----------
    name : str
        The matrix name.

    Returns
    -------
    info : dict
        A copy of the reference entry (see ``_reference_matrices``).
    """
    if name not in _reference_matrices:
        raise_error(
            f'The specified matrix ({name}) is not a reference matrix. '
            f'Valid options are: {list(_reference_matrices.keys())}',
            klass=ConfigError)
    return deepcopy(_reference_matrices[name])
