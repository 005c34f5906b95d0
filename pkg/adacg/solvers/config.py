# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
import numpy as np
from sklearn.base import BaseEstimator

from .. basis import BasisSpec
from .. utils import raise_error
from .. utils.errors import ConfigError

UNIT_ROUNDOFF = 2. ** -53

_c_rule_kinds = ['constant', 'sqrt_kappa_a', 'full_bound']


class CRule(BaseEstimator):
    """Constant ``c(k, j)`` in the accuracy bounds of the adaptive solver.

    Parameters
    ----------
    kind : str
        Options are:

        * 'constant': ``c = value``.
        * 'sqrt_kappa_a': ``c = sqrt(kappa(A))``.
        * 'full_bound': ``c = 6 N_k j kappa(A)`` with
          ``N_k = 7 + 2 n_a + 14 ||B|| / ||A||``.

    value : float
        The constant for the 'constant' kind. Defaults to 1.
    stats : adacg.sparse.MatrixStats | None
        Estimates of ``||A||`` and ``kappa(A)``. Required by the
        'sqrt_kappa_a' and 'full_bound' kinds.
    n_a : int | None
        Maximum number of nonzeros per row of A. Required by 'full_bound'.
    """

    def __init__(self, kind='constant', value=1., stats=None, n_a=None):
        self.kind = kind
        self.value = value
        self.stats = stats
        self.n_a = n_a

    def validate(self):
        if self.kind not in _c_rule_kinds:
            raise_error(f'Unknown c rule {self.kind}. Valid options are '
                        f'{_c_rule_kinds}', klass=ConfigError)
        if self.kind == 'constant' and not self.value > 0:
            raise_error(f'The constant c must be positive (got {self.value})',
                        klass=ConfigError)
        if self.kind != 'constant' and self.stats is None:
            raise_error(f'The c rule "{self.kind}" requires matrix stats',
                        klass=ConfigError)
        if self.kind == 'full_bound' and self.n_a is None:
            raise_error('The c rule "full_bound" requires n_a',
                        klass=ConfigError)
        return self

    def __call__(self, k, j, b_norm=1.):
        """Evaluate ``c(k, j)``.

        Parameters
        ----------
        k : int
            The outer loop index.
        j : int
            The inner iteration (or block parameter).
        b_norm : float
            ``||B||`` for the block. Only used by 'full_bound'.
        """
        if self.kind == 'constant':
            return float(self.value)
        if self.kind == 'sqrt_kappa_a':
            return float(np.sqrt(self.stats.kappa_a))
        tau = b_norm / self.stats.norm_a
        n_k = 7. + 2. * self.n_a + 14. * tau
        return float(6. * n_k * j * self.stats.kappa_a)

    def describe(self):
        """Short label used in trace metadata and tables"""
        if self.kind == 'constant':
            return 'one' if self.value == 1 else f'const:{self.value:g}'
        return 'sqrt-kappa' if self.kind == 'sqrt_kappa_a' else 'full'


class SolverConfig(BaseEstimator):
    """Parameters of the s-step solvers.

    Parameters
    ----------
    eps_star : float
        Requested accuracy on the true residual norm. Defaults to 1e-6.
    s_max : int
        Largest block parameter. Defaults to 4.
    s_bar_0 : int | None
        Block parameter of the first outer loop. If None, ``s_max``.
    f : int | None
        Growth of the block parameter between outer loops. If None,
        ``s_max``.
    c_rule : CRule | None
        Rule for the constant in the accuracy bounds. If None, ``c = 1``.
    unit_roundoff : float
        Defaults to ``2 ** -53``.
    max_outer : int
        Maximum number of outer loops. Defaults to 2000.
    max_total_iters : int
        Maximum number of inner iterations over all outer loops. Defaults
        to 20000.
    basis : str
        The polynomial basis. Defaults to 'monomial'.
    skip_inner_check : bool
        If True, the adaptive solver never ends a block early. Defaults to
        False.
    trace_true_residual : bool
        If True, record the true residual after every inner iteration
        (costs one extra matrix-vector product per iteration, outside the
        algorithm). Defaults to True.
    stagnation_window : int
        Number of outer loops without improvement of the true residual
        after which the run is declared stagnated. Defaults to 50.
    divergence_factor : float
        The run diverges when the true residual exceeds
        ``divergence_factor * ||b||``. Defaults to 1e3.
    """

    def __init__(self, eps_star=1e-6, s_max=4, s_bar_0=None, f=None,
                 c_rule=None, unit_roundoff=UNIT_ROUNDOFF, max_outer=2000,
                 max_total_iters=20000, basis='monomial',
                 skip_inner_check=False, trace_true_residual=True,
                 stagnation_window=50, divergence_factor=1e3):
        self.eps_star = eps_star
        self.s_max = s_max
        self.s_bar_0 = s_bar_0
        self.f = f
        self.c_rule = c_rule
        self.unit_roundoff = unit_roundoff
        self.max_outer = max_outer
        self.max_total_iters = max_total_iters
        self.basis = basis
        self.skip_inner_check = skip_inner_check
        self.trace_true_residual = trace_true_residual
        self.stagnation_window = stagnation_window
        self.divergence_factor = divergence_factor

    def validate(self):
        """Check the parameters and resolve the defaults.

        Sets ``s_bar_0_``, ``f_``, ``c_rule_`` and ``basis_spec_``.

        Returns
        -------
        self : SolverConfig
            The validated configuration.
        """
        if int(self.s_max) != self.s_max or self.s_max < 1:
            raise_error(f's_max must be a positive integer (got {self.s_max})',
                        klass=ConfigError)
        s_bar_0 = self.s_max if self.s_bar_0 is None else self.s_bar_0
        if not 1 <= s_bar_0 <= self.s_max:
            raise_error(f's_bar_0 must be in [1, s_max={self.s_max}] '
                        f'(got {s_bar_0})', klass=ConfigError)
        f = self.s_max if self.f is None else self.f
        if f < 1:
            raise_error(f'f must be >= 1 (got {f})', klass=ConfigError)
        if not self.unit_roundoff > 0:
            raise_error(f'unit_roundoff must be positive (got '
                        f'{self.unit_roundoff})', klass=ConfigError)
        if not self.eps_star > self.unit_roundoff:
            raise_error(f'eps_star ({self.eps_star}) must be larger than the '
                        f'unit roundoff ({self.unit_roundoff})',
                        klass=ConfigError)
        if self.max_outer < 1 or self.max_total_iters < 1:
            raise_error('max_outer and max_total_iters must be positive',
                        klass=ConfigError)
        if self.stagnation_window < 1:
            raise_error('stagnation_window must be positive',
                        klass=ConfigError)
        if not self.divergence_factor > 1:
            raise_error('divergence_factor must be > 1', klass=ConfigError)
        c_rule = CRule() if self.c_rule is None else self.c_rule
        if not isinstance(c_rule, CRule):
            raise_error(f'c_rule must be a CRule (got {type(c_rule)})',
                        klass=ConfigError)
        self.s_bar_0_ = int(s_bar_0)
        self.f_ = int(f)
        self.c_rule_ = c_rule.validate()
        self.basis_spec_ = (self.basis if isinstance(self.basis, BasisSpec)
                            else BasisSpec(self.basis))
        return self

    def c(self, k, j, s=None):
        """The constant ``c(k, j)`` for a block with parameter s"""
        if not hasattr(self, 'c_rule_'):
            self.validate()
        b_norm = 1.
        if self.c_rule_.kind == 'full_bound':
            b_norm = self.basis_spec_.b_norm(self.s_max if s is None else s)
        return self.c_rule_(k, j, b_norm=b_norm)
