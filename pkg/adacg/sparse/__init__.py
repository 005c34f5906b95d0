# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . csr import (SparseMatrixCsr, parse_matrix_market, read_matrix_market,
                   write_matrix_market, spmv, equilibrate, make_rhs)
from . stats import MatrixStats, estimate_stats, lanczos_extreme_eigenvalues
