# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . available_bases import list_bases, get_basis_coefficients
from . krylov import (BasisSpec, BasisMatrix, ChangeOfBasis, build_basis,
                      assemble_b, compute_gram, recover_iterates)
