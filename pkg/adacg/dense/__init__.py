# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . gram import (GramMatrix, sym_eigenvalues, cond_from_gram,
                    extract_sub_gram, sub_gram_indices, g_inner)
