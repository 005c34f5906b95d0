# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL
from . presets import (list_reference_matrices, get_reference_info,
                       REFERENCE_S_VALUES, REFERENCE_UNIT_ROUNDOFF)
from . fetch import fetch_matrix, collection_url, data_dir
from . tables import (write_trace, read_trace, read_traces, emit_summary,
                      summary_frame, format_sequence)
from . experiment import ExperimentPlan, run_experiment, reference_plan
