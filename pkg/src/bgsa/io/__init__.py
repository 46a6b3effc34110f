from .matrix import read_labels, read_matrix, write_labels, write_matrix
from .gmt import parse_gmt, write_gmt
from .truth import read_truth, write_truth
from .results import (
    GENE_TABLE,
    METADATA,
    SET_TABLE,
    TRACE_TABLE,
    set_table,
    write_json,
    write_metadata,
    write_results,
    write_table,
    write_trace,
)
from .simulated import read_simulated, write_simulated
