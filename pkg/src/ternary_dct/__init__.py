"""Multiplierless 4-point DCT approximations over {-1, 0, 1}.

The package re-derives the approximations by exhaustive search,
verifies their error and complexity against reference figures, applies
them with addition-only kernels, and demonstrates 4x4 block image
coding.  An HTTP service (ternary_dct.service) exposes everything; the
command line tool is a thin client of it.
"""

__version__ = "0.1.0"

from .block2d import (
    BlockImage,
    compress_demo,
    forward_2d,
    inverse_2d,
    load_pgm,
    psnr,
    quant_fold,
    random_image,
    read_pgm,
    save_pgm,
    write_pgm,
)
from .dctcore import (
    ErrorReport,
    NotOrthogonalizableError,
    SingularRowError,
    TERNARY_DCT2,
    TERNARY_DCT4,
    TransformKind,
    exact_dct_ii,
    exact_dct_iv,
    exact_matrix,
    is_row_orthogonal,
    orthogonalize,
    row_normalized,
    signed_dct,
    ternary_matrix,
    total_error_energy,
)
from .kernels import (
    DCT2_GRAPH,
    DCT4_GRAPH,
    FlowGraph,
    GraphNode,
    KernelStats,
    dct2_kernel,
    dct4_kernel,
    evaluate_graph,
    export_graph,
    kernel_stats,
    parse_graph_json,
)
from .search import SearchCandidate, SearchConfig, SearchResult, complexity_of, enumerate_rows, search

__all__ = [
    "BlockImage",
    "DCT2_GRAPH",
    "DCT4_GRAPH",
    "ErrorReport",
    "FlowGraph",
    "GraphNode",
    "KernelStats",
    "NotOrthogonalizableError",
    "SearchCandidate",
    "SearchConfig",
    "SearchResult",
    "SingularRowError",
    "TERNARY_DCT2",
    "TERNARY_DCT4",
    "TransformKind",
    "complexity_of",
    "compress_demo",
    "dct2_kernel",
    "dct4_kernel",
    "enumerate_rows",
    "evaluate_graph",
    "exact_dct_ii",
    "exact_dct_iv",
    "exact_matrix",
    "export_graph",
    "forward_2d",
    "inverse_2d",
    "is_row_orthogonal",
    "kernel_stats",
    "load_pgm",
    "orthogonalize",
    "parse_graph_json",
    "psnr",
    "quant_fold",
    "random_image",
    "read_pgm",
    "row_normalized",
    "save_pgm",
    "search",
    "signed_dct",
    "ternary_matrix",
    "total_error_energy",
    "write_pgm",
]
