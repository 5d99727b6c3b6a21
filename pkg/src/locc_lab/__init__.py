"""Local distinguishability analysis for orthogonal product-state sets."""

from .corpora import builtin_document, builtin_names, builtin_pops
from .linalg import (
    DEFAULT_TOL,
    commutator,
    inner,
    kron,
    projector_onto_span,
    rank_of_span,
    trace_norm,
)
from .protocol import (
    Measurement,
    Outcome,
    ProtocolNode,
    Verdict,
    bruteforce_indistinguishable,
    classify_with_guarantee,
    distinguish,
    format_protocol_text,
    format_report_text,
    protocol_report,
    render_protocol,
)
from .quantumness import Chain, NcReport, ensemble_nc, find_chain, pair_nc, weighted_nc
from .semiclassical import (
    QcState,
    assemble,
    attach_ancilla,
    curve_csv,
    extract_blocks,
    nc_curve,
    qc_nc,
    rho_x_family,
)
from .singleset import OrthGraph, Partition, build_graph, decompose, is_single
from .states import (
    EnsembleClass,
    PopsSet,
    PopsValidationError,
    ProductState,
    PureState,
    WeightedEnsemble,
    classify,
    ket_str,
    parse_pops,
    random_complete_pops,
    serialize_pops,
    side_set,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Chain",
    "EnsembleClass",
    "Measurement",
    "NcReport",
    "OrthGraph",
    "Outcome",
    "Partition",
    "PopsSet",
    "PopsValidationError",
    "ProductState",
    "ProtocolNode",
    "PureState",
    "QcState",
    "Verdict",
    "WeightedEnsemble",
    "assemble",
    "attach_ancilla",
    "bruteforce_indistinguishable",
    "builtin_document",
    "builtin_names",
    "builtin_pops",
    "classify",
    "classify_with_guarantee",
    "commutator",
    "curve_csv",
    "decompose",
    "distinguish",
    "ensemble_nc",
    "extract_blocks",
    "find_chain",
    "format_protocol_text",
    "format_report_text",
    "build_graph",
    "inner",
    "is_single",
    "ket_str",
    "kron",
    "nc_curve",
    "pair_nc",
    "parse_pops",
    "projector_onto_span",
    "protocol_report",
    "qc_nc",
    "random_complete_pops",
    "rank_of_span",
    "render_protocol",
    "rho_x_family",
    "serialize_pops",
    "side_set",
    "trace_norm",
    "weighted_nc",
    "__version__",
]
