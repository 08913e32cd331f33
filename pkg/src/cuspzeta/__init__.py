"""Exact zeta functions and twisted L-functions of edge-weighted graphs
with periodic cusp rays."""

from .cycles import (CycleCensus, ClosedPath, PrimeCycle, counts_via_cycles,
                     cycle_census, enumerate_closed_paths,
                     euler_product_series, primitive_split)
from .exact import (PadeError, Poly, RatFunc, Series, charpoly, det_exact,
                    det_one_minus_u, logderiv_counts, pade, poly_gcd,
                    series_exp, series_log)
from .graphs import (CuspidalGraph, CuspRay, EdgeMatrix, OrientedEdge,
                     Truncation, ValidationError, VertexSystem, build_nagao,
                     closure_matrix, complete_graph, cycle_graph,
                     finite_graph, graph_from_document, graph_to_document,
                     petersen_graph, transfer_matrix, truncate, validate,
                     vertex_operators)
from .ihara import (BassReport, MinorSample, bass_identity_check,
                    connected_closure, ihara_rhs, minor_net)
from .lfunc import (BlockAssignment, BlockMatrix, blocks_from_document,
                    blocks_to_document, block_transfer, holonomy,
                    l_euler_series, lfunction, twisted_traces, validate_blocks)
from .spectral import (PgtReport, SpectralReport, binomial_factorization,
                       column_sum_check, nondecomposable, pgt_check,
                       regular_parameter, spectral_report)
from .zeta import (TraceSeries, ZetaResult, compare_methods, cusp_factor,
                   inverse_zeta_series, traces, zeta_finite, zeta_via_closure,
                   zeta_via_pade)


def __getattr__(name):
    # The command-line layer is imported lazily so `python3 -m cuspzeta.cli`
    # does not execute the module twice.
    if name in ("CommandPlan", "parse_command"):
        from . import cli
        return getattr(cli, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "BassReport", "BlockAssignment", "BlockMatrix", "ClosedPath",
    "CommandPlan", "CuspRay", "CuspidalGraph",
    "CycleCensus", "EdgeMatrix", "MinorSample", "OrientedEdge", "PadeError",
    "PgtReport", "Poly", "PrimeCycle", "RatFunc", "Series", "SpectralReport",
    "TraceSeries", "Truncation", "ValidationError", "VertexSystem",
    "ZetaResult", "bass_identity_check", "binomial_factorization",
    "block_transfer", "blocks_from_document", "blocks_to_document",
    "build_nagao", "charpoly", "closure_matrix", "column_sum_check",
    "compare_methods", "complete_graph", "connected_closure",
    "counts_via_cycles", "cusp_factor", "cycle_census", "cycle_graph",
    "det_exact", "det_one_minus_u", "enumerate_closed_paths",
    "euler_product_series", "finite_graph", "graph_from_document",
    "graph_to_document", "holonomy", "ihara_rhs", "inverse_zeta_series",
    "l_euler_series", "lfunction", "logderiv_counts", "minor_net",
    "nondecomposable", "pade", "parse_command", "petersen_graph", "pgt_check",
    "poly_gcd", "primitive_split", "regular_parameter", "series_exp",
    "series_log", "spectral_report", "traces", "transfer_matrix", "truncate",
    "twisted_traces", "validate", "validate_blocks", "vertex_operators",
    "zeta_finite", "zeta_via_closure", "zeta_via_pade",
]

__version__ = "0.1.0"
