"""Perfect H-packings, extremal constructions and the K_r^- packing pipeline."""

from ._core import (
    Graph,
    HpackError,
    b1_graph,
    bottle_graph,
    canonical_graph,
    chromatic_number,
    complete_graph,
    complete_multipartite,
    critical_chromatic_number,
    default_tau,
    find_perfect_packing,
    h_qr_graph,
    invariants,
    k_r_minus,
    max_packing,
    pack_h_qr,
    prop3_extremal,
    prop4_extremal,
    read_edge_list,
    run_pipeline,
    threshold_table,
    tidy,
    verify_packing,
    write_edge_list,
)

__all__ = [name for name in dir() if not name.startswith("_")]
