"""Embedded-graph toolkit for thrackle edge bounds.

Signed rotation systems and face tracing, parity-embedding checks and search,
an exact discharging engine with the resulting edge bounds, and the extremal
families G(k) and H(k).
"""

__version__ = "0.1.0"

from .constructions import gen_gk, gen_hk, gen_hk_embedding
from .discharging import (
    REMARK2,
    THRACKLE,
    bound_from_min_charge,
    compose_block_bound,
    quasithrackle_theorem_bound,
    run_discharge,
    run_quasithrackle_check,
    run_thrackle_discharge,
    thrackle_theorem_bound,
)
from .embedding import (
    EmbeddingScheme,
    FaceWalk,
    cycle_sign,
    is_orientable,
    is_parity_embedding,
    summarize,
    switch_vertex,
    trace_faces,
)
from .graph import (
    Cycle,
    Graph,
    blocks,
    check_quasithrackle_axioms,
    check_six_cycle_conflicts,
    check_thrackle_axioms,
    enumerate_cycles_up_to,
    girth,
    is_bipartite,
    parse_graph,
)
from .search import (
    find_parity_embedding_projective,
    find_plane_embedding,
    is_generalized_thrackle,
)
