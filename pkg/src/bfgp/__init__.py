"""General position sets and isometric cycle covers on butterfly networks."""

from .budget import Budget
from .cycle_cover import (
    CoverReport,
    CycleCover,
    construct_bf_cycle_cover,
    enumerate_isometric_cycles,
    gp_upper_bounds,
    min_cover_exact,
    verify_bf_cover,
    verify_cover,
)
from .genpos import (
    GpWitness,
    SolveResult,
    VertexSet,
    brute_force_max_gp,
    collinear_triples,
    construct_butterfly_gp_set,
    greedy_gp_lower_bound,
    max_general_position,
    verify_general_position,
)
from .geodesy import (
    DistanceMatrix,
    all_pairs_distances,
    is_collinear_triple,
    is_connected,
    is_isometric_cycle,
    is_isometric_path,
    lies_between,
)
from .graph_io import export_graph, import_graph, load_graph, save_graph
from .graphs import (
    ButterflyLabel,
    Graph,
    VertexClassification,
    build_butterfly,
    build_cycle,
    build_path,
    classify_vertices,
    id_of,
    label_of,
)

__version__ = "0.1.0"
