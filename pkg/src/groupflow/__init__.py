"""Group-valued graph flows, certified planarity, and leak-proof groups."""

from .errors import GroupFlowError
from .flows import (
    GroupFlow,
    LeakVerdict,
    conjugate_along_walk,
    detect_binary_leak,
    detect_leak,
    example_flow_k33,
    example_flow_k33_minus,
    example_flow_k5,
    excess,
    excess_map,
    is_tractable,
    lift_through_subgraph,
    round_flow,
    solve_tree_flow,
    synthesize_leaking_flow,
    uncontract_flow,
    validate_flow,
)
from .graphs import (
    Graph,
    MinorWitness,
    bridges,
    components,
    contract,
    find_minor,
    graph_from,
    named_graph,
    spanning_forest,
    verify_minor,
)
from .groupleak import (
    DeltaPresentation,
    build_delta,
    is_binary_leakproof_group,
    is_leakproof_group,
    phi,
    witness_flow_from_kernel,
)
from .groups import (
    AbelianBasis,
    EsElement,
    FiniteGroup,
    Subgroup,
    abelian_basis,
    centralizer,
    conjugacy_class_id,
    discrete_log,
    es_group,
    group_from_cayley,
    maximal_abelian_subgroups,
    standard_group,
)
from .howell import HowellForm, lattice_normal_form
from .planar import (
    BoundaryWalk,
    ExtraPlanarVerdict,
    RotationSystem,
    euler_planar_check,
    extra_planar,
    faces,
    test_planarity,
    walk_bridge_check,
)

__all__ = [
    "AbelianBasis",
    "BoundaryWalk",
    "DeltaPresentation",
    "EsElement",
    "ExtraPlanarVerdict",
    "FiniteGroup",
    "Graph",
    "GroupFlow",
    "GroupFlowError",
    "HowellForm",
    "LeakVerdict",
    "MinorWitness",
    "RotationSystem",
    "Subgroup",
    "abelian_basis",
    "bridges",
    "build_delta",
    "centralizer",
    "components",
    "conjugacy_class_id",
    "conjugate_along_walk",
    "contract",
    "detect_binary_leak",
    "detect_leak",
    "discrete_log",
    "es_group",
    "euler_planar_check",
    "example_flow_k33",
    "example_flow_k33_minus",
    "example_flow_k5",
    "excess",
    "excess_map",
    "extra_planar",
    "faces",
    "find_minor",
    "graph_from",
    "group_from_cayley",
    "is_binary_leakproof_group",
    "is_leakproof_group",
    "is_tractable",
    "lattice_normal_form",
    "lift_through_subgraph",
    "maximal_abelian_subgroups",
    "named_graph",
    "phi",
    "round_flow",
    "solve_tree_flow",
    "spanning_forest",
    "standard_group",
    "synthesize_leaking_flow",
    "test_planarity",
    "uncontract_flow",
    "validate_flow",
    "verify_minor",
    "walk_bridge_check",
    "witness_flow_from_kernel",
]
