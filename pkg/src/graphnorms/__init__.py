"""Homomorphism densities in step kernels and graph-norm certificates."""

from .density import (
    Decoration,
    EliminationPlan,
    decorated_density,
    decorated_density_bruteforce,
    density,
    density_bruteforce,
    density_many,
    elimination_plan,
    norm_h,
    norm_rh,
)
from .graphs import (
    Component,
    Graph,
    GraphParseError,
    are_isomorphic,
    average_degree,
    components,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    enumerate_subgraphs,
    find_isomorphism,
    find_subgraph_embedding,
    graph_from_json,
    graph_to_json,
    is_connected,
    is_eulerian,
    is_star,
    parse_edge_list,
    path,
    remove_isolated_vertices,
    star,
)
from .kernels import (
    DiracMixture,
    PartitionMismatchError,
    SpecialKernelSpec,
    StepKernel,
    absolute,
    add,
    combine,
    common_refinement,
    constant_kernel,
    dirac_d1,
    dirac_d2,
    dirac_d3,
    dirac_d4,
    half_square_kernel,
    is_graphon,
    is_nonnegative,
    kernel_from_json,
    kernel_to_json,
    ones_like,
    sample_block_random,
    scale,
    special_kernel,
    subtract,
)
from .moduli import (
    EmbeddingReport,
    ExperimentRecord,
    ModulusEstimate,
    concentration_check,
    concentration_scan,
    convexity_witness,
    estimates_to_csv,
    lp_embedding_check,
    modulus_scan,
    smoothness_witness,
)
from .norming import (
    Certificate,
    CheckResult,
    DominationReport,
    HolderReport,
    Verdict,
    certificate_from_json,
    certificate_to_json,
    component_analysis,
    distinguishing_kernel_search,
    domination_check,
    edge_mismatch_certificate,
    full_verdict,
    holder_check,
    holder_search,
    star_or_eulerian_check,
    subgraph_avg_degree_check,
    validate_certificate,
    verdict_to_json,
)

__version__ = "0.1.0"
