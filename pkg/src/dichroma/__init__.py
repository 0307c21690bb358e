"""Acyclic colorings of digraphs: products, exact and tree-decomposition
solvers, and explicit product colorings."""

from .closed_forms import (
    ClosedFormWarning,
    LexDicycleParams,
    NotAcyclicColoring,
    StrongDicycleValue,
    bipartite_odd_strong_coloring,
    cartesian_max_coloring,
    dag_product_value,
    direct_projection_coloring,
    lex_dicycle_coloring,
    lex_dicycle_value,
    lex_pair_coloring,
    missing_color_witness,
    orientation_bound,
    orientation_tw_coloring,
    strong_dicycle_coloring,
    strong_dicycle_value,
)
from .digraph import (
    FAMILIES,
    Digraph,
    GraphFormatError,
    UndirectedGraph,
    VertexColoring,
    acyclic_check,
    complete_symmetric,
    dicycle,
    dipath,
    is_acyclic,
    is_oriented,
    make_family,
    strong_components,
    symmetric_of,
    transitive_tournament,
    underlying,
)
from .exact import (
    BudgetExceeded,
    ColoringCertificate,
    SolveBudget,
    chromatic_exact,
    dichromatic_exact,
    find_monochromatic_cycle,
    make_certificate,
    verify_acyclic_homomorphism,
    verify_certificate,
)
from .fpt import (
    Representation,
    StateBudgetExceeded,
    fpt_decide,
    fpt_dichromatic,
    minimal_representation,
    run_dp,
    state_bound,
    transitive_closure,
)
from .io import read_graph, write_graph
from .products import ProductIndex, ProductKind, ProductTooLarge, product, undirected_product
from .treewidth import (
    InvalidDecomposition,
    NiceTreeDecomposition,
    TreeDecomposition,
    exact_treewidth_small,
    heuristic_decomposition,
    make_nice,
    nice_decomposition,
    validate_decomposition,
)

__version__ = "0.1.0"
