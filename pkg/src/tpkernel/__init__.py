"""Polynomial kernelization for trivially perfect editing, deletion and completion."""

from .graph import (
    EditSet,
    Graph,
    InvalidPairError,
    ModulatorViolation,
    Obstruction,
    Pair,
    apply_edits,
    bad_edges,
    complement_induced,
    complete_graph,
    cycle_graph,
    disjoint_union,
    edit_set,
    empty_graph,
    find_obstruction,
    find_obstruction_avoiding,
    is_module,
    path_graph,
    star_graph,
    true_twin_classes,
)
from .generate import Planted, gen_planted, random_graph, random_tp_graph
from .kernel import Instance, Kernel, KernelOutcome, Mode, NoInstance, ReductionTrace, kernelize
from .matching import is_matching, max_bipartite_matching, max_matching
from .modular import MdNode, MdTree, build_md, rule4_candidates
from .solver import (
    EnumerationTooLarge,
    SolveResult,
    is_valid_solution,
    optimal_editsets,
    solve_bruteforce,
    solve_branching,
)
from .tp import (
    NotTriviallyPerfectError,
    SetFamily,
    UcdForest,
    UcdNode,
    UcdStructureError,
    alpha_tp,
    build_ucd,
    is_tp_set_system,
    is_trivially_perfect,
    preceq,
    ucd_to_graph,
)

__version__ = "0.1.0"
