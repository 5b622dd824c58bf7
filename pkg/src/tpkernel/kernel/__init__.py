"""Reduction rules, TP-modulator anatomy and the kernelization driver."""

from ..problem import Instance, Mode
from .driver import exhaust_rules_1_to_4, kernelize
from .outcome import Kernel, KernelOutcome, NoInstance, ReductionTrace, ReplayError, TraceStep
from .rules import (
    find_rule1,
    find_rule2,
    find_rule3,
    rule1_add,
    rule1_applies,
    rule1_candidates,
    rule2_applies,
    rule2_delete,
    rule3_twin,
    rule4_module,
)
from .structure import (
    Comb,
    ImportantBags,
    InternalStructureError,
    Modulator,
    ModulatorViolationError,
    NeighborhoodType,
    Partition,
    UcdIndex,
    analyze,
    build_modulator,
    classify_vertex_type,
    lca_closure,
    lca_closure_naive,
    mark_important_bags,
    partition_remainder,
    rule5_comb,
    rule5_index,
    x_neighborhood,
)

__all__ = [name for name in dir() if not name.startswith("_")]
