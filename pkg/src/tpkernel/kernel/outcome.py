"""Kernelization results and the replayable reduction trace."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..graph import Graph, Pair, apply_edits, cycle_graph


@dataclass(frozen=True)
class TraceStep:
    """One rule application.

    ``witness`` holds vertex ids of the graph the step was applied to: the
    pair for Rules 1 and 2, the removed vertices for Rules 3, 4 and 5.
    ``remap`` is the old-to-new id map when vertices were removed.
    ``detail`` carries rule-specific extras (module, kept set, tooth index).
    """

    rule: str
    witness: tuple[int, ...]
    k_before: int
    k_after: int
    remap: Optional[dict[int, int]] = None
    detail: dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {
            "rule": self.rule,
            "witness": list(self.witness),
            "k_before": self.k_before,
            "k_after": self.k_after,
        }
        if self.remap is not None:
            rec["remap"] = [[old, new] for old, new in sorted(self.remap.items())]
        if self.detail:
            rec["detail"] = self.detail
        return rec

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "TraceStep":
        remap = rec.get("remap")
        return cls(
            rule=rec["rule"],
            witness=tuple(rec["witness"]),
            k_before=rec["k_before"],
            k_after=rec["k_after"],
            remap=None if remap is None else {int(a): int(b) for a, b in remap},
            detail=dict(rec.get("detail", {})),
        )


EDGE_RULES = {"rule1": "add", "rule2": "delete"}
VERTEX_RULES = {"rule3", "rule4", "rule5"}


class ReplayError(ValueError):
    pass


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.rule] = out.get(s.rule, 0) + 1
        return out

    def replay(self, g: Graph, k: int) -> tuple[Graph, int]:
        """Re-apply every step to ``(g, k)`` and return the final instance.

        A ``no-instance`` step yields the canonical ``(C4, 0)``.
        """
        for i, s in enumerate(self.steps):
            if s.k_before != k:
                raise ReplayError(f"step {i}: budget {k} does not match recorded {s.k_before}")
            if s.rule in EDGE_RULES:
                p = Pair.of(*s.witness)
                want_edge = EDGE_RULES[s.rule] == "delete"
                if g.has_edge(p.u, p.v) != want_edge:
                    raise ReplayError(f"step {i}: pair {tuple(p)} is in the wrong state")
                g = apply_edits(g, [p])
            elif s.rule in VERTEX_RULES:
                g, remap = g.remove_vertices(s.witness)
                if s.remap is not None and remap != s.remap:
                    raise ReplayError(f"step {i}: vertex renumbering differs")
            elif s.rule == "no-instance":
                return NO_GRAPH, 0
            else:
                raise ReplayError(f"step {i}: unknown rule {s.rule!r}")
            k = s.k_after
        return g, k


NO_GRAPH = cycle_graph(4)


@dataclass(frozen=True)
class NoInstance:
    """Proof-free verdict that the input has no solution within budget.

    Its instance form is the constant no-instance ``(C4, 0)``.
    """

    reason: str
    trace: ReductionTrace = field(default_factory=ReductionTrace)

    @property
    def g(self) -> Graph:
        return NO_GRAPH

    @property
    def k(self) -> int:
        return 0


@dataclass(frozen=True)
class Kernel:
    """A reduced instance equivalent to the input.

    ``origin[v]`` is the input id of kernel vertex ``v``.  ``modulator``,
    ``important`` and ``comb_lengths`` describe the last structural pass and
    exist so that callers can audit the explicit size bounds.
    """

    g: Graph
    k: int
    trace: ReductionTrace
    origin: tuple[int, ...]
    modulator: tuple[int, ...] = ()
    important: int = 0
    comb_lengths: tuple[int, ...] = ()


KernelOutcome = Kernel | NoInstance
