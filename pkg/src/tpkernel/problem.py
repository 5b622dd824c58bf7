"""Problem variants and instances shared by the kernelizer and the solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import Graph


class Mode(enum.Enum):
    EDITING = "edit"
    DELETION = "delete"
    COMPLETION = "complete"

    def allows(self, g: Graph, u: int, v: int) -> bool:
        """Whether toggling ``uv`` is a legal edit of ``g`` in this mode."""
        if self is Mode.EDITING:
            return True
        present = g.has_edge(u, v)
        return present if self is Mode.DELETION else not present

    @classmethod
    def parse(cls, text: "str | Mode") -> "Mode":
        if isinstance(text, Mode):
            return text
        aliases = {
            "edit": cls.EDITING, "editing": cls.EDITING,
            "delete": cls.DELETION, "deletion": cls.DELETION,
            "complete": cls.COMPLETION, "completion": cls.COMPLETION,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown mode {text!r}") from None


@dataclass(frozen=True)
class Instance:
    g: Graph
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("budget must be non-negative")
