"""Witness objects returned by finders, walks and the oracle.

Each witness can re-check itself against a host graph; the finders call
that check before returning anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import OrientedGraph


def is_path(G: OrientedGraph, path: Sequence[int], avoid: int = 0) -> bool:
    """Distinct vertices, consecutive edges present, interior disjoint from ``avoid``."""
    if len(set(path)) != len(path) or not path:
        return False
    if any(not G.has_edge(u, v) for u, v in zip(path, path[1:])):
        return False
    return not any(avoid >> v & 1 for v in path[1:-1])


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    through: int | None = None

    def __len__(self):
        return len(self.vertices)

    def is_valid(self, G: OrientedGraph, length: int | None = None) -> bool:
        vs = self.vertices
        if length is not None and len(vs) != length:
            return False
        if len(vs) < 2 or len(set(vs)) != len(vs):
            return False
        if not all(0 <= v < G.n for v in vs):
            return False
        if any(not G.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))):
            return False
        return self.through is None or self.through in vs

    def to_dict(self) -> dict:
        return {"kind": "cycle", "vertices": list(self.vertices), "through": self.through}


@dataclass(frozen=True)
class Butterfly:
    """xy-butterfly: edges xa, xz, az, zb, zy, by."""

    x: int
    a: int
    z: int
    b: int
    y: int

    def edges(self):
        x, a, z, b, y = self.x, self.a, self.z, self.b, self.y
        return ((x, a), (x, z), (a, z), (z, b), (z, y), (b, y))

    def path(self, length: int) -> tuple[int, ...]:
        """The x-y path of the given length (2, 3 or 4) inside the gadget."""
        x, a, z, b, y = self.x, self.a, self.z, self.b, self.y
        return {2: (x, z, y), 3: (x, a, z, y), 4: (x, a, z, b, y)}[length]

    def vertex_mask(self) -> int:
        return sum(1 << v for v in (self.x, self.a, self.z, self.b, self.y))

    def is_valid(self, G: OrientedGraph) -> bool:
        vs = (self.x, self.a, self.z, self.b, self.y)
        return len(set(vs)) == 5 and all(G.has_edge(u, v) for u, v in self.edges())

    def to_dict(self) -> dict:
        return {"kind": "butterfly", "x": self.x, "a": self.a, "z": self.z, "b": self.b, "y": self.y}


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices) - 1

    def to_dict(self) -> dict:
        return {"kind": "path", "vertices": list(self.vertices), "length": len(self)}


@dataclass(frozen=True)
class ClosedWalkWitness:
    """Closed walk ``v_1 ... v_{l+1}`` with ``v_1 == v_{l+1}``; vertices may repeat."""

    vertices: tuple[int, ...]
    strategy: str

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_valid(self, G: OrientedGraph, length: int | None = None) -> bool:
        vs = self.vertices
        if len(vs) < 2 or vs[0] != vs[-1]:
            return False
        if length is not None and self.length != length:
            return False
        return all(G.has_edge(u, v) for u, v in zip(vs, vs[1:]))

    def to_dict(self) -> dict:
        return {"kind": "closed_walk", "vertices": list(self.vertices),
                "length": self.length, "strategy": self.strategy}
