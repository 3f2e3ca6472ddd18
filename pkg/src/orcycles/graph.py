"""Bitset-backed oriented graphs and the elementary queries built on them.

Vertices are ``0..n-1``. Neighbourhoods are stored as Python ``int``
bitmasks, out- and in-neighbourhoods side by side, so that the
intersections the finders perform constantly are single ``&`` operations.

A vertex set may be passed anywhere as an iterable of vertices or as an
``int`` bitmask; :func:`as_mask` normalises both.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AntiparallelViolation,
    DuplicateEdge,
    EmptySet,
    LoopEdge,
    ModeError,
    OutOfRange,
)

ORIENTED = "oriented"
DIGRAPH = "digraph"
_MODES = (ORIENTED, DIGRAPH)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def first_k(mask: int, k: int) -> int:
    """The ``k`` lowest-index members of ``mask`` as a new mask."""
    out = 0
    for v in iter_bits(mask):
        if k <= 0:
            break
        out |= 1 << v
        k -= 1
    return out


class OrientedGraph:
    """Immutable loop-free digraph on vertices ``0..n-1``.

    In ``"oriented"`` mode at most one edge joins each unordered pair; in
    ``"digraph"`` mode both directions may be present. ``labels[v]`` is the
    name vertex ``v`` had in the graph this one was derived from (see
    :func:`induced_without`); for freshly built graphs it is ``v`` itself.

    Build instances with :func:`from_edge_list` or the generators in
    :mod:`orcycles.constructions`.
    """

    __slots__ = ("n", "mode", "_out", "_in", "labels")

    def __init__(self, n: int, out_masks: Sequence[int], mode: str = ORIENTED,
                 labels: Sequence[int] | None = None):
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        if n < 0 or len(out_masks) != n:
            raise ValueError("need exactly one out-mask per vertex")
        full = (1 << n) - 1
        inn = [0] * n
        for u, m in enumerate(out_masks):
            if m & ~full:
                raise OutOfRange(f"vertex {u} has an out-neighbour outside 0..{n - 1}")
            if m >> u & 1:
                raise LoopEdge(f"loop at vertex {u}")
            for v in iter_bits(m):
                inn[v] |= 1 << u
        if mode == ORIENTED:
            for u in range(n):
                both = out_masks[u] & inn[u]
                if both:
                    v = lowest(both)
                    raise AntiparallelViolation(f"both {u}->{v} and {v}->{u} present")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "_out", tuple(out_masks))
        object.__setattr__(self, "_in", tuple(inn))
        object.__setattr__(self, "labels", tuple(range(n)) if labels is None else tuple(labels))

    def __setattr__(self, name, value):
        raise AttributeError("OrientedGraph is immutable")

    # -- neighbourhoods ---------------------------------------------------

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return members(self._out[v])

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return members(self._in[v])

    def out_degree(self, v: int) -> int:
        return popcount(self._out[v])

    def in_degree(self, v: int) -> int:
        return popcount(self._in[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def out_of_set(self, mask: int) -> int:
        """N+(A): union of the out-neighbourhoods of the members of ``mask``."""
        acc = 0
        for v in iter_bits(mask):
            acc |= self._out[v]
        return acc

    def in_of_set(self, mask: int) -> int:
        acc = 0
        for v in iter_bits(mask):
            acc |= self._in[v]
        return acc

    # -- whole-graph views --------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def oriented(self) -> bool:
        return self.mode == ORIENTED

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self._out[u]):
                yield u, v

    def num_edges(self) -> int:
        return sum(popcount(m) for m in self._out)

    def edges_within(self, X) -> int:
        """e(X): number of edges with both ends in X."""
        mask = as_mask(self, X)
        return sum(popcount(self._out[v] & mask) for v in iter_bits(mask))

    def edges_between(self, A, B) -> int:
        """e(A, B): number of edges from A to B."""
        a, b = as_mask(self, A), as_mask(self, B)
        return sum(popcount(self._out[v] & b) for v in iter_bits(a))

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            mat[u, v] = True
        return mat

    def index_of(self, label: int) -> int:
        """Current index of the vertex originally called ``label``."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return (self.n, self.mode, self._out) == (other.n, other.mode, other._out)

    def __hash__(self):
        return hash((self.n, self.mode, self._out))

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, m={self.num_edges()}, mode={self.mode!r})"

    def __reduce__(self):
        return (OrientedGraph, (self.n, self._out, self.mode, self.labels))


def as_mask(G: OrientedGraph, X) -> int:
    """Normalise a vertex set (bitmask or iterable) and range-check it."""
    if isinstance(X, (int, np.integer)):
        mask = int(X)
        if mask < 0 or mask >> G.n:
            raise OutOfRange(f"vertex set {mask:#x} has members outside 0..{G.n - 1}")
        return mask
    mask = 0
    for v in X:
        if not 0 <= v < G.n:
            raise OutOfRange(f"vertex {v} outside 0..{G.n - 1}")
        mask |= 1 << v
    return mask


def _check_vertex(G: OrientedGraph, v: int) -> None:
    if not 0 <= v < G.n:
        raise OutOfRange(f"vertex {v} outside 0..{G.n - 1}")


def require_oriented(G: OrientedGraph) -> None:
    if G.mode != ORIENTED:
        raise ModeError("this operation is defined for oriented graphs only")


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], mode: str = ORIENTED) -> OrientedGraph:
    """Build a graph with exactly the given edges.

    Raises LoopEdge, DuplicateEdge, AntiparallelViolation (oriented mode
    only) and OutOfRange.
    """
    out = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if out[u] >> v & 1:
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        out[u] |= 1 << v
    return OrientedGraph(n, out, mode)


@dataclass(frozen=True)
class DegreeSummary:
    min_out: int
    min_in: int

    @property
    def min_semi(self) -> int:
        return min(self.min_out, self.min_in)


def degree_summary(G: OrientedGraph) -> DegreeSummary:
    if G.n == 0:
        return DegreeSummary(0, 0)
    return DegreeSummary(
        min(G.out_degree(v) for v in range(G.n)),
        min(G.in_degree(v) for v in range(G.n)),
    )


def min_semidegree(G: OrientedGraph) -> int:
    return degree_summary(G).min_semi


def induced_without(G: OrientedGraph, A) -> OrientedGraph:
    """G - A, relabelled contiguously; ``labels`` keeps the original names."""
    removed = as_mask(G, A)
    keep = [v for v in range(G.n) if not removed >> v & 1]
    new_index = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        m = 0
        for w in iter_bits(G.out_mask(v) & ~removed):
            m |= 1 << new_index[w]
        out.append(m)
    return OrientedGraph(len(keep), out, G.mode, [G.labels[v] for v in keep])


def induced_on(G: OrientedGraph, A) -> OrientedGraph:
    """G[A], relabelled contiguously."""
    return induced_without(G, G.full_mask & ~as_mask(G, A))


def find_edge_within(G: OrientedGraph, X) -> tuple[int, int] | None:
    """Some edge ``(u, v)`` with both ends in X, or None iff X is independent.

    The lowest tail is taken, then its lowest head. When
    ``|X| > n - 2 * min_semidegree(G)`` an edge always exists in an
    oriented graph, since no independent set is that large.
    """
    mask = as_mask(G, X)
    for u in iter_bits(mask):
        hit = G.out_mask(u) & mask
        if hit:
            return u, lowest(hit)
    return None


def low_outdegree_vertex(G: OrientedGraph, X) -> int:
    """A vertex of X with the fewest out-neighbours inside X (lowest index on ties).

    In an oriented graph the result has at most ``(|X| - 1) / 2``
    out-neighbours in X, because ``e(X) <= |X|(|X| - 1)/2``.
    """
    require_oriented(G)
    mask = as_mask(G, X)
    if not mask:
        raise EmptySet("X must be non-empty")
    return min(iter_bits(mask), key=lambda v: (popcount(G.out_mask(v) & mask), v))


def bfs_layers(G: OrientedGraph, source: int, allowed: int | None = None) -> list[int]:
    """Distances from ``source`` as a list (-1 where unreachable).

    ``allowed`` restricts the search to a vertex mask (``source`` is always
    allowed).
    """
    _check_vertex(G, source)
    if allowed is None:
        allowed = G.full_mask
    dist = [-1] * G.n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= G.out_mask(v)
        nxt &= allowed & ~seen
        for v in iter_bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def bfs_distance(G: OrientedGraph, x: int, y: int) -> int | None:
    """Length of a shortest directed x-y path, or None when y is unreachable."""
    _check_vertex(G, y)
    d = bfs_layers(G, x)[y]
    return None if d < 0 else d


def shortest_path(G: OrientedGraph, x: int, y: int, allowed: int | None = None) -> list[int] | None:
    """A shortest x-y path (vertex list) inside ``allowed``, or None."""
    _check_vertex(G, x)
    _check_vertex(G, y)
    if allowed is None:
        allowed = G.full_mask
    allowed |= (1 << x) | (1 << y)
    parent = {x: None}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        if v == y:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in iter_bits(G.out_mask(v) & allowed):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def diameter(G: OrientedGraph) -> float:
    """Maximum distance over ordered pairs; ``math.inf`` if some pair is unreachable."""
    best = 0
    for v in range(G.n):
        dist = bfs_layers(G, v)
        if min(dist) < 0:
            return float("inf")
        best = max(best, max(dist))
    return best
