"""Closed walks of prescribed length and walks for arbitrarily oriented cycles.

Closed walks are built by winding: go round one short cycle whose length
divides the target, or combine two cycles of consecutive lengths that
share a vertex (a transitive triangle plus a return path gives such a
pair). An exact layered search decides the remaining cases.

An arbitrarily oriented cycle is written as a string over ``f``/``b``
(edge ``i`` goes forwards from position ``i`` to ``i+1``, or backwards).
:func:`pattern_to_walk` maps it homomorphically onto a small fixed shape
and :func:`embed_walk_greedy` places that shape in a host graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .arith import WindingPlan, smallest_nondivisor, winding_plan
from .errors import BudgetExceeded, EmbeddingNotFound, NoPlan, PatternTooShort
from .graph import (
    OrientedGraph,
    as_mask,
    find_edge_within,
    iter_bits,
    lowest,
    popcount,
    require_oriented,
    shortest_path,
)
from .oracle import has_cycle_exact
from .witnesses import ClosedWalkWitness

MAX_RETURN_PATH = 50
DIVISOR_BUDGET = 200_000


# -- patterns -----------------------------------------------------------------------


def _swap(letter: str) -> str:
    return "b" if letter == "f" else "f"


@dataclass(frozen=True)
class CyclePattern:
    """Orientation string of a cycle: ``letters[i]`` is edge ``i`` (positions ``i -> i+1``)."""

    letters: str

    def __post_init__(self):
        letters = str(self.letters)
        if set(letters) - {"f", "b"}:
            raise ValueError(f"pattern must be over 'f'/'b', got {letters!r}")
        if len(letters) < 3:
            raise PatternTooShort(f"an oriented cycle needs at least 3 edges, got {letters!r}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters

    @property
    def signed_type(self) -> int:
        return self.letters.count("f") - self.letters.count("b")

    @property
    def cycle_type(self) -> int:
        return abs(self.signed_type)

    def reversed(self) -> "CyclePattern":
        """The same cycle read the other way round: position j becomes ``-j mod len``."""
        return CyclePattern("".join(_swap(c) for c in reversed(self.letters)))

    def rotated(self, k: int) -> "CyclePattern":
        k %= len(self.letters)
        return CyclePattern(self.letters[k:] + self.letters[:k])

    def normalized(self) -> "CyclePattern":
        """Read in the direction with at least as many forward as backward edges."""
        return self if self.signed_type >= 0 else self.reversed()


def as_pattern(p) -> CyclePattern:
    return p if isinstance(p, CyclePattern) else CyclePattern(p)


def cycle_type(p) -> int:
    """Forward minus backward edges, made non-negative."""
    return as_pattern(p).cycle_type


# -- walk shapes --------------------------------------------------------------------

DIRECTED_PATH = "directed-path"
DIRECTED_CYCLE = "directed-cycle"
ONE_TRIANGLE = "path-with-transitive-triangle"
TWO_TRIANGLES = "path-with-two-triangles"
SQUARE = "path-with-fffb-square"


@dataclass(frozen=True)
class WalkShape:
    """A small oriented graph plus a homomorphism of a pattern into it.

    Path shapes use vertices ``0..k2`` for the directed path ``0 -> ... -> k2``;
    gadget vertices come after. ``attachments`` lists each gadget as
    ``(kind, path_index, gadget_vertices)``: a triangle ``(x, z, y)`` has
    edges ``xz, xy, zy`` and a square ``(x, y, z, y2)`` has edges
    ``xy, yz, zy2, xy2``. ``homomorphism[i]`` is the image of pattern
    position ``i``.
    """

    kind: str
    n_vertices: int
    edges: tuple
    homomorphism: tuple
    pattern: str
    k1: int | None = None
    k2: int | None = None
    k: int | None = None
    attachments: tuple = field(default_factory=tuple)

    def verify(self) -> bool:
        """Every pattern edge maps onto a shape edge in the right direction."""
        E = set(self.edges)
        ell = len(self.pattern)
        h = self.homomorphism
        if len(h) != ell:
            return False
        for i, c in enumerate(self.pattern):
            u, v = h[i], h[(i + 1) % ell]
            if (u, v) not in E if c == "f" else (v, u) not in E:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "homomorphism": list(self.homomorphism),
            "pattern": self.pattern,
            "k1": self.k1,
            "k2": self.k2,
            "k": self.k,
            "attachments": [[kind, idx, list(vs)] for kind, idx, vs in self.attachments],
        }


def _find_segments(s: str, seg: str) -> list[int]:
    """Cyclic start positions of ``seg`` in ``s``."""
    ell = len(s)
    doubled = s + s[: len(seg) - 1]
    return [i for i in range(ell) if doubled.startswith(seg, i)]


def _heights(s: str, collapsed: dict[int, int]) -> list[int]:
    """Prefix heights over positions ``0..len(s)``; a collapsed segment ``start -> len`` counts 0."""
    h = [0] * (len(s) + 1)
    i = 0
    while i < len(s):
        if i in collapsed:
            L = collapsed[i]
            for j in range(1, L + 1):
                h[i + j] = h[i]
            i += L
        else:
            h[i + 1] = h[i] + (1 if s[i] == "f" else -1)
            i += 1
    return h


def _path_edges(k2: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k2)]


def _gadget_shape(s: str, gadgets: list[tuple[int, str]]):
    """Shape for a rotated pattern ``s`` with gadget segments at the given starts.

    Each gadget segment collapses to a closed loop at its start vertex, so
    the heights of what remains return to 0 and lay out along a path.
    """
    lengths = {"ffb": 3, "fffb": 4}
    collapsed = {start: lengths[g] for start, g in gadgets}
    h = _heights(s, collapsed)
    lo = min(h)
    k2 = max(h) - lo
    edges = _path_edges(k2)
    hom = [h[i] - lo for i in range(len(s))]
    nxt = k2 + 1
    attachments = []
    for start, g in gadgets:
        base = h[start] - lo
        if g == "ffb":
            z, y = nxt, nxt + 1
            nxt += 2
            edges += [(base, z), (base, y), (z, y)]
            hom[start + 1], hom[start + 2] = z, y
            attachments.append(("triangle", base, (base, z, y)))
        else:
            y, z, y2 = nxt, nxt + 1, nxt + 2
            nxt += 3
            edges += [(base, y), (y, z), (z, y2), (base, y2)]
            hom[start + 1], hom[start + 2], hom[start + 3] = y, z, y2
            attachments.append(("square", base, (base, y, z, y2)))
    return nxt, tuple(edges), hom, k2, attachments


def pattern_to_walk(p) -> WalkShape:
    """Map an oriented cycle homomorphically onto the walk its cycle-type calls for.

    Type 0: a directed path of the pattern's length. Type ``t >= 3``: a
    directed t-cycle. Type 1: a path with a transitive triangle where the
    first ``ffb`` occurs. Type 2: a path with two triangles at the first
    two non-overlapping ``ffb`` segments, else a path with an ``fffb``
    square. Patterns with more backward edges are read in reverse and the
    map is expressed in the original positions.
    """
    orig = as_pattern(p)
    ell = len(orig)
    flipped = orig.signed_type < 0
    q = orig.normalized().letters
    t = abs(orig.signed_type)

    if t == 0:
        h = _heights(q, {})
        lo = min(h)
        hom = [h[i] - lo for i in range(ell)]
        kind, nv, edges, k1, k2, k, att = DIRECTED_PATH, ell + 1, tuple(_path_edges(ell)), None, ell, None, ()
    elif t >= 3:
        h = _heights(q, {})
        hom = [h[i] % t for i in range(ell)]
        kind, nv, edges = DIRECTED_CYCLE, t, tuple((i, (i + 1) % t) for i in range(t))
        k1, k2, k, att = None, None, t, ()
    else:
        rot, gadgets = _choose_gadgets(q, t)
        s = q[rot:] + q[:rot]
        nv, edges, hom_rot, k2, att = _gadget_shape(s, [((g - rot) % ell, kind) for g, kind in gadgets])
        hom = [hom_rot[(i - rot) % ell] for i in range(ell)]
        kind = ONE_TRIANGLE if t == 1 else (TWO_TRIANGLES if gadgets[0][1] == "ffb" else SQUARE)
        k1, k = att[0][1], None
        att = tuple(att)
    if flipped:
        # position i of the original is position -i of the reversed reading
        hom = [hom[(-i) % ell] for i in range(ell)]
    shape = WalkShape(kind, nv, tuple(edges), tuple(hom), orig.letters, k1, k2, k, att)
    if not shape.verify():
        raise AssertionError(f"internal error: homomorphism check failed for {orig.letters!r}")
    return shape


def _choose_gadgets(q: str, t: int):
    """Rotation offset and gadget segments ``[(start, kind)]`` for types 1 and 2."""
    ell = len(q)
    ffb = _find_segments(q, "ffb")
    if t == 1:
        if not ffb:
            raise AssertionError(f"type-1 pattern without ffb: {q!r}")
        return ffb[0], [(ffb[0], "ffb")]
    for i, j in combinations(ffb, 2):
        # edge sets {i, i+1, i+2} and {j, j+1, j+2} must be disjoint mod ell
        if (j - i) % ell >= 3 and (i - j) % ell >= 3:
            return i, [(i, "ffb"), (j, "ffb")]
    fffb = _find_segments(q, "fffb")
    if not fffb:
        raise AssertionError(f"type-2 pattern with neither two ffb nor fffb: {q!r}")
    return fffb[0], [(fffb[0], "fffb")]


# -- embedding ------------------------------------------------------------------------


def triangle_roots(G: OrientedGraph) -> int:
    """Vertices x with an edge inside N+(x), i.e. the source of a transitive triangle."""
    return sum(1 << x for x in range(G.n) if find_edge_within(G, G.out_mask(x)) is not None)


def _square_at(G: OrientedGraph, x: int):
    """``(y, z, y2)`` with ``x->y, y->z, z->y2, x->y2``, or None."""
    out_x = G.out_mask(x)
    for y in iter_bits(out_x):
        for y2 in iter_bits(out_x & ~(1 << y)):
            mid = G.out_mask(y) & G.in_mask(y2) & ~(1 << x)
            if mid:
                return y, lowest(mid), y2
    return None


def square_roots(G: OrientedGraph) -> int:
    return sum(1 << x for x in range(G.n) if _square_at(G, x) is not None)


def _walk_through(G: OrientedGraph, req: list[int]) -> list[int] | None:
    """A walk ``P_0 -> ... -> P_k`` with ``P_i`` in ``req[i]``, lowest choices first."""
    feas = [0] * len(req)
    feas[-1] = req[-1]
    for i in range(len(req) - 2, -1, -1):
        feas[i] = req[i] & G.in_of_set(feas[i + 1])
    if not feas[0]:
        return None
    walk = [lowest(feas[0])]
    for i in range(1, len(req)):
        walk.append(lowest(G.out_mask(walk[-1]) & feas[i]))
    return walk


def embed_walk_greedy(G: OrientedGraph, W: WalkShape) -> dict[int, int]:
    """Place the shape W in G edge-preservingly; returns shape vertex -> host vertex.

    Gadget roots are first restricted to vertices that carry the gadget,
    then the path is threaded through them by a backwards feasibility
    sweep, so a failure here means no such placement exists at all.
    Raises EmbeddingNotFound naming the shape element that could not be
    placed.
    """
    require_oriented(G)
    if W.kind == DIRECTED_CYCLE:
        from .finders import find_lcycle_through

        for x in range(G.n):
            res = find_lcycle_through(G, x, W.k, fallback=False)
            if res.witness is not None:
                return dict(enumerate(res.witness.vertices))
        try:
            cyc = has_cycle_exact(G, W.k)
        except BudgetExceeded:
            cyc = None
        if cyc is None:
            raise EmbeddingNotFound(f"directed {W.k}-cycle")
        return dict(enumerate(cyc.vertices))

    k2 = W.k2
    req = [G.full_mask] * (k2 + 1)
    roots = {"triangle": None, "square": None}
    for kind, idx, _ in W.attachments:
        if roots[kind] is None:
            roots[kind] = triangle_roots(G) if kind == "triangle" else square_roots(G)
        if not roots[kind]:
            raise EmbeddingNotFound("transitive triangle" if kind == "triangle" else "fffb square")
        req[idx] &= roots[kind]
    walk = _walk_through(G, req)
    if walk is None:
        raise EmbeddingNotFound(f"directed path of length {k2}" if not W.attachments
                                else f"directed path of length {k2} through the gadget roots")
    mapping = dict(enumerate(walk))
    for kind, idx, vs in W.attachments:
        x = walk[idx]
        if kind == "triangle":
            a, z = find_edge_within(G, G.out_mask(x))
            mapping[vs[1]], mapping[vs[2]] = a, z
        else:
            y, z, y2 = _square_at(G, x)
            mapping[vs[1]], mapping[vs[2]], mapping[vs[3]] = y, z, y2
    return mapping


def check_embedding(G: OrientedGraph, W: WalkShape, mapping: dict[int, int]) -> bool:
    return all(G.has_edge(mapping[u], mapping[v]) for u, v in W.edges)


# -- closed walks -------------------------------------------------------------------------


def _wind(cycle, laps) -> list[int]:
    walk = []
    for _ in range(laps):
        walk.extend(cycle)
    return walk


def transitive_triangles(G: OrientedGraph):
    """Yield ``(x, y, z)`` with edges xz, xy, zy, in lexicographic order of (x, z, y)."""
    for x in range(G.n):
        out_x = G.out_mask(x)
        for z in iter_bits(out_x):
            for y in iter_bits(G.out_mask(z) & out_x):
                yield x, y, z


def _by_divisor_cycle(G, length):
    for a in range(2, min(length, G.n) + 1):
        if length % a:
            continue
        try:
            cyc = has_cycle_exact(G, a, budget=DIVISOR_BUDGET)
        except BudgetExceeded:
            continue
        if cyc is not None:
            walk = _wind(cyc.vertices, length // a)
            return ClosedWalkWitness(tuple(walk) + (walk[0],), f"divisor-cycle:{a}")
    return None


def triangle_winding(G, length, max_t=MAX_RETURN_PATH):
    """Wind round ``C1 = yPxy`` and ``C2 = yPxzy`` for a transitive triangle x, y, z.

    P is a shortest y-x path avoiding z, of length t at most ``max_t``.
    Returns ``(witness, plan)`` or None.
    """
    for x, y, z in transitive_triangles(G):
        P = shortest_path(G, y, x, G.full_mask & ~(1 << z))
        if P is None:
            continue
        t = len(P) - 1
        if t > max_t:
            continue
        try:
            plan = winding_plan(length, t)
        except NoPlan:
            continue
        c1 = P                      # y ... x, then x -> y
        c2 = P + [z]                # y ... x -> z, then z -> y
        walk = _wind(c2, plan.long_laps) + _wind(c1, plan.short_laps)
        return ClosedWalkWitness(tuple(walk) + (walk[0],), f"triangle-winding:t={t}"), plan
    return None


def _by_triangle(G, length):
    found = triangle_winding(G, length)
    return None if found is None else found[0]


def _by_layers(G, length):
    """Exact: for each start s, thread a walk through the sets that can still reach s in time."""
    for s in range(G.n):
        back = [1 << s]
        for _ in range(length):
            back.append(G.in_of_set(back[-1]))
        if not back[length] >> s & 1:
            continue
        walk = [s]
        for i in range(length - 1, -1, -1):
            walk.append(lowest(G.out_mask(walk[-1]) & back[i]))
        return ClosedWalkWitness(tuple(walk), "exact")
    return None


def closed_walk_of_length(G: OrientedGraph, length: int) -> ClosedWalkWitness | None:
    """A closed walk of exactly ``length`` steps, or None when G has none.

    Tries winding round a cycle whose length divides ``length``, then
    winding round a transitive triangle's cycle pair, then an exact
    layered search, which also certifies None.
    """
    if length < 1:
        raise ValueError(f"walk length must be positive, got {length}")
    for step in (_by_divisor_cycle, _by_triangle, _by_layers):
        w = step(G, length)
        if w is not None:
            if not w.is_valid(G, length):
                raise AssertionError(f"internal error: invalid walk from {w.strategy}")
            return w
    return None


# -- reachable-set growth -------------------------------------------------------------------


@dataclass
class GrowthResult:
    """Sets ``X_1 = N+(x)``, ``X_{i+1} = N+(X_i) | X_i`` up to the stopping point.

    ``stop`` is ``"triangle"`` (a 3-cycle inside the last set, in
    ``triangle``), ``"half"`` (last set has more than n/2 vertices) or
    ``"fixpoint"``.
    """

    sets: list[int]
    stop: str
    triangle: tuple[int, int, int] | None = None

    @property
    def iterations(self) -> int:
        return len(self.sets)

    def sizes(self) -> list[int]:
        return [popcount(s) for s in self.sets]


def triangle_within(G: OrientedGraph, mask: int) -> tuple[int, int, int] | None:
    for u in iter_bits(mask):
        for v in iter_bits(G.out_mask(u) & mask):
            hit = G.out_mask(v) & G.in_mask(u) & mask
            if hit:
                return u, v, lowest(hit)
    return None


def grow_reachable(G: OrientedGraph, x: int, triangle_free_mode: bool = False) -> GrowthResult:
    """Grow the out-reach of x one step at a time.

    Stops on a 3-cycle inside the current set (not checked when
    ``triangle_free_mode`` is set), on passing half the vertices, or when
    the set stops growing. With semidegree at least n/4 and no 3-cycle the
    half mark is passed by the third set; above n/5 by the 25th.
    """
    as_mask(G, [x])
    X = G.out_mask(x)
    sets = []
    while True:
        sets.append(X)
        if not triangle_free_mode:
            tri = triangle_within(G, X)
            if tri is not None:
                return GrowthResult(sets, "triangle", tri)
        if 2 * popcount(X) > G.n:
            return GrowthResult(sets, "half")
        nxt = X | G.out_of_set(X)
        if nxt == X:
            return GrowthResult(sets, "fixpoint")
        X = nxt


__all__ = [
    "CyclePattern",
    "GrowthResult",
    "MAX_RETURN_PATH",
    "WalkShape",
    "WindingPlan",
    "as_pattern",
    "check_embedding",
    "closed_walk_of_length",
    "cycle_type",
    "embed_walk_greedy",
    "grow_reachable",
    "pattern_to_walk",
    "smallest_nondivisor",
    "transitive_triangles",
    "triangle_within",
    "triangle_winding",
    "winding_plan",
]
