"""Constructive cycle finders.

Each finder runs a fixed, deterministic procedure built from degree
counting: pick large out- and in-neighbour sets, look for an edge or a
common neighbour between them, and splice the pieces into a cycle. Under
the stated semidegree condition the procedure cannot get stuck. Below it,
a step may fail, and the finder then falls back to the exact search in
:mod:`orcycles.oracle` and says so in its trace.

All finders return a :class:`FinderResult`. ``result.witness`` is None for
"not found"; ``result.trace.budget_exceeded`` distinguishes "gave up".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BadParams, BudgetExceeded
from .graph import (
    OrientedGraph,
    as_mask,
    find_edge_within,
    first_k,
    iter_bits,
    low_outdegree_vertex,
    lowest,
    members,
    min_semidegree,
    popcount,
    require_oriented,
)
from .oracle import DEFAULT_BUDGET, has_cycle_exact
from .witnesses import Butterfly, CycleWitness, PathWitness, is_path


@dataclass
class FinderTrace:
    """What a finder did: the sets it built, the branch it took, whether it fell back."""

    sets: dict = field(default_factory=dict)
    branch: str | None = None
    fallback_used: bool = False
    hypothesis_met: bool = False
    constants: dict = field(default_factory=dict)
    budget_exceeded: bool = False

    def record(self, name: str, mask: int) -> None:
        self.sets[name] = members(mask)

    def to_dict(self) -> dict:
        return {
            "sets": {k: list(v) for k, v in self.sets.items()},
            "branch": self.branch,
            "fallback_used": self.fallback_used,
            "hypothesis_met": self.hypothesis_met,
            "constants": dict(self.constants),
            "budget_exceeded": self.budget_exceeded,
        }


@dataclass
class FinderResult:
    witness: CycleWitness | Butterfly | PathWitness | None
    trace: FinderTrace

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "witness": None if self.witness is None else self.witness.to_dict(),
            "trace": self.trace.to_dict(),
            "fallback_used": self.trace.fallback_used,
            "hypothesis_met": self.trace.hypothesis_met,
        }


def third_plus_one(n: int) -> int:
    return n // 3 + 1


def _check(G: OrientedGraph, x: int) -> None:
    require_oriented(G)
    as_mask(G, [x])


def _low_indegree_vertex(G: OrientedGraph, mask: int) -> int:
    return min(iter_bits(mask), key=lambda v: (popcount(G.in_mask(v) & mask), v))


def _fallback(G, x, length, trace, budget) -> FinderResult:
    trace.fallback_used = True
    try:
        w = has_cycle_exact(G, length, through=x, budget=budget)
    except BudgetExceeded:
        trace.budget_exceeded = True
        return FinderResult(None, trace)
    if w is not None:
        trace.branch = f"{trace.branch}+oracle" if trace.branch else "oracle"
    return FinderResult(w, trace)


def _accept(G, vertices, x, length):
    w = CycleWitness(tuple(vertices), x)
    return w if w.is_valid(G, length) else None


# -- butterfly -------------------------------------------------------------------


def _butterfly_from(G: OrientedGraph, x: int, a: int, z: int) -> Butterfly | None:
    edge = find_edge_within(G, G.out_mask(z))
    if edge is None:
        return None
    return Butterfly(x, a, z, *edge)


def find_butterfly(G: OrientedGraph, x: int) -> FinderResult:
    """An xy-butterfly for some y: edge az inside N+(x), then edge by inside N+(z).

    Always succeeds when the minimum semidegree is at least n/3 rounded
    down plus one, since no independent set is then as large as a
    neighbourhood. Otherwise every edge az inside N+(x) is tried before
    giving up.
    """
    _check(G, x)
    trace = FinderTrace(hypothesis_met=min_semidegree(G) >= third_plus_one(G.n))
    out_x = G.out_mask(x)
    trace.record("N+(x)", out_x)
    first = find_edge_within(G, out_x)
    if first is None:
        trace.branch = "no-edge-in-N+(x)"
        return FinderResult(None, trace)
    bf = _butterfly_from(G, x, *first)
    if bf is not None:
        trace.branch = "greedy"
        trace.record("N+(z)", G.out_mask(bf.z))
        return FinderResult(bf, trace)
    trace.fallback_used = True
    for a in iter_bits(out_x):
        for z in iter_bits(G.out_mask(a) & out_x):
            bf = _butterfly_from(G, x, a, z)
            if bf is not None:
                trace.branch = "scan"
                trace.record("N+(z)", G.out_mask(z))
                return FinderResult(bf, trace)
    trace.branch = "no-edge-in-N+(z)"
    return FinderResult(None, trace)


# -- 3-cycles ----------------------------------------------------------------------


def find_3cycle_through(G: OrientedGraph, u: int) -> FinderResult:
    """A 3-cycle ``(u, x, w)`` through u.

    x is the member of N+(u) with fewest out-neighbours inside N+(u); its
    remaining out-neighbours are then too many to miss N-(u) once the
    minimum semidegree reaches 2n/5 rounded up. If that x fails, every
    out-neighbour of u is scanned, which is complete.
    """
    _check(G, u)
    n = G.n
    trace = FinderTrace(hypothesis_met=min_semidegree(G) >= math.ceil(2 * n / 5))
    out_u, in_u = G.out_mask(u), G.in_mask(u)
    trace.record("N+(u)", out_u)
    trace.record("N-(u)", in_u)
    if not out_u:
        trace.branch = "empty-N+(u)"
        return FinderResult(None, trace)
    x = low_outdegree_vertex(G, out_u)
    hit = G.out_mask(x) & in_u
    if hit:
        trace.branch = "low-outdegree"
        return FinderResult(_accept(G, (u, x, lowest(hit)), u, 3), trace)
    trace.fallback_used = True
    for x in iter_bits(out_u):
        hit = G.out_mask(x) & in_u
        if hit:
            trace.branch = "scan"
            return FinderResult(_accept(G, (u, x, lowest(hit)), u, 3), trace)
    trace.branch = "scan"
    return FinderResult(None, trace)


# -- 4-cycles ----------------------------------------------------------------------


def _four_via_common(G, x, X, Y, trace):
    """Both sides have a vertex with many neighbours outside X and Y; join them."""
    q = popcount(X)
    outside = G.full_mask & ~(X | Y) & ~(1 << x)
    xs = [v for v in iter_bits(X) if 2 * popcount(G.out_mask(v) & outside) >= q]
    ys = [v for v in iter_bits(Y) if 2 * popcount(G.in_mask(v) & outside) >= q]
    if not xs:
        return "i-fails", None
    if not ys:
        return "ii-fails", None
    for x1 in xs:
        for y1 in ys:
            common = G.out_mask(x1) & G.in_mask(y1) & outside
            if common:
                trace.sets["x'"] = (x1,)
                trace.sets["y'"] = (y1,)
                return "common-neighbour", (x, x1, lowest(common), y1)
    return "common-neighbour-missing", None


def find_4cycle_through(G: OrientedGraph, x: int, *, fallback: bool = True,
                        budget: int = DEFAULT_BUDGET) -> FinderResult:
    """A 4-cycle through x.

    X and Y are the ``n//3 + 1`` lowest out- and in-neighbours of x. If
    some vertex of X has at least half that many out-neighbours outside
    X and Y, and some vertex of Y the same for in-neighbours, those two
    neighbourhoods overlap and give ``x x' w y'``. Otherwise (say on the
    X side) the vertices of X with an in-neighbour in X form X', and the
    one with fewest out-neighbours in X' must reach Y, giving
    ``x x'' x' y``. The Y side is symmetric.
    """
    _check(G, x)
    n = G.n
    q = third_plus_one(n)
    trace = FinderTrace(hypothesis_met=n >= 4 and min_semidegree(G) >= q)
    X = first_k(G.out_mask(x), q)
    Y = first_k(G.in_mask(x), q)
    trace.record("X", X)
    trace.record("Y", Y)
    if popcount(X) == q and popcount(Y) == q:
        branch, cyc = _four_via_common(G, x, X, Y, trace)
        trace.branch = branch
        if cyc is None and branch in ("i-fails", "ii-fails"):
            cyc = _four_via_dense_side(G, x, X, Y, branch == "i-fails", trace)
        if cyc is not None:
            w = _accept(G, cyc, x, 4)
            if w is not None:
                return FinderResult(w, trace)
    else:
        trace.branch = "neighbourhood-too-small"
    if not fallback:
        return FinderResult(None, trace)
    return _fallback(G, x, 4, trace, budget)


def _four_via_dense_side(G, x, X, Y, out_side: bool, trace):
    if out_side:
        Xp = sum(1 << v for v in iter_bits(X) if G.in_mask(v) & X)
        trace.record("X'", Xp)
        if not Xp:
            return None
        x1 = low_outdegree_vertex(G, Xp)
        hit = G.out_mask(x1) & Y
        if not hit:
            return None
        x2 = lowest(G.in_mask(x1) & X)
        trace.sets["x'"] = (x1,)
        return (x, x2, x1, lowest(hit))
    Yp = sum(1 << v for v in iter_bits(Y) if G.out_mask(v) & Y)
    trace.record("Y'", Yp)
    if not Yp:
        return None
    y1 = _low_indegree_vertex(G, Yp)
    hit = G.in_mask(y1) & X
    if not hit:
        return None
    y2 = lowest(G.out_mask(y1) & Y)
    trace.sets["y'"] = (y1,)
    return (x, lowest(hit), y1, y2)


# -- 5-cycles ----------------------------------------------------------------------


def _five_from(G, x, a, y, q, trace):
    """Try to close ``x ... y a x`` or ``x ... y x`` for one choice of the edge ya."""
    X = first_k(G.out_mask(x), q)
    Y = first_k(G.in_mask(y), q)
    Z = X & Y
    trace.record("X", X)
    trace.record("Y", Y)
    trace.record("Z", Z)
    if popcount(X) < q or popcount(Y) < q:
        return "neighbourhood-too-small", None
    for x1 in iter_bits(X):
        hit = G.out_mask(x1) & Y
        if hit:
            return "X-Y-edge", (x, x1, lowest(hit), y, a)
    XmZ, YmZ = X & ~Z, Y & ~Z
    if not XmZ or not YmZ:
        return "X-equals-Z", None
    x1 = low_outdegree_vertex(G, XmZ)
    y1 = _low_indegree_vertex(G, YmZ)
    trace.sets["x'"] = (x1,)
    trace.sets["y'"] = (y1,)
    common = G.out_mask(x1) & G.in_mask(y1) & ~(X | Y) & ~((1 << x) | (1 << y))
    if not common:
        return "common-neighbour-missing", None
    return "common-neighbour", (x, x1, lowest(common), y1, y)


def find_5cycle_through(G: OrientedGraph, x: int, *, fallback: bool = True,
                        budget: int = DEFAULT_BUDGET) -> FinderResult:
    """A 5-cycle through x.

    Take an edge ya inside N-(x). With X the lowest out-neighbours of x
    and Y the lowest in-neighbours of y, an X-Y edge gives an x-y path of
    length 3 avoiding a, closed by ``y a x``. Failing that, the vertices
    of X and Y with fewest neighbours on their own side (outside X and Y's
    overlap) share an out/in-neighbour, giving an x-y path of length 4
    closed by the edge yx. The first edge ya is tried first; the others
    follow before any exhaustive search.
    """
    _check(G, x)
    n = G.n
    q = third_plus_one(n)
    trace = FinderTrace(hypothesis_met=n >= 5 and min_semidegree(G) >= q)
    in_x = G.in_mask(x)
    trace.record("N-(x)", in_x)
    configs = [(y, a) for y in iter_bits(in_x) for a in iter_bits(G.out_mask(y) & in_x)]
    for i, (y, a) in enumerate(configs):
        branch, cyc = _five_from(G, x, a, y, q, trace)
        trace.branch = branch if i == 0 else f"rescan:{branch}"
        if cyc is not None:
            w = _accept(G, cyc, x, 5)
            if w is not None:
                trace.sets["a"], trace.sets["y"] = (a,), (y,)
                return FinderResult(w, trace)
        if i == 0:
            trace.fallback_used = True
    if not configs:
        trace.branch = "independent-N-(x)"
    if not fallback:
        return FinderResult(None, trace)
    return _fallback(G, x, 5, trace, budget)


# -- 6-cycles ----------------------------------------------------------------------


def _six_returns(G, bf: Butterfly, trace):
    """y-x paths of length 2, 3 avoiding a, and 4 avoiding z, spliced into the butterfly."""
    x, a, z, y = bf.x, bf.a, bf.z, bf.y
    n = G.n
    into_x = G.in_mask(x)
    from_y = G.out_mask(y) & ~(1 << x)

    mids = from_y & into_x
    if mids:
        return "length2-return", bf.path(4) + (lowest(mids),)

    banned = (1 << a) | (1 << x) | (1 << y) | (1 << z)
    for m1 in iter_bits(from_y & ~banned):
        hit = G.out_mask(m1) & into_x & ~banned
        if hit:
            return "length3-return", bf.path(3) + (m1, lowest(hit))

    k = n // 3
    Y = first_k(G.out_mask(y) & ~((1 << a) | (1 << x)), k - 1)
    X = first_k(into_x & ~(1 << y), k)
    Yp = G.out_of_set(Y) & ~Y
    Xp = G.in_of_set(X) & ~X
    for name, mask in (("X", X), ("Y", Y), ("X'", Xp), ("Y'", Yp)):
        trace.record(name, mask)
    for w in iter_bits(Xp & Yp & ~((1 << z) | (1 << x) | (1 << y))):
        y1s = G.in_mask(w) & Y & ~(1 << z)
        x1s = G.out_mask(w) & X & ~(1 << z)
        for y1 in iter_bits(y1s):
            for x1 in iter_bits(x1s & ~(1 << y1)):
                return "length4-return", bf.path(2) + (y1, w, x1)
    return "no-return-path", None


def find_6cycle_through(G: OrientedGraph, x: int, *, fallback: bool = True,
                        budget: int = DEFAULT_BUDGET) -> FinderResult:
    """A 6-cycle through x, from a butterfly and a short y-x return path.

    Return paths of length 2, 3 (avoiding a) and 4 (avoiding z) are tried
    in turn and joined with the butterfly path of length 4, 3 or 2. The
    length-4 path goes ``y y' w x' x`` with y' among the ``n//3 - 1``
    lowest out-neighbours of y (not a or x), x' among the ``n//3`` lowest
    in-neighbours of x (not y), and w in both ``N+(Y) - Y`` and
    ``N-(X) - X`` other than z.
    """
    _check(G, x)
    n = G.n
    trace = FinderTrace(hypothesis_met=n >= 6 and min_semidegree(G) >= third_plus_one(n))
    bres = find_butterfly(G, x)
    if bres.witness is not None:
        bf = bres.witness
        trace.sets["butterfly"] = (bf.x, bf.a, bf.z, bf.b, bf.y)
        branch, cyc = _six_returns(G, bf, trace)
        trace.branch = branch
        if cyc is not None:
            w = _accept(G, cyc, x, 6)
            if w is not None:
                return FinderResult(w, trace)
    else:
        trace.branch = "no-butterfly"
    if not fallback:
        return FinderResult(None, trace)
    return _fallback(G, x, 6, trace, budget)


# -- connecting paths ------------------------------------------------------------------


def _path3(G, x, y, X, Y):
    for x1 in iter_bits(X):
        hit = G.out_mask(x1) & Y & ~(1 << x1)
        if hit:
            return (x, x1, lowest(hit), y)
    return None


def _path4(G, x, y, X, Y, allowed):
    mid = G.out_of_set(X) & G.in_of_set(Y) & allowed
    for w in iter_bits(mid):
        for x1 in iter_bits(G.in_mask(w) & X & ~(1 << w)):
            ys = G.out_mask(w) & Y & ~((1 << w) | (1 << x1))
            if ys:
                return (x, x1, w, lowest(ys), y)
    return None


def _path5(G, x, y, X, Y, allowed):
    Xp = G.out_of_set(X) & allowed
    Yp = G.in_of_set(Y) & allowed
    for w1 in iter_bits(Xp):
        for w2 in iter_bits(G.out_mask(w1) & Yp & ~(1 << w1)):
            used = (1 << w1) | (1 << w2)
            for x1 in iter_bits(G.in_mask(w1) & X & ~used):
                ys = G.out_mask(w2) & Y & ~(used | (1 << x1))
                if ys:
                    return (x, x1, w1, w2, lowest(ys), y)
    return None


def find_path_345(G: OrientedGraph, x: int, y: int, avoid=0,
                  lengths=(3, 4, 5)) -> FinderResult:
    """A directed x-y path of length 3, 4 or 5 whose interior misses ``avoid``.

    X and Y are the usable out-neighbours of x and in-neighbours of y.
    Length 3 is an X-Y edge; length 4 a vertex of ``N+(X)`` and
    ``N-(Y)``; length 5 an edge from ``N+(X)`` to ``N-(Y)``. Lengths are
    tried in the order given and the search for each is complete.
    """
    require_oriented(G)
    avoid = as_mask(G, avoid)
    as_mask(G, [x, y])
    if x == y:
        raise BadParams("x and y must differ")
    if (avoid >> x | avoid >> y) & 1:
        raise BadParams("x and y must not be in avoid")
    trace = FinderTrace(hypothesis_met=min_semidegree(G) >= third_plus_one(G.n))
    allowed = G.full_mask & ~avoid & ~((1 << x) | (1 << y))
    X = G.out_mask(x) & allowed
    Y = G.in_mask(y) & allowed
    trace.record("X", X)
    trace.record("Y", Y)
    searches = {
        3: lambda: _path3(G, x, y, X, Y),
        4: lambda: _path4(G, x, y, X, Y, allowed),
        5: lambda: _path5(G, x, y, X, Y, allowed),
    }
    for L in lengths:
        if L not in searches:
            raise BadParams(f"path lengths must be among 3, 4, 5; got {L}")
        path = searches[L]()
        if path is not None and is_path(G, path, avoid):
            trace.branch = f"length{L}"
            return FinderResult(PathWitness(path), trace)
    trace.branch = "none"
    return FinderResult(None, trace)


# -- general lengths ---------------------------------------------------------------------


def _greedy_path(G, start, steps, blocked):
    """Extend from ``start`` by max remaining out-degree, ``steps`` times."""
    path = [start]
    used = blocked | (1 << start)
    for _ in range(steps):
        free = G.full_mask & ~used
        cand = G.out_mask(path[-1]) & free
        if not cand:
            return None
        nxt = max(iter_bits(cand), key=lambda v: (popcount(G.out_mask(v) & free), -v))
        path.append(nxt)
        used |= 1 << nxt
    return path


def lcycle_constants(length: int) -> dict:
    eps = 1e-4
    return {"n_min": 10**10 * length, "epsilon": eps, "C": length, "C_prime": 10 * length / eps}


def find_lcycle_through(G: OrientedGraph, x: int, length: int, *, fallback: bool = True,
                        budget: int = DEFAULT_BUDGET) -> FinderResult:
    """An ``length``-cycle through x.

    Lengths 3 to 6 go to the dedicated finders. For 7 and up: take a
    butterfly ``(x, a, z, b, y)``, walk greedily ``length - 7`` steps from
    y avoiding the butterfly, connect the end v back to x by a path of
    length 3, 4 or 5 avoiding a, b, z and the walk, and close through the
    butterfly path of the complementary length.

    ``hypothesis_met`` only reports the semidegree condition; the size
    requirement that makes this pipeline provably total is astronomically
    large and is recorded in ``trace.constants``.
    """
    _check(G, x)
    if length < 3:
        raise BadParams(f"cycle length must be at least 3, got {length}")
    if length == 3:
        return find_3cycle_through(G, x)
    special = {4: find_4cycle_through, 5: find_5cycle_through, 6: find_6cycle_through}
    if length in special:
        return special[length](G, x, fallback=fallback, budget=budget)
    n = G.n
    trace = FinderTrace(hypothesis_met=min_semidegree(G) >= third_plus_one(n),
                        constants=lcycle_constants(length))
    if length > n:
        trace.branch = "too-long"
        return FinderResult(None, trace)
    bres = find_butterfly(G, x)
    bf = bres.witness
    if bf is None:
        trace.branch = "no-butterfly"
    else:
        trace.sets["butterfly"] = (bf.x, bf.a, bf.z, bf.b, bf.y)
        P = _greedy_path(G, bf.y, length - 7, (1 << bf.a) | (1 << bf.b) | (1 << x) | (1 << bf.z))
        if P is None:
            trace.branch = "greedy-path-stuck"
        else:
            trace.sets["P"] = tuple(P)
            v = P[-1]
            avoid = (1 << bf.a) | (1 << bf.b) | (1 << bf.z)
            for p in P[:-1]:
                avoid |= 1 << p
            ret = find_path_345(G, v, x, avoid)
            if ret.witness is None:
                trace.branch = "no-return-path"
            else:
                back = ret.witness.vertices
                cyc = bf.path(7 - (len(back) - 1)) + tuple(P[1:]) + back[1:-1]
                trace.sets["return"] = back
                trace.branch = f"return-length{len(back) - 1}"
                w = _accept(G, cyc, x, length)
                if w is not None:
                    return FinderResult(w, trace)
    if not fallback:
        return FinderResult(None, trace)
    return _fallback(G, x, length, trace, budget)


__all__ = [
    "FinderResult",
    "FinderTrace",
    "find_3cycle_through",
    "find_4cycle_through",
    "find_5cycle_through",
    "find_6cycle_through",
    "find_butterfly",
    "find_lcycle_through",
    "find_path_345",
    "lcycle_constants",
    "third_plus_one",
]
