"""Generators for the concrete graph families used as fixtures and extremal examples."""

from __future__ import annotations

import math

from ._rng import stream
from .errors import BadParams, EvenOrder, Infeasible
from .graph import (
    DIGRAPH,
    ORIENTED,
    OrientedGraph,
    from_edge_list,
    min_semidegree,
    popcount,
)


def class_sizes(k: int, n: int) -> list[int]:
    """Split ``n`` into ``k`` parts differing by at most one, larger parts first."""
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def _blocks(sizes) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def blowup_classes(k: int, n: int) -> list[range]:
    return _blocks(class_sizes(k, n))


def _cyclic_blowup_edges(classes):
    k = len(classes)
    for i in range(k):
        for u in classes[i]:
            for v in classes[(i + 1) % k]:
                yield u, v


def blowup_cycle(k: int, n: int) -> OrientedGraph:
    """Blow-up of a directed k-cycle on n vertices.

    Class ``i`` occupies a contiguous block of indices and sends every edge
    to class ``i+1 (mod k)``. Minimum semidegree is ``n // k``, and every
    directed cycle has length divisible by ``k``.
    """
    if k < 3 or n < k:
        raise BadParams(f"need k >= 3 and n >= k, got k={k}, n={n}")
    return from_edge_list(n, _cyclic_blowup_edges(blowup_classes(k, n)))


def _rotational_edges(vertices):
    s = len(vertices)
    for i in range(s):
        for j in range(1, (s - 1) // 2 + 1):
            yield vertices[i], vertices[(i + j) % s]


def rotational_tournament(n: int) -> OrientedGraph:
    """Regular tournament where ``i`` beats ``i+1, ..., i+(n-1)/2 (mod n)``."""
    if n < 1 or n % 2 == 0:
        raise EvenOrder(f"a regular tournament needs odd order, got {n}")
    return from_edge_list(n, _rotational_edges(range(n)))


def extremal_3cycle_vertex(m: int) -> tuple[OrientedGraph, int]:
    """Graph on ``5m - 1`` vertices with semidegree ``2m - 1`` and a vertex on no 3-cycle.

    Classes ``A`` (``2m-1`` vertices), ``B`` (``2m-1``) and ``C`` (``m``)
    with all edges A->B, B->C, C->A; regular tournaments inside A and B;
    the extra vertex ``u`` (last index) has ``N+(u) = B`` and ``N-(u) = A``.
    Returns ``(G, u)``.
    """
    if m < 2:
        raise BadParams(f"need m >= 2, got {m}")
    A, B, C = _blocks([2 * m - 1, 2 * m - 1, m])
    u = 5 * m - 2
    edges = list(_cyclic_blowup_edges([A, B, C]))
    edges += _rotational_edges(A)
    edges += _rotational_edges(B)
    edges += [(u, b) for b in B]
    edges += [(a, u) for a in A]
    return from_edge_list(5 * m - 1, edges), u


def extremal_3cycle_classes(m: int) -> dict[str, list[int]]:
    A, B, C = _blocks([2 * m - 1, 2 * m - 1, m])
    return {"A": list(A), "B": list(B), "C": list(C), "u": [5 * m - 2]}


def blowup_with_apex(n: int) -> tuple[OrientedGraph, int]:
    """3-cycle blow-up with one vertex of the largest class replaced by an apex ``u``.

    Start from the balanced 3-class blow-up on ``n`` vertices, delete a
    vertex from the largest (first) class, and add ``u`` (last index) with
    ``N+(u) = V2`` and ``N-(u) = V1``. Minimum semidegree is
    ``(n - 1) // 3`` and every cycle through ``u`` has length 1 mod 3, so
    ``u`` lies on no cycle of length divisible by 3. Returns ``(G, u)``.
    """
    if n < 4:
        raise BadParams(f"need n >= 4, got {n}")
    sizes = class_sizes(3, n)
    sizes[0] -= 1
    classes = _blocks(sizes)
    u = n - 1
    edges = list(_cyclic_blowup_edges(classes))
    edges += [(u, v) for v in classes[1]]
    edges += [(v, u) for v in classes[0]]
    return from_edge_list(n, edges), u


def apex_class_sizes(n: int) -> list[int]:
    sizes = class_sizes(3, n)
    sizes[0] -= 1
    return sizes


def butterfly_gadget() -> OrientedGraph:
    """The 5-vertex gadget with ``(x, a, z, b, y) = (0, 1, 2, 3, 4)``.

    Edges xa, xz, az, zb, zy, by; it holds x-y paths of lengths 2, 3 and 4.
    """
    x, a, z, b, y = range(5)
    return from_edge_list(5, [(x, a), (x, z), (a, z), (z, b), (z, y), (b, y)])


def transitive_tournament(n: int) -> OrientedGraph:
    """Acyclic tournament: ``i -> j`` for all ``i < j``."""
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def directed_cycle(n: int) -> OrientedGraph:
    if n < 3:
        raise BadParams(f"an oriented cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite_digraph(n: int) -> OrientedGraph:
    """Both-direction complete bipartite digraph with classes ``ceil(n/2)``, ``floor(n/2)``.

    General-digraph mode. Semidegree ``n // 2`` and no closed walk of odd length.
    """
    if n < 2:
        raise BadParams(f"need n >= 2, got {n}")
    left, right = _blocks([(n + 1) // 2, n // 2])
    edges = [(u, v) for u in left for v in right] + [(v, u) for u in left for v in right]
    return from_edge_list(n, edges, DIGRAPH)


def _circulant_masks(vertices, c, masks):
    s = len(vertices)
    for i in range(s):
        for j in range(1, c + 1):
            masks[vertices[i]] |= 1 << vertices[(i + j) % s]


def _backbones(n: int, d: int) -> list[tuple[str, int]]:
    options = [("circulant", 0)]
    for k in (3, 4, 5):
        if n < k:
            continue
        smallest = n // k
        c = max(0, d - smallest)
        if smallest >= 1 and 2 * c + 1 <= smallest:
            options.append(("blowup", k))
    return options


def random_degree_conditioned(n: int, target_semi: float, seed: int,
                              backbone: str | None = None) -> OrientedGraph:
    """Random oriented graph with minimum semidegree at least ``target_semi * n``.

    A backbone that already meets the bound (a circulant where ``i`` beats
    the next ``d`` vertices, or a k-cycle blow-up padded with circulants
    inside each class) is relabelled at random, densified with random
    edges, and then thinned by random reversals and deletions that never
    push a degree below ``d``. Same arguments, same graph.

    ``backbone`` may be ``"circulant"`` or ``"blowup"`` to force a family;
    by default the seed picks one of the feasible options.
    """
    if not math.isfinite(target_semi) or target_semi <= 0:
        raise BadParams(f"target_semi must be positive and finite, got {target_semi}")
    d = math.ceil(target_semi * n - 1e-9)
    if target_semi * n > (n - 1) / 2 + 1e-9 or d > (n - 1) // 2:
        raise Infeasible(f"no oriented graph on {n} vertices has semidegree {d}")
    rng = stream(seed, n, d)
    options = _backbones(n, d)
    if backbone is not None:
        options = [o for o in options if o[0] == backbone]
        if not options:
            raise Infeasible(f"backbone {backbone!r} cannot reach semidegree {d} on {n} vertices")
    kind, k = options[int(rng.integers(len(options)))]

    masks = [0] * n
    if kind == "circulant":
        _circulant_masks(range(n), d, masks)
    else:
        classes = blowup_classes(k, n)
        for u, v in _cyclic_blowup_edges(classes):
            masks[u] |= 1 << v
        c = max(0, d - n // k)
        for cls in classes:
            _circulant_masks(cls, c, masks)

    perm = rng.permutation(n)
    out = [0] * n
    for u in range(n):
        m = masks[u]
        while m:
            low = m & -m
            out[perm[u]] |= 1 << int(perm[low.bit_length() - 1])
            m ^= low
    inn = [0] * n
    for u in range(n):
        m = out[u]
        while m:
            low = m & -m
            inn[low.bit_length() - 1] |= 1 << u
            m ^= low

    p_add = float(rng.uniform(0.0, 0.3))
    for u in range(n):
        for v in range(u + 1, n):
            if (out[u] | inn[u]) >> v & 1:
                continue
            if rng.random() < p_add:
                if rng.random() < 0.5:
                    u_, v_ = u, v
                else:
                    u_, v_ = v, u
                out[u_] |= 1 << v_
                inn[v_] |= 1 << u_

    for _ in range(int(rng.integers(0, 4 * n + 1))):
        u = int(rng.integers(n))
        if not out[u]:
            continue
        heads = [v for v in range(n) if out[u] >> v & 1]
        v = heads[int(rng.integers(len(heads)))]
        if popcount(out[u]) - 1 < d or popcount(inn[v]) - 1 < d:
            continue
        out[u] &= ~(1 << v)
        inn[v] &= ~(1 << u)
        if rng.random() < 0.5:
            out[v] |= 1 << u
            inn[u] |= 1 << v

    G = OrientedGraph(n, out, ORIENTED)
    assert min_semidegree(G) >= d
    return G
