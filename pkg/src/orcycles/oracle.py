"""Brute-force ground truth.

Everything here is exhaustive (or explicitly budgeted) and deliberately
independent of the proof-driven procedures in :mod:`orcycles.finders` and
:mod:`orcycles.walks`, which it is used to check.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator

import numpy as np

from ._rng import stream
from .arith import smallest_nondivisor
from .constructions import blowup_cycle, random_degree_conditioned
from .errors import (
    BadParams,
    BudgetExceeded,
    Infeasible,
    OddOrder,
    PatternTooShort,
    TooLarge,
)
from .graph import (
    DIGRAPH,
    OrientedGraph,
    bfs_layers,
    degree_summary,
    lowest,
    min_semidegree,
)
from .witnesses import CycleWitness

DEFAULT_BUDGET = 2_000_000
ENUMERATION_SHARD_PREFIX = 2


# -- exact cycle search --------------------------------------------------------


def _walk_back_layers(G: OrientedGraph, s: int, allowed: int, length: int) -> list[int]:
    """``layers[k]``: vertices of ``allowed`` with a length-k walk to ``s`` inside ``allowed``."""
    layers = [1 << s]
    for _ in range(length):
        layers.append(G.in_of_set(layers[-1]) & allowed)
    return layers


def has_cycle_exact(G: OrientedGraph, length: int, through: int | None = None,
                    budget: int = DEFAULT_BUDGET) -> CycleWitness | None:
    """Exact search for a directed cycle of the given length.

    Depth-first search over simple paths, pruned by walk-back layers: a
    vertex is only entered if a walk of the remaining length leads from it
    back to the start. With ``through`` unset, each cycle is anchored at
    its smallest vertex. Returns a witness, or None when no such cycle
    exists. Raises BudgetExceeded after ``budget`` node expansions.
    """
    if length < 2:
        raise ValueError(f"cycle length must be at least 2, got {length}")
    if through is not None and not 0 <= through < G.n:
        raise IndexError(f"vertex {through} outside 0..{G.n - 1}")
    starts = [through] if through is not None else range(G.n)
    nodes = 0
    for s in starts:
        allowed = G.full_mask if through is not None else G.full_mask & ~((1 << s) - 1)
        if bin(allowed).count("1") < length:
            continue
        layers = _walk_back_layers(G, s, allowed, length)
        if not layers[length] >> s & 1:
            continue
        path = [s]
        used = 1 << s
        stack = [G.out_mask(s) & allowed & ~used & layers[length - 1]]
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            w = lowest(cand)
            stack[-1] = cand & ~(1 << w)
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"cycle search for length {length} exceeded {budget} nodes",
                                     nodes=nodes)
            depth = len(path)
            if depth == length - 1:
                if G.out_mask(w) >> s & 1:
                    return CycleWitness(tuple(path) + (w,), through)
                continue
            path.append(w)
            used |= 1 << w
            stack.append(G.out_mask(w) & allowed & ~used & layers[length - depth - 1])
    return None


def has_closed_walk(G: OrientedGraph, length: int) -> bool:
    """True iff some diagonal entry of the boolean ``length``-th adjacency power is set."""
    if length < 1:
        raise ValueError(f"walk length must be positive, got {length}")
    if G.n == 0:
        return False
    base = G.adjacency_matrix().astype(np.int64)
    result = None
    e = length
    while e:
        if e & 1:
            result = base if result is None else ((result @ base) > 0).astype(np.int64)
        e >>= 1
        if e:
            base = ((base @ base) > 0).astype(np.int64)
    return bool(np.diagonal(result).any())


def shortest_cycle(G: OrientedGraph) -> int | None:
    """Directed girth by BFS from every vertex; None when G is acyclic."""
    best = None
    for v in range(G.n):
        dist = bfs_layers(G, v)
        for u in G.in_neighbors(v):
            if dist[u] >= 0 and (best is None or dist[u] + 1 < best):
                best = dist[u] + 1
    return best


def _check_pattern(pattern: str) -> str:
    pattern = str(pattern)
    if len(pattern) < 3:
        raise PatternTooShort(f"an oriented cycle needs at least 3 edges, got {pattern!r}")
    if set(pattern) - {"f", "b"}:
        raise ValueError(f"pattern must be over 'f'/'b', got {pattern!r}")
    return pattern


def contains_pattern(G: OrientedGraph, pattern, budget: int = DEFAULT_BUDGET) -> tuple[int, ...] | None:
    """Injective copy of an arbitrarily oriented cycle, or None.

    ``pattern[i]`` is ``'f'`` when cycle edge ``i`` runs from position ``i``
    to ``i+1`` and ``'b'`` when it runs backwards. The result maps cycle
    positions to distinct vertices of G.
    """
    p = _check_pattern(pattern)
    ell = len(p)
    if ell > G.n:
        return None

    def step(v, letter):
        return G.out_mask(v) if letter == "f" else G.in_mask(v)

    nodes = 0
    for s in range(G.n):
        # back[i]: vertices that can sit at position i and still close the
        # pattern suffix back to s homomorphically.
        back = [0] * (ell + 1)
        back[ell] = 1 << s
        for i in range(ell - 1, 0, -1):
            tgt = back[i + 1]
            acc = 0
            via = G.in_of_set(tgt) if p[i] == "f" else G.out_of_set(tgt)
            acc |= via
            back[i] = acc
        path = [s]
        used = 1 << s
        stack = [step(s, p[0]) & ~used & back[1]] if ell > 1 else []
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            w = lowest(cand)
            stack[-1] = cand & ~(1 << w)
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"pattern search exceeded {budget} nodes", nodes=nodes)
            i = len(path)
            if i == ell - 1:
                if step(w, p[i]) >> s & 1:
                    return tuple(path) + (w,)
                continue
            path.append(w)
            used |= 1 << w
            stack.append(step(w, p[i]) & ~used & back[i + 1])
    return None


# -- enumeration ---------------------------------------------------------------


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _enumerate_assignments(n: int, min_semi: int, shard: tuple[int, int] | None,
                           prefix_len: int = ENUMERATION_SHARD_PREFIX):
    """Yield ``(assignment, out_masks)`` in lexicographic assignment order.

    Pair ``(i, j)`` (``i < j``) gets 0 (no edge), 1 (``i -> j``) or
    2 (``j -> i``). Branches where some vertex can no longer reach
    ``min_semi`` in- or out-degree are cut.
    """
    pairs = _pairs(n)
    P = len(pairs)
    prefix_len = min(prefix_len, P)
    index, count = shard if shard is not None else (0, 1)
    remaining = [n - 1] * n
    out = [0] * n
    outdeg = [0] * n
    indeg = [0] * n
    assign = [0] * P
    d = min_semi

    def feasible(v):
        r = remaining[v]
        return outdeg[v] + r >= d and indeg[v] + r >= d and outdeg[v] + indeg[v] + r >= 2 * d

    if d > 0 and any(not feasible(v) for v in range(n)):
        return

    def rec(idx):
        if count > 1 and idx == prefix_len:
            code = 0
            for a in assign[:prefix_len]:
                code = code * 3 + a
            if code % count != index:
                return
        if idx == P:
            yield tuple(assign), tuple(out)
            return
        i, j = pairs[idx]
        remaining[i] -= 1
        remaining[j] -= 1
        for val in (0, 1, 2):
            if val == 1:
                out[i] |= 1 << j
                outdeg[i] += 1
                indeg[j] += 1
            elif val == 2:
                out[j] |= 1 << i
                outdeg[j] += 1
                indeg[i] += 1
            if feasible(i) and feasible(j):
                assign[idx] = val
                yield from rec(idx + 1)
            if val == 1:
                out[i] &= ~(1 << j)
                outdeg[i] -= 1
                indeg[j] -= 1
            elif val == 2:
                out[j] &= ~(1 << i)
                outdeg[j] -= 1
                indeg[i] -= 1
        assign[idx] = 0
        remaining[i] += 1
        remaining[j] += 1

    yield from rec(0)


def enumerate_oriented(n: int, min_semi: int = 0,
                       shard: tuple[int, int] | None = None) -> Iterator[OrientedGraph]:
    """Every labelled oriented graph on ``n <= 6`` vertices, each exactly once.

    ``min_semi`` filters to minimum semidegree at least that value, pruning
    during generation. ``shard=(i, k)`` yields only the i-th of k disjoint
    slices (split on the first few pairs); the union over all i is the full
    stream.
    """
    if n > 6:
        raise TooLarge(f"labelled enumeration is capped at n=6 (3^15 graphs), got n={n}")
    if n < 0:
        raise BadParams("n must be non-negative")
    for _, out in _enumerate_assignments(n, min_semi, shard):
        yield OrientedGraph(n, out)


# -- thresholds ----------------------------------------------------------------


@dataclass
class ThresholdRecord:
    """Evidence about the least semidegree forcing an ``ell``-cycle on ``n`` vertices.

    ``lower`` is a proven lower bound on the threshold: ``witness_semi + 1``
    where ``lower_witness`` is an ``ell``-cycle-free graph of that
    semidegree. ``upper`` is the best upper bound available, with its
    source in ``provenance["upper"]``. ``vacuous`` means no oriented graph
    on ``n`` vertices reaches semidegree ``upper`` at all.
    """

    ell: int
    n: int
    lower: int
    upper: int
    lower_witness: OrientedGraph
    witness_semi: int
    exhaustive: bool
    provenance: dict = field(default_factory=dict)
    vacuous: bool = False
    shards: int = 1
    seed: int = 0
    samples_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "witness_semi": self.witness_semi,
            "witness_edges": [list(e) for e in self.lower_witness.edges()],
            "exhaustive": self.exhaustive,
            "provenance": dict(self.provenance),
            "vacuous": self.vacuous,
            "shards": self.shards,
            "seed": self.seed,
            "samples_checked": self.samples_checked,
        }


def _shard_best(args):
    """Best (semidegree, assignment, out-masks) of an ell-cycle-free graph in one shard.

    Among graphs at the shard's best semidegree, the one earliest in
    enumeration order is returned, whatever the shard layout; merging by
    (max semidegree, min assignment) thus reproduces the serial answer.
    """
    n, ell, start_semi, index, count, budget = args
    best = None
    d = start_semi + 1
    # the filter only ever rises, so restarting the stream would revisit
    # nothing new; a single pass with a rising bar is enough
    for assign, out in _enumerate_assignments(n, d, (index, count) if count > 1 else None):
        G = OrientedGraph(n, out)
        semi = min_semidegree(G)
        if semi < d:
            continue
        if has_cycle_exact(G, ell, budget=budget) is None:
            best = (semi, assign, out)
            d = semi + 1
    return best


def _lower_from_constructions(ell: int, n: int, budget: int):
    """Densest k-cycle blow-up with k not dividing ell (no ell-cycle can exist)."""
    for k in range(3, n + 1):
        if ell % k:
            G = blowup_cycle(k, n)
            if has_cycle_exact(G, ell, budget=budget) is None:
                return G, n // k, f"blowup(k={k})"
    return OrientedGraph(n, [0] * n), 0, "edgeless"


def threshold_search(ell: int, n: int, budget: int = DEFAULT_BUDGET, *, jobs: int = 1,
                     seed: int = 0, samples: int = 64) -> ThresholdRecord:
    """Bracket the least semidegree that forces an ``ell``-cycle on ``n`` vertices.

    For ``n <= 6`` the bracket is closed exactly by exhaustive enumeration
    (sharded over ``jobs`` worker processes; the answer does not depend on
    ``jobs``). Beyond that the lower bound comes from blow-ups and random
    sampling and the upper bound from the finder guarantees for
    ``ell in {3, 4, 5, 6}``, or from the semidegree cap otherwise.
    """
    if ell < 3 or ell > n:
        raise BadParams(f"need 3 <= ell <= n, got ell={ell}, n={n}")
    cap = (n - 1) // 2
    witness, semi, source = _lower_from_constructions(ell, n, budget)
    provenance = {"lower": source}

    if n <= 6:
        count = 3 ** min(ENUMERATION_SHARD_PREFIX, len(_pairs(n)))
        tasks = [(n, ell, semi, i, count, budget) for i in range(count)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_shard_best, tasks))
        else:
            results = [_shard_best(t) for t in tasks]
        found = [r for r in results if r is not None]
        if found:
            top = max(r[0] for r in found)
            best = min((r for r in found if r[0] == top), key=lambda r: r[1])
            semi, witness = best[0], OrientedGraph(n, best[2])
            provenance["lower"] = "exhaustive"
        provenance["upper"] = "exhaustive"
        upper = semi + 1
        return ThresholdRecord(ell, n, semi + 1, upper, witness, semi, True, provenance,
                               vacuous=upper > cap, shards=count, seed=seed)

    checked = 0
    for i in range(samples):
        d = semi + 1
        if d > cap:
            break
        sub_seed = int(stream(seed, ell, n, i).integers(2**31))
        try:
            G = random_degree_conditioned(n, d / n, sub_seed)
        except Infeasible:
            break
        checked += 1
        try:
            if has_cycle_exact(G, ell, budget=budget) is None:
                witness, semi = G, min_semidegree(G)
                provenance["lower"] = "sampling"
        except BudgetExceeded:
            continue

    upper, provenance["upper"] = cap + 1, "vacuous"
    if ell in (4, 5, 6) and n // 3 + 1 < upper:
        upper, provenance["upper"] = n // 3 + 1, f"lemma: every vertex on a {ell}-cycle"
    elif ell == 3 and math.ceil(2 * n / 5) < upper:
        upper, provenance["upper"] = math.ceil(2 * n / 5), "proposition: every vertex on a 3-cycle"
    return ThresholdRecord(ell, n, semi + 1, upper, witness, semi, False, provenance,
                           vacuous=upper > cap, shards=0, seed=seed, samples_checked=checked)


# -- digraph density -------------------------------------------------------------


def ex_di_formula(ell: int, n: int) -> Fraction:
    """``C(n, 2) + (ell - 2) n / 2``: most edges of a digraph with no ell-cycle."""
    if ell < 3:
        raise ValueError(f"need ell >= 3, got {ell}")
    return Fraction(n * (n - 1), 2) + Fraction((ell - 2) * n, 2)


def ex_di_brute(ell: int, n: int) -> int:
    """Most edges over all digraphs on ``n <= 4`` vertices without an ell-cycle."""
    if n > 4:
        raise TooLarge(f"digraph enumeration is capped at n=4 (4^6 digraphs), got n={n}")
    pairs = _pairs(n)
    best = 0
    for choice in product(range(4), repeat=len(pairs)):
        edges = sum(bin(c).count("1") for c in choice)
        if edges <= best:
            continue
        out = [0] * n
        for (i, j), c in zip(pairs, choice):
            if c & 1:
                out[i] |= 1 << j
            if c & 2:
                out[j] |= 1 << i
        if has_cycle_exact(OrientedGraph(n, out, DIGRAPH), ell) is None:
            best = edges
    return best


# -- random splits ----------------------------------------------------------------


@dataclass(frozen=True)
class SplitExperimentConfig:
    """Half-split experiment settings.

    A split fails when ``semidegree(G[U]) < (base + alpha - correction) * u``
    with ``u = n/2`` and ``correction = u**(-3/8)`` unless
    ``size_correction`` is off. ``relaxed`` skips the check that G itself
    meets the matching bound on ``n``.
    """

    trials: int
    alpha: float
    base: Fraction = Fraction(3, 8)
    size_correction: bool = True
    relaxed: bool = False
    tolerance: float = 1e-2
    u: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.tolerance)):
            raise BadParams("alpha and tolerance must be finite")

    def fraction(self, size: int) -> float:
        corr = size ** (-3 / 8) if self.size_correction else 0.0
        return float(self.base) + self.alpha - corr


def random_split_experiment(G: OrientedGraph, cfg: SplitExperimentConfig, seed: int = 0,
                            batch: int = 256) -> dict:
    """Sample uniform half-sets U and measure how often ``G[U]`` loses semidegree."""
    n = G.n
    if n % 2:
        raise OddOrder(f"half-splits need even n, got {n}")
    u = n // 2
    if cfg.u is not None and cfg.u != u:
        raise BadParams(f"u must equal n/2 = {u}, got {cfg.u}")
    report = {"n": n, "u": u, "trials": cfg.trials, "tolerance": cfg.tolerance}
    # rounded so that e.g. (1/3 - 0.02) * 1500 compares as exactly 470
    threshold = round(cfg.fraction(u) * u, 9)
    report["threshold"] = threshold
    if not cfg.relaxed and min_semidegree(G) < cfg.fraction(n) * n:
        raise BadParams("G does not meet the semidegree hypothesis; pass relaxed=True to run anyway")
    if cfg.trials <= 0:
        report.update(failures=0, failure_frequency=None, passed=None)
        return report

    A = G.adjacency_matrix().astype(np.float32)
    AT = np.ascontiguousarray(A.T)
    failures = 0
    vertex_failures = 0
    observed = []
    done = 0
    b_index = 0
    while done < cfg.trials:
        b = min(batch, cfg.trials - done)
        rng = stream(seed, b_index)
        chosen = np.argsort(rng.random((b, n)), axis=1)[:, :u]
        S = np.zeros((n, b), dtype=np.float32)
        S[chosen.T, np.arange(b)] = 1.0
        member = S > 0
        outs = A @ S
        ins = AT @ S
        semi = np.minimum(outs, ins)
        semi[~member] = np.inf
        per_trial = semi.min(axis=0)
        observed.extend(int(x) for x in per_trial)
        failures += int((per_trial < threshold).sum())
        vertex_failures += int(((outs < threshold) & member).sum() + ((ins < threshold) & member).sum())
        done += b
        b_index += 1

    # hypergeometric tail for each vertex and direction, summed over both
    # directions and all vertices
    union = 0.0
    for v in range(n):
        for d in (G.out_degree(v), G.in_degree(v)):
            mean = d * u / n
            if mean <= 0:
                union += 1.0
                continue
            eps = 1 - threshold / mean
            union += 1.0 if eps <= 0 else min(1.0, 2 * math.exp(-eps * eps * mean / 3))
    report.update(
        failures=failures,
        failure_frequency=failures / cfg.trials,
        per_vertex_failure_rate=vertex_failures / (2 * u * cfg.trials),
        min_semidegree_observed=min(observed),
        mean_semidegree_observed=float(np.mean(observed)),
        reference_union_bound=min(1.0, union),
        per_vertex_reference_bound=n ** -2.0,
        passed=failures / cfg.trials < cfg.tolerance,
    )
    return report


__all__ = [
    "DEFAULT_BUDGET",
    "SplitExperimentConfig",
    "ThresholdRecord",
    "contains_pattern",
    "degree_summary",
    "enumerate_oriented",
    "ex_di_brute",
    "ex_di_formula",
    "has_closed_walk",
    "has_cycle_exact",
    "random_split_experiment",
    "shortest_cycle",
    "smallest_nondivisor",
    "threshold_search",
]
