import math
from fractions import Fraction

import pytest
from conftest import nx_cycle_lengths, oriented_graphs, to_nx
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import hypergeom

from orcycles.constructions import (
    blowup_cycle,
    complete_bipartite_digraph,
    directed_cycle,
    extremal_3cycle_vertex,
    rotational_tournament,
    transitive_tournament,
)
from orcycles.errors import (
    BadParams,
    BudgetExceeded,
    OddOrder,
    PatternTooShort,
    TooLarge,
)
from orcycles.graph import from_edge_list, min_semidegree
from orcycles.oracle import (
    SplitExperimentConfig,
    contains_pattern,
    enumerate_oriented,
    ex_di_brute,
    ex_di_formula,
    has_closed_walk,
    has_cycle_exact,
    random_split_experiment,
    shortest_cycle,
    threshold_search,
)

TRIANGLE = from_edge_list(3, [(0, 1), (1, 2), (2, 0)])


class TestCycleSearch:
    def test_examples(self):
        B = blowup_cycle(3, 9)
        assert has_cycle_exact(B, 4) is None
        w = has_cycle_exact(B, 6, through=0)
        assert w is not None and w.is_valid(B, 6) and 0 in w.vertices
        G, u = extremal_3cycle_vertex(2)
        assert has_cycle_exact(G, 3, through=u) is None
        assert has_cycle_exact(G, 3) is not None

    def test_length_two_rejected(self):
        with pytest.raises(ValueError):
            has_cycle_exact(TRIANGLE, 1)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            has_cycle_exact(blowup_cycle(3, 30), 30, budget=10)

    @given(oriented_graphs(max_n=8), st.integers(3, 8))
    def test_agrees_with_networkx(self, G, length):
        w = has_cycle_exact(G, length)
        assert (w is not None) == (length in nx_cycle_lengths(G, bound=length))
        if w is not None:
            assert w.is_valid(G, length)

    @given(oriented_graphs(min_n=1, max_n=8), st.integers(3, 7), st.data())
    def test_through_agrees_with_networkx(self, G, length, data):
        x = data.draw(st.integers(0, G.n - 1))
        w = has_cycle_exact(G, length, through=x)
        assert (w is not None) == (length in nx_cycle_lengths(G, through=x, bound=length))
        if w is not None:
            assert w.is_valid(G, length) and x in w.vertices

    @given(oriented_graphs(min_n=1, max_n=8))
    def test_girth_agrees_with_networkx(self, G):
        import networkx as nx

        g = shortest_cycle(G)
        D = to_nx(G)
        if nx.is_directed_acyclic_graph(D):
            assert g is None
        else:
            assert g == min(len(c) for c in nx.simple_cycles(D)) and g >= 3

    def test_girth_examples(self):
        assert shortest_cycle(blowup_cycle(3, 9)) == 3
        assert shortest_cycle(transitive_tournament(5)) is None
        assert shortest_cycle(rotational_tournament(7)) == 3
        assert shortest_cycle(blowup_cycle(5, 12)) == 5


class TestClosedWalk:
    def test_examples(self):
        assert has_closed_walk(TRIANGLE, 6)
        assert not has_closed_walk(TRIANGLE, 4)
        assert not has_closed_walk(complete_bipartite_digraph(6), 5)
        assert has_closed_walk(complete_bipartite_digraph(6), 2)

    @given(oriented_graphs(max_n=7), st.integers(1, 12))
    def test_against_naive_powers(self, G, length):
        reach = [{v} for v in range(G.n)]
        for _ in range(length):
            reach = [{w for u in r for w in G.out_neighbors(u)} for r in reach]
        assert has_closed_walk(G, length) == any(v in reach[v] for v in range(G.n))

    @given(oriented_graphs(max_n=7), st.integers(3, 7))
    def test_cycle_implies_walk(self, G, length):
        if has_cycle_exact(G, length) is not None:
            assert has_closed_walk(G, length)

    @pytest.mark.slow
    def test_cycle_implies_walk_n5_universe(self):
        for G in enumerate_oriented(5):
            for length in (3, 4, 5):
                if has_cycle_exact(G, length) is not None:
                    assert has_closed_walk(G, length)


class TestPatterns:
    def test_examples(self):
        m = contains_pattern(transitive_tournament(3), "ffb")
        assert m is not None and len(set(m)) == 3
        assert contains_pattern(blowup_cycle(3, 9), "ffb") is None
        assert contains_pattern(blowup_cycle(3, 9), "fff") is not None

    def test_too_short(self):
        with pytest.raises(PatternTooShort):
            contains_pattern(TRIANGLE, "fb")

    @pytest.mark.parametrize("p", ["fbfbf", "ffbfb", "bffbf", "fffbb"])
    def test_r5_type_one_decided(self, p):
        R5 = rotational_tournament(5)
        m = contains_pattern(R5, p)
        if m is not None:
            for i, c in enumerate(p):
                u, v = m[i], m[(i + 1) % 5]
                assert R5.has_edge(u, v) if c == "f" else R5.has_edge(v, u)

    @settings(max_examples=60)
    @given(oriented_graphs(max_n=6), st.text("fb", min_size=3, max_size=6))
    def test_against_networkx_isomorphism(self, G, p):
        import networkx as nx
        from networkx.algorithms.isomorphism import DiGraphMatcher

        P = nx.DiGraph()
        P.add_nodes_from(range(len(p)))
        for i, c in enumerate(p):
            j = (i + 1) % len(p)
            P.add_edge(i, j) if c == "f" else P.add_edge(j, i)
        expected = any(True for _ in DiGraphMatcher(to_nx(G), P).subgraph_monomorphisms_iter())
        m = contains_pattern(G, p)
        assert (m is not None) == expected
        if m is not None:
            assert len(set(m)) == len(p)


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_oriented(2))) == 3
        three = list(enumerate_oriented(3))
        assert len(three) == 27
        assert sum(has_cycle_exact(G, 3) is not None for G in three) == 2
        assert list(enumerate_oriented(4, min_semi=2)) == []
        assert len(list(enumerate_oriented(0))) == 1

    def test_frozen_counts(self):
        # frozen from independent counts (naive brute force and numpy)
        four = list(enumerate_oriented(4, min_semi=1))
        assert len(four) == 66
        assert sum(has_cycle_exact(G, 3) is None for G in four) == 6
        assert sum(has_cycle_exact(G, 3) is not None for G in enumerate_oriented(4)) == 180
        assert len(list(enumerate_oriented(5, min_semi=2))) == 24

    def test_filter_matches_post_filter(self):
        full = [G for G in enumerate_oriented(4) if min_semidegree(G) >= 1]
        assert set(full) == set(enumerate_oriented(4, 1))

    def test_shards_partition(self):
        whole = list(enumerate_oriented(4))
        parts = [G for i in range(9) for G in enumerate_oriented(4, shard=(i, 9))]
        assert len(whole) == 3**6 == len(set(whole))
        assert len(parts) == len(whole) and set(parts) == set(whole)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            next(enumerate_oriented(7))


class TestThresholds:
    @pytest.mark.parametrize("n", [4, 5])
    def test_triangle_exact(self, n):
        rec = threshold_search(3, n)
        assert rec.exhaustive and rec.lower == rec.upper == 2 and rec.witness_semi == 1
        assert has_cycle_exact(rec.lower_witness, 3) is None
        assert min_semidegree(rec.lower_witness) == 1
        for G in enumerate_oriented(n, min_semi=rec.upper):
            assert has_cycle_exact(G, 3) is not None

    def test_four_seven(self):
        rec = threshold_search(4, 7)
        assert (rec.lower, rec.upper, rec.exhaustive) == (3, 3, False)
        assert rec.provenance["upper"].startswith("lemma")
        assert has_cycle_exact(rec.lower_witness, 4) is None

    def test_five_six(self):
        rec = threshold_search(5, 6)
        assert rec.exhaustive and has_cycle_exact(rec.lower_witness, 5) is None
        assert rec.lower == rec.witness_semi + 1
        d = rec.to_dict()
        assert d["exhaustive"] and d["shards"] == 9

    def test_bad(self):
        with pytest.raises(BadParams):
            threshold_search(2, 5)
        with pytest.raises(BadParams):
            threshold_search(6, 5)

    def test_sampling_reproducible(self):
        a = threshold_search(3, 9, seed=4, samples=8).to_dict()
        b = threshold_search(3, 9, seed=4, samples=8).to_dict()
        assert a == b and not a["exhaustive"]


class TestDensity:
    def test_formula(self):
        assert ex_di_formula(3, 4) == 8
        assert ex_di_formula(4, 6) == 21
        assert ex_di_formula(3, 5) == Fraction(25, 2)

    def test_brute(self):
        assert ex_di_brute(3, 4) == 8
        assert ex_di_brute(3, 3) == 4
        with pytest.raises(TooLarge):
            ex_di_brute(3, 5)


class TestSplit:
    def test_trivial(self):
        cfg = SplitExperimentConfig(trials=0, alpha=0.0, size_correction=False, relaxed=True)
        rep = random_split_experiment(blowup_cycle(3, 12), cfg)
        assert rep["failures"] == 0 and rep["failure_frequency"] is None
        with pytest.raises(OddOrder):
            random_split_experiment(blowup_cycle(3, 9), cfg)

    def test_non_finite_alpha(self):
        with pytest.raises(BadParams):
            SplitExperimentConfig(trials=1, alpha=float("nan"))

    def test_hypothesis_enforced(self):
        cfg = SplitExperimentConfig(trials=10, alpha=0.1, size_correction=False)
        with pytest.raises(BadParams):
            random_split_experiment(directed_cycle(6), cfg)

    def test_reproducible(self):
        cfg = SplitExperimentConfig(trials=300, alpha=-0.02, base=Fraction(1, 3), size_correction=False)
        G = blowup_cycle(3, 120)
        assert random_split_experiment(G, cfg, seed=3) == random_split_experiment(G, cfg, seed=3)

    def test_per_vertex_rate_matches_hypergeometric(self):
        # each member keeps Hypergeom(n-1, d, u-1) of its d out-neighbours
        n, trials = 300, 4000
        G = blowup_cycle(3, n)
        cfg = SplitExperimentConfig(trials=trials, alpha=-0.02, base=Fraction(1, 3),
                                    size_correction=False)
        rep = random_split_experiment(G, cfg, seed=11)
        u, d = n // 2, n // 3
        p = hypergeom(n - 1, d, u - 1).cdf(math.ceil(rep["threshold"]) - 1)
        samples = 2 * u * trials
        # vertex events inside one trial are correlated; a loose band is enough
        assert abs(rep["per_vertex_failure_rate"] - p) < 6 * math.sqrt(p * (1 - p) * u / samples) + 1e-3
        assert rep["min_semidegree_observed"] <= rep["mean_semidegree_observed"]
