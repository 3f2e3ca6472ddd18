from itertools import product

import pytest
from conftest import oriented_graphs, tournaments
from hypothesis import given
from hypothesis import strategies as st

from orcycles.arith import is_prime_power, smallest_nondivisor, winding_plan
from orcycles.constructions import (
    blowup_cycle,
    rotational_tournament,
    transitive_tournament,
)
from orcycles.errors import EmbeddingNotFound, NoPlan, PatternTooShort
from orcycles.graph import OrientedGraph, diameter, from_edge_list, popcount
from orcycles.oracle import contains_pattern, has_closed_walk
from orcycles.walks import (
    DIRECTED_CYCLE,
    DIRECTED_PATH,
    ONE_TRIANGLE,
    SQUARE,
    TWO_TRIANGLES,
    CyclePattern,
    check_embedding,
    closed_walk_of_length,
    cycle_type,
    embed_walk_greedy,
    grow_reachable,
    pattern_to_walk,
    transitive_triangles,
    triangle_winding,
)

TRIANGLE = from_edge_list(3, [(0, 1), (1, 2), (2, 0)])
patterns = st.text("fb", min_size=3, max_size=14)


def positional_ok(pattern, edges, hom):
    E = set(edges)
    ell = len(pattern)
    for i, c in enumerate(pattern):
        u, v = hom[i], hom[(i + 1) % ell]
        if (c == "f" and (u, v) not in E) or (c == "b" and (v, u) not in E):
            return False
    return True


class TestArithmetic:
    def test_nondivisor(self):
        assert [smallest_nondivisor(x) for x in (4, 12, 60, 7)] == [3, 5, 7, 3]

    def test_prime_power(self):
        assert [k for k in range(1, 17) if is_prime_power(k)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]

    @given(st.integers(1, 10**6))
    def test_nondivisor_is_prime_power(self, x):
        k = smallest_nondivisor(x)
        assert x % k and all(x % j == 0 for j in range(3, k)) and is_prime_power(k)

    def test_plan_examples(self):
        p = winding_plan(42, 5)
        assert (p.a, p.r) == (7, 0)
        p = winding_plan(23, 2)
        assert (p.a, p.r, p.long_laps, p.short_laps) == (7, 2, 2, 5)
        with pytest.raises(NoPlan):
            winding_plan(9, 6)
        with pytest.raises(ValueError):
            winding_plan(9, 0)

    @given(st.integers(1, 2000), st.integers(1, 60))
    def test_plan_property(self, length, t):
        a, r = divmod(length, t + 1)
        try:
            p = winding_plan(length, t)
        except NoPlan:
            assert r > a
            return
        assert r <= a and p.r * (t + 2) + (p.a - p.r) * (t + 1) == length


class TestPatterns:
    def test_types(self):
        assert cycle_type("ffff") == 4 and cycle_type("fbfb") == 0 and cycle_type("ffb") == 1
        assert cycle_type("bbbbf") == 3

    def test_rejects(self):
        with pytest.raises(PatternTooShort):
            CyclePattern("fb")
        with pytest.raises(ValueError):
            CyclePattern("fxb")

    @given(patterns, st.integers(-20, 20))
    def test_type_invariance(self, s, k):
        p = CyclePattern(s)
        assert p.rotated(k).cycle_type == p.cycle_type == p.reversed().cycle_type
        assert p.reversed().reversed() == p and p.normalized().signed_type >= 0


class TestPatternToWalk:
    def test_directed_cycle(self):
        W = pattern_to_walk("fffff")
        assert W.kind == DIRECTED_CYCLE and W.k == 5 and W.homomorphism == (0, 1, 2, 3, 4)

    def test_ffb(self):
        W = pattern_to_walk("ffb")
        assert W.kind == ONE_TRIANGLE and W.k1 == 0 and W.k2 == 0 and W.n_vertices == 3

    def test_fffb(self):
        W = pattern_to_walk("fffb")
        assert W.kind == SQUARE and W.attachments[0][0] == "square"

    def test_kinds(self):
        assert pattern_to_walk("fbfb").kind == DIRECTED_PATH
        assert pattern_to_walk("ffbffb").kind == TWO_TRIANGLES
        assert pattern_to_walk("bbf").kind == ONE_TRIANGLE

    @given(patterns)
    def test_homomorphism(self, s):
        W = pattern_to_walk(s)
        assert positional_ok(s, W.edges, W.homomorphism)
        assert all(0 <= v < W.n_vertices for v in W.homomorphism)
        t = cycle_type(s)
        expected = {0: DIRECTED_PATH, 1: ONE_TRIANGLE}.get(t, DIRECTED_CYCLE)
        if t == 2:
            assert W.kind in (TWO_TRIANGLES, SQUARE)
        else:
            assert W.kind == expected

    def test_shape_is_oriented(self):
        for bits in product("fb", repeat=7):
            W = pattern_to_walk("".join(bits))
            E = set(W.edges)
            assert not any((v, u) in E for u, v in E) and all(u != v for u, v in E)


class TestEmbedding:
    def test_r7_path(self, r7):
        W = pattern_to_walk("fbfbfbfbfb")
        m = embed_walk_greedy(r7, W)
        assert check_embedding(r7, W, m)

    def test_blowup_no_triangle(self):
        with pytest.raises(EmbeddingNotFound) as e:
            embed_walk_greedy(blowup_cycle(3, 9), pattern_to_walk("ffb"))
        assert "transitive triangle" in str(e.value)

    def test_r5_triangle(self):
        R5 = rotational_tournament(5)
        W = pattern_to_walk("ffb")
        assert check_embedding(R5, W, embed_walk_greedy(R5, W))

    def test_directed_cycle_shape(self, r7):
        W = pattern_to_walk("ffffff")
        m = embed_walk_greedy(r7, W)
        assert check_embedding(r7, W, m)
        with pytest.raises(EmbeddingNotFound):
            embed_walk_greedy(blowup_cycle(3, 9), pattern_to_walk("fffff"))

    @given(tournaments(min_n=3, max_n=9), st.text("fb", min_size=3, max_size=7))
    def test_embedding_implies_homomorphic_copy(self, G, s):
        W = pattern_to_walk(s)
        try:
            m = embed_walk_greedy(G, W)
        except EmbeddingNotFound:
            return
        assert check_embedding(G, W, m)
        image = [m[W.homomorphism[i]] for i in range(len(s))]
        assert positional_ok(s, G.edges(), image)

    def test_injective_copy_gives_embedding_for_ffb(self):
        for G in (transitive_tournament(3), rotational_tournament(5), TRIANGLE):
            found = contains_pattern(G, "ffb") is not None
            try:
                embed_walk_greedy(G, pattern_to_walk("ffb"))
                embedded = True
            except EmbeddingNotFound:
                embedded = False
            assert found == embedded


class TestClosedWalks:
    def test_triangle_twice(self):
        w = closed_walk_of_length(TRIANGLE, 6)
        assert w.vertices == (0, 1, 2, 0, 1, 2, 0) and w.strategy == "divisor-cycle:3"

    def test_blowup_none(self):
        assert closed_walk_of_length(blowup_cycle(3, 9), 5) is None

    def test_r7_winding(self, r7):
        w = closed_walk_of_length(r7, 23)
        assert w.is_valid(r7, 23) and w.strategy == "triangle-winding:t=2"
        _, plan = triangle_winding(r7, 23)
        assert (plan.a, plan.r) == (7, 2)

    def test_exact_fallback(self):
        # 3- and 4-cycles sharing vertex 0, no transitive triangle; 7 = 3 + 4
        G = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)])
        w = closed_walk_of_length(G, 7)
        assert w.strategy == "exact" and w.is_valid(G, 7)
        assert closed_walk_of_length(G, 5) is None

    def test_transitive_triangles(self):
        assert list(transitive_triangles(transitive_tournament(3))) == [(0, 2, 1)]
        assert list(transitive_triangles(blowup_cycle(3, 6))) == []

    @given(oriented_graphs(max_n=9), st.integers(1, 30))
    def test_matches_matrix_powers(self, G, length):
        w = closed_walk_of_length(G, length)
        assert (w is not None) == has_closed_walk(G, length)
        if w is not None:
            assert w.is_valid(G, length) and w.vertices[0] == w.vertices[-1]


class TestGrowth:
    @pytest.mark.parametrize("n", [20, 40, 100])
    def test_blowup_4(self, n):
        G = blowup_cycle(4, n)
        for x in (0, n - 1):
            res = grow_reachable(G, x)
            assert res.stop == "half" and res.iterations <= 3
            assert popcount(res.sets[-1]) > n / 2
        assert diameter(G) <= 6

    def test_sizes(self):
        assert grow_reachable(blowup_cycle(4, 20), 0).sizes() == [5, 10, 15]

    def test_triangle(self):
        G = rotational_tournament(7)
        res = grow_reachable(G, 0)
        assert res.stop == "triangle" and len(set(res.triangle)) == 3
        u, v, w = res.triangle
        assert G.has_edge(u, v) and G.has_edge(v, w) and G.has_edge(w, u)
        # X_1 of the directed triangle already holds 2 of 3 vertices
        assert grow_reachable(TRIANGLE, 0).stop == "half"

    def test_fixpoint(self):
        res = grow_reachable(transitive_tournament(8), 7)
        assert res.stop == "fixpoint" and res.sets == [0]
        res = grow_reachable(OrientedGraph(4, [0b10, 0, 0, 0]), 0)
        assert res.stop == "fixpoint"

    def test_triangle_free_mode(self, r7):
        assert grow_reachable(r7, 0, triangle_free_mode=True).stop == "half"

    @given(oriented_graphs(min_n=1, max_n=10), st.data())
    def test_sets_nested(self, G, data):
        x = data.draw(st.integers(0, G.n - 1))
        res = grow_reachable(G, x)
        for a, b in zip(res.sets, res.sets[1:]):
            assert a & ~b == 0 and a != b
