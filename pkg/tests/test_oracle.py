import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ramseykit import oracle
from ramseykit.graphs import BLUE, RED, Coloring, Graph
from ramseykit.patterns import named_graph


def pentagon_coloring() -> Coloring:
    """K_5 with a red 5-cycle and blue diagonals: the classical mono-K3-free coloring."""
    return Coloring.from_red_graph(named_graph("c", 5))


def naive_find(host_rows, n, pattern: Graph) -> bool:
    """All injective maps, as an independent reference for the backtracker."""
    for image in itertools.permutations(range(n), pattern.t):
        if all(host_rows[image[u]] >> image[v] & 1 for u, v in pattern.edges()):
            return True
    return False


class TestFindMonoExact:
    def test_all_red_k6_red_triangle(self):
        c = Coloring.monochromatic(6, RED)
        emb = oracle.find_mono_subgraph_exact(c, Graph.complete(3), RED)
        assert emb is not None and sorted(emb.image) == [0, 1, 2]

    def test_all_red_k6_no_blue_triangle(self):
        c = Coloring.monochromatic(6, RED)
        assert oracle.find_mono_subgraph_exact(c, Graph.complete(3), BLUE) is None

    def test_pentagon_has_no_mono_triangle(self):
        pent = pentagon_coloring()
        for color in (RED, BLUE):
            assert oracle.find_mono_subgraph_exact(pent, Graph.complete(3), color) is None

    def test_deterministic(self):
        c = Coloring.monochromatic(7, BLUE)
        a = oracle.find_mono_subgraph_exact(c, named_graph("p", 4), BLUE)
        b = oracle.find_mono_subgraph_exact(c, named_graph("p", 4), BLUE)
        assert a.image == b.image

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 9), st.integers(4, 7), st.integers(2, 5))
    def test_agrees_with_naive_reference(self, seed, n, pt):
        from ramseykit.randomlab import sample_coloring

        c = sample_coloring(n, 0.5, seed)
        pairs = [(u, v) for u in range(pt) for v in range(u + 1, pt)]
        pattern = Graph.from_edges(pt, pairs[: max(1, (seed % len(pairs)))])
        rows = tuple(c.row(v, RED) for v in range(n))
        expect = naive_find(rows, n, pattern)
        got = oracle.find_mono_subgraph_exact(c, pattern, RED) is not None
        assert got == expect


class TestVerifyEmbedding:
    def test_identity_triangle(self):
        c = Coloring.monochromatic(3, RED)
        ok, v = oracle.verify_embedding(Graph.complete(3), c, (0, 1, 2), RED)
        assert ok and v is None

    def test_non_injective(self):
        g = Graph.complete(4)
        ok, v = oracle.verify_embedding(named_graph("e", 2), g, [1, 1])
        assert not ok and v["kind"] == "not_injective"

    def test_missing_edge_named(self):
        host = Graph.from_edges(3, [(0, 1)])
        ok, v = oracle.verify_embedding(named_graph("p", 3), host, [0, 1, 2])
        assert not ok
        assert v["kind"] == "missing_edge"
        assert v["pattern_pair"] == (1, 2)

    def test_non_total_map_rejected(self):
        with pytest.raises(ValueError):
            oracle.verify_embedding(Graph.complete(3), Graph.complete(3), [0, 1])


class TestCliqueExact:
    def test_finds_in_complete(self):
        g = Graph.complete(8)
        assert oracle.find_clique_exact(g, 5) == [0, 1, 2, 3, 4]

    def test_within_restriction(self):
        c = Coloring.monochromatic(8, BLUE)
        got = oracle.find_clique_exact(c, 3, BLUE, within=[2, 5, 6, 7])
        assert got == [2, 5, 6]

    def test_none_when_absent(self):
        pent = pentagon_coloring()
        assert oracle.find_clique_exact(pent, 3, RED) is None
        assert oracle.find_clique_exact(pent, 3, BLUE) is None


class TestRamseyExact:
    def test_k2_k2(self):
        cert = oracle.ramsey_number_exact(Graph.complete(2), Graph.complete(2))
        assert cert.kind == "upper" and cert.n == 2

    def test_p3_p3_is_3(self):
        p3 = named_graph("p", 3)
        cert = oracle.ramsey_number_exact(p3, p3)
        assert cert.kind == "upper" and cert.n == 3
        assert cert.verify()

    def test_k3_k3_is_6_with_witness_at_5(self):
        k3 = Graph.complete(3)
        cert = oracle.ramsey_number_exact(k3, k3)
        assert cert.kind == "upper" and cert.n == 6
        assert cert.witness_n == 5
        assert cert.verify()

    def test_off_diagonal_k3_p3(self):
        # r(P3, K3) = 5: red C4 avoids both at n=4
        cert = oracle.ramsey_number_exact(named_graph("p", 3), Graph.complete(3))
        assert cert.kind == "upper" and cert.n == 5
        assert cert.verify()

    def test_lower_only_when_out_of_range(self):
        k3 = Graph.complete(3)
        cert = oracle.ramsey_number_exact(k3, k3, n_max=4)
        assert cert.kind == "lower" and cert.n == 4
        assert cert.verify()

    def test_guard_refusal(self):
        with pytest.raises(oracle.OracleRefusal):
            oracle.ramsey_number_exact(Graph.complete(3), Graph.complete(3), n_max=40)


class TestLowerBoundRandom:
    def test_k3_at_5_found(self):
        w = oracle.lower_bound_certificate_random(Graph.complete(3), 5, 500, seed=0)
        assert w is not None
        assert oracle.find_mono_subgraph_exact(w, Graph.complete(3), RED) is None
        assert oracle.find_mono_subgraph_exact(w, Graph.complete(3), BLUE) is None

    def test_k2_never_found(self):
        assert oracle.lower_bound_certificate_random(Graph.complete(2), 4, 50, 0) is None

    def test_deterministic(self):
        a = oracle.lower_bound_certificate_random(Graph.complete(3), 5, 500, seed=3)
        b = oracle.lower_bound_certificate_random(Graph.complete(3), 5, 500, seed=3)
        assert a.red_rows == b.red_rows


class TestBidenseBruteforce:
    def test_complete_certified(self):
        assert oracle.check_bidense_bruteforce(Graph.complete(5), 0.2, 1) is None

    def test_empty_witness(self):
        w = oracle.check_bidense_bruteforce(Graph.empty(6), 1 / 3, 0.1)
        assert w is not None and w.density == 0

    def test_size_guard(self):
        with pytest.raises(oracle.OracleRefusal):
            oracle.check_bidense_bruteforce(Graph.complete(13), 0.2, 0.5)
