from __future__ import annotations

import json
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN
from splithansen import corpus
from splithansen.graph import (
    Graph,
    GraphError,
    InvalidCertificate,
    SplitCert,
    Step,
    ThresholdSeq,
    build_threshold,
    check_split,
    complement,
    has_induced_p4,
    ltimes,
    members,
    random_split,
    random_threshold,
    recognize_split,
    recognize_threshold,
    to_mask,
)
from splithansen.io import graph_to_json

I, D = Step.ISOLATED, Step.DOMINATING


@st.composite
def graphs(draw, max_nodes=8):
    n = draw(st.integers(0, max_nodes))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def brute_split_certs(g: Graph) -> list[int]:
    return [c for c in range(1 << g.n) if g.is_clique(c) and g.is_stable(g.nodes & ~c)]


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and any(a.relabel(p) == b for p in permutations(range(a.n)))


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(2, (0b01, 0))

    def test_rejects_asymmetry(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0))

    def test_rejects_oversize(self):
        with pytest.raises(GraphError):
            Graph.empty(64)

    def test_edges_roundtrip(self):
        g = Graph.from_edges(5, [(0, 4), (1, 2)])
        assert g.edges() == [(0, 4), (1, 2)]
        assert g.edge_count() == 2


class TestComplement:
    def test_complete_to_edgeless(self):
        assert complement(Graph.complete(3)) == Graph.empty(3)

    def test_empty_graph(self):
        assert complement(Graph.empty(0)) == Graph.empty(0)

    def test_p4_self_complementary(self, p4):
        # complement of 1-2-3-4 is the path through (2,4,1,3)
        assert complement(p4) == Graph.from_edges(4, [(1, 3), (3, 0), (0, 2)])
        assert brute_isomorphic(complement(p4), p4)

    @given(graphs())
    def test_involution(self, g):
        assert complement(complement(g)) == g


class TestRecognizeSplit:
    def test_p4(self, p4):
        assert recognize_split(p4) == SplitCert(to_mask([1, 2]), to_mask([0, 3]))

    def test_c5_not_split(self):
        c5 = Graph.cycle(5)
        assert brute_split_certs(c5) == []
        assert recognize_split(c5) is None

    def test_k3(self):
        assert recognize_split(Graph.complete(3)) == SplitCert(0b111, 0)

    def test_empty(self):
        assert recognize_split(Graph.empty(0)) == SplitCert(0, 0)

    @settings(max_examples=300)
    @given(graphs(max_nodes=7))
    def test_matches_brute_force(self, g):
        certs = brute_split_certs(g)
        got = recognize_split(g)
        if not certs:
            assert got is None
            return
        best = max(len(members(c)) for c in certs)
        expected = min((c for c in certs if len(members(c)) == best), key=members)
        assert got == SplitCert(expected, g.nodes & ~expected)


class TestThreshold:
    def test_p4_not_threshold(self, p4):
        assert recognize_threshold(p4) is None

    def test_k2(self):
        assert recognize_threshold(Graph.complete(2)).steps == (I, D)

    def test_p3(self):
        g = Graph.path(3)
        seq = recognize_threshold(g)
        assert seq.steps == (I, I, D)
        assert build_threshold(seq) == g

    def test_build_empty(self):
        assert build_threshold(ThresholdSeq(())) == Graph.empty(0)

    def test_build_k3(self):
        assert build_threshold(ThresholdSeq((I, D, D))) == Graph.complete(3)

    def test_build_p3(self):
        # replay: node 2 dominating over isolated nodes 0 and 1
        assert build_threshold(ThresholdSeq((I, I, D))) == Graph.from_edges(3, [(0, 2), (1, 2)])

    @given(st.lists(st.sampled_from([I, D]), max_size=10))
    def test_build_then_recognize(self, steps):
        g = build_threshold(ThresholdSeq(tuple(steps)))
        seq = recognize_threshold(g)
        assert seq is not None
        assert build_threshold(seq) == g
        assert recognize_split(g) is not None

    def test_parts_split_threshold(self):
        seq = ThresholdSeq.parse("IDID")
        parts = seq.parts()
        check_split(build_threshold(seq), parts)
        assert parts == SplitCert(to_mask([1, 3]), to_mask([0, 2]))

    def test_mahadev_peled_exhaustive_7(self):
        # threshold <=> split and induced-P4-free, over every graph on <= 7 nodes
        for n in range(8):
            for g in corpus.all_graphs(n):
                lhs = recognize_threshold(g) is not None
                rhs = recognize_split(g) is not None and not has_induced_p4(g)
                assert lhs == rhs, g


class TestLtimes:
    def test_p4_with_single_node(self, p4, p4_cert):
        t, tseq = Graph.empty(1), ThresholdSeq((I,))
        g, cert = ltimes(p4, p4_cert, t, tseq)
        assert g.n == 5
        assert cert == SplitCert(to_mask([1, 2]), to_mask([0, 3, 4]))
        assert g.adj[4] == to_mask([1, 2])
        check_split(g, cert)
        assert recognize_split(g) is not None

    def test_empty_t_is_identity(self, p4, p4_cert):
        assert ltimes(p4, p4_cert, Graph.empty(0), ThresholdSeq(())) == (p4, p4_cert)

    @given(st.integers(0, 6), st.integers(0, 2**32))
    def test_counts(self, m, seed):
        p4, cert = Graph.path(4), SplitCert(0b0110, 0b1001)
        t, tseq = random_threshold(m, seed)
        g, gcert = ltimes(p4, cert, t, tseq)
        assert g.n == p4.n + t.n
        assert g.edge_count() == p4.edge_count() + t.edge_count() + 2 * t.n
        check_split(g, gcert)
        assert recognize_split(g) is not None

    def test_rejects_bad_cert(self, p4):
        with pytest.raises(InvalidCertificate):
            ltimes(p4, SplitCert(0b0011, 0b1100), Graph.empty(0), ThresholdSeq(()))

    def test_rejects_bad_sequence(self, p4, p4_cert):
        with pytest.raises(InvalidCertificate):
            ltimes(p4, p4_cert, Graph.empty(2), ThresholdSeq((I, D)))


class TestRandomSplit:
    def test_p_zero(self):
        g, cert = random_split(3, 3, 0.0, 123)
        assert g == Graph.from_edges(6, [(0, 1), (0, 2), (1, 2)])
        assert cert == SplitCert(0b000111, 0b111000)

    def test_p_one(self):
        g, _ = random_split(3, 3, 1.0, 5)
        assert g.edge_count() == 3 + 9

    def test_golden(self):
        g, cert = random_split(2, 2, 0.5, 42)
        golden = json.loads((GOLDEN / "random_split_2_2_0.5_42.json").read_text())
        assert graph_to_json(g, cert) == golden

    def test_deterministic(self):
        assert random_split(4, 5, 0.3, 99) == random_split(4, 5, 0.3, 99)

    def test_overflow(self):
        with pytest.raises(GraphError):
            random_split(40, 30, 0.5, 0)
        with pytest.raises(GraphError):
            random_split(2, 2, 1.5, 0)
