from __future__ import annotations

import json
from itertools import product

import pytest

from conftest import GOLDEN
from splithansen import corpus
from splithansen.faces import PRIMITIVE, enumerate_faces, face_classes, face_list
from splithansen.graph import (
    Graph,
    SplitCert,
    check_split,
    complement,
    members,
    popcount,
    random_split,
    random_threshold,
    recognize_split,
    recognize_threshold,
    ltimes,
    to_mask,
)
from splithansen.hansen import incidence
from splithansen.io import graph_to_json
from splithansen.partitions import (
    PartitionError,
    TriPartition,
    condition_A,
    condition_B,
    count_pg,
    count_pg_by_support,
    count_pi,
    is_primitive,
    iter_partitions,
    phi,
    pi_a_partitions,
    psi,
    stable_blocks,
    verify_main_theorem,
)


def part(cert, cplus=(), cminus=(), splus=(), sminus=()):
    return TriPartition.make(cert, to_mask(cplus), to_mask(cminus), to_mask(splus), to_mask(sminus))


def all_split_certs(g: Graph) -> list[SplitCert]:
    return [
        SplitCert(c, g.nodes & ~c)
        for c in range(1 << g.n)
        if g.is_clique(c) and g.is_stable(g.nodes & ~c)
    ]


class TestConditions:
    # 0-based: P_4 is 0-1-2-3, clique {1,2}, stable {0,3}
    def test_vacuous_a(self, p4, p4_cert):
        assert condition_A(p4, p4_cert, part(p4_cert, splus=[0]))

    def test_middle_nodes_both_hold(self, p4, p4_cert):
        t = part(p4_cert, cplus=[1, 2], splus=[0, 3])
        assert condition_A(p4, p4_cert, t)
        assert condition_B(p4, p4_cert, t)

    def test_a_fails(self, p4, p4_cert):
        assert not condition_A(p4, p4_cert, part(p4_cert, cplus=[1], splus=[3]))

    def test_vacuous_b(self, p4, p4_cert):
        assert condition_B(p4, p4_cert, part(p4_cert, cplus=[1, 2]))

    def test_b_fails(self, p4, p4_cert):
        assert not condition_B(p4, p4_cert, part(p4_cert, cplus=[1], splus=[0]))

    def test_invalid_partition(self, p4, p4_cert):
        with pytest.raises(PartitionError):
            condition_A(p4, p4_cert, TriPartition(0b0010, 0b0010, 0b0100, 0b1001, 0, 0))

    def test_enumeration_size(self, p4_cert):
        assert sum(1 for _ in iter_partitions(p4_cert)) == 81


class TestCounts:
    def test_p4(self, p4, p4_cert):
        assert count_pg(p4, p4_cert) == 16

    def test_p4_pi_a_brute(self, p4, p4_cert):
        # direct brute force over the 81 digit assignments of nodes (1, 2, 0, 3)
        nodes_c, nodes_s = [1, 2], [0, 3]
        count = 0
        for digits in product(range(3), repeat=4):
            cpm = sum(1 << v for v, dg in zip(nodes_c, digits[:2]) if dg)
            spm = sum(1 << v for v, dg in zip(nodes_s, digits[2:]) if dg)
            if all(p4.adj[c] & spm for c in members(cpm)):
                count += 1
        assert count == 49 == count_pi(p4, p4_cert, "A")
        assert 2 * 49 - 17 == 81

    def test_edgeless_pi_a(self):
        g = Graph.empty(4)
        cert = SplitCert(0, g.nodes)
        assert count_pi(g, cert, "A") == 3**4

    def test_complete_pi_b(self):
        g = Graph.complete(4)
        cert = SplitCert(g.nodes, 0)
        assert count_pi(g, cert, "B") == 3**4

    def test_threshold_zero(self):
        for steps in range(1 << 6):
            g, _ = random_threshold(6, steps)
            assert count_pg(g, recognize_split(g)) == 0

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_p4_ltimes_t(self, p4, p4_cert, seed):
        t, tseq = random_threshold(3, seed)
        g, cert = ltimes(p4, p4_cert, t, tseq)
        assert count_pg(g, cert) == 16

    def test_support_route_agrees(self):
        for g in corpus.split_graphs_upto(6):
            cert = recognize_split(g)
            assert count_pg(g, cert) == count_pg_by_support(g, cert)

    def test_inclusion_exclusion(self):
        for g in corpus.split_graphs_upto(5):
            cert = recognize_split(g)
            a, b, pg = count_pi(g, cert, "A"), count_pi(g, cert, "B"), count_pg(g, cert)
            assert a + b - (pg + 1) == 3**g.n

    def test_bad_which(self, p4, p4_cert):
        with pytest.raises(ValueError):
            count_pi(p4, p4_cert, "C")


class TestCountProperties:
    def test_mod16_and_threshold_iff_zero(self):
        for n in range(8):
            for g in corpus.split_graphs(n):
                pg = count_pg(g, recognize_split(g))
                assert pg % 16 == 0
                assert (pg == 0) == (recognize_threshold(g) is not None)

    def test_certificate_independence(self):
        for g in corpus.split_graphs_upto(6):
            values = {count_pg(g, c) for c in all_split_certs(g)}
            assert len(values) == 1

    def test_minimal_support_excluded(self):
        for g in corpus.split_graphs_upto(5):
            cert = recognize_split(g)
            for t in iter_partitions(cert):
                if t.is_trivial():
                    continue
                if condition_A(g, cert, t) and condition_B(g, cert, t):
                    assert popcount(t.cpm) >= 2 and popcount(t.spm) >= 2

    def test_complement_flip(self):
        for g in corpus.split_graphs_upto(4):
            cert = recognize_split(g)
            gbar, cbar = complement(g), cert.swapped()
            for t in iter_partitions(cert):
                assert condition_A(g, cert, t) == condition_B(gbar, cbar, t.mirrored())
                assert condition_B(g, cert, t) == condition_A(gbar, cbar, t.mirrored())


class TestBijection:
    def test_phi_psi_p4(self, p4, p4_cert):
        inc = incidence(p4)
        t = part(p4_cert, cplus=[1, 2], splus=[0, 3])
        face = phi(inc, p4_cert, t)
        assert is_primitive(inc, p4_cert, face)
        for v in inc.vertex_set(face.vset):
            if v.sign == 1 and not v.members & p4_cert.clique:
                assert v.members & 0b1001 == 0b1001
        assert psi(inc, p4_cert, face) == t

    def test_psi_rejects_polytope(self, p4, p4_cert):
        inc = incidence(p4)
        faces = face_list(inc, enumerate_faces(inc))
        full = next(f for f in faces if f.vset == inc.all_vertices)
        with pytest.raises(PartitionError):
            psi(inc, p4_cert, full)

    def test_psi_rejects_non_primitive(self, p4, p4_cert):
        inc = incidence(p4)
        faces = enumerate_faces(inc)
        codes = face_classes(inc, p4_cert, faces)
        f = next(f for f, c in zip(face_list(inc, faces), codes) if c != PRIMITIVE)
        with pytest.raises(PartitionError):
            psi(inc, p4_cert, f)

    def test_phi_rejects_violations(self, p4, p4_cert):
        inc = incidence(p4)
        with pytest.raises(PartitionError):
            phi(inc, p4_cert, part(p4_cert, cplus=[1]))
        with pytest.raises(PartitionError):
            phi(inc, p4_cert, part(p4_cert, cplus=[1], splus=[3]))

    def test_threshold_has_only_trivial_refinement(self):
        for n in range(7):
            for steps in range(1 << n):
                g, _ = random_threshold(n, steps)
                cert = recognize_split(g)
                inc = incidence(g)
                faces = enumerate_faces(inc)
                codes = face_classes(inc, cert, faces)
                for f, c in zip(face_list(inc, faces), codes):
                    if c == PRIMITIVE and any(stable_blocks(inc, cert, f)):
                        t = psi(inc, cert, f)
                        assert not (condition_A(g, cert, t) and condition_B(g, cert, t))

    def test_refined_counts(self):
        # #(S+,S-)-primitive faces == |Pi_A(S+,S-)| for every disjoint pair
        for g in corpus.split_graphs_upto(5):
            cert = recognize_split(g)
            inc = incidence(g)
            faces = enumerate_faces(inc)
            codes = face_classes(inc, cert, faces)
            tally: dict[tuple[int, int], int] = {}
            for f, c in zip(face_list(inc, faces), codes):
                if c == PRIMITIVE:
                    key = stable_blocks(inc, cert, f)
                    tally[key] = tally.get(key, 0) + 1
            for t in iter_partitions(cert):
                if t.cplus or t.cminus:
                    continue
                key = (t.splus, t.sminus)
                expected = len(pi_a_partitions(g, cert, *key))
                assert tally.get(key, 0) == expected


class TestVerify:
    def test_p4(self, p4, p4_cert):
        r = verify_main_theorem(p4, p4_cert)
        assert r["pass"] and r["s"] == 259 and r["p_g"] == 16

    def test_k4(self):
        g = Graph.complete(4)
        r = verify_main_theorem(g, recognize_split(g))
        assert r["pass"] and r["s"] == 3**5 and r["p_g"] == 0

    def test_golden_random(self):
        g, cert = random_split(3, 3, 0.5, 7)
        golden = json.loads((GOLDEN / "verify_3_3_0.5_7.json").read_text())
        r = verify_main_theorem(g, cert)
        r["graph"] = graph_to_json(g, cert)
        assert r == golden
        assert r["pass"]

    def test_cert_checked(self, p4):
        with pytest.raises(ValueError):
            verify_main_theorem(p4, SplitCert(0b0011, 0b1100))


def test_partition_helpers(p4_cert):
    t = part(p4_cert, cplus=[1], sminus=[3])
    assert t.czero == 0b0100 and t.szero == 0b0001
    assert t.mirrored().mirrored() == t
    check_split(complement(Graph.path(4)), p4_cert.swapped())
