"""Six-way node partitions of a split graph, p_G, and the face/partition bijection."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .faces import (
    CLASS_NAMES,
    DEFAULT_BUDGET,
    Face,
    census,
    closure,
)
from .graph import Graph, SplitCert, check_split, complement, members, popcount
from .hansen import IncidenceStructure, SignedSet, certified_incidence


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class TriPartition:
    cplus: int
    cminus: int
    czero: int
    splus: int
    sminus: int
    szero: int

    @property
    def cpm(self) -> int:
        return self.cplus | self.cminus

    @property
    def spm(self) -> int:
        return self.splus | self.sminus

    def is_trivial(self) -> bool:
        return not (self.cpm or self.spm)

    def mirrored(self) -> TriPartition:
        """The same assignment read on the complement graph (clique and stable swap)."""
        return TriPartition(self.splus, self.sminus, self.szero, self.cplus, self.cminus, self.czero)

    @classmethod
    def make(cls, cert: SplitCert, cplus=0, cminus=0, splus=0, sminus=0) -> TriPartition:
        return cls(
            cplus, cminus, cert.clique & ~(cplus | cminus), splus, sminus, cert.stable & ~(splus | sminus)
        )


def check_partition(cert: SplitCert, t: TriPartition) -> None:
    parts = (t.cplus, t.cminus, t.czero, t.splus, t.sminus, t.szero)
    seen = 0
    for p in parts:
        if p & seen:
            raise PartitionError("partition blocks overlap")
        seen |= p
    if t.cplus | t.cminus | t.czero != cert.clique or t.splus | t.sminus | t.szero != cert.stable:
        raise PartitionError("partition does not match the certificate")


def _cond_a(g: Graph, cpm: int, spm: int) -> bool:
    return all(g.adj[c] & spm for c in members(cpm))


def _cond_b(g: Graph, cpm: int, spm: int) -> bool:
    return all(cpm & ~g.adj[s] for s in members(spm))


def condition_A(g: Graph, cert: SplitCert, t: TriPartition) -> bool:
    """Every node of C+ u C- has a neighbor in S+ u S-."""
    check_partition(cert, t)
    return _cond_a(g, t.cpm, t.spm)


def condition_B(g: Graph, cert: SplitCert, t: TriPartition) -> bool:
    """Every node of S+ u S- has a nonneighbor in C+ u C-."""
    check_partition(cert, t)
    return _cond_b(g, t.cpm, t.spm)


def _assignments(nodes: list[int]) -> Iterator[tuple[int, int, int]]:
    # base-3 counter: digit 0 -> zero block, 1 -> plus, 2 -> minus
    for digits in product((0, 1, 2), repeat=len(nodes)):
        plus = minus = zero = 0
        for v, dgt in zip(nodes, digits):
            if dgt == 1:
                plus |= 1 << v
            elif dgt == 2:
                minus |= 1 << v
            else:
                zero |= 1 << v
        yield plus, minus, zero


def iter_partitions(cert: SplitCert) -> Iterator[TriPartition]:
    cside = list(_assignments(members(cert.clique)))
    for sp, sm, sz in _assignments(members(cert.stable)):
        for cp, cm, cz in cside:
            yield TriPartition(cp, cm, cz, sp, sm, sz)


def _tally(g: Graph, cert: SplitCert) -> dict[str, int]:
    check_split(g, cert)
    cache: dict[tuple[int, int], tuple[bool, bool]] = {}
    a_count = b_count = both = 0
    for t in iter_partitions(cert):
        key = (t.cpm, t.spm)
        ab = cache.get(key)
        if ab is None:
            ab = cache[key] = (_cond_a(g, *key), _cond_b(g, *key))
        a_count += ab[0]
        b_count += ab[1]
        both += ab[0] and ab[1]
    return {"A": a_count, "B": b_count, "AB": both}


def count_pg(g: Graph, cert: SplitCert) -> int:
    """Nontrivial partitions satisfying both conditions."""
    return _tally(g, cert)["AB"] - 1


def count_pi(g: Graph, cert: SplitCert, which: str) -> int:
    """|Pi_A| or |Pi_B|, the trivial partition included."""
    if which not in ("A", "B"):
        raise ValueError("which must be 'A' or 'B'")
    return _tally(g, cert)[which]


def count_pg_by_support(g: Graph, cert: SplitCert) -> int:
    """p_G summed over supports (C+ u C-, S+ u S-); each valid support carries 2^size partitions."""
    total = 0
    for x in _subsets(cert.clique):
        for y in _subsets(cert.stable):
            if (x or y) and _cond_a(g, x, y) and _cond_b(g, x, y):
                total += 1 << (popcount(x) + popcount(y))
    return total


def _subsets(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def pi_a_partitions(g: Graph, cert: SplitCert, splus: int, sminus: int) -> list[TriPartition]:
    """Pi_A(S+, S-): partitions satisfying (A) with the stable blocks fixed."""
    if splus & sminus or (splus | sminus) & ~cert.stable:
        raise PartitionError("S+ and S- must be disjoint subsets of the stable side")
    out = []
    for cp, cm, cz in _assignments(members(cert.clique)):
        if _cond_a(g, cp | cm, splus | sminus):
            out.append(TriPartition(cp, cm, cz, splus, sminus, cert.stable & ~(splus | sminus)))
    return out


# ---------------------------------------------------------------------------
# bijection between nontrivial primitive faces and Pi_A partitions


def is_primitive(inc: IncidenceStructure, cert: SplitCert, face: Face) -> bool:
    type1 = inc.type1_facets(cert, 1) | inc.type1_facets(cert, -1)
    return not face.fset & type1


def stable_blocks(inc: IncidenceStructure, cert: SplitCert, face: Face) -> tuple[int, int]:
    """(S+, S-): for each sign, the common part of the face's type-(1) vertices."""
    out = []
    for sign in (1, -1):
        common = cert.stable
        for i in members(face.vset & inc.type1_vertices(cert, sign)):
            common &= inc.vertices[i].members
        out.append(common)
    return out[0], out[1]


def psi(inc: IncidenceStructure, cert: SplitCert, face: Face) -> TriPartition:
    """Partition read off a nontrivial primitive face."""
    g = inc.graph
    check_split(g, cert)
    if not is_primitive(inc, cert, face):
        raise PartitionError("face is not primitive")
    splus, sminus = stable_blocks(inc, cert, face)
    if not splus | sminus:
        raise PartitionError("face has empty S+ and S- (the polytope itself)")
    blocks = {1: splus, -1: sminus}
    has_node = {1: 0, -1: 0}
    for i in members(face.vset):
        v = inc.vertices[i]
        has_node[v.sign] |= v.members & cert.clique
    chosen = {1: 0, -1: 0}
    for c in members(cert.clique):
        for eps in (1, -1):
            probe = SignedSet(eps, (blocks[eps] & ~g.adj[c]) | 1 << c)
            on_face = face.vset >> inc.vertex_index[probe] & 1
            if on_face and not has_node[-eps] >> c & 1:
                chosen[eps] |= 1 << c
    if chosen[1] & chosen[-1]:
        raise PartitionError("node assigned to both signs")
    return TriPartition.make(cert, chosen[1], chosen[-1], splus, sminus)


def phi(inc: IncidenceStructure, cert: SplitCert, t: TriPartition) -> Face:
    """Primitive face cut out by two type-(2) facets per node of S+ u S-."""
    g = inc.graph
    check_split(g, cert)
    check_partition(cert, t)
    if not t.spm:
        raise PartitionError("S+ u S- must be nonempty")
    if not _cond_a(g, t.cpm, t.spm):
        raise PartitionError("partition violates condition (A)")
    vset = inc.all_vertices
    for s in members(t.spm):
        nb = g.adj[s]
        if t.splus >> s & 1:
            sign, tight, loose = 1, t.cplus & nb, nb & ~t.cminus
        else:
            sign, tight, loose = -1, t.cminus & nb, nb & ~t.cplus
        for a in (tight, loose):
            vset &= inc.cols[inc.facet_index[SignedSet(sign, a | 1 << s)]]
    return closure(inc, vset)


# ---------------------------------------------------------------------------
# full identity check


def verify_main_theorem(
    g: Graph, cert: SplitCert, budget: int = DEFAULT_BUDGET, backend: str | None = None
) -> dict:
    inc = certified_incidence(g, cert)
    gbar = complement(g)
    inc_bar = certified_incidence(gbar, cert.swapped())
    faces = census(inc, cert, budget=budget, backend=backend)
    faces_bar = census(inc_bar, cert.swapped(), budget=budget, backend=backend)
    tally = _tally(g, cert)
    pg = tally["AB"] - 1
    d = g.n + 1
    cls = faces.by_class
    cls_bar = faces_bar.by_class
    s = faces.total
    fp, fpos, fneg, small = (cls[k] for k in CLASS_NAMES)
    identities = {
        "main": s == 3**d + pg,
        "fplus": fpos == 3 ** (d - 1),
        "fminus": fneg == 3 ** (d - 1),
        "fp_piA": fp == tally["A"],
        "fp_piB": cls_bar["primitive"] == tally["B"],
        "small_piB": small == tally["B"] - 1,
        "decomposition": s == fp + fpos + fneg + cls_bar["primitive"] - 1,
        "inclusion_exclusion": 3 ** (d - 1) == tally["A"] + tally["B"] - tally["AB"],
        "mod16": pg % 16 == 0,
        "lower_bound": s >= 3**d,
        "polar_s": faces_bar.total == s,
    }
    return {
        "d": d,
        "s": s,
        "p_g": pg,
        "pi_a": tally["A"],
        "pi_b": tally["B"],
        "classes": cls,
        "classes_complement": cls_bar,
        "identities": identities,
        "pass": all(identities.values()),
    }
