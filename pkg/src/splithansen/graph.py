"""Graphs on at most 63 nodes with node-sets stored as int bitmasks.

Bit ``v`` of a node-set is set iff node ``v`` belongs to it, so every set
operation is a single machine-word operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from ._rng import SplitMix64

MAX_NODES = 63


class GraphError(ValueError):
    pass


class InvalidCertificate(GraphError):
    pass


def members(mask: int) -> list[int]:
    """Sorted list of the nodes in a node-set."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_NODES:
            raise GraphError(f"node count {self.n} outside 0..{MAX_NODES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length differs from node count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"node {v} has a neighbor outside the node range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at node {v}")
            for u in members(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def nodes(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(popcount(nb) for nb in self.adj) // 2

    def neighborhood(self, nodes: int) -> int:
        """Nodes adjacent to some node of ``nodes``."""
        out = 0
        for v in members(nodes):
            out |= self.adj[v]
        return out

    def is_clique(self, nodes: int) -> bool:
        return all(nodes & ~self.adj[v] == 1 << v for v in members(nodes))

    def is_stable(self, nodes: int) -> bool:
        return all(not self.adj[v] & nodes for v in members(nodes))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with node ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


@dataclass(frozen=True)
class SplitCert:
    clique: int
    stable: int

    @property
    def k(self) -> int:
        return popcount(self.clique)

    @property
    def l(self) -> int:  # noqa: E743
        return popcount(self.stable)

    def swapped(self) -> SplitCert:
        """The certificate of the complement graph."""
        return SplitCert(self.stable, self.clique)


def check_split(g: Graph, cert: SplitCert) -> None:
    if cert.clique & cert.stable:
        raise InvalidCertificate("clique and stable side overlap")
    if cert.clique | cert.stable != g.nodes:
        raise InvalidCertificate("certificate does not cover the node set")
    if not g.is_clique(cert.clique):
        raise InvalidCertificate("clique side is not a clique")
    if not g.is_stable(cert.stable):
        raise InvalidCertificate("stable side is not stable")


def is_valid_split(g: Graph, cert: SplitCert) -> bool:
    try:
        check_split(g, cert)
    except InvalidCertificate:
        return False
    return True


class Step(str, Enum):
    ISOLATED = "I"
    DOMINATING = "D"


@dataclass(frozen=True)
class ThresholdSeq:
    """Creation sequence; ``order[i]`` is the label of the node added at step i.

    An empty ``order`` means the identity labelling.
    """

    steps: tuple[Step, ...]
    order: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))
        if self.order and sorted(self.order) != list(range(len(self.steps))):
            raise GraphError("order must be a permutation of the step positions")

    @classmethod
    def parse(cls, text: str | Sequence[str]) -> ThresholdSeq:
        return cls(tuple(Step(c.upper()) for c in text if not str(c).isspace()))

    def __len__(self) -> int:
        return len(self.steps)

    def labels(self) -> tuple[int, ...]:
        return self.order or tuple(range(len(self.steps)))

    def parts(self) -> SplitCert:
        """(dominating nodes, isolated nodes) of the graph this sequence builds."""
        dom = iso = 0
        for label, step in zip(self.labels(), self.steps):
            if step is Step.DOMINATING:
                dom |= 1 << label
            else:
                iso |= 1 << label
        return SplitCert(dom, iso)

    def __str__(self) -> str:
        return "".join(s.value for s in self.steps)


def complement(g: Graph) -> Graph:
    full = g.nodes
    return Graph(g.n, tuple(full ^ nb ^ (1 << v) for v, nb in enumerate(g.adj)))


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(members(mask))


def recognize_split(g: Graph) -> SplitCert | None:
    """Split certificate with a maximum clique side, lexicographically smallest.

    Existence by the degree-sequence test; every other maximum clique side
    differs from the degree-sorted one by swapping a single node.
    """
    if g.n == 0:
        return SplitCert(0, 0)
    deg = [popcount(nb) for nb in g.adj]
    order = sorted(range(g.n), key=lambda v: (-deg[v], v))
    m = max(i for i in range(1, g.n + 1) if deg[order[i - 1]] >= i - 1)
    head = sum(deg[v] for v in order[:m])
    tail = sum(deg[v] for v in order[m:])
    if head != m * (m - 1) + tail:
        return None
    base = to_mask(order[:m])
    candidates = [base]
    for x in members(base):
        for y in members(g.nodes & ~base):
            candidates.append(base ^ (1 << x) ^ (1 << y))
    valid = [c for c in candidates if is_valid_split(g, SplitCert(c, g.nodes & ~c))]
    best = min(valid, key=_lex_key)
    return SplitCert(best, g.nodes & ~best)


def recognize_threshold(g: Graph) -> ThresholdSeq | None:
    """Peel isolated/dominating nodes, highest label first, into a creation sequence."""
    remaining = g.nodes
    steps: list[Step] = []
    order: list[int] = []
    while remaining:
        size = popcount(remaining)
        for v in reversed(members(remaining)):
            d = popcount(g.adj[v] & remaining)
            if d == 0:
                steps.append(Step.ISOLATED)
                break
            if d == size - 1:
                steps.append(Step.DOMINATING)
                break
        else:
            return None
        order.append(v)
        remaining &= ~(1 << v)
    return ThresholdSeq(tuple(reversed(steps)), tuple(reversed(order)))


def build_threshold(seq: ThresholdSeq) -> Graph:
    labels = seq.labels()
    adj = [0] * len(seq)
    for i, (v, step) in enumerate(zip(labels, seq.steps)):
        if step is Step.DOMINATING:
            for u in labels[:i]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(len(seq), tuple(adj))


def is_threshold_seq_for(t: Graph, tseq: ThresholdSeq) -> bool:
    return len(tseq) == t.n and build_threshold(tseq) == t


def has_induced_p4(g: Graph) -> bool:
    for quad in combinations(range(g.n), 4):
        mask = to_mask(quad)
        degs = sorted(popcount(g.adj[v] & mask) for v in quad)
        if degs == [1, 1, 2, 2]:
            return True
    return False


def disjoint_union(g: Graph, t: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + t.n, g.adj + tuple(nb << shift for nb in t.adj))


def ltimes(
    g: Graph, cert: SplitCert, t: Graph, tseq: ThresholdSeq
) -> tuple[Graph, SplitCert]:
    """Join every clique node of ``g`` to every node of ``t`` (appended after g's nodes)."""
    check_split(g, cert)
    if not is_threshold_seq_for(t, tseq):
        raise InvalidCertificate("threshold sequence does not build the given graph")
    if g.n + t.n > MAX_NODES:
        raise GraphError("result exceeds the node capacity")
    shift = g.n
    tnodes = t.nodes << shift
    adj = list(g.adj) + [nb << shift for nb in t.adj]
    for c in members(cert.clique):
        adj[c] |= tnodes
    for v in members(tnodes):
        adj[v] |= cert.clique
    tparts = tseq.parts()
    out = Graph(g.n + t.n, tuple(adj))
    return out, SplitCert(cert.clique | tparts.clique << shift, cert.stable | tparts.stable << shift)


def random_split(k: int, l: int, p: float, seed: int) -> tuple[Graph, SplitCert]:  # noqa: E741
    """Clique on nodes 0..k-1, stable set on k..k+l-1, cross edges drawn with prob. p.

    Draws run over clique nodes in order, stable nodes inner.
    """
    if k < 0 or l < 0 or k + l > MAX_NODES:
        raise GraphError(f"k + l must lie in 0..{MAX_NODES}")
    if not 0.0 <= p <= 1.0:
        raise GraphError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    clique = (1 << k) - 1
    edges = list(combinations(range(k), 2))
    for c in range(k):
        for s in range(k, k + l):
            if rng.random() < p:
                edges.append((c, s))
    return Graph.from_edges(k + l, edges), SplitCert(clique, ((1 << (k + l)) - 1) & ~clique)


def random_threshold(m: int, seed: int) -> tuple[Graph, ThresholdSeq]:
    rng = SplitMix64(seed)
    seq = ThresholdSeq(
        tuple(Step.DOMINATING if rng.next_u64() >> 63 else Step.ISOLATED for _ in range(m))
    )
    return build_threshold(seq), seq


def format_nodes(mask: int) -> str:
    """1-based display form, e.g. ``{1,4}``."""
    return "{" + ",".join(str(v + 1) for v in members(mask)) + "}"
