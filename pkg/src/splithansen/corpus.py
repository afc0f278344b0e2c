"""Small-graph enumeration up to isomorphism and seeded random test corpora."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from ._rng import SplitMix64
from .graph import Graph, SplitCert, popcount, random_split, recognize_split

MAX_EXHAUSTIVE_NODES = 8


def _group_perms(groups: list[list[int]]):
    for parts in product(*(permutations(grp) for grp in groups)):
        yield [v for part in parts for v in part]


def canonical_code(g: Graph) -> int:
    """Minimum adjacency code over node orders that list nodes by ascending degree.

    Bit ``pair_index(i, j)`` of the code is set iff the nodes placed at
    positions i < j are adjacent.
    """
    n = g.n
    deg = [popcount(nb) for nb in g.adj]
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(deg[v], []).append(v)
    ordered = [groups[k] for k in sorted(groups)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = None
    for perm in _group_perms(ordered):
        code = 0
        for bit, (i, j) in enumerate(pairs):
            if g.adj[perm[i]] >> perm[j] & 1:
                code |= 1 << bit
        if best is None or code < best:
            best = code
    return best or 0


def from_code(n: int, code: int) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, [p for bit, p in enumerate(pairs) if code >> bit & 1])


def canonical_form(g: Graph) -> Graph:
    return from_code(g.n, canonical_code(g))


def _augment(graphs: tuple[Graph, ...], keep) -> tuple[Graph, ...]:
    if not graphs:
        return ()
    n = graphs[0].n + 1
    codes = set()
    for h in graphs:
        for nb in range(1 << h.n):
            adj = list(h.adj)
            for u in range(h.n):
                if nb >> u & 1:
                    adj[u] |= 1 << h.n
            g = Graph(n, tuple(adj) + (nb,))
            if keep(g):
                codes.add(canonical_code(g))
    return tuple(from_code(n, c) for c in sorted(codes))


def _check_size(n: int) -> None:
    if not 0 <= n <= MAX_EXHAUSTIVE_NODES:
        raise ValueError(f"exhaustive enumeration is capped at {MAX_EXHAUSTIVE_NODES} nodes")


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class, sorted by canonical code."""
    _check_size(n)
    if n == 0:
        return (Graph.empty(0),)
    return _augment(all_graphs(n - 1), lambda g: True)


@lru_cache(maxsize=None)
def split_graphs(n: int) -> tuple[Graph, ...]:
    """Split graphs up to isomorphism; grown from smaller ones since the class is hereditary."""
    _check_size(n)
    if n == 0:
        return (Graph.empty(0),)
    return _augment(split_graphs(n - 1), lambda g: recognize_split(g) is not None)


def split_graphs_upto(max_nodes: int) -> list[Graph]:
    return [g for n in range(max_nodes + 1) for g in split_graphs(n)]


def random_split_corpus(
    count: int, max_nodes: int, seed: int, min_nodes: int = 1
) -> list[tuple[Graph, SplitCert, dict]]:
    """Seeded random split graphs; the dict records the generator arguments."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = min_nodes + rng.randbelow(max_nodes - min_nodes + 1)
        # both sides nonempty and p kept mid-range: otherwise most draws are threshold graphs
        k = 1 + rng.randbelow(n - 1) if n >= 2 else rng.randbelow(n + 1)
        p = round(0.25 + 0.5 * rng.random(), 3)
        gseed = rng.next_u64() >> 1
        g, cert = random_split(k, n - k, p, gseed)
        out.append((g, cert, {"k": k, "l": n - k, "p": p, "seed": gseed}))
    return out
