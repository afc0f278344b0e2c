"""Signed vertex and facet descriptions of Hansen polytopes, and their incidences.

A vertex ``(eps, I)`` is the point ``eps * (e_0 + sum_{i in I} e_i)`` for a
stable set ``I``. A facet ``[eps, Q]`` for a clique ``Q`` is the face where
``-x_0 + 2 * sum_{i in Q} x_i == eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import bitset
from .graph import Graph, GraphError, SplitCert, check_split, complement, members, recognize_split


class NotCertifiedError(GraphError):
    """Facet description requested for a graph that is not known to be perfect."""


@dataclass(frozen=True, order=True)
class SignedSet:
    sign: int
    members: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def sort_key(self) -> tuple[int, int]:
        return (0 if self.sign > 0 else 1, self.members)

    def flipped(self) -> SignedSet:
        return SignedSet(-self.sign, self.members)

    def label(self, brackets: str = "()") -> str:
        body = ",".join(str(v + 1) for v in members(self.members))
        sign = "+" if self.sign > 0 else "-"
        return f"{brackets[0]}{sign},{{{body}}}{brackets[1]}"


def _subsets_avoiding(g: Graph, conflict: tuple[int, ...]) -> list[int]:
    # backtracking: conflict[v] holds the nodes that cannot join v
    out: list[int] = []

    def extend(current: int, allowed: int) -> None:
        out.append(current)
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            v = low.bit_length() - 1
            extend(current | low, allowed & ~conflict[v])

    extend(0, g.nodes)
    out.sort()
    return out


def stable_sets(g: Graph) -> list[int]:
    """All stable sets (including the empty one) in ascending bitmask order."""
    return _subsets_avoiding(g, g.adj)


def cliques(g: Graph) -> list[int]:
    """All cliques (including the empty one) in ascending bitmask order."""
    return stable_sets(complement(g))


def _signed(sets: list[int]) -> list[SignedSet]:
    return [SignedSet(1, m) for m in sets] + [SignedSet(-1, m) for m in sets]


def hansen_vertices(g: Graph) -> list[SignedSet]:
    return _signed(stable_sets(g))


def _require_perfect(g: Graph, assume_perfect: bool) -> None:
    if not assume_perfect and recognize_split(g) is None:
        raise NotCertifiedError(
            "graph is not split; pass assume_perfect=True if it is known to be perfect"
        )


def hansen_facets(g: Graph, assume_perfect: bool = False) -> list[SignedSet]:
    _require_perfect(g, assume_perfect)
    return _signed(cliques(g))


def point(v: SignedSet, n: int) -> list[int]:
    """Coordinates (x_0, x_1, ..., x_n) of a vertex."""
    coords = [1] + [(v.members >> i) & 1 for i in range(n)]
    return [v.sign * c for c in coords]


def functional(f: SignedSet, n: int) -> tuple[list[int], int]:
    """(coefficients, right-hand side) of the facet equation."""
    return [-1] + [2 * ((f.members >> i) & 1) for i in range(n)], f.sign


def incident(v: SignedSet, f: SignedSet) -> bool:
    return (v.sign == f.sign) == bool(v.members & f.members)


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """Vertex-facet incidences; ``rows[v]`` and ``cols[f]`` are int bitsets."""

    graph: Graph
    vertices: tuple[SignedSet, ...]
    facets: tuple[SignedSet, ...]
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def nv(self) -> int:
        return len(self.vertices)

    @property
    def nf(self) -> int:
        return len(self.facets)

    @property
    def all_vertices(self) -> int:
        return (1 << self.nv) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (self.vertices, self.facets, self.rows) == (other.vertices, other.facets, other.rows)

    def __hash__(self) -> int:
        return hash((self.vertices, self.facets, self.rows))

    def is_incident(self, v: int, f: int) -> bool:
        return bool(self.rows[v] >> f & 1)

    @cached_property
    def col_words(self) -> np.ndarray:
        return bitset.pack(self.cols, bitset.nwords(self.nv))

    @cached_property
    def row_words(self) -> np.ndarray:
        return bitset.pack(self.rows, bitset.nwords(self.nf))

    @cached_property
    def vertex_index(self) -> dict[SignedSet, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def facet_index(self) -> dict[SignedSet, int]:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def points(self) -> np.ndarray:
        return np.array([point(v, self.graph.n) for v in self.vertices], dtype=np.int64)

    def type1_facets(self, cert: SplitCert, sign: int) -> int:
        """Bitset of the facets [sign, A] with A inside the clique side."""
        return sum(
            1 << i
            for i, f in enumerate(self.facets)
            if f.sign == sign and not f.members & ~cert.clique
        )

    def type1_vertices(self, cert: SplitCert, sign: int) -> int:
        """Bitset of the vertices (sign, A) with A inside the stable side."""
        return sum(
            1 << i
            for i, v in enumerate(self.vertices)
            if v.sign == sign and not v.members & ~cert.stable
        )

    def antipode_vertex_perm(self) -> list[int]:
        return [self.vertex_index[v.flipped()] for v in self.vertices]

    def antipode_facet_perm(self) -> list[int]:
        return [self.facet_index[f.flipped()] for f in self.facets]

    def vertex_set(self, mask: int) -> list[SignedSet]:
        return [self.vertices[i] for i in members(mask)]

    def to_json(self) -> dict:
        width = (self.nf + 3) // 4

        def entry(s: SignedSet) -> dict:
            return {"sign": "+" if s.sign > 0 else "-", "members": members(s.members)}

        return {
            "n": self.graph.n,
            "vertices": [entry(v) for v in self.vertices],
            "facets": [entry(f) for f in self.facets],
            "incidence": [format(r, f"0{width}x") for r in self.rows],
        }


def incidence(g: Graph, assume_perfect: bool = False) -> IncidenceStructure:
    verts = hansen_vertices(g)
    facs = hansen_facets(g, assume_perfect)
    verts.sort(key=SignedSet.sort_key)
    facs.sort(key=SignedSet.sort_key)
    nf = len(facs)
    half = nf // 2
    # facets are [+, Q...] then [-, Q...] with identical Q order
    rows = []
    for v in verts:
        meet = sum(1 << j for j, f in enumerate(facs[:half]) if v.members & f.members)
        miss = ((1 << half) - 1) & ~meet
        same, other = (meet, miss) if v.sign > 0 else (miss, meet)
        rows.append(same | other << half)
    cols = [0] * nf
    for i, r in enumerate(rows):
        for j in members(r):
            cols[j] |= 1 << i
    return IncidenceStructure(g, tuple(verts), tuple(facs), tuple(rows), tuple(cols))


def certified_incidence(g: Graph, cert: SplitCert) -> IncidenceStructure:
    check_split(g, cert)
    return incidence(g, assume_perfect=True)
