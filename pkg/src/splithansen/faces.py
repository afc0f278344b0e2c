"""Face enumeration, an independent brute-force oracle, classification, f-vectors.

Faces are identified by their vertex sets. The vertex set of an
intersection of facets is already Galois-closed, so breadth-first
expansion only intersects known faces with facet columns and deduplicates.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels, bitset
from .graph import SplitCert, check_split, members
from .hansen import IncidenceStructure

DEFAULT_BUDGET = 50_000_000
BRUTE_FORCE_LIMIT = 24

PRIMITIVE, POSITIVE, NEGATIVE, SMALL = range(4)
CLASS_NAMES = ("primitive", "positive", "negative", "small")


class FaceBudgetExceeded(RuntimeError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"face enumeration exceeded the budget of {budget} faces")
        self.budget = budget


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    vset: int
    fset: int

    def __post_init__(self) -> None:
        if not self.vset:
            raise ValueError("faces are nonempty")


@dataclass(frozen=True)
class FaceCensus:
    total: int
    by_class: dict[str, int] | None = None
    fvec: list[int] | None = None
    vsets: np.ndarray = field(default=None, repr=False, compare=False)

    def vset_ints(self) -> list[int]:
        return bitset.unpack(self.vsets)

    def dump(self) -> list[str]:
        """Sorted hex vertex sets, one per face."""
        return [format(v, "x") for v in self.vset_ints()]

    def to_json(self) -> dict:
        out: dict = {"s": self.total}
        if self.by_class is not None:
            out["classes"] = dict(self.by_class)
        if self.fvec is not None:
            out["f_vector"] = list(self.fvec)
        return out


def closure(inc: IncidenceStructure, seed: int) -> Face:
    """Smallest face containing the vertex set ``seed``."""
    if not seed:
        raise ValueError("seed must be a nonempty vertex set")
    fset = (1 << inc.nf) - 1
    for v in members(seed):
        fset &= inc.rows[v]
    vset = inc.all_vertices
    for f in members(fset):
        vset &= inc.cols[f]
    return Face(vset, fset)


def _census(vsets: np.ndarray) -> FaceCensus:
    vsets = bitset.sort_rows(vsets)
    return FaceCensus(total=int(vsets.shape[0]), vsets=vsets)


def enumerate_faces(
    inc: IncidenceStructure, budget: int = DEFAULT_BUDGET, backend: str | None = None
) -> FaceCensus:
    """All nonempty faces, the polytope itself included."""
    vsets, overflow = _kernels.enumerate_faces(inc.col_words, inc.nv, budget, backend)
    if overflow:
        raise FaceBudgetExceeded(budget)
    return _census(vsets)


def _all_intersections(cols: np.ndarray, start: np.ndarray) -> np.ndarray:
    out = np.empty((1 << cols.shape[0], start.shape[0]), np.uint64)
    out[0] = start
    for i, col in enumerate(cols):
        out[1 << i : 2 << i] = out[: 1 << i] & col
    return out


def _oracle_by_facets(inc: IncidenceStructure) -> np.ndarray:
    cols = inc.col_words
    half = cols.shape[0] // 2
    full = bitset.full_row(inc.nv)
    lo = _all_intersections(cols[:half], full)
    hi = _all_intersections(cols[half:], full)
    acc = np.zeros((0, cols.shape[1]), np.uint64)
    pending = []
    for row in hi:
        block = lo & row
        pending.append(bitset.unique_rows(block[block.any(axis=1)]))
        if len(pending) == 64:
            acc = bitset.unique_rows(np.concatenate([acc] + pending))
            pending = []
    return bitset.unique_rows(np.concatenate([acc] + pending))


def _oracle_by_vertices(inc: IncidenceStructure) -> np.ndarray:
    rows = inc.row_words
    allf = bitset.full_row(inc.nf)
    fsets = bitset.unique_rows(_all_intersections(rows, allf)[1:])
    # a vertex lies in the closure iff every facet of the fset contains it
    vmat = ~(fsets[:, None, :] & ~rows[None, :, :]).any(axis=2)
    return bitset.from_bool(vmat)


def brute_force_faces(inc: IncidenceStructure) -> FaceCensus:
    """Oracle: every nonempty facet-subset intersection (or vertex-subset closure)."""
    if inc.nf <= BRUTE_FORCE_LIMIT:
        vsets = _oracle_by_facets(inc)
    elif inc.nv <= BRUTE_FORCE_LIMIT:
        vsets = _oracle_by_vertices(inc)
    else:
        raise OracleTooLarge(
            f"{inc.nf} facets and {inc.nv} vertices; the oracle needs one side <= {BRUTE_FORCE_LIMIT}"
        )
    return _census(vsets)


def face_list(inc: IncidenceStructure, faces: FaceCensus, backend: str | None = None) -> list[Face]:
    fsets = _kernels.facet_sets(faces.vsets, inc.col_words, backend)
    return [Face(v, f) for v, f in zip(faces.vset_ints(), bitset.unpack(fsets))]


def _contained_in_any(vsets: np.ndarray, cols: np.ndarray, backend: str | None) -> np.ndarray:
    if cols.shape[0] == 0:
        return np.zeros(vsets.shape[0], bool)
    return _kernels.facet_sets(vsets, cols, backend).any(axis=1)


def face_classes(
    inc: IncidenceStructure, cert: SplitCert, faces: FaceCensus, backend: str | None = None
) -> np.ndarray:
    """Class code per face (aligned with ``faces.vsets``)."""
    check_split(inc.graph, cert)
    plus = members(inc.type1_facets(cert, 1))
    minus = members(inc.type1_facets(cert, -1))
    in_plus = _contained_in_any(faces.vsets, inc.col_words[plus], backend)
    in_minus = _contained_in_any(faces.vsets, inc.col_words[minus], backend)
    codes = np.full(faces.total, PRIMITIVE, np.int64)
    codes[in_plus & ~in_minus] = POSITIVE
    codes[in_minus & ~in_plus] = NEGATIVE
    codes[in_plus & in_minus] = SMALL
    return codes


def classify_faces(
    inc: IncidenceStructure, cert: SplitCert, faces: FaceCensus, backend: str | None = None
) -> FaceCensus:
    codes = face_classes(inc, cert, faces, backend)
    counts = np.bincount(codes, minlength=4)
    return replace(faces, by_class={name: int(counts[i]) for i, name in enumerate(CLASS_NAMES)})


def face_dimensions(
    inc: IncidenceStructure, faces: FaceCensus, backend: str | None = None
) -> np.ndarray:
    return _kernels.face_ranks(faces.vsets, inc.points, backend)


def f_vector(inc: IncidenceStructure, faces: FaceCensus, backend: str | None = None) -> list[int]:
    """Face counts by dimension, f_0 .. f_d with f_d = 1."""
    dims = face_dimensions(inc, faces, backend)
    return np.bincount(dims, minlength=int(dims.max()) + 1).astype(int).tolist()


def census(
    inc: IncidenceStructure,
    cert: SplitCert | None = None,
    with_fvec: bool = False,
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
) -> FaceCensus:
    """Enumerate, then optionally classify and attach the f-vector."""
    faces = enumerate_faces(inc, budget, backend)
    if cert is not None:
        faces = classify_faces(inc, cert, faces, backend)
    if with_fvec:
        faces = replace(faces, fvec=f_vector(inc, faces, backend))
    return faces
