"""Hot loops over uint64 word rows, in a numba flavour and a numpy flavour.

The backend defaults to numba when it imports; set ``SPLITHANSEN_NO_NUMBA=1``
to force the numpy path. Every public function takes ``backend=`` to
override per call, which is what the benchmark and the parity tests use.
"""

from __future__ import annotations

import os

import numpy as np

from . import bitset, exact

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

BACKENDS = ("numba", "numpy")
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not os.environ.get("SPLITHANSEN_NO_NUMBA") else "numpy"

# largest entry allowed before a multiply in the rank kernel; products stay < 2**63
_RANK_LIMIT = 1 << 31
_CHUNK_CELLS = 1 << 22


def resolve(backend: str | None) -> str:
    name = backend or DEFAULT_BACKEND
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return name


# ---------------------------------------------------------------------------
# numba kernels

if HAVE_NUMBA:

    @njit(cache=True)
    def _hash_row(row):
        # splitmix64 finalizer applied after folding in each word
        h = np.uint64(0x9E3779B97F4A7C15)
        for w in range(row.shape[0]):
            h ^= row[w]
            h ^= h >> np.uint64(30)
            h *= np.uint64(0xBF58476D1CE4E5B9)
            h ^= h >> np.uint64(27)
            h *= np.uint64(0x94D049BB133111EB)
            h ^= h >> np.uint64(31)
        return h

    @njit(cache=True)
    def _rows_equal(a, b):
        for w in range(a.shape[0]):
            if a[w] != b[w]:
                return False
        return True

    @njit(cache=True)
    def _table_insert(table, faces, idx):
        mask = np.uint64(table.shape[0] - 1)
        slot = np.int64(_hash_row(faces[idx]) & mask)
        while table[slot] != -1:
            slot = (slot + 1) & (table.shape[0] - 1)
        table[slot] = idx

    @njit(cache=True)
    def _enumerate_nb(cols, full, budget):
        nf, vw = cols.shape
        cap = 1024
        faces = np.zeros((cap, vw), np.uint64)
        tsize = 4096
        table = -np.ones(tsize, np.int64)
        faces[0, :] = full
        _table_insert(table, faces, 0)
        count = 1
        head = 0
        tmp = np.empty(vw, np.uint64)
        zero = np.uint64(0)
        while head < count:
            for f in range(nf):
                nonzero = False
                same = True
                for w in range(vw):
                    x = faces[head, w] & cols[f, w]
                    tmp[w] = x
                    if x != zero:
                        nonzero = True
                    if x != faces[head, w]:
                        same = False
                if same or not nonzero:
                    continue
                slot = np.int64(_hash_row(tmp) & np.uint64(tsize - 1))
                found = False
                while table[slot] != -1:
                    if _rows_equal(faces[table[slot]], tmp):
                        found = True
                        break
                    slot = (slot + 1) & (tsize - 1)
                if found:
                    continue
                if count >= budget:
                    return faces[:count].copy(), True
                if count == cap:
                    grown = np.zeros((2 * cap, vw), np.uint64)
                    grown[:cap] = faces
                    faces = grown
                    cap *= 2
                faces[count, :] = tmp
                table[slot] = count
                count += 1
                if 2 * count > tsize:
                    tsize *= 2
                    table = -np.ones(tsize, np.int64)
                    for i in range(count):
                        _table_insert(table, faces, i)
            head += 1
        return faces[:count].copy(), False

    @njit(cache=True)
    def _facet_sets_nb(vsets, cols):
        k, vw = vsets.shape
        nf = cols.shape[0]
        fw = max(1, (nf + 63) // 64)
        out = np.zeros((k, fw), np.uint64)
        zero = np.uint64(0)
        for i in range(k):
            for f in range(nf):
                inside = True
                for w in range(vw):
                    if vsets[i, w] & ~cols[f, w] != zero:
                        inside = False
                        break
                if inside:
                    out[i, f // 64] |= np.uint64(1) << np.uint64(f % 64)
        return out

    @njit(cache=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _int_rank(buf, nrows, ncols, limit):
        rank = 0
        for col in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if buf[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    t = buf[piv, j]
                    buf[piv, j] = buf[rank, j]
                    buf[rank, j] = t
            p = buf[rank, col]
            for i in range(rank + 1, nrows):
                a = buf[i, col]
                if a == 0:
                    continue
                g = 0
                for j in range(col, ncols):
                    x = buf[i, j]
                    y = buf[rank, j]
                    if abs(x) >= limit or abs(y) >= limit or abs(p) >= limit or abs(a) >= limit:
                        return -1
                    v = x * p - y * a
                    buf[i, j] = v
                    g = _gcd(g, v)
                if g > 1:
                    for j in range(col, ncols):
                        buf[i, j] //= g
            rank += 1
            if rank == ncols:
                break
        return rank

    @njit(cache=True)
    def _face_ranks_nb(vsets, points, limit):
        k, vw = vsets.shape
        nv, m = points.shape
        out = np.empty(k, np.int64)
        buf = np.empty((nv, m), np.int64)
        one = np.uint64(1)
        for i in range(k):
            first = -1
            r = 0
            for w in range(vw):
                word = vsets[i, w]
                b = 0
                while word != np.uint64(0):
                    if word & one:
                        idx = w * 64 + b
                        if first < 0:
                            first = idx
                        else:
                            for j in range(m):
                                buf[r, j] = points[idx, j] - points[first, j]
                            r += 1
                    word >>= one
                    b += 1
            if first < 0:
                out[i] = -1
            else:
                out[i] = _int_rank(buf, r, m, limit)
        return out


# ---------------------------------------------------------------------------
# numpy kernels


def _enumerate_np(cols: np.ndarray, full: np.ndarray, budget: int) -> tuple[np.ndarray, bool]:
    nf, vw = cols.shape
    known = {full.tobytes()}
    found = [full[None, :]]
    frontier = full[None, :]
    step = max(1, _CHUNK_CELLS // max(1, nf * vw))
    count = 1
    while frontier.shape[0]:
        blocks = []
        for start in range(0, frontier.shape[0], step):
            chunk = frontier[start : start + step]
            inter = (chunk[:, None, :] & cols[None, :, :]).reshape(-1, vw)
            inter = inter[inter.any(axis=1)]
            blocks.append(bitset.unique_rows(inter))
        cand = bitset.unique_rows(np.concatenate(blocks)) if blocks else frontier[:0]
        fresh = []
        for row in cand:
            key = row.tobytes()
            if key not in known:
                if count >= budget:
                    return np.concatenate(found + [np.array(fresh, dtype=np.uint64).reshape(-1, vw)]), True
                known.add(key)
                fresh.append(row)
                count += 1
        frontier = np.array(fresh, dtype=np.uint64).reshape(-1, vw)
        found.append(frontier)
    return np.concatenate(found), False


def _facet_sets_np(vsets: np.ndarray, cols: np.ndarray) -> np.ndarray:
    k, vw = vsets.shape
    nf = cols.shape[0]
    outside = ~cols
    step = max(1, _CHUNK_CELLS // max(1, nf * vw))
    blocks = []
    for start in range(0, k, step):
        chunk = vsets[start : start + step]
        inside = ~(chunk[:, None, :] & outside[None, :, :]).any(axis=2)
        blocks.append(bitset.from_bool(inside))
    if not blocks:
        return np.zeros((0, bitset.nwords(nf)), np.uint64)
    return np.concatenate(blocks)


def _rank_np(mat: np.ndarray) -> int:
    mat = np.unique(mat[mat.any(axis=1)], axis=0)
    nrows, ncols = mat.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(mat[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        mat[[rank, piv]] = mat[[piv, rank]]
        if np.abs(mat[rank:]).max() >= _RANK_LIMIT:
            return -1
        p = mat[rank, col]
        below = mat[rank + 1 :]
        a = below[:, col : col + 1].copy()
        below[:] = below * p - mat[rank] * a
        g = np.gcd.reduce(below, axis=1)
        g[g == 0] = 1
        below //= g[:, None]
        rank += 1
    return rank


def _face_ranks_np(vsets: np.ndarray, points: np.ndarray) -> np.ndarray:
    members = bitset.to_bool(vsets, points.shape[0])
    out = np.empty(vsets.shape[0], np.int64)
    for i, row in enumerate(members):
        idx = np.flatnonzero(row)
        if idx.size == 0:
            out[i] = -1
            continue
        out[i] = _rank_np(points[idx[1:]] - points[idx[0]])
    return out


# ---------------------------------------------------------------------------
# dispatch


def enumerate_faces(
    cols: np.ndarray, nv: int, budget: int, backend: str | None = None
) -> tuple[np.ndarray, bool]:
    """All nonempty intersections of facet columns plus the full vertex set.

    Returns (vset rows in discovery order, overflowed).
    """
    full = bitset.full_row(nv)
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    if resolve(backend) == "numba":
        return _enumerate_nb(cols, full, budget)
    return _enumerate_np(cols, full, budget)


def facet_sets(vsets: np.ndarray, cols: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Row i holds the facets whose column contains vsets[i]."""
    vsets = np.ascontiguousarray(vsets, dtype=np.uint64)
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    if resolve(backend) == "numba":
        return _facet_sets_nb(vsets, cols)
    return _facet_sets_np(vsets, cols)


def face_ranks(vsets: np.ndarray, points: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Affine dimension of each vertex set's point set, in exact integer arithmetic."""
    vsets = np.ascontiguousarray(vsets, dtype=np.uint64)
    points = np.ascontiguousarray(points, dtype=np.int64)
    if resolve(backend) == "numba":
        out = _face_ranks_nb(vsets, points, _RANK_LIMIT)
    else:
        out = _face_ranks_np(vsets, points)
    # entries grew past the int64-safe limit: redo with Python integers
    for i in np.flatnonzero(out < 0):
        idx = np.flatnonzero(bitset.to_bool(vsets[i : i + 1], points.shape[0])[0])
        if idx.size:
            out[i] = exact.affine_rank(points[idx].tolist())
    return out
