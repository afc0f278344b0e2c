"""Conversion between Python-int bitsets and little-endian uint64 word rows."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def nwords(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def pack(masks: Sequence[int], width: int) -> np.ndarray:
    """Stack int bitsets into a (len(masks), width) uint64 array."""
    nbytes = 8 * width
    buf = b"".join(m.to_bytes(nbytes, "little") for m in masks)
    return np.frombuffer(buf, dtype="<u8").reshape(len(masks), width).astype(np.uint64)


def unpack(rows: np.ndarray) -> list[int]:
    rows = np.ascontiguousarray(rows, dtype="<u8")
    nbytes = 8 * rows.shape[1]
    raw = rows.tobytes()
    return [int.from_bytes(raw[i : i + nbytes], "little") for i in range(0, len(raw), nbytes)]


def full_row(nbits: int) -> np.ndarray:
    return pack([(1 << nbits) - 1], nwords(nbits))[0]


def to_bool(rows: np.ndarray, nbits: int) -> np.ndarray:
    """(K, width) words -> (K, nbits) bool matrix."""
    rows = np.ascontiguousarray(rows, dtype="<u8")
    bits = np.unpackbits(rows.view(np.uint8).reshape(rows.shape[0], -1), axis=1, bitorder="little")
    return bits[:, :nbits].astype(bool)


def from_bool(mat: np.ndarray) -> np.ndarray:
    """(K, nbits) bool matrix -> (K, width) uint64 words."""
    k, nbits = mat.shape
    width = nwords(nbits)
    padded = np.zeros((k, 64 * width), dtype=np.uint8)
    padded[:, :nbits] = mat
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64).reshape(k, width)


def sort_rows(rows: np.ndarray) -> np.ndarray:
    """Rows in ascending order of the integer they encode (high word most significant)."""
    if rows.shape[0] == 0:
        return rows
    keys = [rows[:, j] for j in range(rows.shape[1])]
    return rows[np.lexsort(keys)]


def unique_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    rows = np.ascontiguousarray(rows)
    view = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()
    _, idx = np.unique(view, return_index=True)
    return rows[np.sort(idx)]


def popcounts(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype="<u8")
    return np.unpackbits(rows.view(np.uint8), axis=1).sum(axis=1).astype(np.int64)
