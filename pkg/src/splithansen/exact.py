"""Exact rank over the rationals by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from typing import Sequence


def rank(matrix: Sequence[Sequence[int]]) -> int:
    rows = [list(r) for r in matrix if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            rows[i] = [(x * p - y * a) // prev for x, y in zip(rows[i], rows[r])]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull; -1 for an empty point set."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - b for x, b in zip(p, base)] for p in points[1:]])
