"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_backends.py --count 12 --max-nodes 9
"""

from __future__ import annotations

import argparse
import time

from splithansen import _kernels, corpus
from splithansen.hansen import incidence


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=12)
    ap.add_argument("--min-nodes", type=int, default=6)
    ap.add_argument("--max-nodes", type=int, default=9)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    graphs = [g for g, _, _ in corpus.random_split_corpus(args.count, args.max_nodes, args.seed, args.min_nodes)]
    incs = [incidence(g) for g in graphs]

    # compile once so the numba column measures steady-state speed
    warm = incidence(graphs[0])
    faces, _ = _kernels.enumerate_faces(warm.col_words, warm.nv, 10**9, "numba")
    _kernels.facet_sets(faces, warm.col_words, "numba")
    _kernels.face_ranks(faces, warm.points, "numba")

    totals = {b: {"enumerate": 0.0, "facet_sets": 0.0, "ranks": 0.0} for b in _kernels.BACKENDS}
    faces_seen = 0
    for inc in incs:
        per_backend = {}
        for backend in _kernels.BACKENDS:
            t = totals[backend]
            (vsets, _), dt = _timed(lambda: _kernels.enumerate_faces(inc.col_words, inc.nv, 10**9, backend))
            t["enumerate"] += dt
            fsets, dt = _timed(lambda: _kernels.facet_sets(vsets, inc.col_words, backend))
            t["facet_sets"] += dt
            ranks, dt = _timed(lambda: _kernels.face_ranks(vsets, inc.points, backend))
            t["ranks"] += dt
            per_backend[backend] = (len(vsets), sorted(ranks.tolist()))
        if per_backend["numba"] != per_backend["numpy"]:
            raise SystemExit("backends disagree")
        faces_seen += per_backend["numba"][0]

    print(f"{len(incs)} graphs on {args.min_nodes}..{args.max_nodes} nodes, {faces_seen} faces")
    print(f"{'stage':<12}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for stage in ("enumerate", "facet_sets", "ranks"):
        a, b = totals["numba"][stage], totals["numpy"][stage]
        print(f"{stage:<12}{a:>10.3f}{b:>10.3f}{b / a if a else float('inf'):>8.1f}x")


if __name__ == "__main__":
    main()
