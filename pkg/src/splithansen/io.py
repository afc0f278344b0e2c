"""Graph files (JSON or a plain edge list) and report serialization.

JSON schema::

    {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]],
     "split": {"clique": [1, 2], "stable": [0, 3]},      # optional
     "threshold_sequence": ["I", "D", ...]}               # optional

Edge-list text: the node count on the first line, then one ``u v`` pair per
line; ``#`` starts a comment. Nodes are 0-based in files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import (
    Graph,
    GraphError,
    SplitCert,
    ThresholdSeq,
    build_threshold,
    check_split,
    members,
    to_mask,
)


class GraphFileError(ValueError):
    pass


def graph_to_json(g: Graph, cert: SplitCert | None = None, tseq: ThresholdSeq | None = None) -> dict:
    out: dict = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if cert is not None:
        out["split"] = {"clique": members(cert.clique), "stable": members(cert.stable)}
    if tseq is not None:
        out["threshold_sequence"] = [s.value for s in tseq.steps]
        if tseq.order:
            out["threshold_order"] = list(tseq.order)
    return out


def graph_from_json(obj: dict) -> tuple[Graph, SplitCert | None, ThresholdSeq | None]:
    try:
        g = Graph.from_edges(int(obj["n"]), [tuple(e) for e in obj.get("edges", [])])
        cert = None
        if "split" in obj:
            cert = SplitCert(to_mask(obj["split"]["clique"]), to_mask(obj["split"]["stable"]))
            check_split(g, cert)
        tseq = None
        if "threshold_sequence" in obj:
            tseq = ThresholdSeq(tuple(obj["threshold_sequence"]), tuple(obj.get("threshold_order", ())))
            if build_threshold(tseq) != g:
                raise GraphFileError("threshold_sequence does not build the listed edges")
    except (KeyError, TypeError, ValueError, GraphError) as exc:
        raise GraphFileError(f"invalid graph JSON: {exc}") from exc
    return g, cert, tseq


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFileError("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
        return Graph.from_edges(n, edges)
    except (ValueError, GraphError) as exc:
        raise GraphFileError(f"invalid edge list: {exc}") from exc


def load_graph(path: str | Path) -> tuple[Graph, SplitCert | None, ThresholdSeq | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFileError(str(exc)) from exc
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFileError(f"invalid JSON: {exc}") from exc
        return graph_from_json(obj)
    return parse_edge_list(text), None, None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def dumps_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
