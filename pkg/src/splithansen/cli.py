"""Command-line front end.

Exit codes: 0 pass, 1 usage or parse error, 2 identity failure, 3 face budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable

from . import corpus, io
from .faces import DEFAULT_BUDGET, FaceBudgetExceeded, census
from .graph import (
    Graph,
    GraphError,
    SplitCert,
    ThresholdSeq,
    build_threshold,
    format_nodes,
    ltimes,
    random_split,
    random_threshold,
    recognize_split,
    recognize_threshold,
)
from .hanner import hanner_from_threshold
from .hansen import NotCertifiedError, incidence
from .partitions import count_pg, count_pi, verify_main_theorem

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means "identity failure" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(io.dumps(report))
    else:
        print("\n".join(lines))


def _graph_desc(g: Graph, cert: SplitCert | None) -> dict:
    return io.graph_to_json(g, cert)


def _load(args) -> tuple[Graph, SplitCert | None]:
    g, cert, _ = io.load_graph(args.graph)
    if cert is None:
        cert = recognize_split(g)
    if cert is None and not args.assume_perfect:
        raise UsageError("graph is not split; rerun with --assume-perfect if it is perfect")
    return g, cert


def _need_cert(cert: SplitCert | None) -> SplitCert:
    if cert is None:
        raise UsageError("this command needs a split graph (a clique/stable partition)")
    return cert


def _base_report(args, g: Graph, cert: SplitCert | None) -> dict:
    return {"command": args.echo, "graph": _graph_desc(g, cert), "d": g.n + 1}


def cmd_count(args) -> int:
    g, cert = _load(args)
    inc = incidence(g, assume_perfect=True)
    faces = census(inc, with_fvec=args.f_vector, budget=args.budget)
    report = _base_report(args, g, cert)
    report.update(s=faces.total, vertices=inc.nv, facets=inc.nf)
    lines = [f"d={g.n + 1} vertices={inc.nv} facets={inc.nf}", f"s={faces.total}"]
    if args.f_vector:
        report["f_vector"] = faces.fvec
        lines.append(f"f_vector={faces.fvec}")
    report["wall_time_s"] = round(time.perf_counter() - args.t0, 6)
    _emit(args, report, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    g, cert = _load(args)
    cert = _need_cert(cert)
    inc = incidence(g)
    faces = census(inc, cert, with_fvec=args.f_vector, budget=args.budget)
    report = _base_report(args, g, cert)
    report.update(s=faces.total, classes=faces.by_class)
    lines = [
        f"clique={format_nodes(cert.clique)} stable={format_nodes(cert.stable)}",
        f"s={faces.total}",
    ] + [f"{k}={v}" for k, v in faces.by_class.items()]
    if args.f_vector:
        report["f_vector"] = faces.fvec
        lines.append(f"f_vector={faces.fvec}")
    report["wall_time_s"] = round(time.perf_counter() - args.t0, 6)
    _emit(args, report, lines)
    return EXIT_OK


def cmd_pg(args) -> int:
    g, cert = _load(args)
    cert = _need_cert(cert)
    pg = count_pg(g, cert)
    pia, pib = count_pi(g, cert, "A"), count_pi(g, cert, "B")
    report = _base_report(args, g, cert)
    report.update(p_g=pg, pi_a=pia, pi_b=pib, threshold=recognize_threshold(g) is not None)
    report["wall_time_s"] = round(time.perf_counter() - args.t0, 6)
    _emit(args, report, [f"p_G={pg}", f"|Pi_A|={pia}", f"|Pi_B|={pib}"])
    return EXIT_OK


def _verify_one(args, g: Graph, cert: SplitCert) -> dict:
    result = verify_main_theorem(g, cert, budget=args.budget)
    report = _base_report(args, g, cert)
    report.update(
        s=result["s"],
        p_g=result["p_g"],
        pi_a=result["pi_a"],
        pi_b=result["pi_b"],
        classes=result["classes"],
        identities=result["identities"],
        **{"pass": result["pass"]},
    )
    if args.f_vector:
        report["f_vector"] = census(incidence(g), with_fvec=True, budget=args.budget).fvec
    return report


def _verify_lines(report: dict) -> list[str]:
    status = "PASS" if report["pass"] else "FAIL"
    lines = [f"{status} d={report['d']} s={report['s']} p_G={report['p_g']}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in report["identities"].items()]
    return lines


def cmd_verify(args) -> int:
    if args.threshold_sweep is not None:
        graphs = _threshold_graphs(args.threshold_sweep)
        reports = [_verify_one(args, g, recognize_split(g)) for g in graphs]
        ok = all(r["pass"] and r["p_g"] == 0 for r in reports)
        summary = {
            "command": args.echo,
            "graphs": len(reports),
            "failures": sum(not (r["pass"] and r["p_g"] == 0) for r in reports),
            "pass": ok,
            "wall_time_s": round(time.perf_counter() - args.t0, 6),
        }
        lines = [f"threshold graphs on <= {args.threshold_sweep} nodes: {len(reports)}"]
        lines.append(f"{'PASS' if ok else 'FAIL'} failures={summary['failures']}")
        _emit(args, summary, lines)
        return EXIT_OK if ok else EXIT_FAIL
    if args.graph is None:
        raise UsageError("verify needs a graph file or --threshold-sweep")
    g, cert = _load(args)
    report = _verify_one(args, g, _need_cert(cert))
    report["wall_time_s"] = round(time.perf_counter() - args.t0, 6)
    _emit(args, report, _verify_lines(report))
    return EXIT_OK if report["pass"] else EXIT_FAIL


def _threshold_graphs(max_nodes: int) -> list[Graph]:
    seen = {}
    for n in range(max_nodes + 1):
        for bits in range(1 << n):
            seq = ThresholdSeq(tuple("D" if bits >> i & 1 else "I" for i in range(n)))
            g = build_threshold(seq)
            seen.setdefault((n, corpus.canonical_code(g)), g)
    return [seen[k] for k in sorted(seen)]


P4_CERT = SplitCert(0b0110, 0b1001)


def cmd_series(args) -> int:
    m = args.p4_ltimes_t
    if m < 0:
        raise UsageError("m must be nonnegative")
    base_seed = args.t_seed if args.t_seed is not None else args.seed
    p4 = Graph.path(4)
    rows = []
    for trial in range(args.trials):
        t, tseq = random_threshold(m, base_seed + trial)
        g, cert = ltimes(p4, P4_CERT, t, tseq)
        s = census(incidence(g), budget=args.budget).total
        predicted = 3 ** (m + 5) + 16
        rows.append(
            {"t_seed": base_seed + trial, "t_sequence": str(tseq), "s": s, "predicted": predicted,
             "p_g": count_pg(g, cert), "pass": s == predicted}
        )
    ok = all(r["pass"] for r in rows)
    report = {"command": args.echo, "m": m, "d": m + 5, "trials": rows, "pass": ok,
              "wall_time_s": round(time.perf_counter() - args.t0, 6)}
    lines = [
        f"{'PASS' if r['pass'] else 'FAIL'} m={m} T={r['t_sequence'] or '-'} s={r['s']} "
        f"predicted=3^{m + 5}+16={r['predicted']}"
        for r in rows
    ]
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    k = args.max_nodes
    if not 0 <= k <= corpus.MAX_EXHAUSTIVE_NODES:
        raise UsageError(f"--max-nodes must lie in 0..{corpus.MAX_EXHAUSTIVE_NODES}")
    items = [(g, recognize_split(g), "exhaustive") for g in corpus.split_graphs_upto(k)]
    if args.random:
        items += [
            (g, cert, "random")
            for g, cert, _ in corpus.random_split_corpus(args.random, max(k, 1), args.seed)
        ]
    failures = 0
    for g, cert, origin in items:
        s = census(incidence(g), budget=args.budget).total
        d = g.n + 1
        pg = count_pg(g, cert)
        ok = s >= 3**d and s == 3**d + pg
        failures += not ok
        row = {"graph": io.graph_to_json(g, cert), "origin": origin, "d": d, "s": s, "p_g": pg, "pass": ok}
        if args.json:
            print(io.dumps_line(row))
        else:
            print(f"{'PASS' if ok else 'FAIL'} n={g.n} e={g.edge_count()} d={d} s={s} p_G={pg}")
    summary = {"command": args.echo, "graphs": len(items), "failures": failures, "pass": failures == 0,
               "wall_time_s": round(time.perf_counter() - args.t0, 6)}
    if args.json:
        print(io.dumps_line(summary))
    else:
        print(f"summary: graphs={len(items)} failures={failures} {'PASS' if failures == 0 else 'FAIL'}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_hanner_check(args) -> int:
    if args.seq is not None:
        seqs = [ThresholdSeq.parse(args.seq)]
    else:
        seqs = [
            ThresholdSeq(tuple("D" if bits >> i & 1 else "I" for i in range(n)))
            for n in range(args.max_len + 1)
            for bits in range(1 << n)
        ]
    rows = []
    for seq in seqs:
        predicted = hanner_from_threshold(seq)
        faces = census(incidence(build_threshold(seq)), with_fvec=True, budget=args.budget)
        ok = list(predicted.counts) == faces.fvec and faces.total == 3 ** (len(seq) + 1)
        rows.append({"sequence": str(seq), "hanner": list(predicted.counts), "enumerated": faces.fvec,
                     "s": faces.total, "pass": ok})
    ok = all(r["pass"] for r in rows)
    report = {"command": args.echo, "checked": len(rows), "results": rows, "pass": ok,
              "wall_time_s": round(time.perf_counter() - args.t0, 6)}
    lines = [f"{'PASS' if r['pass'] else 'FAIL'} {r['sequence'] or '-'} f={r['enumerated']}" for r in rows]
    lines.append(f"checked={len(rows)} {'PASS' if ok else 'FAIL'}")
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.threshold is not None:
        g, tseq = random_threshold(args.threshold, args.seed)
        obj = io.graph_to_json(g, recognize_split(g), tseq)
    else:
        g, cert = random_split(args.k, args.l, args.p, args.seed)
        obj = io.graph_to_json(g, cert)
    text = io.dumps(obj)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="face-count budget")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--assume-perfect", action="store_true",
                        help="accept a non-split graph as perfect")
    common.add_argument("--f-vector", action="store_true", help="also compute the f-vector")

    parser = _Parser(prog="splithansen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_: str, graph: str | None = "required"):
        p = sub.add_parser(name, parents=[common], help=help_)
        if graph == "required":
            p.add_argument("graph", help="graph file (JSON or edge list)")
        elif graph == "optional":
            p.add_argument("graph", nargs="?", help="graph file (JSON or edge list)")
        p.set_defaults(func=func)
        return p

    add("count", cmd_count, "count nonempty faces of H(G)")
    add("classify", cmd_classify, "count primitive/positive/negative/small faces")
    add("pg", cmd_pg, "compute p_G and the Pi_A, Pi_B counts")
    p = add("verify", cmd_verify, "check every counting identity", graph="optional")
    p.add_argument("--threshold-sweep", type=int, metavar="K",
                   help="verify all threshold graphs on <= K nodes instead of a file")
    p = add("series", cmd_series, "P_4 joined with random threshold graphs", graph=None)
    p.add_argument("--p4-ltimes-t", type=int, required=True, metavar="M")
    p.add_argument("--t-seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=1)
    p = add("sweep", cmd_sweep, "exhaustive sweep over split graphs", graph=None)
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--random", type=int, default=0, metavar="N", help="add N seeded random split graphs")
    p = add("hanner-check", cmd_hanner_check, "compare Hanner f-vectors with enumeration", graph=None)
    p.add_argument("--seq", help="threshold sequence such as IID")
    p.add_argument("--max-len", type=int, default=5)
    p = add("gen", cmd_gen, "generate a random split or threshold graph", graph=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--threshold", type=int, metavar="M")
    p.add_argument("-o", "--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.echo = ["splithansen", *argv]
    args.t0 = time.perf_counter()
    try:
        return args.func(args)
    except FaceBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, io.GraphFileError, NotCertifiedError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
