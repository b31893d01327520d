"""Command-line front end: ``graphchain {mems,cover,chain,lcs,verify}``.

Exit status: 0 on success, 1 on input errors, 2 when a verification suite fails.
Queries are processed one at a time and results are written in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator, TextIO

from .chaining import chain_dag_asymmetric, chain_dag_symmetric
from .cover import build_cover
from .graph import GraphError, LabeledDag, Query, parse_fasta, parse_graph
from .mems import find_node_mems, format_anchors, read_anchors
from .verify import SUITES, run_suite

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str, fmt: str) -> LabeledDag:
    return parse_graph(_read(path), fmt, source=path)


def load_queries(path: str) -> Iterator[Query]:
    yield from parse_fasta(_read(path), source=path)


def load_cover(path: str, dag: LabeledDag) -> list[list[int]]:
    index = {name: v for v, name in enumerate(dag.names, 1)}
    paths = []
    for lineno, line in enumerate(_read(path).splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            paths.append([index[name] for name in line.split()])
        except KeyError as exc:
            raise InputError(f"{path}:{lineno}: unknown node {exc.args[0]!r}") from None
    return paths


def format_cover(paths, dag: LabeledDag) -> str:
    return "".join(" ".join(dag.names[v - 1] for v in p) + "\n" for p in paths)


def split_anchor_blocks(text: str) -> dict[str | None, str]:
    """Split anchor TSV at ``# query NAME`` headers; unlabeled text maps to ``None``."""
    blocks: dict[str | None, list[str]] = {}
    current: str | None = None
    for line in text.splitlines():
        if line.startswith("# query "):
            current = line[len("# query ") :].strip()
            blocks.setdefault(current, [])
        else:
            blocks.setdefault(current, []).append(line)
    return {k: "\n".join(v) for k, v in blocks.items()}


def chain_record(query: Query, res, dag: LabeledDag, mode: str) -> dict:
    return {
        "schema": SCHEMA,
        "query": query.name,
        "mode": mode,
        "coverage": res.coverage,
        "chain": [
            {"x": a.x, "y": a.y, "node": dag.names[a.node - 1], "i": a.i, "j": a.j, "contribution": c}
            for a, c in zip(res.anchors, res.contributions)
        ],
        "induced": res.induced,
    }


def _emit_json(out: TextIO, record: dict) -> None:
    out.write(json.dumps(record, separators=(",", ":")) + "\n")


# -- subcommands ------------------------------------------------------------------


def cmd_mems(args, out: TextIO) -> int:
    dag = load_graph(args.graph, args.format)
    for q in load_queries(args.query):
        mems = find_node_mems(dag, q, args.min_mem_length or 1)
        if args.out == "json":
            anchors = [
                {"x": a.x, "y": a.y, "node": dag.names[a.node - 1], "i": a.i, "j": a.j} for a in mems
            ]
            _emit_json(out, {"schema": SCHEMA, "query": q.name, "anchors": anchors})
        elif mems:
            out.write(f"# query {q.name}\n")
            out.write(format_anchors(mems, dag))
    return EXIT_OK


def cmd_cover(args, out: TextIO) -> int:
    dag = load_graph(args.graph, args.format)
    cover = build_cover(dag)
    if args.out == "json":
        paths = [[dag.names[v - 1] for v in p] for p in cover.paths]
        _emit_json(out, {"schema": SCHEMA, "width": cover.k, "paths": paths})
    else:
        out.write(format_cover(cover.paths, dag))
    return EXIT_OK


def _cover_for(args, dag):
    return build_cover(dag, load_cover(args.cover, dag) if args.cover else None)


def cmd_chain(args, out: TextIO) -> int:
    dag = load_graph(args.graph, args.format)
    cover = _cover_for(args, dag)
    blocks = split_anchor_blocks(_read(args.anchors)) if args.anchors else None
    chain = chain_dag_symmetric if args.mode == "sym" else chain_dag_asymmetric
    for q in load_queries(args.query):
        if blocks is None:
            anchors = find_node_mems(dag, q, args.min_mem_length or 1)
        else:
            # a query without its own block gets the unlabeled anchors (if any)
            text = blocks.get(q.name, blocks.get(None, ""))
            anchors = read_anchors(text, dag, source=args.anchors)
            if args.min_mem_length:
                anchors = [a for a in anchors if a.length >= args.min_mem_length]
        for a in anchors:
            if a.y > len(q):
                raise InputError(f"{args.anchors}: anchor {a.x}-{a.y} exceeds query {q.name!r}")
        res = chain(dag, cover, anchors, len(q), query=q.sequence)
        if args.out == "json":
            _emit_json(out, chain_record(q, res, dag, args.mode))
        else:
            out.write(f"# query {q.name} coverage {res.coverage}\n")
            for a, c in zip(res.anchors, res.contributions):
                out.write(f"{a.x}\t{a.y}\t{dag.names[a.node - 1]}\t{a.i}\t{a.j}\t{c}\n")
    return EXIT_OK


def cmd_lcs(args, out: TextIO) -> int:
    dag = load_graph(args.graph, args.format)
    cover = _cover_for(args, dag)
    for q in load_queries(args.query):
        res = chain_dag_symmetric(dag, cover, find_node_mems(dag, q), len(q))
        out.write(f"{res.coverage}\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in names:
        for res in run_suite(name, seed=args.seed, scale=args.scale):
            out.write(res.line() + "\n")
            for ex in res.examples:
                out.write(f"  counterexample: {ex!r}\n")
            ok &= res.ok
    return EXIT_OK if ok else EXIT_VERIFY


# -- argument parsing -----------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; status 2 is reserved for failed verification
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphchain", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--graph", required=True, help="graph file (GFA or TSV)")
        sp.add_argument("--format", choices=("gfa", "tsv"), default="gfa")

    def out_arg(sp, default):
        sp.add_argument("--out", choices=("json", "tsv"), default=default)

    sp = sub.add_parser("mems", help="node MEMs of each query")
    graph_args(sp)
    sp.add_argument("--query", required=True, help="FASTA file")
    sp.add_argument("--min-mem-length", type=_positive, default=None)
    out_arg(sp, "tsv")
    sp.set_defaults(func=cmd_mems)

    sp = sub.add_parser("cover", help="minimum path cover")
    graph_args(sp)
    out_arg(sp, "tsv")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("chain", help="optimal chain of each query")
    graph_args(sp)
    sp.add_argument("--query", required=True)
    sp.add_argument("--anchors", help="anchor TSV; node MEMs are computed when omitted")
    sp.add_argument("--mode", choices=("asym", "sym"), default="sym")
    sp.add_argument("--cover", help="path cover file, one path of node ids per line")
    sp.add_argument("--min-mem-length", type=_positive, default=None)
    out_arg(sp, "json")
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("lcs", help="LCS length of each query against the graph")
    graph_args(sp)
    sp.add_argument("--query", required=True)
    sp.add_argument("--cover")
    sp.set_defaults(func=cmd_lcs)

    sp = sub.add_parser("verify", help="randomized checks against brute-force oracles")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0, help="multiplier on the number of cases")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except (InputError, GraphError, ValueError) as exc:
        out.flush()
        print(f"graphchain: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
