"""Node-labeled DAGs, query sequences and graph substrings.

Node ids are densified to ``1..|V|`` in input order; the original string ids
are kept in ``LabeledDag.names`` and used for all external I/O.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

# Reserved separator between node labels in the concatenated node text.
# It may never occur in a label or in a query.
DELIMITER = "\x00"


class GraphError(ValueError):
    """Raised for malformed or invalid graph input."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}:"
        if line is not None:
            prefix += f"{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


@dataclass(frozen=True)
class Query:
    name: str
    sequence: str

    def __post_init__(self):
        if not self.sequence:
            raise ValueError(f"query {self.name!r} is empty")
        if DELIMITER in self.sequence:
            raise ValueError(f"query {self.name!r} contains the reserved delimiter")

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True)
class GraphSubstring:
    """The triple ``(i, path, j)``: ``label(path[0])[i..]`` through ``label(path[-1])[..j]``."""

    i: int
    path: tuple[int, ...]
    j: int


@dataclass(frozen=True, eq=False)
class LabeledDag:
    """Immutable node-labeled DAG.

    ``labels[v - 1]`` is the label of node ``v``. Build instances with
    :meth:`from_edges` (validating) rather than the raw constructor.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...]
    succ: tuple[tuple[int, ...], ...] = field(repr=False)
    pred: tuple[tuple[int, ...], ...] = field(repr=False)
    order: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_edges(
        cls,
        labels: Sequence[str],
        edges: Iterable[tuple[int, int]],
        names: Sequence[str] | None = None,
    ) -> "LabeledDag":
        labels = tuple(labels)
        n = len(labels)
        if n == 0:
            raise GraphError("graph has no nodes")
        if names is None:
            names = tuple(str(v) for v in range(1, n + 1))
        names = tuple(names)
        if len(names) != n:
            raise GraphError("names and labels differ in length")
        for v, label in enumerate(labels, 1):
            if not label:
                raise GraphError(f"empty label on node {names[v - 1]}")
            if DELIMITER in label:
                raise GraphError(f"label of node {names[v - 1]} contains the reserved delimiter")

        edge_list = []
        seen = set()
        succ: list[list[int]] = [[] for _ in range(n + 1)]
        pred: list[list[int]] = [[] for _ in range(n + 1)]
        for u, w in edges:
            if not (1 <= u <= n and 1 <= w <= n):
                raise GraphError(f"edge ({u}, {w}) references an unknown node")
            if u == w:
                raise GraphError(f"self-loop on node {names[u - 1]}: cycle detected")
            if (u, w) in seen:
                raise GraphError(f"duplicate edge {names[u - 1]} -> {names[w - 1]}")
            seen.add((u, w))
            edge_list.append((u, w))
            succ[u].append(w)
            pred[w].append(u)
        for lst in succ:
            lst.sort()
        for lst in pred:
            lst.sort()

        order = _kahn(n, succ, pred)
        if order is None:
            raise GraphError("cycle detected")
        return cls(
            labels=labels,
            edges=tuple(edge_list),
            names=names,
            succ=tuple(tuple(s) for s in succ),
            pred=tuple(tuple(p) for p in pred),
            order=tuple(order),
        )

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def nodes(self) -> range:
        return range(1, len(self.labels) + 1)

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.labels)

    def label(self, v: int) -> str:
        return self.labels[v - 1]

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.succ[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.pred[v]

    def alphabet(self) -> set[str]:
        return set("".join(self.labels))

    def node_id(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise KeyError(name) from None

    def path_label(self, path: Sequence[int]) -> str:
        return "".join(self.labels[v - 1] for v in path)

    def is_path(self, path: Sequence[int]) -> bool:
        if not path or any(not 1 <= v <= self.num_nodes for v in path):
            return False
        return all(b in self.succ[a] for a, b in zip(path, path[1:]))


def _kahn(n: int, succ, pred) -> list[int] | None:
    indeg = [0] + [len(pred[v]) for v in range(1, n + 1)]
    heap = [v for v in range(1, n + 1) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == n else None


def topological_order(dag: LabeledDag) -> list[int]:
    """Topological order, ties broken by smallest node id."""
    return list(dag.order)


def topological_rank(dag: LabeledDag) -> list[int]:
    """``rank[v]`` is the position of ``v`` in :func:`topological_order` (index 0 unused)."""
    rank = [0] * (dag.num_nodes + 1)
    for r, v in enumerate(dag.order):
        rank[v] = r
    return rank


def reachability(dag: LabeledDag) -> list[set[int]]:
    """``reach[u]`` = nodes strictly reachable from ``u`` (index 0 unused)."""
    reach: list[set[int]] = [set() for _ in range(dag.num_nodes + 1)]
    for u in reversed(dag.order):
        for w in dag.succ[u]:
            reach[u].add(w)
            reach[u] |= reach[w]
    return reach


def validate_substring(dag: LabeledDag, gs: GraphSubstring) -> None:
    if not dag.is_path(gs.path):
        raise ValueError(f"{gs.path} is not a path of the graph")
    first, last = gs.path[0], gs.path[-1]
    if not 1 <= gs.i <= len(dag.label(first)):
        raise ValueError(f"start offset {gs.i} outside node {first}")
    if not 1 <= gs.j <= len(dag.label(last)):
        raise ValueError(f"end offset {gs.j} outside node {last}")
    if len(gs.path) == 1 and gs.i > gs.j:
        raise ValueError("start offset after end offset on a single-node substring")


def extensions(dag: LabeledDag, gs: GraphSubstring) -> tuple[set[str], set[str]]:
    """Left and right extension symbol sets of a graph substring."""
    validate_substring(dag, gs)
    first, last = gs.path[0], gs.path[-1]
    if gs.i > 1:
        left = {dag.label(first)[gs.i - 2]}
    else:
        left = {dag.label(u)[-1] for u in dag.pred[first]}
    if gs.j < len(dag.label(last)):
        right = {dag.label(last)[gs.j]}
    else:
        right = {dag.label(w)[0] for w in dag.succ[last]}
    return left, right


def substring_label(dag: LabeledDag, gs: GraphSubstring) -> str:
    if len(gs.path) == 1:
        return dag.label(gs.path[0])[gs.i - 1 : gs.j]
    inner = "".join(dag.label(v) for v in gs.path[1:-1])
    return dag.label(gs.path[0])[gs.i - 1 :] + inner + dag.label(gs.path[-1])[: gs.j]


# -- parsing ---------------------------------------------------------------


def parse_graph(text: str, format: str = "gfa", source: str | None = None) -> LabeledDag:
    if format == "gfa":
        return _parse_gfa(text, source)
    if format == "tsv":
        return _parse_tsv(text, source)
    raise ValueError(f"unknown graph format {format!r}")


def _build(names, labels, raw_edges, source) -> LabeledDag:
    index = {name: k for k, name in enumerate(names, 1)}
    edges = []
    for lineno, a, b in raw_edges:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise GraphError(f"edge references unknown node {missing!r}", lineno, source)
        edges.append((index[a], index[b]))
    try:
        return LabeledDag.from_edges(labels, edges, names)
    except GraphError as exc:
        raise GraphError(str(exc), None, source) from None


def _check_label(label: str, name: str, lineno: int, source):
    if not label or label == "*":
        raise GraphError(f"empty label on node {name!r}", lineno, source)
    if DELIMITER in label:
        raise GraphError(f"label of node {name!r} contains the reserved delimiter", lineno, source)


def _parse_gfa(text: str, source) -> LabeledDag:
    names: list[str] = []
    labels: list[str] = []
    seen: set[str] = set()
    raw_edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\r\n").split("\t")
        kind = cols[0]
        if kind == "H":
            continue
        if kind == "S":
            if len(cols) < 2:
                raise GraphError("S-line without segment id", lineno, source)
            name = cols[1]
            label = cols[2] if len(cols) > 2 else ""
            if name in seen:
                raise GraphError(f"duplicate segment id {name!r}", lineno, source)
            _check_label(label, name, lineno, source)
            seen.add(name)
            names.append(name)
            labels.append(label)
        elif kind == "L":
            if len(cols) < 6:
                raise GraphError("L-line needs 6 columns", lineno, source)
            _, a, oa, b, ob, overlap = cols[:6]
            if oa != "+" or ob != "+":
                raise GraphError("only '+' orientations are supported", lineno, source)
            if overlap not in ("0M", "*"):
                raise GraphError(f"unsupported overlap {overlap!r} (only 0M)", lineno, source)
            raw_edges.append((lineno, a, b))
        else:
            raise GraphError(f"unsupported GFA record type {kind!r}", lineno, source)
    return _build(names, labels, raw_edges, source)


def _parse_tsv(text: str, source) -> LabeledDag:
    names: list[str] = []
    labels: list[str] = []
    seen: set[str] = set()
    raw_edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\r\n").split("\t")
        kind = cols[0]
        if kind == "N":
            if len(cols) < 2:
                raise GraphError("N-line without node id", lineno, source)
            name = cols[1]
            label = cols[2] if len(cols) > 2 else ""
            if name in seen:
                raise GraphError(f"duplicate node id {name!r}", lineno, source)
            _check_label(label, name, lineno, source)
            seen.add(name)
            names.append(name)
            labels.append(label)
        elif kind == "E":
            if len(cols) != 3:
                raise GraphError("E-line needs 3 columns", lineno, source)
            raw_edges.append((lineno, cols[1], cols[2]))
        else:
            raise GraphError(f"unknown record type {kind!r}", lineno, source)
    return _build(names, labels, raw_edges, source)


def to_tsv(dag: LabeledDag) -> str:
    lines = [f"N\t{name}\t{label}" for name, label in zip(dag.names, dag.labels)]
    lines += [f"E\t{dag.names[u - 1]}\t{dag.names[w - 1]}" for u, w in dag.edges]
    return "\n".join(lines) + "\n"


def to_gfa(dag: LabeledDag) -> str:
    lines = [f"S\t{name}\t{label}" for name, label in zip(dag.names, dag.labels)]
    lines += [f"L\t{dag.names[u - 1]}\t+\t{dag.names[w - 1]}\t+\t0M" for u, w in dag.edges]
    return "\n".join(lines) + "\n"


def parse_fasta(text: str, source: str | None = None) -> Iterator[Query]:
    name = None
    chunks: list[str] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if name is not None:
                yield _make_query(name, chunks, lineno, source)
            name = line[1:].split()[0] if len(line) > 1 else ""
            chunks = []
        else:
            if name is None:
                raise GraphError("sequence data before the first '>' header", lineno, source)
            chunks.append(line)
    if name is not None:
        yield _make_query(name, chunks, None, source)


def _make_query(name, chunks, lineno, source) -> Query:
    try:
        return Query(name, "".join(chunks))
    except ValueError as exc:
        raise GraphError(str(exc), lineno, source) from None
