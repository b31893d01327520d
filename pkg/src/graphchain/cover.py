"""Minimum path cover of a DAG and forward propagation links.

Path indices are 0-based throughout the Python API.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import LabeledDag, topological_rank


@dataclass(frozen=True)
class PathCoverIndex:
    """Cover paths, per-node path membership and forward links.

    ``paths_of[v]`` are the indices of the paths through ``v``;
    ``forward[u]`` holds ``(w, k)`` when ``u`` is the last node of path ``k``
    that reaches ``w`` with ``u != w``.  Index 0 of both tables is unused.
    """

    paths: tuple[tuple[int, ...], ...]
    paths_of: tuple[tuple[int, ...], ...] = field(repr=False)
    forward: tuple[tuple[tuple[int, int], ...], ...] | None = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.paths)

    def link_count(self) -> int:
        return sum(len(f) for f in self.forward or ())


def validate_cover(dag: LabeledDag, paths: Sequence[Sequence[int]]) -> None:
    covered = set()
    for p in paths:
        if not dag.is_path(p):
            raise ValueError(f"cover path {list(p)} is not a path of the graph")
        covered.update(p)
    missing = set(dag.nodes) - covered
    if missing:
        raise ValueError(f"cover misses nodes {sorted(missing)[:10]}")


def make_cover(dag: LabeledDag, paths: Sequence[Sequence[int]]) -> PathCoverIndex:
    """Index an arbitrary valid cover (not necessarily minimum); forward links not filled."""
    validate_cover(dag, paths)
    paths = tuple(tuple(p) for p in paths)
    member: list[list[int]] = [[] for _ in range(dag.num_nodes + 1)]
    for k, p in enumerate(paths):
        for v in p:
            member[v].append(k)
    return PathCoverIndex(paths, tuple(tuple(m) for m in member))


def _greedy_partition(dag: LabeledDag) -> list[list[int]]:
    # disjoint paths in topological order; extend the path ending at the
    # smallest in-neighbour when one is still open
    open_end: dict[int, int] = {}
    paths: list[list[int]] = []
    for v in dag.order:
        ends = [u for u in dag.pred[v] if u in open_end]
        if ends:
            k = open_end.pop(min(ends))
            paths[k].append(v)
        else:
            k = len(paths)
            paths.append([v])
        open_end[v] = k
    return paths


def min_path_cover(dag: LabeledDag) -> PathCoverIndex:
    """Minimum number of (possibly overlapping) paths covering every node.

    Min-flow on the node-split network with lower bound 1 per node: start
    from the flow of a greedy path partition and cancel flow along
    residual t -> s paths until none is left, then decompose.
    """
    n = dag.num_nodes
    S, T = 0, 1

    def vin(v):
        return 2 * v

    def vout(v):
        return 2 * v + 1

    size = 2 * n + 2
    out_adj: list[list[int]] = [[] for _ in range(size)]
    in_adj: list[list[int]] = [[] for _ in range(size)]
    lower: dict[tuple[int, int], int] = {}
    flow: dict[tuple[int, int], int] = {}

    def add(a, b, lb=0):
        out_adj[a].append(b)
        in_adj[b].append(a)
        lower[a, b] = lb
        flow[a, b] = 0

    for v in range(1, n + 1):
        add(S, vin(v))
        add(vin(v), vout(v), 1)
        add(vout(v), T)
    for u, w in dag.edges:
        add(vout(u), vin(w))
    for lst in out_adj:
        lst.sort()

    for p in _greedy_partition(dag):
        flow[S, vin(p[0])] += 1
        for a, b in zip(p, p[1:]):
            flow[vout(a), vin(b)] += 1
        for v in p:
            flow[vin(v), vout(v)] += 1
        flow[vout(p[-1]), T] += 1

    while True:
        # BFS in the residual network from T towards S
        parent: dict[int, tuple[int, bool]] = {T: (-1, True)}
        dq = deque([T])
        while dq and S not in parent:
            a = dq.popleft()
            for b in out_adj[a]:
                if b not in parent:
                    parent[b] = (a, True)
                    dq.append(b)
            for b in in_adj[a]:
                if b not in parent and flow[b, a] > lower[b, a]:
                    parent[b] = (a, False)
                    dq.append(b)
        if S not in parent:
            break
        b = S
        while b != T:
            a, forward = parent[b]
            if forward:
                flow[a, b] += 1
            else:
                flow[b, a] -= 1
            b = a

    paths = []
    while True:
        nxt = next((b for b in out_adj[S] if flow[S, b] > 0), None)
        if nxt is None:
            break
        flow[S, nxt] -= 1
        path = []
        a = nxt
        while a != T:
            if a % 2 == 0:
                path.append(a // 2)
            b = next(b for b in out_adj[a] if flow[a, b] > 0)
            flow[a, b] -= 1
            a = b
        paths.append(path)
    return make_cover(dag, paths)


def forward_links(dag: LabeledDag, cover: PathCoverIndex) -> PathCoverIndex:
    """Fill ``cover.forward`` by a DP over topological order.

    ``last[w][k]`` is the position on path ``k`` of the last node ``u != w``
    that reaches ``w`` (-1 if none); it is the max over in-neighbours ``u``
    of ``last[u][k]`` and of ``u``'s own position on path ``k``.
    """
    k = cover.k
    n = dag.num_nodes
    position: list[dict[int, int]] = [{v: p for p, v in enumerate(path)} for path in cover.paths]
    last = [[-1] * k for _ in range(n + 1)]
    for w in dag.order:
        row = last[w]
        for u in dag.pred[w]:
            prow = last[u]
            for kk in range(k):
                if prow[kk] > row[kk]:
                    row[kk] = prow[kk]
            for kk in cover.paths_of[u]:
                pu = position[kk][u]
                if pu > row[kk]:
                    row[kk] = pu

    rank = topological_rank(dag)
    forward: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for w in range(1, n + 1):
        for kk, p in enumerate(last[w]):
            if p >= 0:
                forward[cover.paths[kk][p]].append((w, kk))
    for lst in forward:
        lst.sort(key=lambda wk: (rank[wk[0]], wk[1]))
    return PathCoverIndex(cover.paths, cover.paths_of, tuple(tuple(f) for f in forward))


def build_cover(dag: LabeledDag, paths: Sequence[Sequence[int]] | None = None) -> PathCoverIndex:
    """Minimum cover (or the given one) with forward links filled in."""
    cover = min_path_cover(dag) if paths is None else make_cover(dag, paths)
    return forward_links(dag, cover)
