"""Brute-force reference implementations.

Everything here is deliberately naive and shares no code with the
optimized modules apart from the domain types, so it can be used to check
them.  Enumeration limits are hard caps that raise :class:`OracleLimitError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import LabeledDag
from .mems import NodeMem, StringMem


class OracleLimitError(RuntimeError):
    pass


MAX_BRUTE_ANCHORS = 12


# -- strings ------------------------------------------------------------------------


def lcs_dp(a: str, b: str) -> int:
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for jb, cb in enumerate(b):
            cur.append(prev[jb] + 1 if ca == cb else max(prev[jb + 1], cur[jb]))
        prev = cur
    return prev[-1]


def brute_string_mems(q: str, t: str) -> list[StringMem]:
    """Maximal runs along every diagonal of the match matrix."""
    out = []
    for d in range(-(len(t) - 1), len(q)):
        # positions (a, b) with a - b = d, 0-based
        a = max(d, 0)
        b = a - d
        run = 0
        while a < len(q) and b < len(t):
            if q[a] == t[b]:
                run += 1
            else:
                if run:
                    out.append(StringMem(a - run + 1, b - run + 1, run))
                run = 0
            a += 1
            b += 1
        if run:
            out.append(StringMem(a - run + 1, b - run + 1, run))
    return sorted(out)


def brute_node_mems(dag: LabeledDag, q: str) -> list[NodeMem]:
    out = []
    for v in dag.nodes:
        for a in brute_string_mems(q, dag.label(v)):
            out.append(NodeMem(a.x, a.x + a.length - 1, v, a.i, a.i + a.length - 1))
    return out


def anchor_restricted_lcs(q: str, t: str, anchors) -> int:
    """LCS where each character match must lie on an anchor, at the anchor's offset."""
    supported = set()
    for x, i, k in anchors:
        for o in range(k):
            supported.add((x + o, i + o))
    m, n = len(q), len(t)
    dp = [[0] * (n + 1) for _ in range(m + 1)]
    for a in range(1, m + 1):
        for b in range(1, n + 1):
            best = max(dp[a - 1][b], dp[a][b - 1])
            if (a, b) in supported and q[a - 1] == t[b - 1]:
                best = max(best, dp[a - 1][b - 1] + 1)
            dp[a][b] = best
    return dp[m][n]


# -- graphs --------------------------------------------------------------------------


def _closure(dag: LabeledDag) -> dict[int, set[int]]:
    # strict reachability by DFS from every node
    reach = {}
    for u in dag.nodes:
        seen = set()
        stack = list(dag.succ[u])
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(dag.succ[w])
        reach[u] = seen
    return reach


def source_sink_paths(dag: LabeledDag, path_limit: int = 100_000) -> list[list[int]]:
    out: list[list[int]] = []

    def walk(path):
        v = path[-1]
        if not dag.succ[v]:
            out.append(list(path))
            if len(out) > path_limit:
                raise OracleLimitError(f"more than {path_limit} source-to-sink paths")
            return
        for w in dag.succ[v]:
            path.append(w)
            walk(path)
            path.pop()

    for v in dag.nodes:
        if not dag.pred[v]:
            walk([v])
    return out


def all_paths(dag: LabeledDag, max_span: int) -> list[tuple[int, ...]]:
    out = []

    def walk(path):
        out.append(tuple(path))
        if len(path) < max_span:
            for w in dag.succ[path[-1]]:
                path.append(w)
                walk(path)
                path.pop()

    for v in dag.nodes:
        walk([v])
    return out


def graph_lcs_bruteforce(dag: LabeledDag, q: str, path_limit: int = 100_000) -> int:
    return max(lcs_dp(q, "".join(dag.label(v) for v in p)) for p in source_sink_paths(dag, path_limit))


def brute_extensions(dag: LabeledDag, i: int, path, j: int) -> tuple[set[str], set[str]]:
    """Extension sets read off the labels of all source-to-sink paths containing ``path``."""
    path = list(path)
    left, right = set(), set()
    for full in source_sink_paths(dag):
        for s in range(len(full) - len(path) + 1):
            if full[s : s + len(path)] != path:
                continue
            text = "".join(dag.label(v) for v in full)
            before = sum(len(dag.label(v)) for v in full[:s])
            start = before + i - 1
            end = before + sum(len(dag.label(v)) for v in path[:-1]) + j - 1
            if start > 0:
                left.add(text[start - 1])
            if end + 1 < len(text):
                right.add(text[end + 1])
    return left, right


@dataclass(frozen=True)
class GraphMem:
    x: int
    y: int
    i: int
    path: tuple[int, ...]
    j: int


def enumerate_graph_mems(dag: LabeledDag, q: str, max_span: int = 4) -> list[GraphMem]:
    """All MEMs (graph definition) whose path has at most ``max_span`` nodes."""
    out = []
    m = len(q)
    for path in all_paths(dag, max_span):
        labels = [dag.label(v) for v in path]
        text = "".join(labels)
        last_start = len(text) - len(labels[-1])
        for i in range(1, len(labels[0]) + 1):
            for x in range(1, m + 1):
                # extend Q[x..] against text[i-1..] and record ends inside the last node
                a, b = x - 1, i - 1
                while a < m and b < len(text) and q[a] == text[b]:
                    if b >= last_start:
                        j = b - last_start + 1
                        y = a + 1
                        if _is_graph_mem(dag, q, x, y, i, path, j):
                            out.append(GraphMem(x, y, i, path, j))
                    a += 1
                    b += 1
    return out


def _is_graph_mem(dag, q, x, y, i, path, j) -> bool:
    first, last = path[0], path[-1]
    if i > 1:
        left = {dag.label(first)[i - 2]}
    else:
        left = {dag.label(u)[-1] for u in dag.pred[first]}
    if j < len(dag.label(last)):
        right = {dag.label(last)[j]}
    else:
        right = {dag.label(w)[0] for w in dag.succ[last]}
    left_max = x == 1 or not left or q[x - 2] not in left
    right_max = y == len(q) or not right or q[y] not in right
    return (left_max or len(left) >= 2) and (right_max or len(right) >= 2)


@dataclass
class DecompositionReport:
    graph_mems: int = 0
    node_mems: int = 0
    encoding_length: int = 0
    failures: list = field(default_factory=list)

    @property
    def compact(self) -> bool:
        return self.node_mems <= self.encoding_length

    @property
    def ok(self) -> bool:
        return not self.failures and self.compact


def split_at_nodes(dag: LabeledDag, gm: GraphMem) -> list[NodeMem]:
    """Cut a graph match at node boundaries into single-node pieces."""
    pieces = []
    x = gm.x
    for idx, v in enumerate(gm.path):
        start = gm.i if idx == 0 else 1
        end = gm.j if idx == len(gm.path) - 1 else len(dag.label(v))
        length = end - start + 1
        pieces.append(NodeMem(x, x + length - 1, v, start, end))
        x += length
    return pieces


def concatenable(dag: LabeledDag, a: NodeMem, b: NodeMem) -> bool:
    if b.x != a.y + 1:
        return False
    if b.node in dag.succ[a.node] and a.j == len(dag.label(a.node)) and b.i == 1:
        return True
    return a.node == b.node and b.i == a.j + 1


def check_perfect_chain_decomposition(
    dag: LabeledDag, q: str, node_mems, max_span: int = 4, count_span: int | None = None
) -> DecompositionReport:
    """Every graph MEM must be a perfect chain of the given node MEMs.

    ``count_span`` bounds the graph MEMs used for the ``|A| <= ||M||`` count
    (defaults to ``|V|``, i.e. all of them).
    """
    available = set(node_mems)
    report = DecompositionReport(node_mems=len(available))
    for gm in enumerate_graph_mems(dag, q, max_span):
        report.graph_mems += 1
        pieces = split_at_nodes(dag, gm)
        if not all(p in available for p in pieces):
            report.failures.append((gm, "piece is not a node MEM"))
        elif not all(concatenable(dag, a, b) for a, b in zip(pieces, pieces[1:])):
            report.failures.append((gm, "pieces do not concatenate"))
    span = dag.num_nodes if count_span is None else count_span
    report.encoding_length = sum(len(gm.path) for gm in enumerate_graph_mems(dag, q, span))
    return report


# -- path cover ----------------------------------------------------------------------


def width_bruteforce(dag: LabeledDag) -> int:
    """Largest antichain of the reachability order (= minimum path cover size)."""
    reach = _closure(dag)
    nodes = list(dag.nodes)
    for size in range(len(nodes), 0, -1):
        for combo in combinations(nodes, size):
            if all(b not in reach[a] and a not in reach[b] for a, b in combinations(combo, 2)):
                return size
    return 0


def forward_links_bruteforce(dag: LabeledDag, paths) -> dict[int, set[tuple[int, int]]]:
    reach = _closure(dag)
    forward: dict[int, set[tuple[int, int]]] = {v: set() for v in dag.nodes}
    for w in dag.nodes:
        for k, path in enumerate(paths):
            for u in reversed(path):
                if u != w and w in reach[u]:
                    forward[u].add((w, k))
                    break
    return forward


# -- chains ---------------------------------------------------------------------------

STRING = "string-symmetric"
ASYM = "asymmetric"
SYM = "graph-symmetric"


def _string_objective(chain):
    total = 0
    for l, (x, i, k) in enumerate(chain):
        if l + 1 == len(chain):
            total += k
        else:
            x2, i2, _ = chain[l + 1]
            total += max(0, min(min(i2, i + k) - i, min(x2, x + k) - x))
    return total


def _sym_objective(chain):
    total = 0
    for l, a in enumerate(chain):
        k = a.y - a.x + 1
        if l + 1 == len(chain):
            total += k
            continue
        b = chain[l + 1]
        in_q = min(b.x, a.x + k) - a.x
        in_g = min(b.i, a.i + k) - a.i if a.node == b.node else k
        total += max(0, min(in_q, in_g))
    return total


def _asym_objective(chain):
    covered = set()
    for a in chain:
        covered.update(range(a.x, a.y + 1))
    return len(covered)


def best_chain_bruteforce(anchors, mode: str, dag: LabeledDag | None = None) -> int:
    """Best objective over every chain (ordered anchor subset) valid for ``mode``."""
    anchors = list(anchors)
    if len(anchors) > MAX_BRUTE_ANCHORS:
        raise OracleLimitError(f"at most {MAX_BRUTE_ANCHORS} anchors, got {len(anchors)}")
    if mode == STRING:
        anchors = [StringMem(*a) for a in anchors]

        def precedes(a, b):
            return a.x <= b.x and a.i <= b.i

        objective = _string_objective
    else:
        if dag is None:
            raise ValueError("graph modes need the dag")
        anchors = [NodeMem(*a) for a in anchors]
        reach = _closure(dag)
        if mode == ASYM:

            def precedes(a, b):
                return a.x <= b.x and b.node in reach[a.node]

            objective = _asym_objective
        elif mode == SYM:

            def precedes(a, b):
                if a.x > b.x:
                    return False
                return b.node in reach[a.node] or (a.node == b.node and a.i <= b.i)

            objective = _sym_objective
        else:
            raise ValueError(f"unknown mode {mode!r}")

    best = 0
    chain: list = []
    used = [False] * len(anchors)

    def extend():
        nonlocal best
        best = max(best, objective(chain))
        for b, anc in enumerate(anchors):
            # an anchor followed by one with the same start contributes
            # nothing, so such chains are never better than the shorter one
            if chain and (chain[-1].x, chain[-1].i) == (anc.x, anc.i):
                continue
            if not used[b] and (not chain or precedes(chain[-1], anc)):
                used[b] = True
                chain.append(anc)
                extend()
                chain.pop()
                used[b] = False

    extend()
    return best
