"""Co-linear chaining of exact-match anchors against a string or a DAG.

Three algorithms share one set of score arrays:

* :func:`chain_string_symmetric` -- two strings, overlaps allowed on both sides;
* :func:`chain_dag_asymmetric`   -- query vs DAG, node anchors, overlaps in the query only;
* :func:`chain_dag_symmetric`    -- query vs DAG, node anchors, overlaps inside nodes too.

``C[j]`` is the best coverage of a chain ending with anchor ``j`` and
``Cm[j] = C[j] - len(j)`` the part contributed by its predecessors.  Score
indexes are keyed by query coordinates; the sweep runs along the text (or
along the DAG in topological order and then along each node label).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cover import PathCoverIndex, build_cover
from .graph import LabeledDag, Query, reachability
from .mems import NodeMem, StringMem, find_node_mems
from .score_index import NEG_INF, POS_INF, ScoreIndex

ASYMMETRIC = "asymmetric"
STRING_SYMMETRIC = "string-symmetric"
GRAPH_SYMMETRIC = "graph-symmetric"

SENTINEL = (0, 0)


@dataclass(frozen=True)
class ChainResult:
    """An optimal chain, in chain order.

    ``indices`` point into the anchor list given to the algorithm;
    ``contributions[l]`` is how many leading query characters of anchor
    ``l`` end up in the induced common subsequence.
    """

    indices: tuple[int, ...]
    anchors: tuple
    coverage: int
    contributions: tuple[int, ...]
    mode: str
    induced: str | None = None

    def __len__(self) -> int:
        return len(self.indices)


# -- objective -----------------------------------------------------------------


def coverage_terms(chain: Sequence[StringMem]) -> list[int]:
    """Per-anchor mutual-coverage terms of a weakly ordered string chain."""
    for a, b in zip(chain, chain[1:]):
        if b.x < a.x or b.i < a.i:
            raise ValueError(f"chain not ordered: {a} followed by {b}")
    terms = []
    for l, a in enumerate(chain):
        if l + 1 < len(chain):
            b = chain[l + 1]
            t = min(min(b.i, a.i + a.length) - a.i, min(b.x, a.x + a.length) - a.x)
        else:
            t = a.length
        terms.append(max(0, t))
    return terms


def coverage(chain: Sequence[StringMem]) -> int:
    return sum(coverage_terms(chain))


def node_chain_terms(chain: Sequence[NodeMem], symmetric: bool = True) -> list[int]:
    """Per-anchor terms of a node-anchor chain.

    Symmetric: mutual coverage, where anchors in different nodes never
    overlap in the graph.  Asymmetric: the query prefix up to the next
    anchor's start.
    """
    terms = []
    for l, a in enumerate(chain):
        k = a.length
        if l + 1 < len(chain):
            b = chain[l + 1]
            q_term = min(b.x, a.x + k) - a.x
            if symmetric and b.node == a.node:
                t = min(min(b.i, a.i + k) - a.i, q_term)
            else:
                t = min(k, q_term)
        else:
            t = k
        terms.append(max(0, t))
    return terms


def induced_subsequence(q: str, chain: Sequence, contributions: Sequence[int]) -> str:
    """Concatenate the first ``c`` query characters of each chain anchor."""
    parts = []
    for a, c in zip(chain, contributions):
        length = a.length
        if c > length or c < 0:
            raise ValueError(f"contribution {c} exceeds anchor length {length}")
        parts.append(q[a.x - 1 : a.x - 1 + c])
    return "".join(parts)


# -- shared machinery ------------------------------------------------------------


class _Scores:
    __slots__ = ("C", "Cm", "pred")

    def __init__(self, lengths: Sequence[int]):
        self.C = list(lengths)
        self.Cm = [0] * len(lengths)
        self.pred = [-1] * len(lengths)

    def best(self) -> int:
        C = self.C
        best = 0
        for j in range(1, len(C)):
            if C[j] > C[best]:
                best = j
        return best

    def traceback(self, j: int, xs: Sequence[int]) -> list[int]:
        # A range candidate may come from an anchor p that starts later in
        # the query than j.  Its value Cm[p] - (x_p - x_j) never beats what
        # p's own predecessor offers j, so such pointers are skipped.
        pred = self.pred
        out = []
        while j >= 0:
            out.append(j)
            p = pred[j]
            while p >= 0 and xs[p] > xs[j]:
                p = pred[p]
            j = p
        out.reverse()
        return out


def _events(ids: Sequence[int], starts: Sequence[int], lengths: Sequence[int]) -> list[tuple[int, int, int]]:
    # (coordinate, kind, id); kind 0 = start, 1 = end.  At equal coordinates
    # starts come first: an anchor whose last text symbol is at c still
    # overlaps one starting at c, so it must be active when the latter starts.
    ev = []
    for j in ids:
        ev.append((starts[j], 0, j))
        ev.append((starts[j] + lengths[j] - 1, 1, j))
    ev.sort()
    return ev


def _sweep(events, xs, ts, ks, scores: _Scores, Ta: ScoreIndex, Tb: ScoreIndex, Tc: ScoreIndex, Td: ScoreIndex):
    """One pass of the two-sided-overlap sweep over a set of anchors."""
    C, Cm, pred = scores.C, scores.Cm, scores.pred
    for _, kind, j in events:
        x, t, k = xs[j], ts[j], ks[j]
        key = (j + 1)
        if kind == 0:
            for T, lo, hi, shift in (
                (Ta, 0, x - 1, 0),
                (Tb, x, x + k - 1, x),
                (Tc, -POS_INF, x - t, t),
                (Td, x - t + 1, POS_INF, x),
            ):
                val, p = T.rmaxq_pos(lo, hi)
                if val + shift > Cm[j]:
                    Cm[j] = val + shift
                    pred[j] = T.keys[p][1] - 1
            C[j] = Cm[j] + k
            Tc.upgrade((x - t, key), Cm[j] - t)
            Td.upgrade((x - t, key), Cm[j] - x)
        else:
            Ta.upgrade((x + k - 1, key), C[j])
            Tb.upgrade((x + k - 1, key), Cm[j] - x)
            Tc.update((x - t, key), NEG_INF)
            Td.update((x - t, key), NEG_INF)


def _end_keys(ids, xs, ks, sentinel=True):
    keys = sorted((xs[j] + ks[j] - 1, j + 1) for j in ids)
    return [SENTINEL] + keys if sentinel else keys


def _diag_keys(ids, xs, ts):
    return sorted((xs[j] - ts[j], j + 1) for j in ids)


def _result(scores: _Scores, anchors, terms_fn, mode: str, query: str | None) -> ChainResult:
    if not anchors:
        return ChainResult((), (), 0, (), mode, "" if query is not None else None)
    best = scores.best()
    idx = scores.traceback(best, [a.x for a in anchors])
    chain = [anchors[j] for j in idx]
    terms = terms_fn(chain)
    value = scores.C[best]
    if sum(terms) != value:
        raise AssertionError(f"traceback coverage {sum(terms)} != optimum {value}")
    induced = induced_subsequence(query, chain, terms) if query is not None else None
    return ChainResult(tuple(idx), tuple(chain), int(value), tuple(terms), mode, induced)


# -- string vs string --------------------------------------------------------------


def chain_string_symmetric(
    mems: Sequence[StringMem],
    qlen: int | None = None,
    tlen: int | None = None,
    query: str | None = None,
) -> ChainResult:
    """Maximum mutual-coverage chain of exact matches between two strings.

    Given all MEMs of ``Q`` and ``T`` the coverage equals their LCS length.
    ``qlen``/``tlen`` are only used to sanity-check anchor coordinates.
    """
    mems = [StringMem(*a) for a in mems]
    for a in mems:
        if a.length < 1 or a.x < 1 or a.i < 1:
            raise ValueError(f"invalid anchor {a}")
        if qlen is not None and a.x + a.length - 1 > qlen:
            raise ValueError(f"anchor {a} exceeds query length {qlen}")
        if tlen is not None and a.i + a.length - 1 > tlen:
            raise ValueError(f"anchor {a} exceeds text length {tlen}")
    n = len(mems)
    xs = [a.x for a in mems]
    ts = [a.i for a in mems]
    ks = [a.length for a in mems]
    ids = range(n)
    scores = _Scores(ks)
    Ta = ScoreIndex(_end_keys(ids, xs, ks))
    Tb = ScoreIndex(_end_keys(ids, xs, ks))
    Tc = ScoreIndex(_diag_keys(ids, xs, ts))
    Td = ScoreIndex(_diag_keys(ids, xs, ts))
    Ta.upgrade(SENTINEL, 0)
    _sweep(_events(ids, ts, ks), xs, ts, ks, scores, Ta, Tb, Tc, Td)
    return _result(scores, mems, coverage_terms, STRING_SYMMETRIC, query)


# -- query vs DAG ------------------------------------------------------------------


def _prepare(dag: LabeledDag, cover: PathCoverIndex, anchors: Sequence[NodeMem]):
    if cover.forward is None:
        raise ValueError("path cover has no forward links; use build_cover/forward_links")
    anchors = [NodeMem(*a) for a in anchors]
    by_node: list[list[int]] = [[] for _ in range(dag.num_nodes + 1)]
    for j, a in enumerate(anchors):
        if not 1 <= a.node <= dag.num_nodes:
            raise ValueError(f"anchor {a} references unknown node {a.node}")
        if a.y - a.x != a.j - a.i or a.y < a.x or a.x < 1 or a.i < 1 or a.j > len(dag.label(a.node)):
            raise ValueError(f"malformed anchor {a}")
        by_node[a.node].append(j)
    xs = [a.x for a in anchors]
    ts = [a.i for a in anchors]
    ks = [a.length for a in anchors]
    # a path's trees only ever receive anchors of nodes on that path
    on_path: list[list[int]] = [[] for _ in range(cover.k)]
    for v in dag.nodes:
        for kk in cover.paths_of[v]:
            on_path[kk].extend(by_node[v])
    Ta = []
    Tb = []
    for kk in range(cover.k):
        a = ScoreIndex(_end_keys(on_path[kk], xs, ks))
        b = ScoreIndex(_end_keys(on_path[kk], xs, ks))
        a.update(SENTINEL, 0)
        b.update(SENTINEL, 0)
        Ta.append(a)
        Tb.append(b)
    return anchors, by_node, xs, ts, ks, Ta, Tb


def _propagate(v, cover, by_node, xs, ks, scores: _Scores, Ta, Tb):
    C, Cm, pred = scores.C, scores.Cm, scores.pred
    for w, kk in cover.forward[v]:
        ids = by_node[w]
        if not ids:
            continue
        ta, tb = Ta[kk], Tb[kk]
        for j in ids:
            x, k = xs[j], ks[j]
            val, p = ta.rmaxq_pos(0, x - 1)
            if val > Cm[j]:
                Cm[j] = val
                pred[j] = ta.keys[p][1] - 1
            val, p = tb.rmaxq_pos(x, x + k - 1)
            if val + x > Cm[j]:
                Cm[j] = val + x
                pred[j] = tb.keys[p][1] - 1
            C[j] = Cm[j] + k


def chain_dag_asymmetric(
    dag: LabeledDag,
    cover: PathCoverIndex,
    anchors: Sequence[NodeMem],
    qlen: int | None = None,
    query: str | None = None,
) -> ChainResult:
    """Chain node anchors maximizing query coverage; no overlaps in the graph.

    At most one anchor per node can be part of a chain.
    """
    anchors, by_node, xs, ts, ks, Ta, Tb = _prepare(dag, cover, anchors)
    scores = _Scores(ks)
    C, Cm = scores.C, scores.Cm
    for v in dag.order:
        for j in by_node[v]:
            e = xs[j] + ks[j] - 1
            for kk in cover.paths_of[v]:
                Ta[kk].upgrade((e, j + 1), C[j])
                Tb[kk].upgrade((e, j + 1), Cm[j] - xs[j])
        _propagate(v, cover, by_node, xs, ks, scores, Ta, Tb)
    return _result(scores, anchors, lambda ch: node_chain_terms(ch, symmetric=False), ASYMMETRIC, query)


def chain_dag_symmetric(
    dag: LabeledDag,
    cover: PathCoverIndex,
    anchors: Sequence[NodeMem],
    qlen: int | None = None,
    query: str | None = None,
) -> ChainResult:
    """Chain node anchors maximizing mutual coverage, overlaps allowed inside nodes."""
    anchors, by_node, xs, ts, ks, Ta, Tb = _prepare(dag, cover, anchors)
    scores = _Scores(ks)
    for v in dag.order:
        ids = by_node[v]
        if ids:
            events = _events(ids, ts, ks)
            # the diagonal trees are all -inf between node sweeps (every
            # start is matched by an end that resets it), so they can be
            # local to the node and shared by its paths
            Tc = ScoreIndex(_diag_keys(ids, xs, ts))
            Td = ScoreIndex(_diag_keys(ids, xs, ts))
            for kk in cover.paths_of[v]:
                _sweep(events, xs, ts, ks, scores, Ta[kk], Tb[kk], Tc, Td)
        _propagate(v, cover, by_node, xs, ks, scores, Ta, Tb)
    return _result(scores, anchors, node_chain_terms, GRAPH_SYMMETRIC, query)


def lcs_graph(dag: LabeledDag, q: Query | str, cover: PathCoverIndex | None = None) -> tuple[int, ChainResult]:
    """LCS length between ``q`` and the best path of ``dag``, with the chain realizing it."""
    seq = q.sequence if isinstance(q, Query) else q
    anchors = find_node_mems(dag, seq)
    if cover is None:
        cover = build_cover(dag)
    res = chain_dag_symmetric(dag, cover, anchors, len(seq), query=seq)
    return res.coverage, res


def chain_is_valid(dag: LabeledDag | None, chain: Sequence, mode: str, reach=None) -> bool:
    """Check the precedence order required by ``mode`` between consecutive anchors."""
    if mode == STRING_SYMMETRIC:
        return all(a.x <= b.x and a.i <= b.i for a, b in zip(chain, chain[1:]))
    if reach is None:
        reach = reachability(dag)
    for a, b in zip(chain, chain[1:]):
        if a.x > b.x:
            return False
        if mode == ASYMMETRIC:
            if b.node not in reach[a.node]:
                return False
        elif not (b.node in reach[a.node] or (a.node == b.node and a.i <= b.i)):
            return False
    return True


__all__ = [
    "ASYMMETRIC",
    "GRAPH_SYMMETRIC",
    "STRING_SYMMETRIC",
    "ChainResult",
    "chain_dag_asymmetric",
    "chain_dag_symmetric",
    "chain_is_valid",
    "chain_string_symmetric",
    "coverage",
    "coverage_terms",
    "induced_subsequence",
    "lcs_graph",
    "node_chain_terms",
]
