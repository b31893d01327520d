"""Maximal exact matches between a query and a text, and node MEMs of a DAG.

MEMs are enumerated from the suffix array of ``text + separator + query``:
every pair (query suffix, text suffix) whose longest common extension is
exactly ``h`` meets for the first time when the adjacent-suffix boundaries
with LCP ``>= h`` are merged in decreasing LCP order.  Suffixes are grouped
by their preceding symbol so that only left-maximal pairs are ever touched,
which keeps the enumeration proportional to the output.

All coordinates exposed here are 1-based and inclusive.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .graph import DELIMITER, LabeledDag, Query, topological_rank


class StringMem(NamedTuple):
    x: int  # query start
    i: int  # text start
    length: int

    @property
    def y(self) -> int:
        return self.x + self.length - 1


class NodeMem(NamedTuple):
    x: int
    y: int
    node: int
    i: int
    j: int

    @property
    def length(self) -> int:
        return self.y - self.x + 1


# -- suffix array ------------------------------------------------------------


def suffix_array(codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Suffix array and LCP array of an integer sequence by prefix doubling.

    ``lcp[r]`` is the longest common prefix of suffixes ``sa[r - 1]`` and
    ``sa[r]``; ``lcp[0] = 0``.
    """
    n = len(codes)
    if n == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    # dense ranks of single symbols
    _, rank = np.unique(np.asarray(codes), return_inverse=True)
    rank = rank.astype(np.int64)
    levels = [rank]  # levels[t][p] = rank of the window of length 2**t at p
    k = 1
    order = np.argsort(rank, kind="stable")
    while rank.max() < n - 1:
        second = np.full(n, -1, np.int64)
        second[: n - k] = rank[k:]
        key = rank * (n + 1) + (second + 1)
        order = np.argsort(key, kind="stable")
        sk = key[order]
        new = np.empty(n, np.int64)
        new[order] = np.concatenate(([0], np.cumsum(sk[1:] != sk[:-1])))
        rank = new
        levels.append(rank)
        k *= 2
    sa = order if len(levels) > 1 else np.argsort(rank, kind="stable")

    # windows of length 2**(len(levels)-1) are all distinct, so every LCP is
    # shorter than that; descend the levels adding matching power-of-two blocks
    a = sa[:-1]
    b = sa[1:]
    lcp = np.zeros(n - 1, np.int64)
    for t in range(len(levels) - 1, -1, -1):
        step = 1 << t
        pa = a + lcp
        pb = b + lcp
        ok = (pa + step <= n) & (pb + step <= n)
        lv = levels[t]
        pa_c = np.where(ok, pa, 0)
        pb_c = np.where(ok, pb, 0)
        ok &= lv[pa_c] == lv[pb_c]
        lcp += ok * step
    return sa.astype(np.int64), np.concatenate(([0], lcp))


# -- maximal pairs -----------------------------------------------------------


def _maximal_pairs(text: np.ndarray, query: np.ndarray, min_length: int = 1):
    """0-based ``(query_pos, text_pos, length)`` of all MEMs.

    ``text`` and ``query`` are non-negative int arrays; symbols shared
    between them match.  Text symbols absent from the query act as hard
    mismatches (this is how node delimiters are handled).
    """
    n, m = len(text), len(query)
    if n == 0 or m == 0:
        return []
    # combined: text, separator, query; shift real symbols past the separator
    sep = 0
    s = np.empty(n + 1 + m, np.int64)
    s[:n] = text + 1
    s[n] = sep
    s[n + 1 :] = query + 1
    sa, lcp = suffix_array(s)
    total = len(s)

    # left symbol of each suffix; the text start and the query start get
    # distinct impossible symbols so they are left-maximal against anything
    left = np.empty(total, np.int64)
    left[1:] = s[:-1]
    left[0] = -1
    left[n + 1] = -2

    min_length = max(1, min_length)
    boundaries = np.nonzero(lcp >= min_length)[0]
    if len(boundaries) == 0:
        return []
    boundaries = boundaries[np.argsort(-lcp[boundaries], kind="stable")]

    sa_l = sa.tolist()
    left_l = left.tolist()
    lcp_l = lcp.tolist()
    qstart = n + 1

    # block bookkeeping: blocks are contiguous rank ranges [lo, hi]
    hi_of = {}  # lo -> hi
    lo_of = {}  # hi -> lo
    groups = {}  # lo -> {left symbol: [query positions, text positions]}
    sizes = {}

    def block_at(lo_rank):
        g = groups.get(lo_rank)
        if g is None:
            p = sa_l[lo_rank]
            if p >= qstart:
                g = {left_l[p]: [[p - qstart], []]}
            elif p < n:
                g = {left_l[p]: [[], [p]]}
            else:
                g = {}
            groups[lo_rank] = g
            sizes[lo_rank] = 1
            hi_of[lo_rank] = lo_rank
            lo_of[lo_rank] = lo_rank
        return g

    out = []
    for r in boundaries.tolist():
        h = lcp_l[r]
        # left block ends at r-1, right block starts at r
        left_lo = lo_of.get(r - 1, r - 1)
        ga = block_at(left_lo)
        gb = block_at(r)
        right_hi = hi_of[r]
        # report cross pairs with different left symbols
        for ca, (qa, ta) in ga.items():
            if qa:
                for cb, (qb, tb) in gb.items():
                    if tb and ca != cb:
                        for x in qa:
                            for i in tb:
                                out.append((x, i, h))
            if ta:
                for cb, (qb, tb) in gb.items():
                    if qb and ca != cb:
                        for x in qb:
                            for i in ta:
                                out.append((x, i, h))
        # merge smaller into larger
        if sizes[left_lo] < sizes[r]:
            big, small = gb, ga
        else:
            big, small = ga, gb
        for c, (q2, t2) in small.items():
            slot = big.get(c)
            if slot is None:
                big[c] = [q2, t2]
            else:
                slot[0].extend(q2)
                slot[1].extend(t2)
        size = sizes.pop(left_lo) + sizes.pop(r)
        del groups[left_lo], groups[r]
        del hi_of[left_lo], lo_of[r - 1], hi_of[r], lo_of[right_hi]
        groups[left_lo] = big
        sizes[left_lo] = size
        hi_of[left_lo] = right_hi
        lo_of[right_hi] = left_lo
    return out


def _encode(strings: Iterable[str]) -> dict[str, int]:
    alphabet = sorted(set().union(*[set(s) for s in strings]))
    return {c: k for k, c in enumerate(alphabet)}


def find_string_mems(q: str, t: str, min_length: int = 1) -> list[StringMem]:
    """All maximal exact matches ``(x, i, length)`` between ``q`` and ``t``, sorted by ``(x, i)``."""
    if not q or not t:
        raise ValueError("both strings must be non-empty")
    code = _encode([q, t])
    qa = np.fromiter((code[c] for c in q), np.int64, len(q))
    ta = np.fromiter((code[c] for c in t), np.int64, len(t))
    hits = _maximal_pairs(ta, qa, min_length)
    return sorted(StringMem(x + 1, i + 1, h) for x, i, h in hits)


# -- node MEMs -----------------------------------------------------------------


@dataclass(frozen=True)
class NodesText:
    """Concatenation of ``DELIMITER + label(v)`` over all nodes ``v`` in id order."""

    text: str
    starts: tuple[int, ...]  # 1-based text position of the first symbol of each label

    def locate(self, pos: int) -> tuple[int, int]:
        """Map a 1-based text position to ``(node, offset)``."""
        v = bisect_right(self.starts, pos)
        if v == 0 or self.text[pos - 1] == DELIMITER:
            raise ValueError(f"position {pos} is a delimiter")
        return v, pos - self.starts[v - 1] + 1

    @property
    def boundaries(self) -> dict[int, tuple[int, int]]:
        out = {}
        for pos in range(1, len(self.text) + 1):
            if self.text[pos - 1] != DELIMITER:
                out[pos] = self.locate(pos)
        return out


def build_nodes_text(dag: LabeledDag) -> NodesText:
    starts = []
    pos = 1
    for label in dag.labels:
        starts.append(pos + 1)
        pos += len(label) + 1
    return NodesText(DELIMITER + DELIMITER.join(dag.labels), tuple(starts))


def find_node_mems(dag: LabeledDag, q: Query | str, min_length: int = 1) -> list[NodeMem]:
    """All node MEMs between ``q`` and the labels of ``dag``.

    ``min_length`` drops MEMs shorter than the threshold during enumeration;
    the result equals ``filter_min_length(find_node_mems(dag, q), min_length)``.
    Sorted by (topological rank of node, label start, query start).
    """
    seq = q.sequence if isinstance(q, Query) else q
    if not seq:
        raise ValueError("empty query")
    if DELIMITER in seq:
        raise ValueError("query contains the reserved delimiter")
    nt = build_nodes_text(dag)
    code = _encode([seq, *dag.labels])
    delim = len(code)
    ta = np.fromiter((code.get(c, delim) for c in nt.text), np.int64, len(nt.text))
    qa = np.fromiter((code[c] for c in seq), np.int64, len(seq))
    hits = _maximal_pairs(ta, qa, min_length)

    starts = np.asarray(nt.starts, np.int64)
    rank = topological_rank(dag)
    out = []
    if hits:
        arr = np.asarray(hits, np.int64)
        tpos = arr[:, 1] + 1
        node = np.searchsorted(starts, tpos, side="right")
        off = tpos - starts[node - 1] + 1
        for (x, _, h), v, i in zip(hits, node.tolist(), off.tolist()):
            out.append(NodeMem(x + 1, x + h, v, i, i + h - 1))
    out.sort(key=lambda a: (rank[a.node], a.i, a.x))
    return out


def filter_min_length(mems, min_length: int):
    """Keep MEMs of length at least ``min_length``.

    Node-level only: a graph MEM of the required length spanning several
    nodes may be split into shorter node MEMs that this drops.
    """
    if min_length < 1:
        raise ValueError("minimum length must be >= 1")
    return [a for a in mems if a.length >= min_length]


def read_anchors(text: str, dag: LabeledDag, source: str | None = None) -> list[NodeMem]:
    """Parse anchor TSV (``x y node i j``, 1-based inclusive, original node ids)."""
    where = f"{source}:" if source else ""
    index = {name: v for v, name in enumerate(dag.names, 1)}
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split()
        if len(cols) != 5:
            raise ValueError(f"{where}{lineno}: expected 5 columns, got {len(cols)}")
        x, y, name, i, j = cols
        if name not in index:
            raise ValueError(f"{where}{lineno}: anchor references unknown node {name!r}")
        a = NodeMem(int(x), int(y), index[name], int(i), int(j))
        if a.x < 1 or a.y - a.x != a.j - a.i or a.y < a.x:
            raise ValueError(f"{where}{lineno}: malformed anchor interval")
        if a.i < 1 or a.j > len(dag.label(a.node)):
            raise ValueError(f"{where}{lineno}: anchor offsets outside node {name!r}")
        out.append(a)
    return out


def format_anchors(mems: Iterable[NodeMem], dag: LabeledDag) -> str:
    return "".join(f"{a.x}\t{a.y}\t{dag.names[a.node - 1]}\t{a.i}\t{a.j}\n" for a in mems)
