"""Keyed max-values over a fixed key universe with range-maximum queries.

Keys are ``(primary, secondary)`` integer pairs; range queries bound the
primary key only, the secondary key just keeps equal primaries distinct.
Backed by a bottom-up segment tree (padded to a power of two) over the
sorted key positions.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Sequence

NEG_INF = float("-inf")
POS_INF = float("inf")

Key = tuple[int, int]


class ScoreIndex:
    __slots__ = ("keys", "_primary", "_pos", "_n", "_size", "_tree")

    def __init__(self, keys: Sequence[Key], values: Iterable[float] | None = None):
        keys = [tuple(k) for k in keys]
        for a, b in zip(keys, keys[1:]):
            if not a < b:
                raise ValueError(f"keys must be strictly increasing, got {a} before {b}")
        self.keys = keys
        self._primary = [k for k, _ in keys]
        self._pos = {key: p for p, key in enumerate(keys)}
        n = self._n = len(keys)
        leaves = [NEG_INF] * n if values is None else list(values)
        if len(leaves) != n:
            raise ValueError("one value per key required")
        size = self._size = 1 << max(n - 1, 0).bit_length()
        tree = [NEG_INF] * size + leaves + [NEG_INF] * (size - n)
        for p in range(size - 1, 0, -1):
            a, b = tree[2 * p], tree[2 * p + 1]
            tree[p] = a if a >= b else b
        self._tree = tree

    @classmethod
    def build(cls, pairs: Sequence[tuple[Key, float]]) -> "ScoreIndex":
        """Construct from ``((k, j), value)`` pairs sorted by key."""
        return cls([k for k, _ in pairs], [v for _, v in pairs])

    def __len__(self) -> int:
        return self._n

    def __contains__(self, key) -> bool:
        return key in self._pos

    def value(self, k: int, j: int) -> float:
        p = self._pos.get((k, j))
        return NEG_INF if p is None else self._tree[p + self._size]

    def _leaf(self, key) -> int:
        try:
            return self._pos[key] + self._size
        except KeyError:
            raise KeyError(f"{key} is not a key of this index") from None

    def update(self, key: Key, val: float) -> None:
        """Overwrite the value of ``key`` (may lower it)."""
        p = self._leaf(key)
        tree = self._tree
        tree[p] = val
        p >>= 1
        while p:
            a, b = tree[2 * p], tree[2 * p + 1]
            tree[p] = a if a >= b else b
            p >>= 1

    def upgrade(self, key: Key, val: float) -> None:
        """Set the value of ``key`` to ``max(val, value(key))``."""
        p = self._leaf(key)
        tree = self._tree
        while p and tree[p] < val:
            tree[p] = val
            p >>= 1

    def rmaxq(self, l, r) -> float:
        """Max value over keys with ``l <= primary <= r``; -inf if none."""
        if l > r:
            return NEG_INF
        tree = self._tree
        size = self._size
        lo = bisect_left(self._primary, l) + size
        hi = bisect_right(self._primary, r) + size
        res = NEG_INF
        while lo < hi:
            if lo & 1:
                if tree[lo] > res:
                    res = tree[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                if tree[hi] > res:
                    res = tree[hi]
            lo >>= 1
            hi >>= 1
        return res

    def rmaxq_pos(self, l, r) -> tuple[float, int]:
        """Max value over the primary range and the leftmost position holding it (-1 if none)."""
        if l > r:
            return NEG_INF, -1
        tree = self._tree
        size = self._size
        lo = bisect_left(self._primary, l) + size
        hi = bisect_right(self._primary, r) + size
        # canonical nodes: left ones come in key order, right ones in reverse
        lval, lnode = NEG_INF, -1
        rval, rnode = NEG_INF, -1
        while lo < hi:
            if lo & 1:
                if tree[lo] > lval:
                    lval, lnode = tree[lo], lo
                lo += 1
            if hi & 1:
                hi -= 1
                if tree[hi] >= rval:
                    rval, rnode = tree[hi], hi
            lo >>= 1
            hi >>= 1
        if lval >= rval:
            best, node = lval, lnode
        else:
            best, node = rval, rnode
        if best == NEG_INF:
            return NEG_INF, -1
        while node < size:
            node <<= 1
            if tree[node] != best:
                node += 1
        return best, node - size

    def rmaxq_arg(self, l, r) -> tuple[float, Key | None]:
        """Like :meth:`rmaxq`, plus the leftmost key holding the maximum."""
        best, p = self.rmaxq_pos(l, r)
        return best, (None if p < 0 else self.keys[p])

    def items(self) -> list[tuple[Key, float]]:
        return list(zip(self.keys, self._tree[self._size : self._size + self._n]))
