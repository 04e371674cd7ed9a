"""Pure-Python implementations of the hot kernels.

Behaviour is identical to the compiled ``_kernels`` module, including the
order in which new tables are discovered, so results never depend on which
backend is loaded.
"""

from __future__ import annotations

import numpy as np

LEVEL_DONE = 0
CAP_HIT = 1
TARGET_FOUND = 2


class TableStore:
    """Deduplicating, append-only store of operation tables (rows of uint8).

    Every row carries a parent record ``(op, left, right)``: ``op == -1``
    marks a leaf, and ``right == -1`` marks a unary application.
    """

    def __init__(self, ncells: int, capacity: int):
        self.ncells = ncells
        self.capacity = capacity
        self.data = np.zeros((capacity, ncells), dtype=np.uint8)
        self.op = np.full(capacity, -1, dtype=np.int32)
        self.left = np.full(capacity, -1, dtype=np.int64)
        self.right = np.full(capacity, -1, dtype=np.int64)
        self.size = 0
        self._index: dict[bytes, int] = {}

    def find(self, row) -> int:
        row = np.ascontiguousarray(row, dtype=np.uint8)
        return self._index.get(row.tobytes(), -1)

    def add(self, row, op: int = -1, left: int = -1, right: int = -1) -> int:
        """Insert ``row`` if new and return its index; -1 if the store is full."""
        row = np.ascontiguousarray(row, dtype=np.uint8)
        key = row.tobytes()
        idx = self._index.get(key)
        if idx is not None:
            return idx
        if self.size >= self.capacity:
            return -1
        idx = self.size
        self.data[idx] = row
        self.op[idx] = op
        self.left[idx] = left
        self.right[idx] = right
        self._index[key] = idx
        self.size += 1
        return idx

    def rows(self) -> np.ndarray:
        return self.data[: self.size]


def expand_level(store: TableStore, start: int, end: int, ops, cap: int, target=None):
    """Apply every basis operation to members ``[0, end)`` with at least one
    argument in ``[start, end)``; append unseen results in canonical order.

    Canonical order: operations in basis order, then left argument index,
    then right argument index.  Returns ``(status, index)`` where ``index`` is
    the target's position when ``status == TARGET_FOUND``.
    """
    target_key = None
    if target is not None:
        target_key = np.ascontiguousarray(target, dtype=np.uint8).tobytes()
    limit = min(cap, store.capacity)
    members = store.data
    index = store._index
    for op_id, (arity, table) in enumerate(ops):
        if arity == 1:
            results = table[members[start:end]]
            for offset, row in enumerate(results):
                key = row.tobytes()
                if key in index:
                    continue
                if store.size >= limit:
                    return CAP_HIT, -1
                idx = store.add(row, op_id, start + offset, -1)
                if key == target_key:
                    return TARGET_FOUND, idx
            continue
        for i in range(end):
            j0 = 0 if i >= start else start
            if j0 >= end:
                continue
            results = table[members[i][None, :], members[j0:end]]
            for offset, row in enumerate(results):
                key = row.tobytes()
                if key in index:
                    continue
                if store.size >= limit:
                    return CAP_HIT, -1
                idx = store.add(row, op_id, i, j0 + offset)
                if key == target_key:
                    return TARGET_FOUND, idx
    return LEVEL_DONE, -1


def close_subset(mask: int, n: int, unary, binary, constants) -> int:
    """Least subset containing ``mask`` (a bitmask over ``range(n)``) and the
    constants, closed under the given unary and binary tables."""
    inside = [bool(mask >> e & 1) for e in range(n)]
    for c in constants:
        inside[c] = True
    queue = [e for e in range(n) if inside[e]]
    done: list[int] = []
    while queue:
        e = queue.pop()
        done.append(e)
        produced = []
        for u in unary:
            produced.append(u[e])
        for f in binary:
            row = f[e]
            for m in done:
                produced.append(row[m])
                produced.append(f[m][e])
        for r in produced:
            r = int(r)
            if not inside[r]:
                inside[r] = True
                queue.append(r)
    out = 0
    for e in range(n):
        if inside[e]:
            out |= 1 << e
    return out
