# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Same API and discovery order as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.string cimport memcmp, memcpy
from libc.stdint cimport uint8_t, uint64_t, int64_t, int32_t

cnp.import_array()

LEVEL_DONE = 0
CAP_HIT = 1
TARGET_FOUND = 2

cdef uint64_t FNV_OFFSET = 1469598103934665603ULL
cdef uint64_t FNV_PRIME = 1099511628211ULL


cdef inline uint64_t _hash(const uint8_t* row, Py_ssize_t n) noexcept nogil:
    cdef uint64_t h = FNV_OFFSET
    cdef Py_ssize_t k
    for k in range(n):
        h = (h ^ row[k]) * FNV_PRIME
    return h


cdef class TableStore:
    """Deduplicating, append-only store of operation tables (rows of uint8).

    Every row carries a parent record ``(op, left, right)``: ``op == -1``
    marks a leaf, and ``right == -1`` marks a unary application.
    """

    cdef public Py_ssize_t ncells, capacity, size
    cdef public object data, op, left, right
    cdef uint8_t[:, ::1] _data
    cdef int32_t[::1] _op
    cdef int64_t[::1] _left, _right
    cdef int64_t[::1] _slots
    cdef uint64_t _mask

    def __init__(self, Py_ssize_t ncells, Py_ssize_t capacity):
        self.ncells = ncells
        self.capacity = capacity
        self.size = 0
        self.data = np.zeros((capacity, ncells), dtype=np.uint8)
        self.op = np.full(capacity, -1, dtype=np.int32)
        self.left = np.full(capacity, -1, dtype=np.int64)
        self.right = np.full(capacity, -1, dtype=np.int64)
        self._data = self.data
        self._op = self.op
        self._left = self.left
        self._right = self.right
        cdef Py_ssize_t nslots = 16
        while nslots < 2 * capacity + 2:
            nslots *= 2
        self._slots = np.full(nslots, -1, dtype=np.int64)
        self._mask = <uint64_t>(nslots - 1)

    cdef inline Py_ssize_t _lookup(self, const uint8_t* row, uint64_t* slot_out) noexcept nogil:
        cdef uint64_t s = _hash(row, self.ncells) & self._mask
        cdef int64_t idx
        while True:
            idx = self._slots[s]
            if idx < 0:
                slot_out[0] = s
                return -1
            if memcmp(&self._data[idx, 0], row, self.ncells) == 0:
                slot_out[0] = s
                return idx
            s = (s + 1) & self._mask

    cdef inline Py_ssize_t _insert(self, const uint8_t* row, uint64_t slot,
                                   int32_t op, int64_t left, int64_t right) noexcept nogil:
        cdef Py_ssize_t idx = self.size
        memcpy(&self._data[idx, 0], row, self.ncells)
        self._op[idx] = op
        self._left[idx] = left
        self._right[idx] = right
        self._slots[slot] = idx
        self.size += 1
        return idx

    def find(self, row):
        cdef cnp.ndarray[cnp.uint8_t, ndim=1] r = np.ascontiguousarray(row, dtype=np.uint8)
        cdef uint64_t slot
        return self._lookup(<const uint8_t*>r.data, &slot)

    def add(self, row, int op=-1, int64_t left=-1, int64_t right=-1):
        """Insert ``row`` if new and return its index; -1 if the store is full."""
        cdef cnp.ndarray[cnp.uint8_t, ndim=1] r = np.ascontiguousarray(row, dtype=np.uint8)
        cdef uint64_t slot
        cdef Py_ssize_t idx = self._lookup(<const uint8_t*>r.data, &slot)
        if idx >= 0:
            return idx
        if self.size >= self.capacity:
            return -1
        return self._insert(<const uint8_t*>r.data, slot, op, left, right)

    def rows(self):
        return self.data[: self.size]


def expand_level(TableStore store, Py_ssize_t start, Py_ssize_t end, ops,
                 Py_ssize_t cap, target=None):
    """Apply every basis operation to members ``[0, end)`` with at least one
    argument in ``[start, end)``; append unseen results in canonical order.

    Canonical order: operations in basis order, then left argument index,
    then right argument index.  Returns ``(status, index)``.
    """
    cdef Py_ssize_t n = store.ncells
    cdef Py_ssize_t limit = cap if cap < store.capacity else store.capacity
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] buf = np.zeros(max(n, 1), dtype=np.uint8)
    cdef uint8_t* out = <uint8_t*>buf.data
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] tgt
    cdef const uint8_t* tptr = NULL
    if target is not None:
        tgt = np.ascontiguousarray(target, dtype=np.uint8)
        tptr = <const uint8_t*>tgt.data
    cdef uint8_t[:, ::1] d = store._data
    cdef uint8_t[::1] utab
    cdef uint8_t[:, ::1] btab
    cdef Py_ssize_t i, j, j0, k, idx
    cdef uint64_t slot
    cdef int op_id = 0
    cdef int arity
    for op_id in range(len(ops)):
        arity, table = ops[op_id]
        if arity == 1:
            utab = np.ascontiguousarray(table, dtype=np.uint8)
            for i in range(start, end):
                for k in range(n):
                    out[k] = utab[d[i, k]]
                idx = store._lookup(out, &slot)
                if idx >= 0:
                    continue
                if store.size >= limit:
                    return CAP_HIT, -1
                idx = store._insert(out, slot, op_id, i, -1)
                if tptr != NULL and memcmp(out, tptr, n) == 0:
                    return TARGET_FOUND, idx
            continue
        btab = np.ascontiguousarray(table, dtype=np.uint8)
        for i in range(end):
            j0 = 0 if i >= start else start
            for j in range(j0, end):
                for k in range(n):
                    out[k] = btab[d[i, k], d[j, k]]
                idx = store._lookup(out, &slot)
                if idx >= 0:
                    continue
                if store.size >= limit:
                    return CAP_HIT, -1
                idx = store._insert(out, slot, op_id, i, j)
                if tptr != NULL and memcmp(out, tptr, n) == 0:
                    return TARGET_FOUND, idx
    return LEVEL_DONE, -1


def close_subset(mask, Py_ssize_t n, unary, binary, constants):
    """Least subset containing ``mask`` (a bitmask over ``range(n)``) and the
    constants, closed under the given unary and binary tables."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] inside = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] done = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t qlen = 0, dlen = 0, e, m, r, t, k
    mask = int(mask)
    for e in range(n):
        if (mask >> e) & 1:
            inside[e] = 1
    for c in constants:
        inside[int(c)] = 1
    for e in range(n):
        if inside[e]:
            queue[qlen] = e
            qlen += 1
    cdef list us = [np.ascontiguousarray(u, dtype=np.int64) for u in unary]
    cdef list bs = [np.ascontiguousarray(b, dtype=np.int64) for b in binary]
    cdef Py_ssize_t nu = len(us), nb = len(bs)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ut
    cdef cnp.ndarray[cnp.int64_t, ndim=2] bt
    while qlen > 0:
        qlen -= 1
        e = queue[qlen]
        done[dlen] = e
        dlen += 1
        for t in range(nu):
            ut = us[t]
            r = ut[e]
            if not inside[r]:
                inside[r] = 1
                queue[qlen] = r
                qlen += 1
        for t in range(nb):
            bt = bs[t]
            for k in range(dlen):
                m = done[k]
                r = bt[e, m]
                if not inside[r]:
                    inside[r] = 1
                    queue[qlen] = r
                    qlen += 1
                r = bt[m, e]
                if not inside[r]:
                    inside[r] = 1
                    queue[qlen] = r
                    qlen += 1
    out = 0
    for e in range(n):
        if inside[e]:
            out |= 1 << e
    return out
