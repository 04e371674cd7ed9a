"""Definability of connectives via the binary fragment of a clone.

Binary operations on an n-element carrier are stored as rows of n*n cells,
cell ``i*n + j`` holding the value at ``(i, j)``.  The closure grows by
depth: level 0 holds the projections p, q and the basis constants (as
constant binary operations); level k+1 holds every new table obtained by
applying a basis connective to members with at least one argument from
level k.  New tables are discovered in a fixed order (connective in basis
order, then left argument, then right argument), so witnesses are
reproducible and of least depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import CheckResult, FiniteAlgebra, SignatureError, term_table
from .formula import Binary, Const, Formula, Unary, Var, as_formula, operations, render, substitute, variables
from .matrices import LIBRARY, LogicalMatrix, resolve, with_library

DEFAULT_CAP = 200_000


@dataclass
class CloneFragment:
    algebra: FiniteAlgebra
    basis: tuple[str, ...]
    store: object = field(repr=False)
    leaves: list = field(repr=False)
    ops: list = field(repr=False)
    levels: list = field(default_factory=list)
    closed: bool = False
    cap: int = DEFAULT_CAP

    @property
    def size(self) -> int:
        return int(self.store.size)

    @property
    def n(self) -> int:
        return len(self.algebra)

    def level_sizes(self) -> list[int]:
        return [end - start for start, end in self.levels]

    def rows(self) -> np.ndarray:
        return np.asarray(self.store.rows())

    def tables(self) -> np.ndarray:
        n = self.n
        return self.rows().reshape(-1, n, n)

    def find(self, table) -> int:
        return int(self.store.find(_row(table, self.n)))

    def __contains__(self, table) -> bool:
        return self.find(table) >= 0

    def depth_of(self, index: int) -> int:
        for d, (start, end) in enumerate(self.levels):
            if start <= index < end:
                return d
        raise IndexError(index)

    def witness(self, index: int) -> Formula:
        """Term for the table at ``index``, rebuilt from parent records."""
        op = np.asarray(self.store.op)
        left = np.asarray(self.store.left)
        right = np.asarray(self.store.right)
        memo: dict[int, Formula] = {}

        def build(i: int) -> Formula:
            if i in memo:
                return memo[i]
            if op[i] < 0:
                term = self.leaves[int(left[i])]
            else:
                name = self.ops[int(op[i])][0]
                if right[i] < 0:
                    term = Unary(name, build(int(left[i])))
                else:
                    term = Binary(name, build(int(left[i])), build(int(right[i])))
            memo[i] = term
            return term

        return build(index)


def _row(table, n: int) -> np.ndarray:
    t = np.asarray(table)
    if t.ndim == 0:
        t = np.full((n, n), int(t))
    elif t.ndim == 1:
        t = np.repeat(t[:, None], n, axis=1)
    return np.ascontiguousarray(t.reshape(-1), dtype=np.uint8)


def _basis_algebra(m: "LogicalMatrix | FiniteAlgebra", basis: Sequence[str]) -> FiniteAlgebra:
    a = m.algebra if isinstance(m, LogicalMatrix) else m
    a = with_library(a, basis)
    missing = [b for b in basis if b not in a.signature]
    if missing:
        raise SignatureError(f"{a.name}: basis connective(s) {', '.join(missing)} unavailable")
    if len(a) > 255:
        raise ValueError("carriers above 255 elements are not supported")
    return a


def _start(a: FiniteAlgebra, basis: Sequence[str], cap: int) -> CloneFragment:
    n = len(a)
    store = kernels.TableStore(n * n, cap)
    i = np.repeat(np.arange(n), n)
    j = np.tile(np.arange(n), n)
    leaves: list[Formula] = []
    for term, row in [(Var("p"), i), (Var("q"), j)] + [
        (Const(b), np.full(n * n, int(a.tables[b]))) for b in basis if a.signature[b] == 0
    ]:
        if store.find(np.asarray(row, dtype=np.uint8)) >= 0:
            continue
        leaves.append(term)
        store.add(np.asarray(row, dtype=np.uint8), -1, len(leaves) - 1, -1)
    ops = []
    for b in basis:
        ar = a.signature[b]
        if ar == 1:
            ops.append((b, 1, np.ascontiguousarray(a.tables[b], dtype=np.uint8)))
        elif ar == 2:
            ops.append((b, 2, np.ascontiguousarray(a.tables[b], dtype=np.uint8)))
    frag = CloneFragment(a, tuple(basis), store, leaves, [(o[0], o[1]) for o in ops], cap=cap)
    frag._kernel_ops = [(o[1], o[2]) for o in ops]
    frag.levels.append((0, store.size))
    return frag


def _grow(frag: CloneFragment, target_row=None, max_depth: int | None = None) -> int:
    """Expand level by level; return the target's index if met, else -1."""
    while not frag.closed:
        if max_depth is not None and len(frag.levels) > max_depth:
            return -1
        start, end = frag.levels[-1]
        status, found = kernels.expand_level(frag.store, start, end, frag._kernel_ops, frag.cap, target_row)
        new_end = frag.store.size
        if new_end > end:
            frag.levels.append((end, new_end))
        if status == kernels.TARGET_FOUND:
            return int(found)
        if status == kernels.CAP_HIT:
            return -1
        if new_end == end:
            frag.closed = True
    return -1


def binary_clone(m: "LogicalMatrix | FiniteAlgebra", basis: Sequence[str], cap: int = DEFAULT_CAP,
                 max_depth: int | None = None) -> CloneFragment:
    """Binary fragment of the clone generated by ``basis``; ``closed`` is
    false when the cap or ``max_depth`` stopped the closure."""
    a = _basis_algebra(m, basis)
    frag = _start(a, basis, cap)
    _grow(frag, None, max_depth)
    return frag


def target_table(m: "LogicalMatrix | FiniteAlgebra", target) -> tuple[np.ndarray, int]:
    """(table, arity) for a connective name, a formula, or a raw table."""
    a = m.algebra if isinstance(m, LogicalMatrix) else m
    if isinstance(target, str):
        if target in a.signature:
            t = a.tables[target]
            return np.asarray(t), a.signature[target]
        lib = LIBRARY.get(a.elements, {})
        if target in lib:
            return np.asarray(lib[target]), 2
        f = as_formula(target)
    elif isinstance(target, (Var, Const, Unary, Binary)):
        f = target
    else:
        t = np.asarray(target)
        return t, t.ndim
    vs = variables(f)
    if len(vs) > 2:
        raise ValueError("targets have at most two variables")
    order = ["p", "q"] if set(vs) <= {"p", "q"} and len(vs) == 2 else vs
    alg = resolve(m, f) if isinstance(m, LogicalMatrix) else with_library(a, operations(f))
    return term_table(alg, f, order), len(order)


def check_definition(m: "LogicalMatrix | FiniteAlgebra", term: "Formula | str", target) -> CheckResult:
    """Exhaustively compare the table of ``term`` with ``target``'s table."""
    term = as_formula(term)
    a = m.algebra if isinstance(m, LogicalMatrix) else m
    t, arity = target_table(m, target)
    vs = variables(term)
    if arity == 2 and set(vs) <= {"p", "q"}:
        order = ["p", "q"]
    elif arity == 1 and set(vs) <= {"p"}:
        order = ["p"]
    elif arity == 0 and not vs:
        order = []
    elif len(vs) == arity:
        order = vs
    else:
        raise ValueError(f"term has {len(vs)} variable(s) but the target has arity {arity}")
    alg = with_library(a, operations(term))
    missing = sorted(op for op in operations(term) if op not in alg.signature)
    if missing:
        raise SignatureError(f"{a.name}: no connective(s) {', '.join(missing)}")
    got = term_table(alg, term, order)
    bad = np.argwhere(np.asarray(got) != np.asarray(t))
    if bad.size:
        return CheckResult(False, {v: int(bad[0][k]) for k, v in enumerate(order)})
    return CheckResult(True)


@dataclass
class Definability:
    verdict: str  # "yes", "no" or "inconclusive"
    witness: Formula | None
    clone_size: int
    depth: int | None
    closed: bool
    level_sizes: list[int]

    def describe(self) -> str:
        if self.verdict == "yes":
            return f"yes (depth {self.depth}): {render(self.witness)}"
        if self.verdict == "no":
            return f"no (clone closed with {self.clone_size} binary operations)"
        return f"inconclusive at cap ({self.clone_size} binary operations, levels {self.level_sizes})"


def is_definable(m: "LogicalMatrix | FiniteAlgebra", target, basis: Sequence[str],
                 cap: int = DEFAULT_CAP) -> Definability:
    """Decide whether ``target`` is a term operation over ``basis``."""
    a = _basis_algebra(m, basis)
    t, arity = target_table(m, target)
    n = len(a)
    row = _row(t, n)
    frag = _start(a, basis, cap)
    idx = int(frag.store.find(row))
    if idx < 0:
        idx = _grow(frag, row)
    if idx < 0:
        verdict = "no" if frag.closed else "inconclusive"
        return Definability(verdict, None, frag.size, None, frag.closed, frag.level_sizes())
    w = frag.witness(idx)
    if arity < 2:
        w = substitute(w, {"q": Var("p")})
    expected = np.full(n, int(t)) if arity == 0 else t
    check = check_definition(a, w, expected)
    assert check.holds, f"witness {render(w)} does not define the target"
    return Definability("yes", w, frag.size, frag.depth_of(idx), frag.closed, frag.level_sizes())


def is_monotone_pair(small: CloneFragment, big: CloneFragment) -> bool:
    """Every table of ``small`` occurs in ``big``."""
    return all(big.store.find(r) >= 0 for r in small.rows())
