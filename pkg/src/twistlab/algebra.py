"""Finite algebras: tables, term evaluation, equation checks, morphisms.

Elements are dense integer ids ``0..n-1``; labels are for presentation only.
Exhaustive checks scan assignments in lexicographic order with the first
variable most significant, so a reported counterexample is always the least
failing assignment.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .formula import Const, Formula, Unary, Var, as_formula, parse, render, variables

CHUNK = 1 << 20


class AlgebraError(ValueError):
    """Malformed algebra description."""


class SignatureError(AlgebraError):
    """An operation is missing or has the wrong arity."""


class EvaluationError(AlgebraError):
    """A term cannot be evaluated (unbound variable, unknown operation)."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class FiniteAlgebra:
    """A finite algebra with operations of arity 0, 1 or 2.

    ``tables[op]`` is an int for constants, a length-n vector for unary and an
    n-by-n matrix for binary operations.  Instances are treated as immutable.
    """

    __slots__ = ("name", "elements", "signature", "tables", "_label_index")

    def __init__(self, name: str, elements: Sequence[str], tables: Mapping[str, object]):
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise AlgebraError("carrier must be nonempty")
        if len(set(elements)) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise AlgebraError(f"duplicate element label {dup!r}")
        n = len(elements)
        sig: dict[str, int] = {}
        tabs: dict[str, object] = {}
        for op, table in tables.items():
            if isinstance(table, (int, np.integer)):
                value = int(table)
                if not 0 <= value < n:
                    raise AlgebraError(f"constant {op!r} = {value} out of range for {n} elements")
                sig[op], tabs[op] = 0, value
                continue
            arr = np.asarray(table)
            if arr.dtype.kind not in "iu":
                raise AlgebraError(f"table for {op!r} must contain integer ids")
            if arr.ndim not in (1, 2) or any(s != n for s in arr.shape):
                raise AlgebraError(f"table for {op!r} has shape {arr.shape}, expected ({n},) or ({n}, {n})")
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                bad = int(arr.max()) if arr.max() >= n else int(arr.min())
                raise AlgebraError(f"table for {op!r} contains id {bad} out of range for {n} elements")
            sig[op], tabs[op] = arr.ndim, _freeze(arr)
        self.name = name
        self.elements = elements
        self.signature = sig
        self.tables = tabs
        self._label_index = {e: i for i, e in enumerate(elements)}

    def __repr__(self) -> str:
        ops = ", ".join(f"{k}/{v}" for k, v in self.signature.items())
        return f"FiniteAlgebra({self.name!r}, {len(self)} elements, {ops})"

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        if self.elements != other.elements or self.signature != other.signature:
            return False
        return all(np.array_equal(self.tables[k], other.tables[k]) for k in self.signature)

    __hash__ = None

    def arity(self, op: str) -> int:
        try:
            return self.signature[op]
        except KeyError:
            raise SignatureError(f"{self.name}: no operation {op!r}") from None

    def has(self, *ops: str) -> bool:
        return all(op in self.signature for op in ops)

    def require(self, *ops: str) -> None:
        missing = [op for op in ops if op not in self.signature]
        if missing:
            raise SignatureError(f"{self.name}: missing operation(s) {', '.join(missing)}")

    def table(self, op: str):
        self.arity(op)
        return self.tables[op]

    def apply(self, op: str, *args: int) -> int:
        ar = self.arity(op)
        if len(args) != ar:
            raise SignatureError(f"{op!r} takes {ar} argument(s), got {len(args)}")
        t = self.tables[op]
        return int(t) if ar == 0 else int(t[args])

    def index(self, label: "str | int") -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= int(label) < len(self):
                raise AlgebraError(f"element id {label} out of range")
            return int(label)
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise AlgebraError(f"{self.name}: unknown element {label!r}") from None

    def label(self, e: int) -> str:
        return self.elements[e]

    def ops_of_arity(self, k: int) -> list[str]:
        return [op for op, a in self.signature.items() if a == k]

    def reduct(self, ops: Iterable[str], name: str | None = None) -> "FiniteAlgebra":
        ops = list(ops)
        self.require(*ops)
        return FiniteAlgebra(name or self.name, self.elements, {op: self.tables[op] for op in ops})

    def expand(self, extra: Mapping[str, object], name: str | None = None) -> "FiniteAlgebra":
        tables = dict(self.tables)
        tables.update(extra)
        return FiniteAlgebra(name or self.name, self.elements, tables)

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(name, self.elements, self.tables)

    def relabeled(self, labels: Sequence[str], name: str | None = None) -> "FiniteAlgebra":
        return FiniteAlgebra(name or self.name, labels, self.tables)

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.signature == other.signature or (
            set(self.signature) == set(other.signature)
            and all(self.signature[k] == other.signature[k] for k in self.signature)
        )


def make_algebra(name: str, elements: Sequence[str], operations: Mapping[str, object]) -> FiniteAlgebra:
    """Build a validated algebra.  Table entries may be ids or element labels."""
    elements = [str(e) for e in elements]
    index = {e: i for i, e in enumerate(elements)}

    def conv(v):
        if isinstance(v, (list, tuple, np.ndarray)):
            return [conv(x) for x in v]
        if isinstance(v, bool):
            raise AlgebraError(f"invalid table entry {v!r}")
        if isinstance(v, (int, np.integer)):
            return int(v)
        if isinstance(v, str):
            if v in index:
                return index[v]
            raise AlgebraError(f"unknown element label {v!r}")
        raise AlgebraError(f"invalid table entry {v!r}")

    tables = {}
    for op, t in operations.items():
        t = conv(t)
        if isinstance(t, list):
            try:
                t = np.array(t, dtype=np.int64)
            except ValueError:
                raise AlgebraError(f"table for {op!r} is ragged") from None
        tables[op] = t
    return FiniteAlgebra(name, elements, tables)


def algebra_from_json(obj: "Mapping | str") -> FiniteAlgebra:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, Mapping):
        raise AlgebraError("algebra description must be a JSON object")
    for key in ("elements", "operations"):
        if key not in obj:
            raise AlgebraError(f"algebra description lacks {key!r}")
    if not isinstance(obj["operations"], Mapping):
        raise AlgebraError("'operations' must be an object")
    return make_algebra(str(obj.get("name", "A")), obj["elements"], obj["operations"])


def algebra_to_json(a: FiniteAlgebra) -> dict:
    ops = {}
    for op, ar in a.signature.items():
        t = a.tables[op]
        ops[op] = int(t) if ar == 0 else t.tolist()
    return {"name": a.name, "elements": list(a.elements), "operations": ops}


def load_algebra(path: str) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"{path}: malformed JSON ({exc.msg})") from None
    return algebra_from_json(obj)


# ---------------------------------------------------------------- evaluation


def eval_array(a: FiniteAlgebra, term: Formula, env: Mapping[str, np.ndarray]):
    """Evaluate ``term`` pointwise over arrays of element ids (broadcasting)."""
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {term.name!r}") from None
    op = term.op
    if op not in a.signature:
        raise EvaluationError(f"{a.name}: unknown operation {op!r}")
    ar = a.signature[op]
    t = a.tables[op]
    if isinstance(term, Const):
        if ar != 0:
            raise EvaluationError(f"{op!r} is not a constant")
        return np.int64(t)
    if isinstance(term, Unary):
        if ar != 1:
            raise EvaluationError(f"{op!r} is not unary")
        return t[eval_array(a, term.child, env)]
    if ar != 2:
        raise EvaluationError(f"{op!r} is not binary")
    return t[eval_array(a, term.left, env), eval_array(a, term.right, env)]


def eval_term(a: FiniteAlgebra, term: "Formula | str", assignment: Mapping[str, "int | str"]) -> int:
    term = as_formula(term)
    env = {k: np.int64(a.index(v)) for k, v in assignment.items()}
    return int(eval_array(a, term, env))


def term_table(a: FiniteAlgebra, term: "Formula | str", order: Sequence[str] | None = None) -> np.ndarray:
    """Full k-dimensional table of ``term`` over the variables in ``order``."""
    term = as_formula(term)
    order = list(order) if order is not None else variables(term)
    n, k = len(a), len(order)
    grids = np.indices((n,) * k, dtype=np.int64) if k else np.zeros((0,), dtype=np.int64)
    env = {v: grids[i] for i, v in enumerate(order)}
    out = eval_array(a, term, env)
    return np.broadcast_to(out, (n,) * k).copy()


def iter_assignment_blocks(n: int, k: int):
    """Yield (prefix, block) pairs covering ``range(n)**k`` in lex order.

    ``block`` has shape (k, m): the first len(prefix) rows are constant.
    """
    inner = k
    while inner > 0 and n ** inner > CHUNK:
        inner -= 1
    outer = k - inner
    if inner:
        tail = np.indices((n,) * inner, dtype=np.int64).reshape(inner, -1)
    else:
        tail = np.zeros((0, 1), dtype=np.int64)
    m = tail.shape[1]
    for prefix in itertools.product(range(n), repeat=outer):
        head = np.array(prefix, dtype=np.int64).reshape(outer, 1).repeat(m, axis=1)
        yield np.concatenate([head, tail], axis=0)


# ---------------------------------------------------------------- equations


@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula

    @classmethod
    def parse(cls, text: str) -> "Equation":
        if text.count("=") != 1:
            raise AlgebraError(f"equation needs exactly one '=': {text!r}")
        left, right = text.split("=")
        return cls(parse(left), parse(right))

    def variables(self) -> list[str]:
        return sorted(set(variables(self.lhs)) | set(variables(self.rhs)))

    def __str__(self) -> str:
        return f"{render(self.lhs)} = {render(self.rhs)}"


@dataclass(frozen=True)
class QuasiEquation:
    premises: tuple[Equation, ...]
    conclusion: Equation

    @classmethod
    def parse(cls, text: str) -> "QuasiEquation":
        """``"s1 = t1, s2 = t2 => s = t"``."""
        if "=>" not in text:
            raise AlgebraError(f"quasi-equation needs '=>': {text!r}")
        prem, concl = text.split("=>")
        premises = tuple(Equation.parse(p) for p in prem.split(",") if p.strip())
        return cls(premises, Equation.parse(concl))

    def variables(self) -> list[str]:
        vs = set(self.conclusion.variables())
        for p in self.premises:
            vs |= set(p.variables())
        return sorted(vs)

    def __str__(self) -> str:
        return ", ".join(map(str, self.premises)) + " => " + str(self.conclusion)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive check.

    ``counterexample`` maps variable names to element ids (ordered by
    variable) and is present exactly when ``holds`` is false.
    """

    holds: bool
    counterexample: dict | None = None
    law: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, a: FiniteAlgebra | None = None) -> str:
        if self.holds:
            return "holds"
        parts = []
        if self.law:
            parts.append(f"fails: {self.law}")
        else:
            parts.append("fails")
        if self.counterexample:
            if a is not None:
                cx = ", ".join(f"{k}={a.label(v)}" for k, v in self.counterexample.items())
            else:
                cx = ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
            parts.append(f"at {cx}")
        if self.detail:
            parts.append(f"({self.detail})")
        return " ".join(parts)


def _check_formula_sides(a: FiniteAlgebra, bad_fn, order: list[str]) -> CheckResult:
    n, k = len(a), len(order)
    for block in iter_assignment_blocks(n, k):
        env = {v: block[i] for i, v in enumerate(order)}
        bad = np.broadcast_to(bad_fn(env), block.shape[1:] if k else (1,))
        hits = np.flatnonzero(bad)
        if hits.size:
            j = int(hits[0])
            return CheckResult(False, {v: int(block[i, j]) for i, v in enumerate(order)})
    return CheckResult(True)


def _require_terms(a: FiniteAlgebra, terms: Iterable[Formula]) -> None:
    from .formula import operations

    for t in terms:
        for op in operations(t):
            if op not in a.signature:
                raise SignatureError(f"{a.name}: no operation {op!r}")


def check_equation(a: FiniteAlgebra, eq: "Equation | str") -> CheckResult:
    """Exhaustively decide ``eq`` in ``a``; least counterexample on failure."""
    if isinstance(eq, str):
        eq = Equation.parse(eq)
    _require_terms(a, (eq.lhs, eq.rhs))
    return _check_formula_sides(
        a, lambda env: eval_array(a, eq.lhs, env) != eval_array(a, eq.rhs, env), eq.variables()
    )


def check_quasiequation(a: FiniteAlgebra, qeq: "QuasiEquation | str") -> CheckResult:
    """Counterexample: least assignment meeting every premise but not the conclusion."""
    if isinstance(qeq, str):
        qeq = QuasiEquation.parse(qeq)
    terms = [qeq.conclusion.lhs, qeq.conclusion.rhs]
    for p in qeq.premises:
        terms += [p.lhs, p.rhs]
    _require_terms(a, terms)

    def bad(env):
        ok = eval_array(a, qeq.conclusion.lhs, env) != eval_array(a, qeq.conclusion.rhs, env)
        for p in qeq.premises:
            ok = ok & (eval_array(a, p.lhs, env) == eval_array(a, p.rhs, env))
        return ok

    return _check_formula_sides(a, bad, qeq.variables())


# ---------------------------------------------------------------- morphisms


@dataclass(frozen=True)
class Morphism:
    source: FiniteAlgebra = field(repr=False)
    target: FiniteAlgebra = field(repr=False)
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != len(self.source):
            raise AlgebraError("morphism must be total on its source")
        for v in self.mapping:
            if not 0 <= v < len(self.target):
                raise AlgebraError(f"morphism image {v} outside target")

    def __call__(self, e: int) -> int:
        return self.mapping[e]

    def labelled(self) -> dict[str, str]:
        return {self.source.label(i): self.target.label(v) for i, v in enumerate(self.mapping)}

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.mapping) == len(self.target)

    def preserves(self, op: str) -> CheckResult:
        """Check ``h(f(args)) = f(h(args))`` for one shared operation."""
        a, b = self.source, self.target
        ar = a.arity(op)
        if b.arity(op) != ar:
            raise SignatureError(f"{op!r} has different arities")
        h = np.array(self.mapping, dtype=np.int64)
        ta, tb = a.tables[op], b.tables[op]
        if ar == 0:
            ok = h[ta] == tb
            return CheckResult(bool(ok), None if ok else {}, detail=None if ok else f"constant {op}")
        if ar == 1:
            bad = h[ta] != tb[h]
            hits = np.flatnonzero(bad)
            if hits.size:
                return CheckResult(False, {"x": int(hits[0])})
            return CheckResult(True)
        bad = h[ta] != tb[h[:, None], h[None, :]]
        hits = np.argwhere(bad)
        if hits.size:
            return CheckResult(False, {"x": int(hits[0][0]), "y": int(hits[0][1])})
        return CheckResult(True)

    def is_homomorphism(self, ops: Iterable[str] | None = None) -> bool:
        ops = list(self.source.signature) if ops is None else list(ops)
        return all(self.preserves(op).holds for op in ops)

    def is_isomorphism(self) -> bool:
        return self.is_bijective() and self.is_homomorphism()

    def compose(self, other: "Morphism") -> "Morphism":
        """``other`` after ``self``."""
        return Morphism(self.source, other.target, tuple(other.mapping[v] for v in self.mapping))

    def inverse(self) -> "Morphism":
        if not self.is_bijective():
            raise AlgebraError("only bijections have inverses")
        inv = [0] * len(self.mapping)
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Morphism(self.target, self.source, tuple(inv))


def identity(a: FiniteAlgebra) -> Morphism:
    return Morphism(a, a, tuple(range(len(a))))


def _fingerprints(a: FiniteAlgebra) -> list[tuple]:
    """Isomorphism-invariant features of each element."""
    n = len(a)
    ids = np.arange(n)
    feats = [[] for _ in range(n)]
    for op in sorted(a.signature):
        ar, t = a.signature[op], a.tables[op]
        if ar == 0:
            col = (ids == t).astype(int)
            for e in range(n):
                feats[e].append(int(col[e]))
        elif ar == 1:
            fixed = t == ids
            inv = t[t] == ids
            img = np.bincount(t, minlength=n)
            for e in range(n):
                feats[e].extend((bool(fixed[e]), bool(inv[e]), int(img[e])))
        else:
            idem = t[ids, ids] == ids
            left_abs = (t == ids[:, None]).sum(axis=1)
            right_abs = (t == ids[None, :]).sum(axis=0)
            left_id = (t == ids[None, :]).sum(axis=1)
            img = np.bincount(t.ravel(), minlength=n)
            for e in range(n):
                feats[e].extend((bool(idem[e]), int(left_abs[e]), int(right_abs[e]), int(left_id[e]), int(img[e])))
    return [tuple(f) for f in feats]


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Morphism | None:
    """Lexicographically least isomorphism ``a -> b``, or ``None``."""
    if not a.same_signature(b):
        raise SignatureError(f"{a.name} and {b.name} have different signatures")
    n = len(a)
    if n != len(b):
        return None
    fa, fb = _fingerprints(a), _fingerprints(b)
    if sorted(fa) != sorted(fb):
        return None
    cands = [[y for y in range(n) if fb[y] == fa[x]] for x in range(n)]
    unary = [(a.tables[op], b.tables[op]) for op in a.signature if a.signature[op] == 1]
    binary = [(a.tables[op], b.tables[op]) for op in a.signature if a.signature[op] == 2]
    fwd = [-1] * n
    bwd = [-1] * n
    forced = {}
    for op in a.signature:
        if a.signature[op] == 0:
            x, y = int(a.tables[op]), int(b.tables[op])
            if forced.get(x, y) != y:
                return None
            forced[x] = y

    def assign(pairs):
        """Assign pairs and propagate; return undo list or None on conflict."""
        undo = []
        queue = list(pairs)
        while queue:
            x, y = queue.pop()
            if fwd[x] == y:
                continue
            if fwd[x] != -1 or bwd[y] != -1 or fa[x] != fb[y]:
                for u in undo:
                    bwd[fwd[u]] = -1
                    fwd[u] = -1
                return None
            fwd[x], bwd[y] = y, x
            undo.append(x)
            for ta, tb in unary:
                queue.append((int(ta[x]), int(tb[y])))
            done = [u for u in range(n) if fwd[u] != -1]
            for ta, tb in binary:
                for u in done:
                    v = fwd[u]
                    queue.append((int(ta[x, u]), int(tb[y, v])))
                    queue.append((int(ta[u, x]), int(tb[v, y])))
        return undo

    def release(undo):
        for u in undo:
            bwd[fwd[u]] = -1
            fwd[u] = -1

    if assign(forced.items()) is None:
        return None

    def search() -> bool:
        try:
            x = fwd.index(-1)
        except ValueError:
            return True
        for y in cands[x]:
            if bwd[y] != -1:
                continue
            undo = assign([(x, y)])
            if undo is None:
                continue
            if search():
                return True
            release(undo)
        return False

    if not search():
        return None
    m = Morphism(a, b, tuple(fwd))
    assert m.is_isomorphism()
    return m


# ---------------------------------------------------------------- constructions


def _closure_tables(a: FiniteAlgebra):
    unary = [np.asarray(a.tables[op]) for op in a.ops_of_arity(1)]
    binary = [np.asarray(a.tables[op]) for op in a.ops_of_arity(2)]
    consts = [int(a.tables[op]) for op in a.ops_of_arity(0)]
    return unary, binary, consts


def close_mask(a: FiniteAlgebra, mask: int, _cache=None) -> int:
    unary, binary, consts = _cache or _closure_tables(a)
    return int(kernels.close_subset(mask, len(a), unary, binary, consts))


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def members(mask: int) -> list[int]:
    out, e = [], 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def restrict(a: FiniteAlgebra, subset: Iterable[int], name: str | None = None) -> tuple[FiniteAlgebra, Morphism]:
    """Subalgebra on a closed subset (kept in increasing id order) plus inclusion."""
    subset = sorted(set(int(e) for e in subset))
    if not subset:
        raise AlgebraError("subalgebra carrier must be nonempty")
    pos = {e: i for i, e in enumerate(subset)}
    idx = np.array(subset, dtype=np.int64)
    tables = {}
    for op, ar in a.signature.items():
        t = a.tables[op]
        vals = np.atleast_1d(t) if ar == 0 else (t[idx] if ar == 1 else t[np.ix_(idx, idx)])
        try:
            mapped = np.vectorize(pos.__getitem__, otypes=[np.int64])(vals)
        except KeyError as exc:
            raise AlgebraError(f"subset not closed under {op!r} (produces {a.label(int(exc.args[0]))})") from None
        tables[op] = int(mapped[0]) if ar == 0 else mapped
    sub = FiniteAlgebra(name or f"{a.name}|{len(subset)}", [a.label(e) for e in subset], tables)
    return sub, Morphism(sub, a, tuple(subset))


def generated_subalgebra(a: FiniteAlgebra, seed: Iterable["int | str"], name: str | None = None):
    """Least subalgebra containing ``seed``; returns (subalgebra, inclusion)."""
    mask = mask_of(a.index(e) for e in seed)
    return restrict(a, members(close_mask(a, mask)), name)


def subalgebra_masks(a: FiniteAlgebra, required: int = 0, limit: int | None = None) -> list[int]:
    """All subalgebra carriers (bitmasks) containing ``required``, smallest
    first then by mask value.  Breadth-first over one-element extensions."""
    cache = _closure_tables(a)
    n = len(a)
    start = close_mask(a, required, cache)
    if start == 0:
        # no constants and nothing required: every singleton generates one
        frontier = sorted({close_mask(a, 1 << e, cache) for e in range(n)})
    else:
        frontier = [start]
    seen = set(frontier)
    queue = list(frontier)
    while queue:
        s = queue.pop()
        for e in range(n):
            if s >> e & 1:
                continue
            t = close_mask(a, s | (1 << e), cache)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    out = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    return out if limit is None else out[:limit]


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Componentwise product on pairs ordered lexicographically."""
    if not a.same_signature(b):
        raise SignatureError(f"{a.name} and {b.name} have different signatures")
    na, nb = len(a), len(b)
    labels = [f"({x},{y})" for x in a.elements for y in b.elements]
    tables = {}
    for op, ar in a.signature.items():
        ta, tb = a.tables[op], b.tables[op]
        if ar == 0:
            tables[op] = int(ta) * nb + int(tb)
        elif ar == 1:
            i = np.arange(na * nb)
            tables[op] = ta[i // nb] * nb + tb[i % nb]
        else:
            i = np.arange(na * nb)
            x, y = i // nb, i % nb
            tables[op] = ta[x[:, None], x[None, :]] * nb + tb[y[:, None], y[None, :]]
    return FiniteAlgebra(name or f"{a.name}x{b.name}", labels, tables)


def power(a: FiniteAlgebra, k: int) -> FiniteAlgebra:
    out = a
    for _ in range(k - 1):
        out = direct_product(out, a)
    return out
