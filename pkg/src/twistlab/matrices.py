"""The named three- and four-valued logical matrices, validity and entailment.

Carriers: A3 = (0, ½, 1) and A4 = (0, ⊥, ⊤, 1), ids in that order.  The
center constant is the operation ``top`` in both cases.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    AlgebraError, FiniteAlgebra, SignatureError, eval_array, iter_assignment_blocks, term_table,
)
from .formula import Formula, as_formula, operations, parse, render, variables

A3 = ("0", "½", "1")
A4 = ("0", "⊥", "⊤", "1")


class UnknownMatrixError(KeyError):
    pass


# three-valued tables, ids 0, ½, 1
NEG3 = [2, 1, 0]
AND_K3 = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
OR_K3 = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
AND_OL3 = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
OR_OL3 = [[0, 0, 2], [0, 1, 2], [2, 2, 2]]
IMP_OL3 = [[1, 1, 1], [0, 1, 2], [0, 1, 2]]
IMP_DF3 = [[1, 1, 1], [1, 1, 1], [0, 1, 2]]
IMP_F3 = [[1, 1, 1], [0, 1, 1], [0, 1, 2]]

# four-valued tables, ids 0, ⊥, ⊤, 1
NEG_G = [3, 1, 2, 0]
NEG_F = [3, 2, 1, 0]
AND_K4 = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
OR_K4 = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
AND_OL4 = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 2, 3], [0, 1, 3, 3]]
OR_OL4 = [[0, 1, 0, 3], [1, 3, 1, 3], [0, 1, 2, 3], [3, 3, 3, 3]]
IMP_OL4 = [[2, 2, 2, 2], [2, 2, 2, 2], [0, 1, 2, 3], [0, 1, 2, 3]]
IMP_DF4 = [[2, 2, 2, 2], [0, 1, 0, 1], [2, 2, 2, 2], [0, 1, 2, 3]]
IMP_F4 = [[2, 2, 2, 2], [2, 3, 2, 3], [0, 0, 2, 2], [0, 1, 2, 3]]

# qualified connectives ("->ol", "&k", ...) resolved by carrier
LIBRARY = {
    A3: {
        "and_k": AND_K3, "or_k": OR_K3, "and_ol": AND_OL3, "or_ol": OR_OL3,
        "imp_ol": IMP_OL3, "imp_df": IMP_DF3, "imp_f": IMP_F3,
    },
    A4: {
        "and_k": AND_K4, "or_k": OR_K4, "and_ol": AND_OL4, "or_ol": OR_OL4,
        "imp_ol": IMP_OL4, "imp_df": IMP_DF4, "imp_f": IMP_F4,
    },
}


@dataclass(frozen=True)
class LogicalMatrix:
    algebra: FiniteAlgebra
    designated: frozenset

    def __post_init__(self):
        if not self.designated:
            raise AlgebraError("designated set must be nonempty")
        if any(not 0 <= d < len(self.algebra) for d in self.designated):
            raise AlgebraError("designated set must lie inside the carrier")

    @property
    def name(self) -> str:
        return self.algebra.name

    def designated_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.algebra), dtype=bool)
        mask[sorted(self.designated)] = True
        return mask


@dataclass(frozen=True)
class Verdict:
    valid: bool
    counter_valuation: dict | None = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self, m: LogicalMatrix) -> str:
        if self.valid:
            return "valid"
        cx = ", ".join(f"{k}={m.algebra.label(v)}" for k, v in (self.counter_valuation or {}).items())
        return f"invalid at {cx}" if cx else "invalid"


def _tables3(neg, imp, and_=AND_K3, or_=OR_K3, center=True):
    t = {"neg": neg, "and": and_, "or": or_, "imp": imp}
    if center:
        t["top"] = 1
    return t


def _build(name: str) -> LogicalMatrix:
    if name == "OL3":
        t = _tables3(NEG3, IMP_OL3, AND_OL3, OR_OL3, center=False)
        return LogicalMatrix(FiniteAlgebra(name, A3, _arr(t)), frozenset({1, 2}))
    if name in ("DF3", "CN3", "F3"):
        imp = {"DF3": IMP_DF3, "CN3": IMP_OL3, "F3": IMP_F3}[name]
        return LogicalMatrix(FiniteAlgebra(name, A3, _arr(_tables3(NEG3, imp))), frozenset({1, 2}))
    des = frozenset({2, 3})
    if name in ("OLg4", "OLf4"):
        neg = NEG_G if name == "OLg4" else NEG_F
        t = {"neg": neg, "and": AND_OL4, "or": OR_OL4, "imp": IMP_OL4}
        return LogicalMatrix(FiniteAlgebra(name, A4, _arr(t)), des)
    if name in ("DFg4", "CNg4", "Fg4"):
        imp = {"DFg4": IMP_DF4, "CNg4": IMP_OL4, "Fg4": IMP_F4}[name]
        t = {"neg": NEG_G, "and": AND_K4, "or": OR_K4, "imp": imp, "zero": 0, "bot": 1, "top": 2}
        return LogicalMatrix(FiniteAlgebra(name, A4, _arr(t)), des)
    if name == "DFf4":
        t = {"neg": NEG_F, "and": AND_K4, "or": OR_K4, "zero": 0, "bot": 1, "top": 2, "one": 3}
        return LogicalMatrix(FiniteAlgebra(name, A4, _arr(t)), des)
    if name in ("CNf4", "Ff4"):
        imp = IMP_OL4 if name == "CNf4" else IMP_F4
        t = {"neg": NEG_F, "and": AND_K4, "or": OR_K4, "imp": imp, "zero": 0, "bot": 1, "top": 2, "one": 3}
        return LogicalMatrix(FiniteAlgebra(name, A4, _arr(t)), des)
    raise UnknownMatrixError(name)


def _arr(t: dict) -> dict:
    return {k: (v if isinstance(v, int) else np.array(v)) for k, v in t.items()}


MATRIX_NAMES = ("DF3", "OL3", "CN3", "F3", "DFg4", "OLg4", "CNg4", "Fg4", "DFf4", "OLf4", "CNf4", "Ff4")
_CACHE: dict[str, LogicalMatrix] = {}


def named_matrix(name: str) -> LogicalMatrix:
    """One of the twelve built-in matrices (see ``MATRIX_NAMES``)."""
    if name not in MATRIX_NAMES:
        raise UnknownMatrixError(f"unknown matrix {name!r}; known: {', '.join(MATRIX_NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _build(name)
    return _CACHE[name]


def with_library(a: FiniteAlgebra, ops: Iterable[str]) -> FiniteAlgebra:
    """Add qualified library connectives used by a formula, if the carrier is A3/A4."""
    extra = {}
    lib = LIBRARY.get(a.elements, {})
    for op in ops:
        if op not in a.signature and op in lib:
            extra[op] = np.array(lib[op])
    return a.expand(extra) if extra else a


def resolve(m: LogicalMatrix, f: Formula) -> FiniteAlgebra:
    """The matrix algebra, extended by any qualified connectives ``f`` uses;
    raises SignatureError for anything unresolvable."""
    ops = operations(f)
    a = with_library(m.algebra, ops)
    missing = sorted(op for op in ops if op not in a.signature)
    if missing:
        raise SignatureError(f"{m.name}: no connective(s) {', '.join(missing)}")
    return a


def _scan(m: LogicalMatrix, formulas: Sequence[Formula], order: list[str]) -> Verdict:
    """Least valuation designating every formula but the last, and not the last."""
    a = m.algebra
    for f in formulas:
        a = with_library(a, operations(f))
    for f in formulas:
        resolve(LogicalMatrix(a, m.designated), f)
    des = m.designated_mask()
    n, k = len(a), len(order)
    for block in iter_assignment_blocks(n, k):
        env = {v: block[i] for i, v in enumerate(order)}
        shape = block.shape[1:]
        bad = np.broadcast_to(~des[eval_array(a, formulas[-1], env)], shape)
        for p in formulas[:-1]:
            bad = bad & np.broadcast_to(des[eval_array(a, p, env)], shape)
        hits = np.flatnonzero(bad)
        if hits.size:
            j = int(hits[0])
            return Verdict(False, {v: int(block[i, j]) for i, v in enumerate(order)})
    return Verdict(True)


def is_valid(m: LogicalMatrix, f: "Formula | str") -> Verdict:
    f = as_formula(f)
    return _scan(m, [f], variables(f))


def entails(m: LogicalMatrix, premises: Sequence["Formula | str"], conclusion: "Formula | str") -> Verdict:
    prem = [as_formula(p) for p in premises]
    concl = as_formula(conclusion)
    vs = set(variables(concl))
    for p in prem:
        vs |= set(variables(p))
    return _scan(m, prem + [concl], sorted(vs))


THESES = {
    "A1": "~(p -> ~p)",
    "A2": "~(~p -> p)",
    "B1": "(p -> q) -> ~(p -> ~q)",
    "B2": "(p -> ~q) -> ~(p -> q)",
}


def check_theses(m: LogicalMatrix) -> dict[str, Verdict]:
    m.algebra.require("neg", "imp")
    return {name: is_valid(m, parse(text)) for name, text in THESES.items()}


def connective_table(m: LogicalMatrix, item: "str | Formula") -> np.ndarray:
    """Table of a signature connective (by name) or of a formula over its
    sorted variables."""
    a = m.algebra
    if isinstance(item, str) and item in a.signature:
        t = a.tables[item]
        return np.array(t)
    if isinstance(item, str) and item in LIBRARY.get(a.elements, {}):
        return np.array(LIBRARY[a.elements][item])
    f = as_formula(item)
    return term_table(resolve(m, f), f)


def table_header(m: LogicalMatrix, item) -> str:
    return item if isinstance(item, str) and not _looks_formula(item, m) else render(as_formula(item))


def _looks_formula(item: str, m: LogicalMatrix) -> bool:
    return item not in m.algebra.signature and item not in LIBRARY.get(m.algebra.elements, {})


def export_table(m: LogicalMatrix, item, fmt: str = "text") -> str:
    """Render a table (arity ≤ 2) as aligned text, CSV, or JSON."""
    t = connective_table(m, item)
    if t.ndim > 2:
        raise AlgebraError("only tables of arity at most 2 can be exported")
    labels = m.algebra.elements
    name = table_header(m, item)
    if fmt == "json":
        obj = {
            "name": name,
            "elements": list(labels),
            "designated": [labels[d] for d in sorted(m.designated)],
            "table": t.tolist() if t.ndim else int(t),
        }
        return json.dumps(obj, ensure_ascii=False)
    rows: list[list[str]]
    if t.ndim == 0:
        rows = [[name], [labels[int(t)]]]
    elif t.ndim == 1:
        rows = [[name, ""]] + [[labels[i], labels[v]] for i, v in enumerate(t)]
    else:
        rows = [[name] + list(labels)] + [[labels[i]] + [labels[v] for v in row] for i, row in enumerate(t)]
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    width = max(len(c) for r in rows for c in r)
    return "\n".join(" ".join(c.ljust(width) for c in r).rstrip() for r in rows) + "\n"


# knowledge-order operations on the four-valued f-matrices
KNOWLEDGE_MEET = "(x & B) | (y & B) | (x & y)"
KNOWLEDGE_JOIN = "(x & T) | (y & T) | (x & y)"


def matrix_json(m: LogicalMatrix) -> dict:
    from .algebra import algebra_to_json

    out = algebra_to_json(m.algebra)
    out["designated"] = [m.algebra.label(d) for d in sorted(m.designated)]
    return out
