"""Twist algebras over factor algebras.

Elements are pairs of factor ids ordered lexicographically and labelled
``(x,y)`` with the factors' labels.  Every kind exposes the signature of its
named matrix, with derived operations stored as ordinary tables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra import (
    AlgebraError, CheckResult, FiniteAlgebra, Morphism, SignatureError, algebra_from_json, algebra_to_json,
    identity, load_algebra, members, restrict, subalgebra_masks,
)
from .classes import classify
from .factors import factor as builtin_factor

KINDS = ("OL", "DF", "CN", "F", "OLg", "DFg", "CNg", "Fg", "DFf", "OLf", "CNf", "Ff")
TWO_FACTOR = {"DFf", "CNf", "Ff"}


class TwistError(AlgebraError):
    """Invalid twist specification."""


# factor signature and required class per kind; second entry for factor2
FACTOR_OPS = {
    "DF": ("and", "or", "one"),
    "CN": ("and", "or", "imp", "one"),
    "F": ("and", "or", "imp", "one"),
    "OL": ("and", "or", "imp", "one"),
    "DFg": ("and", "or", "zero", "one"),
    "CNg": ("and", "or", "imp", "zero", "one"),
    "Fg": ("and", "or", "imp", "zero", "one"),
    "OLg": ("and", "or", "imp", "zero", "one"),
    "OLf": ("neg", "and", "or", "imp", "zero", "one"),
    "CNf": ("neg", "and", "or", "imp", "zero", "one"),
    "DFf": ("neg", "and", "or", "zero", "one"),
    "Ff": ("neg", "and", "or", "imp", "zero", "one"),
}
FACTOR2_OPS = {
    "DFf": ("neg", "and", "or", "zero", "one"),
    "CNf": ("neg", "and", "or", "imp", "zero", "one"),
    "Ff": ("neg", "and", "or", "zero", "one"),
}
FACTOR_CLASS = {
    "DF": "upper-bounded-distributive-lattice",
    "CN": "generalized-boolean",
    "F": "generalized-boolean",
    "OL": "generalized-boolean",
    "DFg": "bounded-distributive-lattice",
    "CNg": "boolean",
    "Fg": "boolean",
    "OLg": "boolean",
    "OLf": "boolean",
    "CNf": "boolean",
    "DFf": "de-morgan-algebra",
    "Ff": "boolean",
}
FACTOR2_CLASS = {"DFf": "de-morgan-algebra", "CNf": "boolean", "Ff": "de-morgan-algebra"}

# class each full twist (and its pi1-full subalgebras) belongs to
TARGET_CLASS = {
    "DF": "centered-kleene",
    "CN": "cn-algebra",
    "F": "f-algebra",
    "DFg": "dfg-algebra",
    "CNg": "cng-algebra",
    "Fg": "fg-algebra",
    "DFf": "dff-algebra",
    "Ff": "ff-algebra",
}

# twist signatures mirror the named matrices
SIGNATURE = {
    "OL": ("neg", "and", "or", "imp"),
    "DF": ("neg", "and", "or", "imp", "top"),
    "CN": ("neg", "and", "or", "imp", "top"),
    "F": ("neg", "and", "or", "imp", "top"),
    "OLg": ("neg", "and", "or", "imp"),
    "DFg": ("neg", "and", "or", "imp", "zero", "bot", "top"),
    "CNg": ("neg", "and", "or", "imp", "zero", "bot", "top"),
    "Fg": ("neg", "and", "or", "imp", "zero", "bot", "top"),
    "DFf": ("neg", "and", "or", "imp", "zero", "bot", "top", "one"),
    "OLf": ("neg", "and", "or", "imp"),
    "CNf": ("neg", "and", "or", "imp", "zero", "bot", "top", "one"),
    "Ff": ("neg", "and", "or", "imp", "zero", "bot", "top", "one"),
}
MATRIX_OF_KIND = {
    "DFg": "DFg4", "OLg": "OLg4", "CNg": "CNg4", "Fg": "Fg4",
    "DFf": "DFf4", "OLf": "OLf4", "CNf": "CNf4", "Ff": "Ff4",
    "DF": "DF3", "OL": "OL3", "CN": "CN3", "F": "F3",
}


@dataclass(frozen=True)
class TwistSpec:
    kind: str
    factor1: FiniteAlgebra
    factor2: FiniteAlgebra | None = None
    rho: tuple[int, ...] | None = None

    def second(self) -> FiniteAlgebra:
        return self.factor2 if self.factor2 is not None else self.factor1


@dataclass(frozen=True)
class TwistAlgebra:
    kind: str
    algebra: FiniteAlgebra
    factor1: FiniteAlgebra
    factor2: FiniteAlgebra
    pairs: tuple[tuple[int, int], ...]
    rho: tuple[int, ...] | None = None
    inclusion: Morphism | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def pi1(self, e: int) -> int:
        return self.pairs[e][0]

    def pi2(self, e: int) -> int:
        return self.pairs[e][1]

    def element(self, x: int, y: int) -> int:
        return self.pairs.index((x, y))

    def is_full(self) -> bool:
        return self.inclusion is None


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise TwistError(f"unknown twist kind {kind!r}; known: {', '.join(KINDS)}")


def _fit(a: FiniteAlgebra, ops, role: str) -> FiniteAlgebra:
    missing = [op for op in ops if op not in a.signature]
    if missing:
        raise SignatureError(f"{role} {a.name} lacks operation(s) {', '.join(missing)}")
    return a.reduct(ops)


def validate_spec(spec: TwistSpec, check_classes: bool = True) -> tuple[FiniteAlgebra, FiniteAlgebra, tuple | None]:
    """Return the factor reducts and rho after checking the kind's requirements."""
    kind = spec.kind
    _check_kind(kind)
    f1 = _fit(spec.factor1, FACTOR_OPS[kind], "factor1")
    if kind in TWO_FACTOR:
        f2 = _fit(spec.second(), FACTOR2_OPS[kind], "factor2")
    else:
        if spec.factor2 is not None:
            raise TwistError(f"kind {kind} takes a single factor")
        f2 = f1
    if check_classes:
        r = classify(f1, FACTOR_CLASS[kind])
        if not r.holds:
            raise TwistError(f"factor1 {f1.name} is not {FACTOR_CLASS[kind]}: {r.describe(f1)}")
        if kind in TWO_FACTOR:
            r = classify(f2, FACTOR2_CLASS[kind])
            if not r.holds:
                raise TwistError(f"factor2 {f2.name} is not {FACTOR2_CLASS[kind]}: {r.describe(f2)}")
    rho = None
    if kind == "CNf":
        if spec.rho is None:
            if spec.factor2 is not None and not f1 == f2:
                raise TwistError("CNf with distinct factors needs an embedding rho")
            rho = tuple(range(len(f1)))
        else:
            rho = tuple(int(v) for v in spec.rho)
        try:
            m = Morphism(f1, f2, rho)
        except AlgebraError as exc:
            raise TwistError(f"rho: {exc}") from None
        if not (m.is_injective() and m.is_homomorphism()):
            raise TwistError("rho is not an embedding")
    elif spec.rho is not None:
        raise TwistError("rho is only meaningful for CNf")
    if kind in ("DFg", "CNg", "Fg", "OLg") and len(f1) < 2 and check_classes:
        raise TwistError(f"{kind} needs a nontrivial factor (the two centers must differ)")
    return f1, f2, rho


def twist_build(spec: TwistSpec, check_classes: bool = True) -> TwistAlgebra:
    """Build the full twist algebra described by ``spec``."""
    f1, f2, rho = validate_spec(spec, check_classes)
    kind = spec.kind
    n1, n2 = len(f1), len(f2)
    and1, or1 = f1.tables["and"], f1.tables["or"]
    and2, or2 = f2.tables["and"], f2.tables["or"]
    imp1 = f1.tables.get("imp")

    if kind == "OL":
        keep = [(x, y) for x in range(n1) for y in range(n2) if imp1[x, y] == y]
    elif kind in ("DF", "CN", "F"):
        one = f1.tables["one"]
        keep = [(x, y) for x in range(n1) for y in range(n2) if or1[x, y] == one]
    else:
        keep = [(x, y) for x in range(n1) for y in range(n2)]
    if not keep:
        raise TwistError("empty twist universe")
    X = np.array([p[0] for p in keep], dtype=np.int64)
    Y = np.array([p[1] for p in keep], dtype=np.int64)
    lookup = np.full(n1 * n2, -1, dtype=np.int64)
    lookup[X * n2 + Y] = np.arange(len(keep))

    def enc(x, y):
        ids = lookup[np.asarray(x) * n2 + np.asarray(y)]
        if (ids < 0).any():
            raise TwistError(f"{kind} twist over {f1.name} is not closed under its operations")
        return ids

    def const(x, y):
        return int(enc(np.int64(x), np.int64(y)))

    x1, x2 = X[:, None], X[None, :]
    y1, y2 = Y[:, None], Y[None, :]
    t: dict[str, object] = {}
    if kind in ("OL", "OLg", "OLf"):
        t["and"] = enc(and1[x1, x2], and1[imp1[x1, y2], imp1[x2, y1]])
        t["imp"] = enc(imp1[x1, x2], imp1[x1, y2])
        if kind == "OLf":
            neg1 = f1.tables["neg"]
            t["neg"] = enc(neg1[X], neg1[Y])
        else:
            t["neg"] = enc(Y, X)
        # De Morgan dual of the twisted meet under the swap negation
        t["or"] = enc(and1[imp1[y1, x2], imp1[y2, x1]], and1[y1, y2])
    else:
        t["and"] = enc(and1[x1, x2], or2[y1, y2])
        t["or"] = enc(or1[x1, x2], and2[y1, y2])
        if kind in ("DFf", "CNf", "Ff"):
            t["neg"] = enc(f1.tables["neg"][X], f2.tables["neg"][Y])
        else:
            t["neg"] = enc(Y, X)
        if kind in ("DF", "CN", "F"):
            t["top"] = const(f1.tables["one"], f1.tables["one"])
        else:
            z1, z2 = f1.tables["zero"], f2.tables["zero"]
            o1, o2 = f1.tables["one"], f2.tables["one"]
            t["zero"] = const(z1, o2)
            t["bot"] = const(z1, z2)
            t["top"] = const(o1, o2)
            if kind in TWO_FACTOR:
                t["one"] = const(o1, z2)
        if kind in ("CN", "CNg"):
            t["imp"] = enc(imp1[x1, x2], imp1[x1, y2])
        elif kind in ("F", "Fg", "Ff"):
            t["imp"] = enc(imp1[x1, x2], or2[y1, y2])
        elif kind == "CNf":
            r = np.array(rho, dtype=np.int64)
            t["imp"] = enc(imp1[x1, x2], f2.tables["imp"][r[x1], y2])
        else:  # DF, DFg, DFf: derived from the twisted meet, join and center
            meet, join, neg = t["and"], t["or"], t["neg"]
            top = t["top"]
            left = meet[top, neg]
            t["imp"] = join[left[:, None], meet]
    labels = [f"({f1.label(x)},{f2.label(y)})" for x, y in keep]
    tables = {op: t[op] for op in SIGNATURE[kind]}
    alg = FiniteAlgebra(f"{kind}-twist({f1.name}" + (f",{f2.name})" if kind in TWO_FACTOR else ")"), labels, tables)
    return TwistAlgebra(kind, alg, f1, f2, tuple(keep), rho)


def as_subtwist(t: TwistAlgebra, subset, name: str | None = None) -> TwistAlgebra:
    sub, inc = restrict(t.algebra, subset, name)
    pairs = tuple(t.pairs[e] for e in inc.mapping)
    return TwistAlgebra(t.kind, sub, t.factor1, t.factor2, pairs, t.rho, inc)


def enumerate_pi1_full_subalgebras(t: TwistAlgebra, limit: int | None = None) -> list[TwistAlgebra]:
    """Subalgebras whose first projection covers factor1, full algebra first,
    then by decreasing size and carrier."""
    if limit is not None and limit <= 0:
        return []
    n1 = len(t.factor1)
    out = []
    masks = subalgebra_masks(t.algebra)
    for m in sorted(masks, key=lambda m: (-bin(m).count("1"), m)):
        ids = members(m)
        if len({t.pairs[e][0] for e in ids}) == n1:
            out.append(m)
            if limit is not None and len(out) >= limit:
                break
    full = (1 << len(t.pairs)) - 1
    return [t if m == full else as_subtwist(t, members(m), f"{t.algebra.name}|{bin(m).count('1')}") for m in out]


def check_universe_equivalence(b: FiniteAlgebra, check_class: bool = True) -> CheckResult:
    """For all a1, a2: a1 -> a2 = a2 iff a1 | a2 = 1."""
    b.require("and", "or", "imp", "one")
    if check_class:
        r = classify(b.reduct(["and", "or", "imp", "one"]), "generalized-boolean")
        if not r.holds:
            raise TwistError(f"{b.name} is not a generalized Boolean algebra: {r.describe(b)}")
    imp, join, one = b.tables["imp"], b.tables["or"], b.tables["one"]
    n = len(b)
    i = np.arange(n)
    lhs = imp == i[None, :]
    rhs = join == one
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return CheckResult(False, {"a1": int(bad[0][0]), "a2": int(bad[0][1])})
    return CheckResult(True)


def closed_form_imp(t: TwistAlgebra) -> np.ndarray:
    """Pair formula for the derived implication: DF kinds use
    (x2 | (x1 & y1), x2 | y2); Ff uses (~x1 | y1, x2 | y2)."""
    f1, f2 = t.factor1, t.factor2
    X = np.array([p[0] for p in t.pairs])
    Y = np.array([p[1] for p in t.pairs])
    and1, or1, or2 = f1.tables["and"], f1.tables["or"], f2.tables["or"]
    x1, y1 = X[:, None], X[None, :]
    x2, y2 = Y[:, None], Y[None, :]
    if t.kind in ("DF", "DFg"):
        first, second = or1[x2, and1[x1, y1]], or1[x2, y2]
    elif t.kind == "Ff":
        first, second = or1[f1.tables["neg"][x1], y1], or2[x2, y2]
    else:
        raise TwistError(f"no closed form for kind {t.kind}")
    index = {p: i for i, p in enumerate(t.pairs)}
    out = np.full(first.shape, -1, dtype=np.int64)
    for a in range(first.shape[0]):
        for b in range(first.shape[1]):
            out[a, b] = index.get((int(first[a, b]), int(second[a, b])), -1)
    return out


def derived_imp(t: TwistAlgebra) -> np.ndarray:
    """Table of (T & ~x) | (x & y) computed from the twist's own operations."""
    a = t.algebra
    meet, join, neg, top = a.tables["and"], a.tables["or"], a.tables["neg"], a.tables["top"]
    return join[meet[top, neg][:, None], meet]


def check_closed_forms(t: TwistAlgebra) -> CheckResult:
    """DF/DFg: the derived implication matches its pair formula.  Ff: the
    term (T & ~x) | (x & y) matches both its pair formula and the primitive
    implication."""
    if t.kind not in ("DF", "DFg", "Ff"):
        raise TwistError(f"closed forms are defined for DF, DFg and Ff twists, not {t.kind}")
    derived = derived_imp(t)
    closed = closed_form_imp(t)
    bad = np.argwhere(derived != closed)
    if bad.size:
        return CheckResult(False, {"x": int(bad[0][0]), "y": int(bad[0][1])}, detail="pair formula")
    bad = np.argwhere(derived != t.algebra.tables["imp"])
    if bad.size:
        return CheckResult(False, {"x": int(bad[0][0]), "y": int(bad[0][1])}, detail="primitive implication")
    return CheckResult(True)


# ---------------------------------------------------------------- JSON


def _factor_from(obj, base_dir: str | None = None) -> FiniteAlgebra:
    if isinstance(obj, Mapping):
        return algebra_from_json(obj)
    if isinstance(obj, str):
        try:
            return builtin_factor(obj)
        except KeyError:
            pass
        import os

        path = obj if base_dir is None or os.path.isabs(obj) else os.path.join(base_dir, obj)
        if os.path.exists(path):
            return load_algebra(path)
        raise TwistError(f"factor {obj!r} is neither a built-in factor nor a readable file")
    raise TwistError("factor must be an algebra object, a built-in name or a path")


def spec_from_json(obj: "Mapping | str", base_dir: str | None = None) -> TwistSpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, Mapping) or "kind" not in obj or "factor1" not in obj:
        raise TwistError("twist spec needs 'kind' and 'factor1'")
    kind = obj["kind"]
    _check_kind(kind)
    f1 = _factor_from(obj["factor1"], base_dir)
    f2 = _factor_from(obj["factor2"], base_dir) if obj.get("factor2") is not None else None
    rho = None
    if obj.get("rho") is not None:
        target = f2 if f2 is not None else f1
        raw = obj["rho"]
        if not isinstance(raw, Mapping):
            raise TwistError("rho must map element labels to element labels")
        rho_list = [-1] * len(f1)
        for k, v in raw.items():
            rho_list[f1.index(k)] = target.index(v)
        if -1 in rho_list:
            raise TwistError("rho must be total on factor1")
        rho = tuple(rho_list)
    return TwistSpec(kind, f1, f2, rho)


def twist_to_json(t: TwistAlgebra) -> dict:
    out = algebra_to_json(t.algebra)
    out["kind"] = t.kind
    out["pairs"] = [[t.factor1.label(x), t.factor2.label(y)] for x, y in t.pairs]
    return out


def canonical_map(t: TwistAlgebra, a4: FiniteAlgebra) -> Morphism:
    """The identification 0=(0,1), ⊥=(0,0), ⊤=(1,1), 1=(1,0) for a twist over
    two-element factors."""
    want = {"0": (0, 1), "⊥": (0, 0), "⊤": (1, 1), "1": (1, 0)}
    return Morphism(a4, t.algebra, tuple(t.pairs.index(want[lab]) for lab in a4.elements))


__all__ = [
    "KINDS", "TwistError", "TwistSpec", "TwistAlgebra", "twist_build", "enumerate_pi1_full_subalgebras",
    "check_universe_equivalence", "check_closed_forms", "spec_from_json", "twist_to_json", "identity",
]
