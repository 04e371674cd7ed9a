"""Twist representation: extract factor algebras and verify the map
a ↦ (◇a, ◇¬a) (or (◇a, □¬a) for the f-kinds) on concrete algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    CheckResult, FiniteAlgebra, Morphism, SignatureError, algebra_to_json, find_isomorphism,
)
from .classes import classify
from .factors import boolean_algebra, embeddings
from .twist import (
    FACTOR2_CLASS, FACTOR2_OPS, FACTOR_CLASS, FACTOR_OPS, KINDS, TWO_FACTOR, TwistAlgebra, TwistError,
    TwistSpec, as_subtwist, enumerate_pi1_full_subalgebras, twist_build,
)

THEOREM_KINDS = ("DF", "CN", "F", "DFg", "CNg", "Fg", "DFf", "Ff")
EXPLORATORY_KINDS = ("OL", "OLg", "OLf", "CNf")


@dataclass
class FactorImage:
    """Image of x ↦ x ∧ c with restricted operations."""

    algebra: FiniteAlgebra | None
    carrier: list[int]
    closure: CheckResult
    well_defined_negation: CheckResult | None = None

    def position(self, e: int) -> int:
        return self.carrier.index(e)


def _image(a: FiniteAlgebra, const: str, ops, name: str, unit: str) -> FactorImage:
    a.require("and", const)
    meet = a.tables["and"]
    c = int(a.tables[const])
    proj = meet[:, c]
    carrier = sorted(set(int(v) for v in proj))
    pos = {e: i for i, e in enumerate(carrier)}
    idx = np.array(carrier, dtype=np.int64)
    tables: dict[str, object] = {}
    closure = CheckResult(True)
    well = None
    for op in ops:
        if op == "one":
            tables[op] = pos[c]
            continue
        if op == "zero":
            a.require("zero")
            z = int(meet[int(a.tables["zero"]), c])
            tables[op] = pos[z]
            continue
        if op == "neg":
            a.require("neg")
            neg = a.tables["neg"]
            # ¬'(x ∧ c) := (¬x) ∧ c, defined through any preimage
            image = {}
            for x in range(len(a)):
                key, val = int(proj[x]), int(proj[neg[x]])
                if key in image and image[key][1] != val and well is None:
                    other = image[key][0]
                    well = CheckResult(False, {"a": other, "b": x}, law=f"{unit}a = {unit}b implies {unit}~a = {unit}~b")
                image.setdefault(key, (x, val))
            if well is None:
                well = CheckResult(True)
            tables[op] = np.array([pos[image[e][1]] for e in carrier], dtype=np.int64)
            continue
        a.require(op)
        t = a.tables[op]
        sub = t[np.ix_(idx, idx)] if a.signature[op] == 2 else t[idx]
        outside = [int(v) for v in np.unique(sub) if int(v) not in pos]
        if outside:
            if closure.holds:
                closure = CheckResult(False, {"value": outside[0]}, law=f"{unit}(A) closed under {op}")
            continue
        tables[op] = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
    alg = None
    if closure.holds:
        alg = FiniteAlgebra(name, [a.label(e) for e in carrier], tables)
    return FactorImage(alg, carrier, closure, well)


def diamond_image(a: FiniteAlgebra, center: str = "top", ops=("and", "or", "one")) -> FactorImage:
    """Carrier {x ∧ center}; ``one`` is the center, ``neg`` (if requested) is
    ¬◇(◇a) := ◇¬a with a well-definedness verdict."""
    return _image(a, center, ops, f"◇({a.name})", "◇")


def box_image(a: FiniteAlgebra, ops=("neg", "and", "or", "zero", "one")) -> FactorImage:
    """Carrier {x ∧ ⊥}; ``one`` is ⊥, ``neg`` is ¬□(□a) := □¬a."""
    return _image(a, "bot", ops, f"□({a.name})", "□")


@dataclass
class RepresentationReport:
    kind: str
    mode: str
    factor1: FiniteAlgebra | None = None
    factor2: FiniteAlgebra | None = None
    factor_closure: dict = field(default_factory=dict)
    factor_class_ok: dict = field(default_factory=dict)
    well_defined_negations: dict = field(default_factory=dict)
    iota: Morphism | None = None
    universe: CheckResult | None = None
    injective: CheckResult | None = None
    homomorphic: dict = field(default_factory=dict)
    image_subalgebra: TwistAlgebra | None = None
    image_closed: CheckResult | None = None
    pi1_full: CheckResult | None = None
    factor_isomorphism: CheckResult | None = None
    notes: list = field(default_factory=list)

    def verdicts(self) -> list[tuple[str, CheckResult]]:
        out = []
        out += [(f"factor closure {k}", v) for k, v in self.factor_closure.items()]
        out += [(f"factor class {k}", v) for k, v in self.factor_class_ok.items()]
        out += [(f"well-defined {k}", v) for k, v in self.well_defined_negations.items()]
        for name in ("universe", "injective"):
            v = getattr(self, name)
            if v is not None:
                out.append((name, v))
        out += [(f"preserves {k}", v) for k, v in self.homomorphic.items()]
        for name in ("image_closed", "pi1_full", "factor_isomorphism"):
            v = getattr(self, name)
            if v is not None:
                out.append((name.replace("_", " "), v))
        return out

    @property
    def overall(self) -> bool:
        vs = self.verdicts()
        if self.mode == "theorem":
            required = self.iota is not None and self.image_subalgebra is not None
            return required and all(v.holds for _, v in vs)
        return self.iota is not None and all(v.holds for _, v in vs)

    def failures(self) -> list[tuple[str, CheckResult]]:
        return [(k, v) for k, v in self.verdicts() if not v.holds]

    def to_json(self) -> dict:
        def res(v: CheckResult):
            d = {"holds": v.holds}
            if not v.holds:
                d["counterexample"] = v.counterexample
                if v.law:
                    d["law"] = v.law
                if v.detail:
                    d["detail"] = v.detail
            return d

        out = {"kind": self.kind, "mode": self.mode, "overall": self.overall}
        if self.factor1 is not None:
            out["factor1"] = algebra_to_json(self.factor1)
        if self.factor2 is not None and self.kind in TWO_FACTOR:
            out["factor2"] = algebra_to_json(self.factor2)
        if self.iota is not None:
            src, tgt = self.iota.source, self.iota.target
            out["iota"] = {src.label(i): tgt.label(v) for i, v in enumerate(self.iota.mapping)}
        out["verdicts"] = {k: res(v) for k, v in self.verdicts()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self) -> str:
        lines = [f"{self.kind} representation ({self.mode}): {'OK' if self.overall else 'FAILED'}"]
        if self.factor1 is not None:
            lines.append(f"  factor1: {len(self.factor1)} elements {list(self.factor1.elements)}")
        if self.factor2 is not None and self.kind in TWO_FACTOR:
            lines.append(f"  factor2: {len(self.factor2)} elements {list(self.factor2.elements)}")
        for k, v in self.verdicts():
            lines.append(f"  {k}: {v.describe()}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise TwistError(f"unknown twist kind {kind!r}; known: {', '.join(KINDS)}")


def verify_representation(a: FiniteAlgebra, kind: str) -> RepresentationReport:
    """Theorem mode for DF, CN, F, DFg, CNg, Fg, DFf, Ff; exploratory search
    for OL, OLg, OLf, CNf."""
    _check_kind(kind)
    if kind in EXPLORATORY_KINDS:
        return explore_representation(a, kind)
    if "top" not in a.signature:
        raise SignatureError(f"{a.name}: representation needs the center constant top")
    if kind in TWO_FACTOR and "bot" not in a.signature:
        raise SignatureError(f"{a.name}: {kind} representation needs the constant bot")
    rep = RepresentationReport(kind, "theorem")

    d = diamond_image(a, "top", FACTOR_OPS[kind])
    rep.factor_closure["◇"] = d.closure
    if d.well_defined_negation is not None:
        rep.well_defined_negations["¬◇"] = d.well_defined_negation
    if kind in TWO_FACTOR:
        b = box_image(a, FACTOR2_OPS[kind])
        rep.factor_closure["□"] = b.closure
        if b.well_defined_negation is not None:
            rep.well_defined_negations["¬□"] = b.well_defined_negation
    else:
        b = d
    if d.algebra is None or b.algebra is None:
        return rep
    rep.factor1, rep.factor2 = d.algebra, b.algebra
    rep.factor_class_ok["factor1"] = classify(d.algebra, FACTOR_CLASS[kind])
    if kind in TWO_FACTOR:
        rep.factor_class_ok["factor2"] = classify(b.algebra, FACTOR2_CLASS[kind])

    try:
        full = twist_build(TwistSpec(kind, d.algebra, b.algebra if kind in TWO_FACTOR else None), check_classes=False)
    except TwistError as exc:
        rep.notes.append(f"twist over the extracted factors cannot be built: {exc}")
        return rep

    meet, neg = a.tables["and"], a.tables["neg"]
    top = int(a.tables["top"])
    second_const = int(a.tables["bot"]) if kind in TWO_FACTOR else top
    index = {p: i for i, p in enumerate(full.pairs)}
    mapping = []
    rep.universe = CheckResult(True)
    for x in range(len(a)):
        p = (d.position(int(meet[x, top])), b.position(int(meet[int(neg[x]), second_const])))
        if p not in index:
            if rep.universe.holds:
                rep.universe = CheckResult(False, {"a": x}, law="image pair outside the twist universe")
            mapping.append(None)
        else:
            mapping.append(index[p])
    if not rep.universe.holds:
        return rep
    iota = Morphism(a, full.algebra, tuple(mapping))
    rep.iota = iota

    seen: dict[int, int] = {}
    rep.injective = CheckResult(True)
    for x, v in enumerate(mapping):
        if v in seen:
            rep.injective = CheckResult(False, {"a": seen[v], "b": x}, law="iota(a) = iota(b) with a != b")
            break
        seen[v] = x

    for op in a.signature:
        if op in full.algebra.signature:
            rep.homomorphic[op] = iota.preserves(op)
        else:
            rep.notes.append(f"operation {op} has no twist counterpart and is not checked")

    image = sorted(set(mapping))
    try:
        sub = as_subtwist(full, image, f"ι({a.name})")
        rep.image_closed = CheckResult(True)
        rep.image_subalgebra = sub
    except Exception as exc:  # restriction fails exactly when not closed
        rep.image_closed = CheckResult(False, {}, detail=str(exc))
        return rep
    firsts = {full.pairs[e][0] for e in image}
    missing = [x for x in range(len(d.algebra)) if x not in firsts]
    rep.pi1_full = CheckResult(not missing, None if not missing else {"x": missing[0]},
                               law=None if not missing else "first factor element not reached")
    return rep


def _explore_candidates(kind: str):
    """Factor choices of size ≤ 4 for the exploratory kinds."""
    if kind == "OL":
        for m in (0, 1, 2):
            yield boolean_algebra(m), None, None
    elif kind in ("OLg", "OLf"):
        for m in (1, 2):
            yield boolean_algebra(m), None, None
    elif kind == "CNf":
        for m1, m2 in itertools.product((1, 2), repeat=2):
            f1, f2 = boolean_algebra(m1), boolean_algebra(m2)
            for e in embeddings(f1, f2):
                yield f1, f2, e.mapping


def explore_representation(a: FiniteAlgebra, kind: str) -> RepresentationReport:
    """Search π₁-full subalgebras of twists over small factors for one
    isomorphic to ``a`` (compared on ``a``'s signature)."""
    rep = RepresentationReport(kind, "exploratory")
    tried = 0
    for f1, f2, rho in _explore_candidates(kind):
        t = twist_build(TwistSpec(kind, f1, f2, rho))
        if not set(a.signature) <= set(t.algebra.signature):
            continue
        for sub in enumerate_pi1_full_subalgebras(t):
            if len(sub.algebra) != len(a):
                continue
            tried += 1
            iso = find_isomorphism(a, sub.algebra.reduct(list(a.signature)))
            if iso is not None:
                rep.factor1, rep.factor2 = f1, t.factor2
                rep.iota = iso
                rep.image_subalgebra = sub
                rep.injective = CheckResult(True)
                rep.homomorphic = {op: CheckResult(True) for op in a.signature}
                rep.notes.append(
                    f"isomorphic to a π₁-full subalgebra of the {kind}-twist over {f1.name}"
                    + (f" and {t.factor2.name} (rho={list(rho)})" if f2 is not None else "")
                )
                return rep
    rep.notes.append(f"no isomorphic π₁-full twist subalgebra among {tried} candidates with factors of size ≤ 4")
    return rep


def roundtrip_check(spec: TwistSpec, subalgebra: TwistAlgebra | None = None) -> RepresentationReport:
    """Build the twist, verify its representation, and compare the extracted
    first factor with the input factor."""
    t = subalgebra if subalgebra is not None else twist_build(spec)
    rep = verify_representation(t.algebra, spec.kind)
    if rep.factor1 is None:
        rep.factor_isomorphism = CheckResult(False, {}, detail="no factor extracted")
        return rep
    original = t.factor1.reduct(list(rep.factor1.signature))
    if find_isomorphism(original, rep.factor1) is None:
        rep.factor_isomorphism = CheckResult(False, {}, detail="extracted first factor differs")
        return rep
    # a proper π₁-full subalgebra may only reach part of the second factor
    if spec.kind in TWO_FACTOR and t.is_full() and rep.factor2 is not None:
        original2 = t.factor2.reduct(list(rep.factor2.signature))
        if find_isomorphism(original2, rep.factor2) is None:
            rep.factor_isomorphism = CheckResult(False, {}, detail="extracted second factor differs")
            return rep
    rep.factor_isomorphism = CheckResult(True)
    return rep
