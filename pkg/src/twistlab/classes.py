"""Equation libraries for the algebra classes and a classifier.

Inequalities ``s <= t`` are written as ``s & t = s``.  The center constant is
always the operation ``top`` (``T``), whether it is labelled ½ or ⊤.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import CheckResult, Equation, FiniteAlgebra, QuasiEquation, SignatureError
from .algebra import check_equation, check_quasiequation


@dataclass(frozen=True)
class Law:
    name: str
    text: str
    needs: tuple[str, ...]

    @property
    def is_quasi(self) -> bool:
        return "=>" in self.text

    def check(self, a: FiniteAlgebra) -> CheckResult:
        if self.is_quasi:
            r = check_quasiequation(a, QuasiEquation.parse(self.text))
        else:
            r = check_equation(a, Equation.parse(self.text))
        if r.holds:
            return r
        return CheckResult(False, r.counterexample, law=f"{self.name}: {self.text}")


@dataclass(frozen=True)
class GroundCheck:
    """A non-equational condition on constants (e.g. two distinct centers)."""

    name: str
    needs: tuple[str, ...]
    test: Callable[[FiniteAlgebra], bool]

    def check(self, a: FiniteAlgebra) -> CheckResult:
        if self.test(a):
            return CheckResult(True)
        return CheckResult(False, {}, law=self.name)


def L(name: str, text: str, *needs: str) -> Law:
    return Law(name, text, tuple(needs))


LATTICE = [
    L("meet idempotent", "x & x = x", "and"),
    L("join idempotent", "x | x = x", "or"),
    L("meet commutative", "x & y = y & x", "and"),
    L("join commutative", "x | y = y | x", "or"),
    L("absorption", "x | (x & y) = x", "and", "or"),
    L("absorption", "x & (x | y) = x", "and", "or"),
    L("meet associative", "x & (y & z) = (x & y) & z", "and"),
    L("join associative", "x | (y | z) = (x | y) | z", "or"),
]
DISTRIBUTIVE = LATTICE + [L("distributive", "x & (y | z) = (x & y) | (x & z)", "and", "or")]
UPPER = [L("upper bound", "x & 1 = x", "and", "one")]
LOWER = [L("lower bound", "x & 0 = 0", "and", "zero")]
DE_MORGAN = DISTRIBUTIVE + [
    L("involution", "~~x = x", "neg"),
    L("De Morgan", "~(x & y) = ~x | ~y", "neg", "and", "or"),
]
KLEENE = DE_MORGAN + [L("Kleene", "(~x & x) & (~y | y) = ~x & x", "neg", "and", "or")]
CENTERED_KLEENE = KLEENE + [L("center", "~T = T", "neg", "top")]

_distinct_centers = GroundCheck(
    "two distinct centers (T != B)", ("top", "bot"), lambda a: a.tables["top"] != a.tables["bot"]
)
BI_CENTERED = DE_MORGAN + [
    L("center", "~T = T", "neg", "top"),
    L("second center", "~B = B", "neg", "bot"),
    _distinct_centers,
]

RESIDUATION = [
    L("residuation", "(x & y) & z = x & y => x & (y -> z) = x", "and", "imp"),
    L("residuation", "x & (y -> z) = x => (x & y) & z = x & y", "and", "imp"),
]
PEIRCE = [L("Peirce", "(x -> y) -> x = x", "imp")]
GENERALIZED_BOOLEAN = LATTICE + UPPER + RESIDUATION + PEIRCE

CN_LAWS = [
    L("CN1", "(x & y) -> z = x -> (y -> z)", "and", "imp"),
    L("CN2", "T & (x -> (y -> y)) = T", "and", "imp", "top"),
    L("CN3", "T & (((x -> y) -> x) -> x) = T", "and", "imp", "top"),
    L("CN4", "(x -> y) & T = (x & T) -> (y & T)", "and", "imp", "top"),
    L("CN5", "~(x -> y) = x -> ~y", "neg", "imp"),
]
F_LAWS = [
    L("F1", "x & y = x & (x -> y)", "and", "imp"),
    L("F2", "(x -> y) & ((x & y) | T) = x -> y", "and", "or", "imp", "top"),
    L("F3", "(x & y) -> z = x -> (y -> z)", "and", "imp"),
    L("F4", "T & (x -> (y -> y)) = T", "and", "imp", "top"),
    L("F5", "T & (((x -> y) -> x) -> x) = T", "and", "imp", "top"),
    L("F6", "(x -> y) & T = (x & T) -> (y & T)", "and", "imp", "top"),
]
DFG = BI_CENTERED + LOWER + [L("centers meet at bottom", "B & T = 0", "and", "top", "bot", "zero")]

DFF1 = [
    L("DFf1", "T = 1 => x = y", "top", "one"),
    L("DFf1", "T = 0 => x = y", "top", "zero"),
    L("DFf1", "~T = 0 => x = y", "neg", "top", "zero"),
    L("DFf1", "~T = 1 => x = y", "neg", "top", "one"),
]
DFF2 = [L("DFf2", "T & ~T = 0", "and", "neg", "top", "zero")]
# the form used in the injectivity argument; see DFF3_LITERAL for the other reading
DFF3 = [L("DFf3", "x & T = y & T, x | T = y | T => x = y", "and", "or", "top")]
DFF3_LITERAL = [L("DFf3 (literal)", "x & T = y & T, x | ~T = y | ~T => x = y", "and", "or", "neg", "top")]
DE_MORGAN_ALGEBRA = DE_MORGAN + UPPER + LOWER
_BOT_IS_NEG_TOP = L("bot is ~T", "B = ~T", "neg", "top", "bot")
DFF = DE_MORGAN_ALGEBRA + DFF1 + DFF2 + DFF3
FF_LAWS = [
    L("Ff i", "x & y = x & (x -> y)", "and", "imp"),
    L("Ff ii", "(x & y) -> z = x -> (y -> z)", "and", "imp"),
    L("Ff iii", "T & (((x -> y) -> x) -> x) = T", "and", "imp", "top"),
    L("Ff iv", "(x -> y) & T = (x & T) -> (y & T)", "and", "imp", "top"),
    L("Ff v", "~(x -> y) & ~T = ~(x & y) & ~T", "and", "neg", "imp", "top"),
]


def _boolean(a: FiniteAlgebra) -> list:
    laws = DISTRIBUTIVE + UPPER + LOWER
    if "neg" in a.signature:
        laws = laws + [
            L("complement", "x & ~x = 0", "and", "neg", "zero"),
            L("complement", "x | ~x = 1", "or", "neg", "one"),
        ]
    if "imp" in a.signature:
        laws = laws + RESIDUATION + PEIRCE
    if "neg" in a.signature and "imp" in a.signature:
        laws = laws + [L("negation is x -> 0", "~x = x -> 0", "neg", "imp", "zero")]
    if "neg" not in a.signature and "imp" not in a.signature:
        raise SignatureError(f"{a.name}: boolean needs neg or imp")
    return laws


def _with_bot(laws):
    def build(a: FiniteAlgebra):
        return laws + ([_BOT_IS_NEG_TOP] if "bot" in a.signature else [])
    return build


CLASSES: dict[str, object] = {
    "lattice": LATTICE,
    "distributive-lattice": DISTRIBUTIVE,
    "upper-bounded-distributive-lattice": DISTRIBUTIVE + UPPER,
    "bounded-distributive-lattice": DISTRIBUTIVE + UPPER + LOWER,
    "de-morgan-lattice": DE_MORGAN,
    "de-morgan-algebra": DE_MORGAN_ALGEBRA,
    "kleene-algebra": KLEENE,
    "centered-kleene": CENTERED_KLEENE,
    "centered-kleene-algebra": CENTERED_KLEENE + UPPER + LOWER,
    "bi-centered-de-morgan": BI_CENTERED,
    "generalized-boolean": GENERALIZED_BOOLEAN,
    "boolean": _boolean,
    "cn-algebra": CENTERED_KLEENE + CN_LAWS,
    "f-algebra": CENTERED_KLEENE + F_LAWS,
    "dfg-algebra": DFG,
    "cng-algebra": DFG + CN_LAWS,
    "fg-algebra": DFG + F_LAWS,
    "dff-algebra": _with_bot(DFF),
    "dff-algebra-literal": _with_bot(DE_MORGAN_ALGEBRA + DFF1 + DFF2 + DFF3_LITERAL),
    "ff-algebra": _with_bot(DFF + FF_LAWS),
}

CLASS_NAMES = tuple(CLASSES)


def laws_for(a: FiniteAlgebra, class_name: str) -> list:
    try:
        spec = CLASSES[class_name]
    except KeyError:
        raise ValueError(f"unknown class {class_name!r}; known: {', '.join(CLASS_NAMES)}") from None
    return list(spec(a)) if callable(spec) else list(spec)


def with_derived_join(a: FiniteAlgebra) -> FiniteAlgebra:
    """Add ``or`` by De Morgan from ``neg`` and ``and`` when it is absent."""
    if "or" in a.signature or not a.has("neg", "and"):
        return a
    neg, meet = a.tables["neg"], a.tables["and"]
    join = neg[meet[neg[:, None], neg[None, :]]]
    return a.expand({"or": np.asarray(join)})


_DERIVED_JOIN = {"cn-algebra", "centered-kleene", "kleene-algebra", "de-morgan-lattice"}


def classify(a: FiniteAlgebra, class_name: str) -> CheckResult:
    """Run a class's law library in order; report the first failing law."""
    if class_name in _DERIVED_JOIN:
        a = with_derived_join(a)
    laws = laws_for(a, class_name)
    needed = []
    for law in laws:
        for op in law.needs:
            if op not in a.signature and op not in needed:
                needed.append(op)
    if needed:
        raise SignatureError(f"{a.name}: class {class_name} needs operation(s) {', '.join(needed)}")
    for law in laws:
        r = law.check(a)
        if not r.holds:
            return r
    return CheckResult(True)
