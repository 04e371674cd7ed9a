"""Small factor algebras: chains, Boolean algebras, De Morgan algebras."""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import FiniteAlgebra, Morphism

CHAIN_LABELS = {1: ["0"], 2: ["0", "1"], 3: ["0", "m", "1"], 4: ["0", "m1", "m2", "1"]}


def chain(k: int, name: str | None = None) -> FiniteAlgebra:
    """k-element chain with min, max, Heyting implication and bounds."""
    labels = CHAIN_LABELS.get(k) or [str(i) for i in range(k)]
    i = np.arange(k)
    meet = np.minimum(i[:, None], i[None, :])
    join = np.maximum(i[:, None], i[None, :])
    imp = np.where(i[:, None] <= i[None, :], k - 1, i[None, :])
    return FiniteAlgebra(name or f"C{k}", labels, {"and": meet, "or": join, "imp": imp, "zero": 0, "one": k - 1})


def boolean_algebra(m: int, name: str | None = None) -> FiniteAlgebra:
    """Powerset algebra of an m-element set, with complement and x -> y = ~x | y."""
    n = 1 << m
    i = np.arange(n)
    full = n - 1
    if m == 0:
        labels = ["0"]
    elif m == 1:
        labels = ["0", "1"]
    elif m == 2:
        labels = ["0", "a", "b", "1"]
    else:
        labels = ["{" + ",".join(str(b) for b in range(m) if e >> b & 1) + "}" for e in range(n)]
    tables = {
        "neg": full ^ i,
        "and": i[:, None] & i[None, :],
        "or": i[:, None] | i[None, :],
        "imp": (full ^ i)[:, None] | i[None, :],
        "zero": 0,
        "one": full,
    }
    return FiniteAlgebra(name or f"B{n}", labels, tables)


def de_morgan(name: str) -> FiniteAlgebra:
    """De Morgan algebras of size ≤ 4: B2, K3, K4 (chains with order-reversing
    negation), B4 (Boolean) and M4 (the 2x2 lattice with negation fixing both
    atoms)."""
    if name in ("B2", "B4"):
        b = boolean_algebra(1 if name == "B2" else 2)
        return b.reduct(["neg", "and", "or", "zero", "one"], name=name)
    if name in ("K3", "K4"):
        k = int(name[1])
        c = chain(k)
        neg = np.arange(k)[::-1].copy()
        return c.reduct(["and", "or", "zero", "one"], name=name).expand({"neg": neg}).reduct(
            ["neg", "and", "or", "zero", "one"]
        )
    if name == "M4":
        b = boolean_algebra(2)
        return FiniteAlgebra(
            "M4", b.elements,
            {"neg": np.array([3, 1, 2, 0]), "and": b.tables["and"], "or": b.tables["or"], "zero": 0, "one": 3},
        )
    raise KeyError(f"unknown De Morgan algebra {name!r}")


def trivial(name: str = "B1") -> FiniteAlgebra:
    return boolean_algebra(0, name)


def lattice_square() -> FiniteAlgebra:
    """The 2x2 distributive lattice 0 < a, b < 1 (a, b incomparable)."""
    return boolean_algebra(2, "L22").reduct(["and", "or", "imp", "zero", "one"])


FACTORS = {
    "B1": lambda: trivial(),
    "B2": lambda: boolean_algebra(1),
    "B4": lambda: boolean_algebra(2),
    "B8": lambda: boolean_algebra(3),
    "C1": lambda: chain(1),
    "C2": lambda: chain(2),
    "C3": lambda: chain(3),
    "C4": lambda: chain(4),
    "L22": lattice_square,
    "K3": lambda: de_morgan("K3"),
    "K4": lambda: de_morgan("K4"),
    "M4": lambda: de_morgan("M4"),
    "DM2": lambda: de_morgan("B2").renamed("DM2"),
    "DM4": lambda: de_morgan("B4").renamed("DM4"),
}

DE_MORGAN_SMALL = ("DM2", "K3", "K4", "DM4", "M4")


def factor(name: str) -> FiniteAlgebra:
    try:
        return FACTORS[name]()
    except KeyError:
        raise KeyError(f"unknown factor {name!r}; known: {', '.join(FACTORS)}") from None


def embeddings(a: FiniteAlgebra, b: FiniteAlgebra, ops=None) -> list[Morphism]:
    """All injective homomorphisms a -> b (brute force; small algebras only)."""
    ops = list(a.signature) if ops is None else list(ops)
    out = []
    for perm in itertools.permutations(range(len(b)), len(a)):
        m = Morphism(a, b, perm)
        if m.is_homomorphism(ops):
            out.append(m)
    return out
