"""Twist instances with factors of size at most 4, by kind."""

from __future__ import annotations

import itertools

from twistlab.factors import DE_MORGAN_SMALL, embeddings, factor
from twistlab.twist import TwistSpec

DF_FACTORS = ("C1", "C2", "C3", "C4", "L22")
DFG_FACTORS = ("C2", "C3", "C4", "L22")
GB_FACTORS = ("B1", "B2", "B4")
BOOLEAN = ("B2", "B4")


def specs(kind: str) -> list[TwistSpec]:
    if kind == "DF":
        return [TwistSpec(kind, factor(f)) for f in DF_FACTORS]
    if kind == "DFg":
        return [TwistSpec(kind, factor(f)) for f in DFG_FACTORS]
    if kind in ("CN", "F", "OL"):
        return [TwistSpec(kind, factor(f)) for f in GB_FACTORS]
    if kind in ("CNg", "Fg", "OLg", "OLf"):
        return [TwistSpec(kind, factor(f)) for f in BOOLEAN]
    if kind == "DFf":
        return [TwistSpec(kind, factor(a), factor(b)) for a, b in itertools.product(DE_MORGAN_SMALL, repeat=2)]
    if kind == "Ff":
        return [TwistSpec(kind, factor(a), factor(b)) for a in BOOLEAN for b in DE_MORGAN_SMALL]
    if kind == "CNf":
        out = []
        for a, b in itertools.product(BOOLEAN, repeat=2):
            fa, fb = factor(a), factor(b)
            out += [TwistSpec(kind, fa, fb, e.mapping) for e in embeddings(fa, fb)]
        return out
    raise KeyError(kind)


THEOREM_KINDS = ("DF", "CN", "F", "DFg", "CNg", "Fg", "DFf", "Ff")
