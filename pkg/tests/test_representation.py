import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catalog import THEOREM_KINDS, specs
from oracles import plain_tables
from twistlab.algebra import SignatureError
from twistlab.factors import factor
from twistlab.matrices import named_matrix
from twistlab.representation import (
    box_image, diamond_image, explore_representation, roundtrip_check, verify_representation,
)
from twistlab.twist import TwistError, TwistSpec, enumerate_pi1_full_subalgebras, twist_build


def preserves_all(src, dst, h):
    """Plain check that h commutes with every operation of src."""
    s, d = plain_tables(src), plain_tables(dst)
    n = len(src)
    for op, ar in src.signature.items():
        if ar == 0:
            if h[s[op]] != d[op]:
                return False
        elif ar == 1:
            if any(h[s[op][x]] != d[op][h[x]] for x in range(n)):
                return False
        else:
            if any(h[s[op][x][y]] != d[op][h[x]][h[y]] for x, y in itertools.product(range(n), repeat=2)):
                return False
    return True


MATRIX_KINDS = [("DF3", "DF"), ("CN3", "CN"), ("F3", "F"), ("DFg4", "DFg"), ("CNg4", "CNg"), ("Fg4", "Fg"),
                ("DFf4", "DFf"), ("Ff4", "Ff")]


@pytest.mark.parametrize("name, kind", MATRIX_KINDS)
def test_theorem_mode_on_matrices(name, kind):
    a = named_matrix(name).algebra
    rep = verify_representation(a, kind)
    assert rep.mode == "theorem"
    assert rep.overall, rep.summary()
    assert len(set(rep.iota.mapping)) == len(a)
    ops = [op for op in a.signature if op in rep.iota.target.signature]
    assert preserves_all(a.reduct(ops), rep.iota.target.reduct(ops), rep.iota.mapping)
    assert rep.pi1_full.holds


def test_matrix_iotas():
    assert verify_representation(named_matrix("DF3").algebra, "DF").iota.mapping == (0, 2, 1)
    for name, kind in MATRIX_KINDS[3:]:
        assert verify_representation(named_matrix(name).algebra, kind).iota.mapping == (1, 0, 3, 2)


def test_wrong_kind_reports_failures():
    rep = verify_representation(named_matrix("DF3").algebra, "CN")
    assert not rep.overall
    failed = dict(rep.failures())
    assert "preserves imp" in failed
    assert failed["preserves imp"].counterexample == {"x": 2, "y": 0}
    assert "factor class factor1" in failed
    rep = verify_representation(named_matrix("CNf4").algebra, "DFf")
    assert [k for k, _ in rep.failures()] == ["preserves imp"]


def test_representation_needs_constants():
    with pytest.raises(SignatureError, match="top"):
        verify_representation(named_matrix("OL3").algebra, "DF")
    with pytest.raises(SignatureError, match="bot"):
        verify_representation(named_matrix("DF3").algebra, "DFf")
    with pytest.raises(TwistError, match="unknown twist kind"):
        verify_representation(named_matrix("DF3").algebra, "XX")


def test_factor_images():
    d = diamond_image(named_matrix("DF3").algebra)
    assert d.carrier == [0, 1]
    assert d.algebra.elements == ("0", "½")
    assert d.closure.holds
    d = diamond_image(named_matrix("DFg4").algebra, ops=("and", "or", "zero", "one", "neg"))
    assert d.carrier == [0, 2]
    # a swap negation does not descend to the diamond image
    assert not d.well_defined_negation.holds
    assert d.well_defined_negation.counterexample == {"a": 0, "b": 1}
    b = box_image(named_matrix("DFf4").algebra)
    assert b.carrier == [0, 1]
    assert b.well_defined_negation.holds


@pytest.mark.parametrize("name, kind", [("OL3", "OL"), ("OLg4", "OLg"), ("OLf4", "OLf"), ("CNf4", "CNf")])
def test_explore_mode(name, kind):
    a = named_matrix(name).algebra
    rep = verify_representation(a, kind)
    assert rep.mode == "exploratory" and rep.overall
    target = rep.image_subalgebra.algebra.reduct(list(a.signature))
    assert preserves_all(a, target, rep.iota.mapping)
    assert rep.notes[0].startswith("isomorphic to a π₁-full subalgebra")


def test_explore_mode_reports_misses():
    rep = explore_representation(named_matrix("DF3").algebra.reduct(["neg", "and", "or", "imp"]), "OL")
    assert not rep.overall
    assert rep.notes[-1].startswith("no isomorphic")


def test_report_json_and_summary():
    rep = verify_representation(named_matrix("DF3").algebra, "DF")
    obj = rep.to_json()
    assert sorted(obj) == ["factor1", "iota", "kind", "mode", "overall", "verdicts"]
    # the extracted factor keeps the labels of its carrier {0, ½}
    assert obj["iota"] == {"0": "(0,½)", "½": "(½,½)", "1": "(½,0)"}
    assert all(v == {"holds": True} for v in obj["verdicts"].values())
    assert rep.summary().splitlines()[0] == "DF representation (theorem): OK"
    bad = verify_representation(named_matrix("DF3").algebra, "CN").to_json()
    assert bad["verdicts"]["preserves imp"]["counterexample"] == {"x": 2, "y": 0}


def _subalgebras(kind):
    out = []
    for spec in specs(kind):
        for sub in enumerate_pi1_full_subalgebras(twist_build(spec)):
            out.append((spec, sub))
    return out


ALL_SUBS = [(k, i) for k in THEOREM_KINDS for i in range(len(_subalgebras(k)))]


@settings(max_examples=40)
@given(st.sampled_from(ALL_SUBS))
def test_roundtrip_on_catalog_subalgebras(choice):
    kind, i = choice
    spec, sub = _subalgebras(kind)[i]
    rep = roundtrip_check(spec, sub)
    assert rep.overall, rep.summary()
    assert rep.factor_isomorphism.holds
    target = rep.iota.target
    ops = [op for op in sub.algebra.signature if op in target.signature]
    assert preserves_all(sub.algebra.reduct(ops), target.reduct(ops), rep.iota.mapping)


def test_roundtrip_compares_the_second_factor():
    spec = TwistSpec("DFf", factor("K3"), factor("M4"))
    rep = roundtrip_check(spec)
    assert rep.factor_isomorphism.holds
    assert len(rep.factor2) == 4
