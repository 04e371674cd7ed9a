import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_isomorphic, naive_equation, naive_eval, naive_homomorphism, naive_is_subuniverse, plain_tables,
)
from twistlab.algebra import (
    AlgebraError, Equation, EvaluationError, FiniteAlgebra, Morphism, QuasiEquation, SignatureError,
    algebra_from_json, algebra_to_json, check_equation, check_quasiequation, direct_product, eval_term,
    find_isomorphism, generated_subalgebra, identity, load_algebra, make_algebra, power, restrict,
    subalgebra_masks, term_table, members,
)
from twistlab.formula import Binary, Const, Unary, Var
from twistlab.matrices import named_matrix


def chain3():
    return make_algebra("C3", ["0", "m", "1"], {
        "and": [[0, 0, 0], [0, 1, 1], [0, 1, 2]],
        "or": [["0", "m", "1"], ["m", "m", "1"], ["1", "1", "1"]],
        "neg": ["1", "m", "0"],
        "one": "1",
    })


# ---------------------------------------------------------------- construction


def test_make_algebra_accepts_labels_and_ids():
    a = chain3()
    assert a.signature == {"and": 2, "or": 2, "neg": 1, "one": 0}
    assert a.apply("or", 0, 1) == 1
    assert a.apply("neg", 0) == 2
    assert a.apply("one") == 2
    assert a.index("m") == 1 and a.label(2) == "1"


@pytest.mark.parametrize("elements, ops, message", [
    ([], {}, "nonempty"),
    (["a", "a"], {}, "duplicate"),
    (["a", "b"], {"f": [[0, 2], [1, 0]]}, "out of range"),
    (["a", "b"], {"f": [[0, 1]]}, "shape"),
    (["a", "b"], {"f": [[0, 1], [1]]}, "ragged"),
    (["a", "b"], {"c": "z"}, "unknown element"),
    (["a", "b"], {"c": 5}, "out of range"),
])
def test_make_algebra_rejects_bad_input(elements, ops, message):
    with pytest.raises(AlgebraError, match=message):
        make_algebra("A", elements, ops)


def test_tables_are_read_only():
    a = chain3()
    with pytest.raises(ValueError):
        a.tables["and"][0, 0] = 2


def test_json_roundtrip(tmp_path):
    a = chain3()
    obj = algebra_to_json(a)
    assert algebra_from_json(json.dumps(obj)) == a
    path = tmp_path / "c3.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    assert load_algebra(str(path)) == a
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(AlgebraError, match="malformed JSON"):
        load_algebra(str(path))
    with pytest.raises(AlgebraError, match="operations"):
        algebra_from_json({"elements": ["a"]})


def test_reduct_expand_and_signature_errors():
    a = chain3()
    b = a.reduct(["and", "or"])
    assert set(b.signature) == {"and", "or"}
    with pytest.raises(SignatureError):
        a.reduct(["imp"])
    with pytest.raises(SignatureError):
        a.apply("and", 1)
    c = b.expand({"top": 1})
    assert c.apply("top") == 1


# ---------------------------------------------------------------- evaluation


def test_eval_term_and_tables():
    a = chain3()
    assert eval_term(a, "~x | y", {"x": "1", "y": "m"}) == 1
    t = term_table(a, "x & ~x")
    assert t.tolist() == [0, 1, 0]
    with pytest.raises(EvaluationError):
        eval_term(a, "x -> y", {"x": 0, "y": 0})


def test_equation_least_counterexample():
    ol = named_matrix("OL3").algebra
    r = check_equation(ol, "x | (x & y) = x")
    assert not r.holds
    assert r.counterexample == {"x": 1, "y": 0}
    assert r.describe(ol) == "fails at x=½, y=0"
    assert check_equation(ol, "x & y = y & x").holds
    with pytest.raises(SignatureError):
        check_equation(ol, "x & T = x")


def test_quasi_equation():
    a = named_matrix("DFf4").algebra
    law = "x & T = y & T, x | T = y | T => x = y"
    assert check_quasiequation(a, law).holds
    # with ~T in the second premise, 0 and ⊥ are not separated
    r = check_quasiequation(a, "x & T = y & T, x | ~T = y | ~T => x = y")
    assert r.counterexample == {"x": 0, "y": 1}
    q = QuasiEquation.parse(law)
    assert len(q.premises) == 2 and q.variables() == ["x", "y"]
    with pytest.raises(AlgebraError):
        QuasiEquation.parse("x = y")
    with pytest.raises(AlgebraError):
        Equation.parse("x = y = z")


def test_ground_equation():
    a = named_matrix("CNg4").algebra
    assert check_equation(a, "T = B -> B").holds
    r = check_equation(a, "T = B")
    assert not r.holds and r.counterexample == {}


# ---------------------------------------------------------------- random algebras


@st.composite
def algebras(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    el = st.integers(0, n - 1)
    f = draw(st.lists(st.lists(el, min_size=n, max_size=n), min_size=n, max_size=n))
    g = draw(st.lists(st.lists(el, min_size=n, max_size=n), min_size=n, max_size=n))
    u = draw(st.lists(el, min_size=n, max_size=n))
    c = draw(el)
    return FiniteAlgebra("R", [f"e{i}" for i in range(n)],
                         {"and": np.array(f), "or": np.array(g), "neg": np.array(u), "top": c})


def terms(vars_=("x", "y", "z")):
    leaves = st.one_of(st.sampled_from([Var(v) for v in vars_]), st.just(Const("top")))
    return st.recursive(
        leaves,
        lambda ch: st.one_of(st.builds(lambda c: Unary("neg", c), ch),
                             st.builds(Binary, st.sampled_from(["and", "or"]), ch, ch)),
        max_leaves=6,
    )


@settings(max_examples=100)
@given(algebras(), terms(), terms())
def test_equation_check_matches_naive_evaluator(a, lhs, rhs):
    eq = Equation(lhs, rhs)
    r = check_equation(a, eq)
    expect = naive_equation(plain_tables(a), len(a), lhs, rhs, eq.variables())
    assert r.holds == (expect is None)
    if expect is not None:
        assert r.counterexample == expect


@settings(max_examples=100)
@given(algebras(), terms(("x", "y")))
def test_term_table_matches_naive_evaluator(a, t):
    order = ["x", "y"]
    table = term_table(a, t, order)
    tabs = plain_tables(a)
    for i, j in itertools.product(range(len(a)), repeat=2):
        assert table[i, j] == naive_eval(tabs, t, {"x": i, "y": j})


@settings(max_examples=60)
@given(algebras(max_n=2), algebras(max_n=2), terms(("x", "y")), terms(("x", "y")))
def test_products_preserve_equations(a, b, lhs, rhs):
    eq = Equation(lhs, rhs)
    p = direct_product(a, b)
    if check_equation(a, eq).holds and check_equation(b, eq).holds:
        assert check_equation(p, eq).holds
    # and the projections are homomorphisms
    nb = len(b)
    proj1 = Morphism(p, a, tuple(i // nb for i in range(len(p))))
    proj2 = Morphism(p, b, tuple(i % nb for i in range(len(p))))
    assert proj1.is_homomorphism() and proj2.is_homomorphism()


@settings(max_examples=60)
@given(algebras(), terms(("x", "y")), terms(("x", "y")), st.data())
def test_subalgebras_preserve_equations(a, lhs, rhs, data):
    eq = Equation(lhs, rhs)
    seed = data.draw(st.sets(st.integers(0, len(a) - 1), min_size=1))
    sub, inc = generated_subalgebra(a, seed)
    assert inc.is_homomorphism()
    assert naive_is_subuniverse(plain_tables(a), len(a), inc.mapping)
    if check_equation(a, eq).holds:
        assert check_equation(sub, eq).holds


@settings(max_examples=80)
@given(algebras(), st.data())
def test_isomorphism_search_is_symmetric_and_least(a, data):
    n = len(a)
    perm = data.draw(st.permutations(range(n)))
    # b is a with element i renamed to perm[i]
    inv = np.argsort(perm)
    tables = {}
    for op, ar in a.signature.items():
        t = a.tables[op]
        if ar == 0:
            tables[op] = int(perm[t])
        elif ar == 1:
            tables[op] = np.array(perm)[t[inv]]
        else:
            tables[op] = np.array(perm)[t[np.ix_(inv, inv)]]
    b = FiniteAlgebra("S", a.elements, tables)
    ab = find_isomorphism(a, b)
    ba = find_isomorphism(b, a)
    assert ab is not None and ab.is_isomorphism()
    assert ba is not None and ba.is_isomorphism()
    assert naive_homomorphism(plain_tables(a), plain_tables(b), n, ab.mapping)
    least = min(pm for pm in itertools.permutations(range(n))
                if naive_homomorphism(plain_tables(a), plain_tables(b), n, pm))
    assert ab.mapping == least


@settings(max_examples=60)
@given(algebras(), algebras())
def test_isomorphism_search_agrees_with_brute_force(a, b):
    found = find_isomorphism(a, b)
    assert (found is not None) == brute_isomorphic(plain_tables(a), plain_tables(b), len(a), len(b))


@settings(max_examples=60)
@given(algebras())
def test_subalgebra_enumeration_is_complete(a):
    n = len(a)
    tabs = plain_tables(a)
    expect = set()
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(n), k):
            if naive_is_subuniverse(tabs, n, subset):
                expect.add(sum(1 << e for e in subset))
    masks = subalgebra_masks(a)
    assert set(masks) == expect
    assert masks == sorted(masks, key=lambda m: (bin(m).count("1"), m))


# ---------------------------------------------------------------- morphisms and products


def test_morphism_compose_inverse():
    a = chain3()
    idm = identity(a)
    assert idm.is_isomorphism()
    flip = Morphism(a, a, (2, 1, 0))
    assert not flip.is_homomorphism()
    assert flip.preserves("neg").holds
    r = flip.preserves("and")
    assert r.counterexample == {"x": 0, "y": 1}
    assert flip.compose(flip).mapping == (0, 1, 2)
    assert flip.inverse().mapping == (2, 1, 0)
    with pytest.raises(AlgebraError):
        Morphism(a, a, (0, 0)).inverse()
    with pytest.raises(AlgebraError):
        Morphism(a, a, (0, 0, 5))


def test_restrict_requires_closed_subset():
    a = chain3()
    sub, inc = restrict(a, [0, 2])
    assert sub.elements == ("0", "1")
    assert inc.mapping == (0, 2)
    with pytest.raises(AlgebraError, match="not closed"):
        restrict(a, [0, 1])


def test_product_labels_and_power():
    a = chain3().reduct(["and", "or"])
    p = direct_product(a, a)
    assert len(p) == 9
    assert p.elements[:3] == ("(0,0)", "(0,m)", "(0,1)")
    assert len(power(a, 3)) == 27
    with pytest.raises(SignatureError):
        direct_product(a, chain3())


def test_subalgebras_of_a_named_matrix():
    a = named_matrix("DF3").algebra
    # every subalgebra contains the center ½; {½} and the whole carrier
    assert [members(m) for m in subalgebra_masks(a)] == [[1], [0, 1, 2]]


def test_find_isomorphism_rejects_different_signatures():
    a = chain3()
    with pytest.raises(SignatureError):
        find_isomorphism(a, a.reduct(["and"]))
    assert find_isomorphism(a, a.relabeled(["x", "y", "z"])).mapping == (0, 1, 2)


def test_describe_uses_labels():
    a = chain3()
    r = check_equation(a, "x & ~x = x")
    assert r.describe(a) == "fails at x=1"
    assert r.describe() == "fails at x=2"
