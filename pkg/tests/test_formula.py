import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.formula import (
    Binary, Const, FormulaSyntaxError, Unary, Var, depth, operations, parse, render, substitute, variables,
)

p, q, r = Var("p"), Var("q"), Var("r")


@pytest.mark.parametrize("text, tree", [
    ("p -> q -> r", Binary("imp", p, Binary("imp", q, r))),
    ("(p -> q) -> r", Binary("imp", Binary("imp", p, q), r)),
    ("p & q | r", Binary("or", Binary("and", p, q), r)),
    ("p | q & r", Binary("or", p, Binary("and", q, r))),
    ("p & q & r", Binary("and", Binary("and", p, q), r)),
    ("~p & q", Binary("and", Unary("neg", p), q)),
    ("~~p", Unary("neg", Unary("neg", p))),
    ("p | q -> r", Binary("imp", Binary("or", p, q), r)),
    ("T & B | 0 -> 1", Binary("imp", Binary("or", Binary("and", Const("top"), Const("bot")), Const("zero")),
                              Const("one"))),
])
def test_precedence_and_associativity(text, tree):
    assert parse(text) == tree


def test_qualified_connectives_are_glued():
    assert parse("p ->ol q") == Binary("imp_ol", p, q)
    assert parse("p->f q") == Binary("imp_f", p, q)
    assert parse("p ->df q &k r |ol p") == Binary(
        "imp_df", p, Binary("or_ol", Binary("and_k", q, r), p))
    # with a space the letter is a variable
    assert parse("p -> f") == Binary("imp", p, Var("f"))


@pytest.mark.parametrize("text, rendered", [
    ("(p & q) & r", "p & q & r"),
    ("p & (q & r)", "p & (q & r)"),
    ("p -> (q -> r)", "p -> q -> r"),
    ("((p -> q)) -> r", "(p -> q) -> r"),
    ("~(p & q)", "~(p & q)"),
    ("(p & q) | r", "p & q | r"),
    ("p & (q | r)", "p & (q | r)"),
    ("p->ol(p&k q)", "p ->ol p &k q"),
    ("~T", "~T"),
])
def test_render_minimal_parentheses(text, rendered):
    assert render(parse(text)) == rendered


@pytest.mark.parametrize("text, offset", [
    ("p &", 3),
    ("p ) q", 2),
    ("p & ½", 4),
    ("", 0),
    ("(p", 2),
    ("p q", 2),
    ("P", 0),
    ("p & )", 6),  # offsets count UTF-8 bytes
])
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_helpers():
    f = parse("~(q -> p) & (r | T)")
    assert variables(f) == ["p", "q", "r"]
    assert operations(f) == {"neg", "imp", "and", "or", "top"}
    assert depth(f) == 3
    assert depth(p) == 0
    g = substitute(f, {"p": parse("q & q"), "r": Const("bot")})
    assert render(g) == "~(q -> q & q) & (B | T)"


# ---------------------------------------------------------------- roundtrip

OPS = ["and", "or", "imp", "and_k", "or_ol", "imp_ol", "imp_f", "imp_df"]
atoms = st.one_of(
    st.sampled_from([Var(v) for v in ("p", "q", "r", "x1", "y_2")]),
    st.sampled_from([Const(c) for c in ("top", "bot", "zero", "one")]),
)


def extend(children):
    return st.one_of(
        st.builds(lambda c: Unary("neg", c), children),
        st.builds(Binary, st.sampled_from(OPS), children, children),
    )


formulas = st.recursive(atoms, extend, max_leaves=12)


@settings(max_examples=1000)
@given(formulas)
def test_render_parse_roundtrip(f):
    text = render(f)
    assert parse(text) == f
    assert render(parse(text)) == text


@settings(max_examples=200)
@given(formulas)
def test_extra_whitespace_is_ignored(f):
    text = "  " + render(f).replace(" ", " \t\n ").replace("(", "( ") + " "
    assert parse(text) == f
