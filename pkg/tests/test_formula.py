import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from godelmodal.formula import (
    BOT, TOP, And, Box, Dia, Imp, Logic, Or, ParseError, Var, complexity,
    fragment_of, modal_degree, neg, parse_formula, render_formula,
)

p, q = Var("p"), Var("q")


def test_parse_prelinearity():
    assert parse_formula("(p -> q) | (q -> p)") == Or(Imp(p, q), Imp(q, p))


def test_parse_desugars_negation():
    assert parse_formula("~<>bot") == Imp(Dia(BOT), BOT)
    assert parse_formula("~p") == Imp(p, BOT)


def test_parse_atom():
    assert parse_formula("p") == p
    assert parse_formula("top") == TOP


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> p") == Imp(p, Imp(q, p))
    assert parse_formula("p & q | p") == Or(And(p, q), p)
    assert parse_formula("~[]p") == Imp(Box(p), BOT)
    assert parse_formula("[]~p") == Box(Imp(p, BOT))


def test_diamond_token_is_lexical():
    assert parse_formula("<>p") == Dia(p)
    with pytest.raises(ParseError):
        parse_formula("< > p")


@pytest.mark.parametrize("bad", ["", "p ->", "(p", "p q", "p <= q", "P"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_formula(bad)


def test_render_examples():
    assert render_formula(Or(Imp(p, q), Imp(q, p))) == "(p -> q) | (q -> p)"
    assert render_formula(Box(Imp(p, q))) == "[](p -> q)"
    assert render_formula(BOT) == "bot"


def test_complexity():
    assert complexity(Imp(p, q)) == 1
    assert complexity(BOT) == 0
    # box and the two negation arrows all count
    assert complexity(parse_formula("[]~~p")) == 3


def test_modal_degree():
    assert modal_degree(Imp(p, q)) == 0
    assert modal_degree(parse_formula("[](p -> q)")) == 1
    assert modal_degree(parse_formula("[]~~p -> ~~[]p")) == 2


def test_complexity_recurrences():
    a = parse_formula("p & (q -> p)")
    b = parse_formula("<>q | p")
    assert complexity(Imp(a, b)) == complexity(a) + complexity(b) + 1
    assert modal_degree(Box(a)) == max(complexity(a), modal_degree(a))


def test_fragments():
    assert fragment_of(Box(p)) == {Logic.GK_BOX}
    assert fragment_of(Dia(p)) == {Logic.GK_DIA, Logic.GKF_DIA}
    assert fragment_of(And(p, q)) == set(Logic)
    assert fragment_of(And(Box(p), Dia(q))) == set()


def formulas(max_size=20, modal=True):
    atoms = st.sampled_from([p, q, Var("r"), BOT, TOP])
    unary = [Box, Dia] if modal else []

    def extend(children):
        binary = st.tuples(children, children).map(
            lambda lr: st.one_of(st.just(And(*lr)), st.just(Or(*lr)),
                                 st.just(Imp(*lr)))).flatmap(lambda x: x)
        out = [binary]
        for ctor in unary:
            out.append(children.map(ctor))
        return st.one_of(*out)

    return st.recursive(atoms, extend, max_leaves=max_size)


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_render_parse_round_trip(f):
    assert parse_formula(render_formula(f)) == f


@settings(max_examples=100, deadline=None)
@given(formulas(modal=False))
def test_negation_desugar_consistency(f):
    text = render_formula(f)
    assert parse_formula(f"~({text})") == parse_formula(f"({text}) -> bot")
