import random

import pytest

from godelmodal.formula import BOT, TOP, Imp, Logic, Var, parse_formula
from godelmodal.generate import random_sequent
from godelmodal.prover import decide, decide_formula
from godelmodal.relations import (
    ModalPart, ModalShapeError, QuasiAtomicError, RelKind, abstract_modals,
    expand_block, interp_sequent, le, lt, modal_part, parse_sequent,
    render_sequent,
)

p, q, r, s = Var("p"), Var("q"), Var("r"), Var("s")


def test_parse_sequent_and_set_semantics():
    assert parse_sequent("p <= q ; q < p") == {le(p, q), lt(q, p)}
    assert parse_sequent("p <= q ; p <= q") == frozenset({le(p, q)})
    one = parse_sequent("top <= (p -> q) | (q -> p)")
    assert len(one) == 1


def test_parse_sequent_errors():
    with pytest.raises(Exception):
        parse_sequent("p q")
    with pytest.raises(Exception):
        parse_sequent("")


def test_render_round_trip():
    s0 = parse_sequent("p <= q ; q < p ; <>p <= bot")
    assert parse_sequent(render_sequent(s0)) == s0


def test_interp_sequent():
    assert interp_sequent(frozenset({lt(p, q), le(r, s)})) == \
        Imp(Imp(q, p), Imp(r, s))
    assert interp_sequent(frozenset()) == Imp(TOP, BOT)
    assert interp_sequent(frozenset({le(p, q)})) == Imp(TOP, Imp(p, q))


def test_expand_block():
    assert expand_block([p, q], RelKind.LE, r, "left") == {le(p, r), le(q, r)}
    assert expand_block([], RelKind.LE, r, "left") == {le(TOP, r)}
    assert expand_block([], RelKind.LT, r, "left") == frozenset()
    assert expand_block([], RelKind.LE, p, "right") == {le(p, BOT)}
    assert expand_block([], RelKind.LT, p, "right") == frozenset()
    assert expand_block([q, r], RelKind.LT, p, "right") == {lt(p, q), lt(p, r)}


def test_abstract_modals_shares_and_restores():
    s0 = parse_sequent("<>p <= bot ; <>p <= <>q")
    out, mapping = abstract_modals(s0)
    assert len(mapping) == 2
    names = {v.name for v in mapping.values()}
    assert len(names) == 2
    inverse = {v: m for m, v in mapping.items()}

    def restore(f):
        return inverse.get(f, f)

    from godelmodal.relations import Relation
    back = frozenset(Relation(restore(rel.lhs), rel.kind, restore(rel.rhs))
                     for rel in out)
    assert back == s0


def test_abstract_modals_trivial():
    s0 = parse_sequent("p <= q")
    out, mapping = abstract_modals(s0)
    assert out == s0 and mapping == {}


def test_abstract_modals_rejects_compound():
    with pytest.raises(QuasiAtomicError):
        abstract_modals(parse_sequent("p & q <= r"))


def test_modal_part_box():
    s0 = parse_sequent("[]p <= []q ; q < []p ; top <= []r")
    mp = modal_part(s0, Logic.GK_BOX)
    assert mp.box_box == ((p, q), (TOP, r))
    assert mp.box_bot == ()


def test_modal_part_diamond():
    s0 = parse_sequent("<>p <= <>q ; <>r < <>q ; bot < <>s")
    mp = modal_part(s0, Logic.GK_DIA)
    assert mp.dia_dia == ((p, q),)
    assert mp.dia_low == (s,)
    s1 = parse_sequent("<>p <= <>q ; top <= <>r")
    assert modal_part(s1, Logic.GKF_DIA) == ModalPart(dia_dia=((p, q),))
    assert modal_part(s1, Logic.GK_DIA).dia_high == (r,)


def test_modal_part_normalizes_bottoms():
    mp = modal_part(parse_sequent("<>p <= bot"), Logic.GK_DIA)
    assert mp.dia_dia == ((p, BOT),)


def test_modal_part_rejects_unknown_shape():
    with pytest.raises(ModalShapeError):
        modal_part(parse_sequent("[]p <= top"), Logic.GK_BOX)


def test_interpretation_faithfulness():
    # deciding a propositional sequent agrees with deciding its interpretation
    rng = random.Random(2024)
    for _ in range(60):
        s0 = random_sequent(rng, rng.randint(1, 3), 3, ["p", "q"])
        direct = decide(Logic.G, s0).valid
        via_formula = decide_formula(Logic.G, interp_sequent(s0)).valid
        assert direct == via_formula, render_sequent(s0)
