"""Sequents of relations: finite sets of < / <= ordered formula pairs.

A sequent is read disjunctively: it holds under a valuation (or at a world)
when at least one of its relations does.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .formula import (
    BOT,
    TOP,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Logic,
    And,
    Or,
    ParseError,
    Top,
    TokenStream,
    Var,
    formula_key,
    is_atom,
    is_modal,
    is_quasi_atom,
    parse_formula_tokens,
    render_formula,
    tokenize,
)


class RelKind(Enum):
    LT = "<"
    LE = "<="


@dataclass(frozen=True, slots=True)
class Relation:
    lhs: Formula
    kind: RelKind
    rhs: Formula

    def render(self) -> str:
        return f"{render_formula(self.lhs)} {self.kind.value} {render_formula(self.rhs)}"


def rel_key(r: Relation):
    return (formula_key(r.lhs), r.kind.value, formula_key(r.rhs))


def lt(a: Formula, b: Formula) -> Relation:
    return Relation(a, RelKind.LT, b)


def le(a: Formula, b: Formula) -> Relation:
    return Relation(a, RelKind.LE, b)


# Sequents of relations are plain frozensets; set semantics is load-bearing
# (duplicates collapse, iteration is canonicalized through sorted_relations).
Sequent = frozenset  # frozenset[Relation]


def sequent(relations: Iterable[Relation]) -> Sequent:
    return frozenset(relations)


def sorted_relations(s: Sequent) -> list[Relation]:
    return sorted(s, key=rel_key)


def render_sequent(s: Sequent) -> str:
    if not s:
        return "<empty>"
    return " ; ".join(r.render() for r in sorted_relations(s))


def parse_sequent(text: str) -> Sequent:
    if not text.strip():
        raise ParseError("empty sequent", 0)
    ts = TokenStream(tokenize(text))
    rels = []
    while True:
        lhs = parse_formula_tokens(ts)
        tok = ts.next()
        if tok.kind == "LE":
            kind = RelKind.LE
        elif tok.kind == "LT":
            kind = RelKind.LT
        else:
            raise ParseError("relation missing comparator (< or <=)", tok.pos)
        rhs = parse_formula_tokens(ts)
        rels.append(Relation(lhs, kind, rhs))
        tok = ts.next()
        if tok.kind == "EOF":
            break
        if tok.kind != "SEMI":
            raise ParseError(f"expected ';' between relations, found {tok.text!r}", tok.pos)
    return frozenset(rels)


def quasi_atomic(s: Sequent) -> bool:
    return all(is_quasi_atom(r.lhs) and is_quasi_atom(r.rhs) for r in s)


def atomic(s: Sequent) -> bool:
    return all(is_atom(r.lhs) and is_atom(r.rhs) for r in s)


def sequent_fragment_ok(logic: Logic, s: Sequent) -> bool:
    return all(logic.admits(r.lhs) and logic.admits(r.rhs) for r in s)


# ---------------------------------------------------------------------------
# formula interpretation

def big_and(fs: list[Formula]) -> Formula:
    if not fs:
        return TOP
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def big_or(fs: list[Formula]) -> Formula:
    if not fs:
        return BOT
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def interp_sequent(s: Sequent) -> Formula:
    """/\\(B->A) over strict relations  ->  \\/(C->D) over the <= ones."""
    strict = [r for r in sorted_relations(s) if r.kind is RelKind.LT]
    weak = [r for r in sorted_relations(s) if r.kind is RelKind.LE]
    ante = big_and([Imp(r.rhs, r.lhs) for r in strict])
    succ = big_or([Imp(r.lhs, r.rhs) for r in weak])
    return Imp(ante, succ)


def expand_block(side: list[Formula], kind: RelKind, other: Formula,
                 orientation: str) -> Sequent:
    """Block notation: a list against a single formula expands to a relation set.

    Empty lists follow the conventions [] <= B == top <= B, [] < B == {},
    A <= [] == A <= bot, A < [] == {}.
    """
    if orientation not in ("left", "right"):
        raise ValueError("orientation must be 'left' or 'right'")
    if not side:
        if kind is RelKind.LT:
            return frozenset()
        if orientation == "left":
            return frozenset({Relation(TOP, RelKind.LE, other)})
        return frozenset({Relation(other, RelKind.LE, BOT)})
    if orientation == "left":
        return frozenset(Relation(f, kind, other) for f in side)
    return frozenset(Relation(other, kind, f) for f in side)


# ---------------------------------------------------------------------------
# modal abstraction

class QuasiAtomicError(ValueError):
    pass


def abstract_modals(s: Sequent) -> tuple[Sequent, dict[Formula, Var]]:
    """Replace each outermost-modal side by a fresh variable, shared per formula."""
    if not quasi_atomic(s):
        raise QuasiAtomicError(f"not quasi-atomic: {render_sequent(s)}")
    modals = sorted(
        {side for r in s for side in (r.lhs, r.rhs) if is_modal(side)},
        key=formula_key,
    )
    mapping: dict[Formula, Var] = {m: Var(f"_m{i}") for i, m in enumerate(modals)}

    def repl(f: Formula) -> Formula:
        return mapping.get(f, f)

    out = frozenset(Relation(repl(r.lhs), r.kind, repl(r.rhs)) for r in s)
    return out, mapping


# ---------------------------------------------------------------------------
# modal part extraction

class ModalShapeError(ValueError):
    """A saturated leaf produced a modal/constant relation outside the known
    inventory; this signals a saturation or abstraction bug upstream."""


@dataclass(frozen=True)
class ModalPart:
    box_box: tuple[tuple[Formula, Formula], ...] = ()
    box_bot: tuple[Formula, ...] = ()
    dia_dia: tuple[tuple[Formula, Formula], ...] = ()
    dia_low: tuple[Formula, ...] = ()
    dia_high: tuple[Formula, ...] = ()

    def empty(self) -> bool:
        return not (self.box_box or self.box_bot or self.dia_dia
                    or self.dia_low or self.dia_high)


def _dead(r: Relation) -> bool:
    """Relations that hold under no valuation; safe to drop as disjuncts."""
    if r.kind is RelKind.LT and isinstance(r.rhs, Bot):
        return True
    if r.kind is RelKind.LT and isinstance(r.lhs, Top):
        return True
    if r.kind is RelKind.LE and isinstance(r.lhs, Top) and isinstance(r.rhs, Bot):
        return True
    return False


def modal_part(s: Sequent, logic: Logic) -> ModalPart:
    """Extract and normalize the modal part of a saturated quasi-atomic sequent.

    Box logic keeps []A <= []B and []C <= bot, rewriting top <= []D as
    []top <= []D; diamond logics keep <>A <= <>B (with <>A <= bot read as
    <>A <= <>bot), bot < <>C, and top <= <>D, the last dropped for fuzzy
    frames.  Strict relations between modal/constant sides are dropped.
    """
    if logic is Logic.G:
        return ModalPart()
    box_box: list[tuple[Formula, Formula]] = []
    box_bot: list[Formula] = []
    dia_dia: list[tuple[Formula, Formula]] = []
    dia_low: list[Formula] = []
    dia_high: list[Formula] = []
    for r in sorted_relations(s):
        sides_modal_or_const = (
            (is_modal(r.lhs) or isinstance(r.lhs, (Bot, Top)))
            and (is_modal(r.rhs) or isinstance(r.rhs, (Bot, Top)))
        )
        if not sides_modal_or_const:
            continue  # handled propositionally, not part of the modal part
        if _dead(r):
            continue
        if r.kind is RelKind.LT:
            if logic is Logic.GK_BOX:
                continue  # strict modal relations never constrain validity here
            if isinstance(r.lhs, Bot) and isinstance(r.rhs, Dia):
                dia_low.append(r.rhs.body)
                continue
            if isinstance(r.lhs, Dia):
                continue  # <>A < B drops
            raise ModalShapeError(f"unexpected strict modal relation {r.render()}")
        # kind is LE
        if logic is Logic.GK_BOX:
            if isinstance(r.lhs, Box) and isinstance(r.rhs, Box):
                box_box.append((r.lhs.body, r.rhs.body))
            elif isinstance(r.lhs, Box) and isinstance(r.rhs, Bot):
                box_bot.append(r.lhs.body)
            elif isinstance(r.lhs, Top) and isinstance(r.rhs, Box):
                box_box.append((TOP, r.rhs.body))
            else:
                raise ModalShapeError(f"unexpected box relation {r.render()}")
        else:
            if isinstance(r.lhs, Dia) and isinstance(r.rhs, Dia):
                dia_dia.append((r.lhs.body, r.rhs.body))
            elif isinstance(r.lhs, Dia) and isinstance(r.rhs, Bot):
                dia_dia.append((r.lhs.body, BOT))
            elif isinstance(r.lhs, Top) and isinstance(r.rhs, Dia):
                if logic is Logic.GK_DIA:
                    dia_high.append(r.rhs.body)
                # dropped for GKF_DIA
            else:
                raise ModalShapeError(f"unexpected diamond relation {r.render()}")
    return ModalPart(
        box_box=tuple(box_box),
        box_bot=tuple(box_bot),
        dia_dia=tuple(dia_dia),
        dia_low=tuple(dia_low),
        dia_high=tuple(dia_high),
    )
