"""Formula syntax for Godel logic and its box/diamond modal fragments.

Formulas are immutable trees over variables, bot, top, &, |, ->, [] and <>.
Negation is not a constructor: ~A is sugar for A -> bot.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union


class ParseError(ValueError):
    """Raised on malformed formula/sequent/hypersequent text."""

    def __init__(self, message: str, pos: int = -1):
        super().__init__(f"{message} (at position {pos})" if pos >= 0 else message)
        self.pos = pos


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Box:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Dia:
    body: "Formula"


Formula = Union[Var, Bot, Top, And, Or, Imp, Box, Dia]

BOT = Bot()
TOP = Top()


def neg(f: Formula) -> Formula:
    """~A, stored as A -> bot."""
    return Imp(f, BOT)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


def is_atom(f: Formula) -> bool:
    """Variables and constants; the atoms of the relation calculus."""
    return isinstance(f, (Var, Bot, Top))


def is_modal(f: Formula) -> bool:
    """Outermost-modal formulas, treated as opaque quasi-atoms."""
    return isinstance(f, (Box, Dia))


def is_quasi_atom(f: Formula) -> bool:
    return is_atom(f) or is_modal(f)


class Logic(Enum):
    G = "g"
    GK_BOX = "gk-box"
    GK_DIA = "gk-diamond"
    GKF_DIA = "gkf-diamond"

    @property
    def crisp_frames(self) -> bool:
        return self is not Logic.GKF_DIA

    def admits(self, f: Formula) -> bool:
        return self in fragment_of(f)

    @classmethod
    def from_name(cls, name: str) -> "Logic":
        for logic in cls:
            if logic.value == name:
                return logic
        raise ValueError(f"unknown logic {name!r}; expected one of "
                         + ", ".join(l.value for l in cls))


# ---------------------------------------------------------------------------
# structural measures

def complexity(f: Formula) -> int:
    """Number of connectives; modal operators count."""
    if isinstance(f, (Var, Bot, Top)):
        return 0
    if isinstance(f, (Box, Dia)):
        return 1 + complexity(f.body)
    return 1 + complexity(f.left) + complexity(f.right)


def modal_degree(f: Formula) -> int:
    """Maximal complexity of a boxed or diamonded subformula body."""
    if isinstance(f, (Var, Bot, Top)):
        return 0
    if isinstance(f, (Box, Dia)):
        return max(complexity(f.body), modal_degree(f.body))
    return max(modal_degree(f.left), modal_degree(f.right))


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Box, Dia)):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or, Imp)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def variables_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Var))


def fragment_of(f: Formula) -> frozenset[Logic]:
    """The logics whose language admits f."""
    has_box = any(isinstance(g, Box) for g in subformulas(f))
    has_dia = any(isinstance(g, Dia) for g in subformulas(f))
    if has_box and has_dia:
        return frozenset()
    if has_box:
        return frozenset({Logic.GK_BOX})
    if has_dia:
        return frozenset({Logic.GK_DIA, Logic.GKF_DIA})
    return frozenset(Logic)


_TAG_ORDER = {Var: 0, Bot: 1, Top: 2, And: 3, Or: 4, Imp: 5, Box: 6, Dia: 7}


def formula_key(f: Formula):
    """Total order on formulas, used for canonical iteration everywhere."""
    if isinstance(f, Var):
        return (0, f.name)
    if isinstance(f, Bot):
        return (1,)
    if isinstance(f, Top):
        return (2,)
    if isinstance(f, (Box, Dia)):
        return (_TAG_ORDER[type(f)], formula_key(f.body))
    return (_TAG_ORDER[type(f)], formula_key(f.left), formula_key(f.right))


# ---------------------------------------------------------------------------
# lexer, shared by the formula, sequent and hypersequent parsers

_KEYWORDS = {"bot", "top"}

_SYMBOLS = (
    ("=>", "ARROW2"),
    ("->", "IMP"),
    ("<=", "LE"),
    ("<>", "DIA"),
    ("[]", "BOX"),
    ("<", "LT"),
    ("&", "AND"),
    ("|", "OR"),
    ("~", "NOT"),
    ("(", "LPAR"),
    (")", "RPAR"),
    (";", "SEMI"),
    (",", "COMMA"),
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() and c.islower():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word.upper() if word in _KEYWORDS else "VAR"
            tokens.append(Token(kind, word, i))
            i = j
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(kind, sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(Token("EOF", "", n))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def next(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "EOF"


# precedence: ~ [] <> bind tightest, then &, then |, then -> (right associative)

def parse_formula_tokens(ts: TokenStream) -> Formula:
    return _parse_imp(ts)


def _parse_imp(ts: TokenStream) -> Formula:
    left = _parse_or(ts)
    if ts.peek().kind == "IMP":
        ts.next()
        right = _parse_imp(ts)
        return Imp(left, right)
    return left


def _parse_or(ts: TokenStream) -> Formula:
    f = _parse_and(ts)
    while ts.peek().kind == "OR":
        ts.next()
        f = Or(f, _parse_and(ts))
    return f


def _parse_and(ts: TokenStream) -> Formula:
    f = _parse_unary(ts)
    while ts.peek().kind == "AND":
        ts.next()
        f = And(f, _parse_unary(ts))
    return f


def _parse_unary(ts: TokenStream) -> Formula:
    tok = ts.peek()
    if tok.kind == "NOT":
        ts.next()
        return neg(_parse_unary(ts))
    if tok.kind == "BOX":
        ts.next()
        return Box(_parse_unary(ts))
    if tok.kind == "DIA":
        ts.next()
        return Dia(_parse_unary(ts))
    return _parse_atom(ts)


def _parse_atom(ts: TokenStream) -> Formula:
    tok = ts.next()
    if tok.kind == "VAR":
        return Var(tok.text)
    if tok.kind == "BOT":
        return BOT
    if tok.kind == "TOP":
        return TOP
    if tok.kind == "LPAR":
        f = parse_formula_tokens(ts)
        ts.expect("RPAR")
        return f
    raise ParseError(f"expected a formula, found {tok.text or 'end of input'!r}", tok.pos)


def parse_formula(text: str) -> Formula:
    if not text.strip():
        raise ParseError("empty formula", 0)
    ts = TokenStream(tokenize(text))
    f = parse_formula_tokens(ts)
    tok = ts.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return f


# ---------------------------------------------------------------------------
# printer: minimal parentheses, ~ resugared

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def render_formula(f: Formula) -> str:
    return _render(f, 0)


def _render(f: Formula, min_prec: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Box):
        return "[]" + _render(f.body, _PREC_UNARY)
    if isinstance(f, Dia):
        return "<>" + _render(f.body, _PREC_UNARY)
    if is_neg(f):
        return "~" + _render(f.left, _PREC_UNARY)
    if isinstance(f, Imp):
        text = _render(f.left, _PREC_IMP + 1) + " -> " + _render(f.right, _PREC_IMP)
        prec = _PREC_IMP
    elif isinstance(f, Or):
        text = _render(f.left, _PREC_OR) + " | " + _render(f.right, _PREC_OR + 1)
        prec = _PREC_OR
    else:
        text = _render(f.left, _PREC_AND) + " & " + _render(f.right, _PREC_AND + 1)
        prec = _PREC_AND
    return "(" + text + ")" if prec < min_prec else text
