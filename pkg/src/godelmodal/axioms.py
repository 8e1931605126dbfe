"""The built-in regression corpus: Hilbert-style axioms of Godel logic, the
modal axioms of the box and diamond fragments, and the separation formulas
that tell the crisp and fuzzy diamond logics apart."""
from __future__ import annotations

from .formula import Logic, parse_formula

# propositional axioms, instantiated at p, q, r
HG_AXIOMS = [
    ("A1", "p -> (q -> p)"),
    ("A2", "(p & q) -> p"),
    ("A3", "(p & q) -> q"),
    ("A4", "p -> (q -> (p & q))"),
    ("A5", "(bot -> p) & (p -> top)"),
    ("A6", "p -> (p | q)"),
    ("A7", "q -> (p | q)"),
    ("A8", "(p -> q) -> ((r -> p) -> (r -> q))"),
    ("A9", "(p -> (q -> r)) -> (q -> (p -> r))"),
    ("A10", "((p -> r) & (q -> r)) -> ((p | q) -> r)"),
    ("A11", "(p -> (q -> r)) -> ((p & q) -> r)"),
    ("A12", "((r -> p) & (r -> q)) -> (r -> (p & q))"),
    ("A13", "(p -> (p -> q)) -> (p -> q)"),
    ("A14", "(p -> q) | (q -> p)"),
]

BOX_AXIOMS = [
    ("K-box", "[](p -> q) -> ([]p -> []q)"),
    ("Z-box", "~~[]p -> []~~p"),
]

DIA_AXIOMS = [
    ("K-dia", "<>(p | q) -> (<>p | <>q)"),
    ("Z-dia", "<>~~p -> ~~<>p"),
    ("F-dia", "~<>bot"),
]

# (name, logic, formula text, expected verdict)
SEPARATION = [
    ("box-no-fmp", Logic.GK_BOX, "[]~~p -> ~~[]p", False),
    ("dia-no-fmp", Logic.GK_DIA,
     "(<>p -> <>q) -> ((<>q -> bot) | <>(p -> q))", False),
    ("zstar-crisp", Logic.GK_DIA, "~~<>p -> <>~~p", True),
    ("zstar-fuzzy", Logic.GKF_DIA, "~~<>p -> <>~~p", False),
]


def regression_cases():
    """(name, logic, formula, expected-valid) over the whole corpus."""
    cases = []
    for name, text in HG_AXIOMS:
        cases.append((name, Logic.G, parse_formula(text), True))
    for name, text in BOX_AXIOMS:
        cases.append((name, Logic.GK_BOX, parse_formula(text), True))
    for name, text in DIA_AXIOMS:
        cases.append((name + "@gk", Logic.GK_DIA, parse_formula(text), True))
        cases.append((name + "@gkf", Logic.GKF_DIA, parse_formula(text), True))
    for name, logic, text, expected in SEPARATION:
        cases.append((name, logic, parse_formula(text), expected))
    return cases
