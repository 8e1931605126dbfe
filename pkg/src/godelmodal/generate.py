"""Seeded random generators: formulas, sequents, Kripke models, order
automorphisms, and hypersequent proofs with cuts spliced in.

Everything is driven by an explicit random.Random so corpora reproduce."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .formula import (
    BOT, TOP, And, Box, Dia, Formula, Imp, Logic, Or, Var, complexity,
    modal_degree,
)
from .hypersequent import HDerivation, HSeq, hseq, hyper, ms, node
from .relations import Relation, RelKind, Sequent, le, lt
from .semantics import KripkeModel, PiecewiseLinear


def random_formula(rng: random.Random, size: int, variables: list[str],
                   logic: Logic = Logic.G,
                   max_modal_depth: int = 2) -> Formula:
    """A random formula with about `size` connectives inside the logic's
    language, modal nesting capped."""

    def go(budget: int, depth: int) -> Formula:
        if budget <= 0:
            return rng.choice([Var(rng.choice(variables)), BOT, TOP,
                               Var(rng.choice(variables))])
        choices = ["and", "or", "imp", "imp", "neg"]
        if logic is Logic.GK_BOX and depth < max_modal_depth:
            choices += ["box", "box"]
        if logic in (Logic.GK_DIA, Logic.GKF_DIA) and depth < max_modal_depth:
            choices += ["dia", "dia"]
        pick = rng.choice(choices)
        if pick == "box":
            return Box(go(budget - 1, depth + 1))
        if pick == "dia":
            return Dia(go(budget - 1, depth + 1))
        if pick == "neg":
            return Imp(go(budget - 1, depth), BOT)
        split = rng.randint(0, budget - 1)
        lhs = go(split, depth)
        rhs = go(budget - 1 - split, depth)
        return {"and": And, "or": Or, "imp": Imp}[pick](lhs, rhs)

    return go(size, 0)


def random_sequent(rng: random.Random, nrels: int, size: int,
                   variables: list[str], logic: Logic = Logic.G) -> Sequent:
    rels = []
    for _ in range(nrels):
        kind = rng.choice([RelKind.LE, RelKind.LT])
        rels.append(Relation(random_formula(rng, rng.randint(0, size), variables, logic),
                             kind,
                             random_formula(rng, rng.randint(0, size), variables, logic)))
    return frozenset(rels)


def random_model(rng: random.Random, worlds: int, grid: int, kind: str,
                 variables: list[str]) -> KripkeModel:
    levels = [Fraction(i, grid) for i in range(grid + 1)]
    if kind == "crisp":
        access = tuple(tuple(Fraction(rng.randint(0, 1)) for _ in range(worlds))
                       for _ in range(worlds))
    else:
        access = tuple(tuple(rng.choice(levels) for _ in range(worlds))
                       for _ in range(worlds))
    valuation = {v: tuple(rng.choice(levels) for _ in range(worlds))
                 for v in variables}
    return KripkeModel(worlds, kind, access, valuation)


def random_automorphism(rng: random.Random, pieces: int = 3) -> PiecewiseLinear:
    """A strictly increasing piecewise-linear bijection of [0,1]."""
    denominator = rng.randint(4, 12)
    xs = sorted(rng.sample(range(1, denominator), min(pieces, denominator - 1)))
    ys = sorted(rng.sample(range(1, denominator), len(xs)))
    points = [(Fraction(0), Fraction(0))]
    points += [(Fraction(x, denominator), Fraction(y, denominator))
               for x, y in zip(xs, ys)]
    points.append((Fraction(1), Fraction(1)))
    return PiecewiseLinear(tuple(points))


# ---------------------------------------------------------------------------
# random hypersequent proofs (box fragment), with cuts spliced in

def _small_formula(rng: random.Random, variables: list[str]) -> Formula:
    return random_formula(rng, rng.randint(0, 2), variables, Logic.G, 0)


def _axiom(rng: random.Random, variables: list[str]) -> HDerivation:
    v = Var(rng.choice(variables))
    kind = rng.randrange(3)
    if kind == 0:
        return node("id", hyper([hseq([v], v)]))
    if kind == 1:
        return node("bot-l", hyper([hseq([BOT, v], None)]))
    return node("top-r", hyper([hseq([v], TOP)]))


def _grow(rng: random.Random, d: HDerivation, variables: list[str]
          ) -> HDerivation:
    """Apply one random rule below d."""
    comps = list(d.conclusion)
    comp = rng.choice(comps)
    ctx = ms(d.conclusion) - ms([comp])
    move = rng.choice(["wl", "wr", "ew", "ec", "cl", "imp-r", "and-l", "or-r",
                       "imp-l", "or-l", "and-r", "com"])
    if move == "wl":
        new = hseq(list(comp.left) + [_small_formula(rng, variables)], comp.right)
        return node("wl", ctx + ms([new]), d)
    if move == "wr":
        if comp.right is not None:
            return d
        new = hseq(comp.left, _small_formula(rng, variables))
        return node("wr", ctx + ms([new]), d)
    if move == "ew":
        extra = hseq([_small_formula(rng, variables)],
                     _small_formula(rng, variables) if rng.random() < 0.7 else None)
        return node("ew", ms(d.conclusion) + ms([extra]), d)
    if move == "ec":
        if ms(d.conclusion)[comp] < 2:
            return d
        return node("ec", ms(d.conclusion) - ms([comp]), d)
    if move == "cl":
        counts = ms(comp.left)
        dupes = [f for f, n in counts.items() if n >= 2]
        if not dupes:
            return d
        f = rng.choice(dupes)
        new = hseq(list((counts - ms([f])).elements()), comp.right)
        return node("cl", ctx + ms([new]), d)
    if move == "imp-r":
        if comp.right is None or not comp.left:
            return d
        f = rng.choice(comp.left)
        new = hseq(list((ms(comp.left) - ms([f])).elements()), Imp(f, comp.right))
        return node("imp-r", ctx + ms([new]), d)
    if move == "and-l":
        if not comp.left:
            return d
        f = rng.choice(comp.left)
        other = _small_formula(rng, variables)
        if rng.random() < 0.5:
            new = hseq(list((ms(comp.left) - ms([f])).elements()) + [And(f, other)],
                       comp.right)
            return node("and-l1", ctx + ms([new]), d)
        new = hseq(list((ms(comp.left) - ms([f])).elements()) + [And(other, f)],
                   comp.right)
        return node("and-l2", ctx + ms([new]), d)
    if move == "or-r":
        if comp.right is None:
            return d
        other = _small_formula(rng, variables)
        if rng.random() < 0.5:
            new = hseq(comp.left, Or(comp.right, other))
            return node("or-r1", ctx + ms([new]), d)
        new = hseq(comp.left, Or(other, comp.right))
        return node("or-r2", ctx + ms([new]), d)
    if move == "imp-l":
        # read the chosen component as G | Gamma, Y => Delta; the antecedent
        # premise proves Gamma => X for X = top or some X already in Gamma
        if not comp.left:
            return d
        y = rng.choice(comp.left)
        gamma = ms(comp.left) - ms([y])
        gamma_l = list(gamma.elements())
        if gamma_l and rng.random() < 0.5:
            x = rng.choice(gamma_l)
            prem1 = node("id", hyper([hseq([x], x)]))
            prem1, _ = _pad_to(prem1, hseq([x], x), gamma - ms([x]), ctx)
        else:
            x = TOP
            prem1 = node("top-r", ctx + ms([hseq(gamma_l, TOP)]))
        new = hseq(gamma_l + [Imp(x, y)], comp.right)
        return node("imp-l", ctx + ms([new]), prem1, d)
    if move == "or-l":
        if not comp.left:
            return d
        f = rng.choice(comp.left)
        rest = ms(comp.left) - ms([f])
        other = hseq(list(rest.elements()) + [BOT], comp.right)
        ax = node("bot-l", ctx + ms([other]))
        new = hseq(list(rest.elements()) + [Or(f, BOT)], comp.right)
        if rng.random() < 0.5:
            return node("or-l", ctx + ms([new]), d, ax)
        new = hseq(list(rest.elements()) + [Or(BOT, f)], comp.right)
        return node("or-l", ctx + ms([new]), ax, d)
    if move == "and-r":
        if comp.right is None:
            return d
        ax = node("top-r", ctx + ms([hseq(comp.left, TOP)]))
        new = hseq(comp.left, And(comp.right, TOP))
        return node("and-r", ctx + ms([new]), d, ax)
    if move == "com":
        v = Var(rng.choice(variables))
        other = node("id", ctx + ms([hseq([v], v)]))
        split_point = rng.randint(0, len(comp.left))
        g1 = list(comp.left[:split_point])
        p1 = list(comp.left[split_point:])
        prod1 = hseq(g1 + [v], comp.right)
        prod2 = hseq(p1, v)
        return node("com", ctx + ms([prod1, prod2]), d, other)
    return d


def _pad_to(d: HDerivation, comp: HSeq, extra_left, ctx):
    from .hypersequent import _ew_many, _wl_chain
    d, comp = _wl_chain(d, comp, list(extra_left.elements()))
    need = ctx - (ms(d.conclusion) - ms([comp]))
    d = _ew_many(d, +need)
    return d, comp


def _splice_cut(rng: random.Random, d: HDerivation, variables: list[str]
                ) -> HDerivation:
    """Weaken a fresh cut formula into a component and cut it away against an
    identity-based right premise."""
    from .hypersequent import _ew_many
    comps = list(d.conclusion)
    comp = rng.choice(comps)
    ctx = ms(d.conclusion) - ms([comp])
    a = random_formula(rng, rng.randint(0, 3), variables, Logic.G, 0)
    with_a = hseq(list(comp.left) + [a], comp.right)
    e1 = node("wl", ctx + ms([with_a]), d)
    gamma2 = [_small_formula(rng, variables) for _ in range(rng.randint(0, 2))]
    e2 = node("id", hyper([hseq([a], a)]))
    from .hypersequent import _wl_chain
    e2, rcomp = _wl_chain(e2, hseq([a], a), gamma2)
    e2 = _ew_many(e2, ctx)
    concl = ctx + ms([hseq(list(comp.left) + gamma2 + [a], comp.right)])
    return node("cut", concl, e1, e2)


def random_proof_with_cuts(rng: random.Random, variables: Optional[list[str]] = None,
                           steps: int = 8, cuts: int = 2) -> HDerivation:
    """A checker-valid GG derivation containing `cuts` cut nodes."""
    variables = variables or ["p", "q", "r"]
    d = _axiom(rng, variables)
    cut_rounds = set(rng.sample(range(steps), min(cuts, steps)))
    for i in range(steps):
        if i in cut_rounds:
            d = _splice_cut(rng, d, variables)
        else:
            d = _grow(rng, d, variables)
    if not d.has_cut():
        d = _splice_cut(rng, d, variables)
    return d


def random_box_proof(rng: random.Random, variables: Optional[list[str]] = None,
                     steps: int = 6) -> HDerivation:
    """A checker-valid GGK-box derivation built over a (box) inference."""
    variables = variables or ["p", "q"]
    v = Var(rng.choice(variables))
    w = Var(rng.choice(variables))
    base = node("id", hyper([hseq([v], v)]))
    base = node("ew", hyper([hseq([w], None), hseq([v], v)]), base)
    boxed = node("box", hyper([hseq([Box(w)], None), hseq([Box(v)], Box(v))]), base)
    d = boxed
    for _ in range(steps):
        d = _grow(rng, d, variables)
    return d
