"""The hypersequent calculus for Godel logic, its box-modal extension, and
constructive cut elimination.

Hypersequents are finite multisets of single-conclusion sequents; derivations
are explicit trees with fully written conclusions, checked rule by rule.
"""
from __future__ import annotations

import json
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .formula import (
    BOT,
    TOP,
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Or,
    ParseError,
    Top,
    TokenStream,
    Var,
    formula_key,
    is_neg,
    parse_formula_tokens,
    render_formula,
    tokenize,
)


@dataclass(frozen=True)
class HSeq:
    """A single-conclusion sequent: a left multiset and at most one right formula.
    The left multiset is kept sorted for structural equality."""

    left: tuple[Formula, ...]
    right: Optional[Formula]

    def render(self) -> str:
        lhs = ", ".join(render_formula(f) for f in self.left)
        rhs = render_formula(self.right) if self.right is not None else ""
        return f"{lhs} => {rhs}".strip()


def hseq(left: Iterable[Formula], right: Optional[Formula]) -> HSeq:
    return HSeq(tuple(sorted(left, key=formula_key)), right)


def hseq_key(h: HSeq):
    return (tuple(formula_key(f) for f in h.left),
            (formula_key(h.right),) if h.right is not None else ())


Hypersequent = tuple  # tuple[HSeq, ...], sorted


def hyper(comps: Iterable[HSeq]) -> Hypersequent:
    return tuple(sorted(comps, key=hseq_key))


def hyper_of(counter: Counter) -> Hypersequent:
    return hyper(c for c, n in counter.items() for _ in range(n))


def render_hyper(g: Hypersequent) -> str:
    if not g:
        return "<empty>"
    return " | ".join(c.render() for c in g)


def parse_hypersequent(text: str) -> Hypersequent:
    tokens = tokenize(text)
    comps: list[list] = [[]]
    depth = 0
    seen_arrow = False
    for tok in tokens:
        if tok.kind == "EOF":
            break
        if tok.kind == "LPAR":
            depth += 1
        elif tok.kind == "RPAR":
            depth -= 1
        if tok.kind == "OR" and depth == 0 and seen_arrow:
            comps.append([])
            seen_arrow = False
            continue
        if tok.kind == "ARROW2" and depth == 0:
            seen_arrow = True
        comps[-1].append(tok)
    return hyper(_parse_component(ts) for ts in comps)


def _parse_component(tokens: list) -> HSeq:
    from .formula import Token
    stream = TokenStream(tokens + [Token("EOF", "", tokens[-1].pos if tokens else 0)])
    left: list[Formula] = []
    if stream.peek().kind != "ARROW2":
        while True:
            left.append(parse_formula_tokens(stream))
            tok = stream.next()
            if tok.kind == "ARROW2":
                break
            if tok.kind != "COMMA":
                raise ParseError("expected ',' or '=>' in component", tok.pos)
    else:
        stream.next()
    right = None
    if not stream.at_end():
        right = parse_formula_tokens(stream)
        if not stream.at_end():
            raise ParseError("trailing input in component", stream.peek().pos)
    return hseq(left, right)


# ---------------------------------------------------------------------------
# multiset helpers

def ms(items: Iterable) -> Counter:
    return Counter(items)


def ms_sub(a: Counter, b: Counter) -> Counter:
    out = a.copy()
    out.subtract(b)
    if any(v < 0 for v in out.values()):
        raise ValueError("multiset underflow")
    return +out


def ms_leq(a: Counter, b: Counter) -> bool:
    return all(b[k] >= v for k, v in a.items())


def left_sub(h: HSeq, fs: Iterable[Formula]) -> HSeq:
    removed = Counter(fs)
    out = []
    for f in h.left:
        if removed[f] > 0:
            removed[f] -= 1
        else:
            out.append(f)
    if +removed:
        raise ValueError("formula not present in component")
    return hseq(out, h.right)


def left_add(h: HSeq, fs: Iterable[Formula]) -> HSeq:
    return hseq(list(h.left) + list(fs), h.right)


# ---------------------------------------------------------------------------
# derivations

RULES_CORE = {
    "id", "bot-l", "top-r", "ec", "ew", "com", "wl", "wr", "cl",
    "imp-l", "imp-r", "and-l1", "and-l2", "and-r", "or-l", "or-r1", "or-r2",
    "cut",
}
RULES_MACRO = {"neg-l", "neg-r"}
RULE_BOX = "box"
ALL_RULES = RULES_CORE | RULES_MACRO | {RULE_BOX}


@dataclass(frozen=True)
class HDerivation:
    rule: str
    conclusion: Hypersequent
    premises: tuple["HDerivation", ...] = ()

    def size(self) -> int:
        total = 0
        stack = [self]
        while stack:
            node = stack.pop()
            total += 1
            stack.extend(node.premises)
        return total

    def has_cut(self) -> bool:
        stack = [self]
        while stack:
            node = stack.pop()
            if node.rule == "cut":
                return True
            stack.extend(node.premises)
        return False


def node(rule: str, conclusion, *premises: HDerivation) -> HDerivation:
    if isinstance(conclusion, Counter):
        conclusion = hyper_of(conclusion)
    return HDerivation(rule, conclusion, tuple(premises))


# ---------------------------------------------------------------------------
# rule matchers: does (conclusion, premises) instantiate the schema?

def _submultisets(items: Counter):
    """All sub-multisets of a small Counter."""
    keys = sorted(items, key=formula_key)
    counts = [items[k] for k in keys]

    def rec(i):
        if i == len(keys):
            yield Counter()
            return
        for rest in rec(i + 1):
            for take in range(counts[i] + 1):
                out = rest.copy()
                if take:
                    out[keys[i]] = take
                yield out

    yield from rec(0)


def _single_diff(concl: Hypersequent, prem: Hypersequent
                 ) -> Optional[tuple[HSeq, HSeq]]:
    """The (conclusion comp, premise comp) pair when exactly one comp changed."""
    c_ms, p_ms = ms(concl), ms(prem)
    down = +Counter({k: v for k, v in (c_ms - p_ms).items()})
    up = +Counter({k: v for k, v in (p_ms - c_ms).items()})
    if sum(down.values()) != 1 or sum(up.values()) != 1:
        return None
    (c,) = down.keys()
    (p,) = up.keys()
    return c, p


def _match_id(concl, premises, modal):
    return not premises and any(
        c.right is not None and c.left == (c.right,) for c in concl)


def _match_bot_l(concl, premises, modal):
    return not premises and any(BOT in c.left for c in concl)


def _match_top_r(concl, premises, modal):
    return not premises and any(isinstance(c.right, Top) for c in concl)


def _match_ew(concl, premises, modal):
    if len(premises) != 1:
        return False
    c_ms, p_ms = ms(concl), ms(premises[0])
    return ms_leq(p_ms, c_ms) and sum((c_ms - p_ms).values()) == 1


def _match_ec(concl, premises, modal):
    if len(premises) != 1:
        return False
    c_ms, p_ms = ms(concl), ms(premises[0])
    diff = p_ms - c_ms
    if sum(diff.values()) != 1 or not ms_leq(c_ms, p_ms):
        return False
    (c,) = diff.keys()
    return c_ms[c] >= 1


def _match_wl(concl, premises, modal):
    if len(premises) != 1:
        return False
    pair = _single_diff(concl, premises[0])
    if pair is None:
        return False
    c, p = pair
    if c.right != p.right:
        return False
    delta = ms(c.left) - ms(p.left)
    return sum(delta.values()) == 1 and ms_leq(ms(p.left), ms(c.left))


def _match_wr(concl, premises, modal):
    if len(premises) != 1:
        return False
    pair = _single_diff(concl, premises[0])
    if pair is None:
        return False
    c, p = pair
    return c.left == p.left and p.right is None and c.right is not None


def _match_cl(concl, premises, modal):
    if len(premises) != 1:
        return False
    pair = _single_diff(concl, premises[0])
    if pair is None:
        return False
    c, p = pair
    if c.right != p.right:
        return False
    delta = ms(p.left) - ms(c.left)
    if sum(delta.values()) != 1 or not ms_leq(ms(c.left), ms(p.left)):
        return False
    (f,) = delta.keys()
    return ms(c.left)[f] >= 1


def _match_single_logical(concl, premises, want):
    """Shared shape for one-premise logical rules: one comp rewritten."""
    if len(premises) != 1:
        return False
    pair = _single_diff(concl, premises[0])
    if pair is None:
        return False
    return want(*pair)


def _match_imp_r(concl, premises, modal):
    def want(c, p):
        if not isinstance(c.right, Imp) or p.right != c.right.right:
            return False
        return ms(p.left) == ms(c.left) + Counter([c.right.left])
    return _match_single_logical(concl, premises, want)


def _match_and_l(concl, premises, modal, pick):
    def want(c, p):
        if c.right != p.right:
            return False
        for f in set(c.left):
            if isinstance(f, And):
                expected = ms(c.left) - Counter([f]) + Counter([pick(f)])
                if ms(p.left) == expected:
                    return True
        return False
    return _match_single_logical(concl, premises, want)


def _match_or_r(concl, premises, modal, pick):
    def want(c, p):
        if not isinstance(c.right, Or) or p.left != c.left:
            return False
        return p.right == pick(c.right)
    return _match_single_logical(concl, premises, want)


def _match_neg_l(concl, premises, modal):
    def want(c, p):
        if c.right is not None or p.right is None:
            return False
        f = Imp(p.right, BOT)
        return ms(c.left) == ms(p.left) + Counter([f])
    return _match_single_logical(concl, premises, want)


def _match_neg_r(concl, premises, modal):
    def want(c, p):
        if not is_neg(c.right) or p.right is not None:
            return False
        return ms(p.left) == ms(c.left) + Counter([c.right.left])
    return _match_single_logical(concl, premises, want)


def _two_premise_candidates(concl, premises):
    """Yield (c, G, q1, q2) over principal comp choices and premise orders."""
    c_ms = ms(concl)
    for c in set(concl):
        G = c_ms - Counter([c])
        for p1, p2 in (premises, premises[::-1]):
            p1_ms, p2_ms = ms(p1), ms(p2)
            if not (ms_leq(G, p1_ms) and ms_leq(G, p2_ms)):
                continue
            d1, d2 = p1_ms - G, p2_ms - G
            if sum(d1.values()) != 1 or sum(d2.values()) != 1:
                continue
            (q1,) = d1.keys()
            (q2,) = d2.keys()
            yield c, G, q1, q2


def _match_imp_l(concl, premises, modal):
    if len(premises) != 2:
        return False
    for c, G, q1, q2 in _two_premise_candidates(concl, premises):
        if q1.right is None or q2.right != c.right:
            continue
        for f in set(c.left):
            if isinstance(f, Imp) and f.left == q1.right:
                gamma = ms(c.left) - Counter([f])
                if ms(q1.left) == gamma and ms(q2.left) == gamma + Counter([f.right]):
                    return True
    return False


def _match_and_r(concl, premises, modal):
    if len(premises) != 2:
        return False
    for c, G, q1, q2 in _two_premise_candidates(concl, premises):
        if not isinstance(c.right, And):
            continue
        if (q1.left == c.left and q2.left == c.left
                and q1.right == c.right.left and q2.right == c.right.right):
            return True
    return False


def _match_or_l(concl, premises, modal):
    if len(premises) != 2:
        return False
    for c, G, q1, q2 in _two_premise_candidates(concl, premises):
        if q1.right != c.right or q2.right != c.right:
            continue
        for f in set(c.left):
            if isinstance(f, Or):
                gamma = ms(c.left) - Counter([f])
                if (ms(q1.left) == gamma + Counter([f.left])
                        and ms(q2.left) == gamma + Counter([f.right])):
                    return True
    return False


def _match_com(concl, premises, modal):
    if len(premises) != 2:
        return False
    c_ms = ms(concl)
    comps = sorted(set(concl), key=hseq_key)
    for c1 in comps:
        for c2 in comps:
            pair = Counter([c1, c2])
            if not ms_leq(pair, c_ms):
                continue
            G = c_ms - pair
            for p1, p2 in (premises, premises[::-1]):
                p1_ms, p2_ms = ms(p1), ms(p2)
                if not (ms_leq(G, p1_ms) and ms_leq(G, p2_ms)):
                    continue
                d1, d2 = p1_ms - G, p2_ms - G
                if sum(d1.values()) != 1 or sum(d2.values()) != 1:
                    continue
                (q1,) = d1.keys()
                (q2,) = d2.keys()
                if q1.right != c1.right or q2.right != c2.right:
                    continue
                both = ms(c1.left) & ms(q1.left)
                for g1 in _submultisets(both):
                    pi1 = ms(q1.left) - g1
                    if not ms_leq(pi1, ms(c2.left)):
                        continue
                    g2 = ms(c1.left) - g1
                    pi2 = ms(c2.left) - pi1
                    if ms(q2.left) == g2 + pi2:
                        return True
    return False


def _match_cut(concl, premises, modal):
    if len(premises) != 2:
        return False
    for c, G, q1, q2 in _two_premise_candidates(concl, premises):
        if q2.right is None or q1.right != c.right:
            continue
        a = q2.right
        if ms(q1.left)[a] < 1:
            continue
        if ms(q1.left) - Counter([a]) + ms(q2.left) == ms(c.left):
            return True
    return False


def _unbox(fs: Iterable[Formula]) -> Optional[list[Formula]]:
    out = []
    for f in fs:
        if not isinstance(f, Box):
            return None
        out.append(f.body)
    return out


def _match_box(concl, premises, modal):
    if not modal or len(premises) != 1 or len(concl) != 2:
        return False
    prem = premises[0]
    if len(prem) != 2:
        return False
    with_right = [c for c in concl if c.right is not None]
    without = [c for c in concl if c.right is None]
    if len(with_right) != 1 or len(without) != 1:
        return False
    (ca,), (cn,) = with_right, without
    if not isinstance(ca.right, Box):
        return False
    gamma = _unbox(ca.left)
    pi = _unbox(cn.left)
    if gamma is None or pi is None:
        return False
    expected = hyper([hseq(pi, None), hseq(gamma, ca.right.body)])
    return prem == expected


_MATCHERS = {
    "id": _match_id,
    "bot-l": _match_bot_l,
    "top-r": _match_top_r,
    "ew": _match_ew,
    "ec": _match_ec,
    "wl": _match_wl,
    "wr": _match_wr,
    "cl": _match_cl,
    "imp-r": _match_imp_r,
    "imp-l": _match_imp_l,
    "and-l1": lambda c, p, m: _match_and_l(c, p, m, lambda f: f.left),
    "and-l2": lambda c, p, m: _match_and_l(c, p, m, lambda f: f.right),
    "and-r": _match_and_r,
    "or-l": _match_or_l,
    "or-r1": lambda c, p, m: _match_or_r(c, p, m, lambda f: f.left),
    "or-r2": lambda c, p, m: _match_or_r(c, p, m, lambda f: f.right),
    "com": _match_com,
    "cut": _match_cut,
    "neg-l": _match_neg_l,
    "neg-r": _match_neg_r,
    "box": _match_box,
}


def check_derivation_located(d: HDerivation, modal: bool = False
                             ) -> Optional[tuple[int, ...]]:
    """None when every node matches its schema; else the path (premise indices
    from the root) of the first failing node."""
    stack: list[tuple[HDerivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        cur, path = stack.pop()
        matcher = _MATCHERS.get(cur.rule)
        if matcher is None:
            return path
        premise_concls = tuple(p.conclusion for p in cur.premises)
        try:
            ok = matcher(cur.conclusion, premise_concls, modal)
        except (ValueError, AttributeError):
            ok = False
        if not ok:
            return path
        for i, p in enumerate(cur.premises):
            stack.append((p, path + (i,)))
    return None


def check_derivation(d: HDerivation, modal: bool = False) -> bool:
    return check_derivation_located(d, modal) is None


# ---------------------------------------------------------------------------
# formula interpretation

def interp_hyper(g: Hypersequent) -> Formula:
    from .relations import big_and, big_or
    comps = [Imp(big_and(list(c.left)), c.right if c.right is not None else BOT)
             for c in g]
    return big_or(comps)


# ---------------------------------------------------------------------------
# derived negation rules expand into core steps

def expand_macros(d: HDerivation) -> HDerivation:
    premises = tuple(expand_macros(p) for p in d.premises)
    if d.rule == "neg-l":
        (p,) = premises
        pair = _single_diff(d.conclusion, p.conclusion)
        if pair is None:
            raise ValueError("malformed neg-l node")
        c, q = pair
        ctx = ms(d.conclusion) - Counter([c])
        ax = node("bot-l", ctx + Counter([hseq(list(q.left) + [BOT], c.right)]))
        return node("imp-l", d.conclusion, p, ax)
    if d.rule == "neg-r":
        (p,) = premises
        pair = _single_diff(d.conclusion, p.conclusion)
        if pair is None:
            raise ValueError("malformed neg-r node")
        c, q = pair
        ctx = ms(d.conclusion) - Counter([c])
        mid = node("wr", ctx + Counter([hseq(q.left, BOT)]), p)
        return node("imp-r", d.conclusion, mid)
    return node(d.rule, d.conclusion, *premises)


# ---------------------------------------------------------------------------
# small derivation builders used by box-n and cut elimination

def _ew_many(d: HDerivation, comps: Counter) -> HDerivation:
    cur = ms(d.conclusion)
    for comp, n in sorted(comps.items(), key=lambda kv: hseq_key(kv[0])):
        for _ in range(n):
            cur = cur + Counter([comp])
            d = node("ew", cur, d)
    return d


def _ec_one(d: HDerivation, comp: HSeq) -> HDerivation:
    cur = ms(d.conclusion)
    if cur[comp] < 2:
        raise ValueError("ec needs a duplicate component")
    return node("ec", cur - Counter([comp]), d)


def _adjust(d: HDerivation, target: Counter) -> HDerivation:
    """Contract duplicates / weaken in components until the conclusion equals
    the target multiset; every current component must appear in the target."""
    cur = ms(d.conclusion)
    for comp in cur:
        if target[comp] == 0:
            raise ValueError(f"component {comp.render()} not in target")
    for comp in sorted(cur, key=hseq_key):
        while cur[comp] > target[comp]:
            d = _ec_one(d, comp)
            cur = ms(d.conclusion)
    missing = target - cur
    if missing:
        d = _ew_many(d, missing)
    assert ms(d.conclusion) == target
    return d


def _wl_chain(d: HDerivation, comp: HSeq, fs: Iterable[Formula]
              ) -> tuple[HDerivation, HSeq]:
    cur = comp
    for f in fs:
        nxt = left_add(cur, [f])
        d = node("wl", ms(d.conclusion) - Counter([cur]) + Counter([nxt]), d)
        cur = nxt
    return d, cur


def _cl_chain(d: HDerivation, comp: HSeq, fs: Iterable[Formula]
              ) -> tuple[HDerivation, HSeq]:
    cur = comp
    for f in fs:
        if Counter(cur.left)[f] < 2:
            raise ValueError("cl needs a duplicated formula")
        nxt = left_sub(cur, [f])
        d = node("cl", ms(d.conclusion) - Counter([cur]) + Counter([nxt]), d)
        cur = nxt
    return d, cur


def _wr_one(d: HDerivation, comp: HSeq, f: Formula) -> tuple[HDerivation, HSeq]:
    if comp.right is not None:
        raise ValueError("wr needs an empty succedent")
    nxt = hseq(comp.left, f)
    return node("wr", ms(d.conclusion) - Counter([comp]) + Counter([nxt]), d), nxt


def _com_node(d1: HDerivation, d2: HDerivation,
              active1: HSeq, split1: tuple[Counter, Counter],
              active2: HSeq, split2: tuple[Counter, Counter]
              ) -> tuple[HDerivation, HSeq, HSeq]:
    ctx1 = ms(d1.conclusion) - Counter([active1])
    ctx2 = ms(d2.conclusion) - Counter([active2])
    if ctx1 != ctx2:
        raise ValueError("com contexts differ")
    g1, p1 = split1
    g2, p2 = split2
    assert g1 + p1 == ms(active1.left) and g2 + p2 == ms(active2.left)
    prod1 = hseq((g1 + g2).elements(), active1.right)
    prod2 = hseq((p1 + p2).elements(), active2.right)
    out = node("com", ctx1 + Counter([prod1, prod2]), d1, d2)
    return out, prod1, prod2


def _split_comp(d: HDerivation, comp: HSeq, part1: Counter, part2: Counter
                ) -> tuple[HDerivation, HSeq, HSeq]:
    """From ... | (part1+part2 => D) derive ... | (part1 => D) | (part2 => D)
    by communicating two copies of d and contracting."""
    out, prod1, prod2 = _com_node(d, d, comp, (part1, part2), comp, (part1, part2))
    out, prod1 = _cl_chain(out, prod1, part1.elements())
    out, prod2 = _cl_chain(out, prod2, part2.elements())
    return out, prod1, prod2


# ---------------------------------------------------------------------------
# the derived box-n rule

def derive_box_n(premise: HDerivation, n: int,
                 pis: Optional[list[list[Formula]]] = None,
                 gamma: Optional[list[Formula]] = None,
                 a: Optional[Formula] = None) -> HDerivation:
    """Build ([]Pi_1 => | ... | []Pi_n => | []Gamma => []A) below a derivation
    of (Pi_1 => | ... | Pi_n => | Gamma => A), via (wl)/(ec)/(box)/(com)/(cl)."""
    concl = premise.conclusion
    with_right = [c for c in concl if c.right is not None]
    without = sorted([c for c in concl if c.right is None], key=hseq_key)
    if len(with_right) != 1 or len(without) != n:
        raise ValueError("premise must be Pi_1 => | ... | Pi_n => | Gamma => A")
    main = with_right[0]
    if gamma is not None and ms(main.left) != ms(gamma):
        raise ValueError("gamma mismatch")
    if a is not None and main.right != a:
        raise ValueError("main formula mismatch")
    if pis is not None:
        if sorted((ms(p) for p in pis), key=str) != sorted(
                (ms(c.left) for c in without), key=str):
            raise ValueError("pi multiset mismatch")
    if n == 0:
        d = node("ew", hyper([hseq([], None), main]), premise)
        boxed = hyper([hseq([], None), hseq([Box(f) for f in main.left],
                                            Box(main.right))])
        return node("box", boxed, d)
    if n == 1:
        pi = without[0]
        boxed = hyper([hseq([Box(f) for f in pi.left], None),
                       hseq([Box(f) for f in main.left], Box(main.right))])
        return node("box", boxed, premise)
    # pad every Pi-component to the union, contract to one, box, then split
    union = Counter()
    for c in without:
        union += ms(c.left)
    d = premise
    padded = []
    for c in without:
        d, newc = _wl_chain(d, c, (union - ms(c.left)).elements())
        padded.append(newc)
    merged = padded[0]
    for _ in range(n - 1):
        d = _ec_one(d, merged)
    d = node("box", hyper([hseq([Box(f) for f in union.elements()], None),
                           hseq([Box(f) for f in main.left], Box(main.right))]), d)
    box_main = hseq([Box(f) for f in main.left], Box(main.right))
    remaining = Counter({Box(f): k for f, k in union.items()})
    cur = hseq(remaining.elements(), None)
    for c in without[:-1]:
        part = Counter({Box(f): k for f, k in ms(c.left).items()})
        rest = ms_sub(remaining, part)
        d, _, cur = _split_comp(d, cur, part, rest)
        remaining = rest
    return d


# ---------------------------------------------------------------------------
# proof files

def derivation_to_json(d: HDerivation) -> dict:
    out: dict = {"rule": d.rule, "conclusion": render_hyper(d.conclusion)
                 if d.conclusion else "", "premises": []}
    stack = [(d, out)]
    while stack:
        cur, obj = stack.pop()
        for p in cur.premises:
            child = {"rule": p.rule,
                     "conclusion": render_hyper(p.conclusion) if p.conclusion else "",
                     "premises": []}
            obj["premises"].append(child)
            stack.append((p, child))
    return out


def derivation_from_json(data: dict) -> HDerivation:
    def build(obj) -> HDerivation:
        if not isinstance(obj, dict) or "rule" not in obj or "conclusion" not in obj:
            raise ParseError("proof node needs 'rule' and 'conclusion'")
        rule = obj["rule"]
        if rule not in ALL_RULES:
            raise ParseError(f"unknown rule {rule!r}")
        text = obj["conclusion"]
        concl = parse_hypersequent(text) if text.strip() else hyper([])
        premises = tuple(build(p) for p in obj.get("premises", []))
        return HDerivation(rule, concl, premises)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100_000))
    try:
        return build(data)
    finally:
        sys.setrecursionlimit(old)


def load_derivation(path: str) -> HDerivation:
    with open(path, "r", encoding="utf-8") as fh:
        return derivation_from_json(json.load(fh))


def save_derivation(d: HDerivation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(derivation_to_json(d), fh, indent=1)
        fh.write("\n")


# re-exported here because cut elimination operates on this module's proof
# objects; the implementation lives in cutelim
from .cutelim import (  # noqa: E402
    CutEliminationError,
    UnsupportedCutInteraction,
    eliminate_cuts,
)
