"""Constructive cut elimination for the box-modal hypersequent calculus.

The engine implements the standard multicut claim: from a cut-free derivation
of [Gamma_i, A^{lam_i} => Delta_i]_i and a cut-free derivation of H | Pi => A,
it builds a cut-free derivation of H | [Gamma_i, Pi^{lam_i} => Delta_i]_i,
by recursion on (cut formula complexity, combined derivation size).  Axiom
and weakening endings close directly; rules not touching the cut occurrences
permute; principal pairs reduce to smaller cut formulas, the box/box pair
through the derived box-2 rule.
"""
from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    BOT, And, Bot, Box, Formula, Imp, Or, Top, formula_key, render_formula,
)
from .hypersequent import (
    HDerivation,
    HSeq,
    Hypersequent,
    _adjust,
    _cl_chain,
    _com_node,
    _ec_one,
    _ew_many,
    _split_comp,
    _wl_chain,
    _wr_one,
    check_derivation_located,
    derive_box_n,
    expand_macros,
    hseq,
    hseq_key,
    hyper,
    hyper_of,
    left_add,
    left_sub,
    ms,
    ms_leq,
    ms_sub,
    node,
    render_hyper,
)


class CutEliminationError(RuntimeError):
    pass


class UnsupportedCutInteraction(CutEliminationError):
    """A rule interaction the rewriting engine does not cover; the paper leaves
    these cases schematic and the corpus never produces them."""


@dataclass
class _Env:
    passes: int = 0
    max_passes: int = 5000

    def tick(self):
        self.passes += 1
        if self.passes > self.max_passes:
            raise CutEliminationError("cut elimination pass budget exceeded")


# marks: a list of (component, marked-copy count) covering d1's conclusion
Marks = tuple


def _count_in(comp: HSeq, f: Formula) -> int:
    return sum(1 for g in comp.left if g == f)


def _fill(comp: HSeq, lam: int, a: Formula, pi_left: tuple) -> HSeq:
    out = left_sub(comp, [a] * lam)
    return left_add(out, list(pi_left) * lam)


def _target(marks: Marks, a: Formula, pi: HSeq, h: Counter) -> Counter:
    out = h.copy()
    out.update(_fill(c, lam, a, pi.left) for c, lam in marks)
    return +out


def _axiom_close(target: Counter) -> Optional[HDerivation]:
    for comp in target:
        if comp.right is not None and comp.left == (comp.right,):
            return node("id", target)
    for comp in target:
        if any(isinstance(f, Bot) for f in comp.left):
            return node("bot-l", target)
    for comp in target:
        if isinstance(comp.right, Top):
            return node("top-r", target)
    return None


def _single_instance(concl: Hypersequent, prem: Hypersequent) -> tuple[HSeq, HSeq]:
    """The unique (conclusion comp, premise comp) of a one-comp rewrite."""
    down = ms(concl) - ms(prem)
    up = ms(prem) - ms(concl)
    if sum(down.values()) != 1 or sum(up.values()) != 1:
        raise CutEliminationError("malformed single-premise node")
    (c,), (p,) = down.keys(), up.keys()
    return c, p


def _two_premise_instance(rule: str, concl, p1, p2):
    """Locate (principal comp, q1, q2, ordered premise indexes) of a
    two-premise logical rule instance."""
    c_ms = ms(concl)
    for c in sorted(set(concl), key=hseq_key):
        G = c_ms - Counter([c])
        for order in ((0, 1), (1, 0)):
            a_ms = ms((p1, p2)[order[0]])
            b_ms = ms((p1, p2)[order[1]])
            if not (ms_leq(G, a_ms) and ms_leq(G, b_ms)):
                continue
            d1, d2 = a_ms - G, b_ms - G
            if sum(d1.values()) != 1 or sum(d2.values()) != 1:
                continue
            (q1,), (q2,) = d1.keys(), d2.keys()
            if _check_two_shape(rule, c, q1, q2):
                yield c, q1, q2, order


def _check_two_shape(rule: str, c: HSeq, q1: HSeq, q2: HSeq) -> bool:
    if rule == "imp-l":
        if q1.right is None or q2.right != c.right:
            return False
        for f in set(c.left):
            if isinstance(f, Imp) and f.left == q1.right:
                gamma = ms(c.left) - Counter([f])
                if ms(q1.left) == gamma and ms(q2.left) == gamma + Counter([f.right]):
                    return True
        return False
    if rule == "and-r":
        return (isinstance(c.right, And) and q1.left == c.left and q2.left == c.left
                and q1.right == c.right.left and q2.right == c.right.right)
    if rule == "or-l":
        if q1.right != c.right or q2.right != c.right:
            return False
        for f in set(c.left):
            if isinstance(f, Or):
                gamma = ms(c.left) - Counter([f])
                if (ms(q1.left) == gamma + Counter([f.left])
                        and ms(q2.left) == gamma + Counter([f.right])):
                    return True
        return False
    raise AssertionError(rule)


def _two_principal_formula(rule: str, c: HSeq, q1: HSeq) -> Formula:
    if rule == "and-r":
        return c.right
    if rule == "imp-l":
        for f in set(c.left):
            if isinstance(f, Imp) and f.left == q1.right:
                gamma = ms(c.left) - Counter([f])
                if ms(q1.left) == gamma:
                    return f
    if rule == "or-l":
        for f in set(c.left):
            if isinstance(f, Or):
                gamma = ms(c.left) - Counter([f])
                if ms(q1.left) == gamma + Counter([f.left]):
                    return f
    raise AssertionError("principal not found")


def _com_instances(concl, p1, p2):
    """Yield (c1, c2, q1, q2, order, g1, pi1, g2, pi2) for com instances."""
    from .hypersequent import _submultisets
    c_ms = ms(concl)
    comps = sorted(set(concl), key=hseq_key)
    for c1 in comps:
        for c2 in comps:
            pair = Counter([c1, c2])
            if not ms_leq(pair, c_ms):
                continue
            G = c_ms - pair
            for order in ((0, 1), (1, 0)):
                a_ms = ms((p1, p2)[order[0]])
                b_ms = ms((p1, p2)[order[1]])
                if not (ms_leq(G, a_ms) and ms_leq(G, b_ms)):
                    continue
                d1, d2 = a_ms - G, b_ms - G
                if sum(d1.values()) != 1 or sum(d2.values()) != 1:
                    continue
                (q1,), (q2,) = d1.keys(), d2.keys()
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
                        yield c1, c2, q1, q2, order, g1, pi1, g2, pi2


def _pick_entry(marks: list, comp: HSeq, prefer_zero=False) -> int:
    best = -1
    for i, (c, lam) in enumerate(marks):
        if c == comp:
            if prefer_zero and lam == 0:
                return i
            if best < 0:
                best = i
    if best < 0:
        raise CutEliminationError("marks out of sync with derivation")
    return best


# ---------------------------------------------------------------------------
# the claim recursion

def _claim(d1: HDerivation, marks: Marks, d2: HDerivation, pi: HSeq,
           a: Formula, env: _Env) -> HDerivation:
    """Cut-free derivation of H | [fill(c, lam)] where H = d2.conclusion - pi,
    fill replaces lam marked copies of the cut formula by pi's antecedent."""
    marks = tuple(marks)
    h = ms(d2.conclusion) - Counter([pi])
    target = _target(marks, a, pi, h)
    total = sum(lam for _, lam in marks)

    if total == 0:
        return _adjust(d1, target)
    closed = _axiom_close(target)
    if closed is not None:
        return closed

    state = _d2_phase(d1, marks, d2, pi, a, env, h, target)
    if state is not None:
        return state
    return _d1_phase(d1, marks, d2, pi, a, env, h, target)


def _d2_phase(d1, marks, d2, pi, a, env, h, target) -> Optional[HDerivation]:
    """Handle d2's last rule unless it introduces the designated A principally
    (in which case fall through to the d1 phase by returning None)."""
    rule = d2.rule
    marks = list(marks)

    if rule == "id":
        # after axiom_close the identity component must be pi itself
        if pi.left != (a,):
            raise CutEliminationError("unreachable id interaction")
        return _adjust(d1, target)
    if rule in ("bot-l", "top-r"):
        if rule == "top-r" and isinstance(a, Top):
            has_h_axiom = any(isinstance(c.right, Top) for c in h)
            if not has_h_axiom:
                return None  # principal at pi: reduce d1
        raise CutEliminationError(f"unreachable {rule} interaction")

    if rule == "ew":
        c = _added_comp(d2)
        if c == pi and h[c] == 0:
            return _adjust(d2.premises[0], target)
        prem = d2.premises[0]
        r = _claim(d1, marks, prem, pi, a, env)
        return _adjust(r, target)
    if rule == "ec":
        c = _contracted_comp(d2)
        prem = d2.premises[0]
        if c != pi or h[c] >= 1:
            r = _claim(d1, marks, prem, pi, a, env)
            return _adjust(r, target)
        # both copies are cut components: eliminate one, then the survivor
        env.tick()
        w = _claim(d1, marks, prem, pi, a, env)
        env.tick()
        r = _claim(d1, marks, w, pi, a, env)
        return _adjust(r, target)

    if rule in ("wl", "cl", "wr"):
        c, p = _single_instance(d2.conclusion, d2.premises[0].conclusion)
        if c != pi or h[c] >= 1:
            r = _claim(d1, marks, d2.premises[0], pi, a, env)
            return _reapply_single(rule, r, c, p, target)
        if rule == "wr":
            return _wr_pi(d2.premises[0], marks, pi, a, p, target)
        prem = d2.premises[0]
        r = _claim(d1, marks, prem, p, a, env)
        if rule == "wl":
            (b,) = (ms(c.left) - ms(p.left)).keys()
            for comp, lam in marks:
                if lam:
                    filled = _fill(comp, lam, a, p.left)
                    r, _ = _wl_chain(r, filled, [b] * lam)
            return _adjust(r, target)
        # cl at pi: fills carry lam extra copies of the duplicated formula
        (b,) = (ms(p.left) - ms(c.left)).keys()
        for comp, lam in marks:
            if lam:
                filled = _fill(comp, lam, a, p.left)
                r, _ = _cl_chain(r, filled, [b] * lam)
        return _adjust(r, target)

    if rule in ("imp-r", "and-l1", "and-l2", "or-r1", "or-r2"):
        c, p = _single_instance(d2.conclusion, d2.premises[0].conclusion)
        if c != pi or h[c] >= 1:
            r = _claim(d1, marks, d2.premises[0], pi, a, env)
            return _reapply_single(rule, r, c, p, target)
        if rule in ("imp-r", "or-r1", "or-r2"):
            return None  # right-principal introduction of A: reduce d1
        return _pi_left_single(rule, d1, marks, d2, pi, a, env, c, p, target)

    if rule in ("imp-l", "and-r", "or-l"):
        insts = list(_two_premise_instance(
            rule, d2.conclusion, d2.premises[0].conclusion,
            d2.premises[1].conclusion))
        if not insts:
            raise CutEliminationError(f"malformed {rule} node")
        generic = [inst for inst in insts
                   if inst[0] != pi or ms(d2.conclusion)[inst[0]] >= 2]
        if generic:
            c, q1, q2, order = generic[0]
            prems = [d2.premises[order[0]], d2.premises[order[1]]]
            r1 = _claim(d1, marks, prems[0], pi, a, env)
            r2 = _claim(d1, marks, prems[1], pi, a, env)
            return node(rule, target, r1, r2)
        c, q1, q2, order = insts[0]
        if rule == "and-r":
            return None  # principal at pi: reduce d1
        return _pi_left_two(rule, d1, marks, d2, pi, a, env,
                            c, q1, q2, order, target)

    if rule == "com":
        insts = list(_com_instances(d2.conclusion, d2.premises[0].conclusion,
                                    d2.premises[1].conclusion))
        if not insts:
            raise CutEliminationError("malformed com node")
        for inst in insts:
            c1, c2 = inst[0], inst[1]
            pair = Counter([c1, c2])
            if ms_leq(pair, h):
                order = inst[4]
                prems = [d2.premises[order[0]], d2.premises[order[1]]]
                r1 = _claim(d1, marks, prems[0], pi, a, env)
                r2 = _claim(d1, marks, prems[1], pi, a, env)
                return node("com", target, r1, r2)
        return _com_pi(d1, marks, d2, pi, a, env, insts, h, target)

    if rule == "box":
        if not isinstance(a, Box):
            raise CutEliminationError("box conclusion designated at non-box formula")
        return None  # principal: reduce d1 to the box/box pair

    raise CutEliminationError(f"unexpected rule {rule!r} on the right premise")


def _added_comp(d: HDerivation) -> HSeq:
    diff = ms(d.conclusion) - ms(d.premises[0].conclusion)
    (c,) = diff.keys()
    return c


def _contracted_comp(d: HDerivation) -> HSeq:
    diff = ms(d.premises[0].conclusion) - ms(d.conclusion)
    (c,) = diff.keys()
    return c


def _reapply_single(rule: str, r: HDerivation, c: HSeq, p: HSeq,
                    target: Counter) -> HDerivation:
    """Reapply a one-premise rule below the recursed derivation; the changed
    component sits in the recursion result verbatim (it was context there)."""
    cur = ms(r.conclusion)
    nxt = cur - Counter([p]) + Counter([c])
    out = node(rule, nxt, r)
    return _adjust(out, target)


def _wr_pi(prem: HDerivation, marks, pi: HSeq, a: Formula, p: HSeq,
           target: Counter) -> HDerivation:
    """d2 ended by weakening A onto pi: one cut component can be built from
    the un-weakened pi, everything else comes by external weakening."""
    entry = next((c, lam) for c, lam in marks if lam >= 1)
    t = _fill(entry[0], entry[1], a, pi.left)
    extra = ms_sub(ms(t.left), ms(p.left))
    d, cur = _wl_chain(prem, p, extra.elements())
    if t.right is not None:
        d, cur = _wr_one(d, cur, t.right)
    return _adjust(d, target)


def _pi_left_single(rule: str, d1, marks, d2, pi, a, env, c, p,
                    target) -> HDerivation:
    """A one-premise left rule applied inside pi: recurse at the premise's
    antecedent and convert each filled copy back."""
    r = _claim(d1, marks, d2.premises[0], p, a, env)
    if rule == "and-l1":
        conj = _restore_and(c, p, left_side=True)
        conv = conj.left
    else:
        conj = _restore_and(c, p, left_side=False)
        conv = conj.right
    for comp, lam in marks:
        if not lam:
            continue
        cur = _fill(comp, lam, a, p.left)
        for _ in range(lam):
            nxt = left_add(left_sub(cur, [conv]), [conj])
            r = node(rule, ms(r.conclusion) - Counter([cur]) + Counter([nxt]), r)
            cur = nxt
    return _adjust(r, target)


def _restore_and(c: HSeq, p: HSeq, left_side: bool) -> Formula:
    removed = ms(c.left) - ms(p.left)
    (f,) = removed.keys()
    if not isinstance(f, And):
        raise CutEliminationError("and-l instance mismatch")
    return f


def _pi_left_two(rule: str, d1, marks, d2, pi, a, env, c, q1, q2, order,
                 target) -> HDerivation:
    """(or-l) or (imp-l) principal inside pi: supported for a single marked
    copy, which is all the corpus and the cut driver produce."""
    total = sum(lam for _, lam in marks)
    if total != 1:
        raise UnsupportedCutInteraction(
            f"{rule} inside the cut component with {total} marked copies")
    (idx,) = [i for i, (comp, lam) in enumerate(marks) if lam == 1]
    c0, _ = marks[idx]
    prems = [d2.premises[order[0]], d2.premises[order[1]]]
    principal = _two_principal_formula(rule, c, q1)
    if rule == "or-l":
        r1 = _claim(d1, marks, prems[0], q1, a, env)
        r2 = _claim(d1, marks, prems[1], q2, a, env)
        return node("or-l", target, r1, r2)
    # imp-l: the succedent premise carries A; the antecedent premise is X-only
    r2 = _claim(d1, marks, prems[1], q2, a, env)
    filled = _fill(c0, 1, a, q2.left)
    ctx = ms(r2.conclusion) - Counter([filled])
    gamma = ms_sub(ms(pi.left), Counter([principal]))
    want_left = ms_sub(ms(filled.left), Counter([principal.right]))
    d_ant = prems[0]
    pad = ms_sub(want_left, gamma)
    d_ant, ant_comp = _wl_chain(d_ant, q1, pad.elements())
    d_ant = _ew_many(d_ant, ms_sub(ctx, ms(d_ant.conclusion) - Counter([ant_comp])))
    out = node("imp-l", ctx + Counter([_fill(c0, 1, a, pi.left)]), d_ant, r2)
    return _adjust(out, target)


def _com_pi(d1, marks, d2, pi, a, env, insts, h, target) -> HDerivation:
    """pi is a product of d2's final communication: recurse on the premise
    carrying the A-succedent piece, then exchange contents with the other
    premise one marked component at a time."""
    inst = None
    for cand in insts:
        if cand[0] == pi:
            inst = cand
            break
        if cand[1] == pi:
            # swap roles so that c1 is the designated product
            c1, c2, q1, q2, order, g1, pi1, g2, pi2 = cand
            inst = (c2, c1, q2, q1, (order[1], order[0]), pi1, g1, pi2, g2)
            break
    if inst is None:
        raise CutEliminationError("com instance lost")
    c1, c2, q1, q2, order, g1, pi1, g2, pi2 = inst
    prems = [d2.premises[order[0]], d2.premises[order[1]]]
    if q1.right != a:
        raise CutEliminationError("com product/premise mismatch")
    r1 = _claim(d1, marks, prems[0], q1, a, env)
    p2 = prems[1]
    w = r1
    produced_c2 = 0
    for comp, lam in marks:
        if not lam:
            continue
        u = _fill(comp, lam, a, q1.left)
        base = ms_sub(ms(u.left), _scale(pi1, lam))
        ctx_w = ms(w.conclusion) - Counter([u])
        p2_ctx = ms(p2.conclusion) - Counter([q2])
        pad = ms_sub(ctx_w, p2_ctx & ctx_w)
        p2x = _ew_many(p2, pad)
        w, prod1, prod2 = _com_node(
            w, p2x, u, (base, _scale(pi1, lam)), q2, (g2, pi2))
        # prod1 = base + g2 => ...: pad with the remaining copies of g2
        w, prod1 = _wl_chain(w, prod1, _scale(g2, lam - 1).elements())
        # prod2 = pi1^lam + pi2 => ...: contract down to c2
        surplus = ms_sub(ms(prod2.left), ms(c2.left))
        w, prod2 = _cl_chain(w, prod2, surplus.elements())
        produced_c2 += 1
    if produced_c2 == 0:
        raise CutEliminationError("com-pi with no marked components")
    return _adjust(w, target)


def _scale(counter: Counter, n: int) -> Counter:
    out = Counter()
    for k, v in counter.items():
        if v * n:
            out[k] = v * n
    return out


# ---------------------------------------------------------------------------
# the d1 phase: d2 ends with a principal introduction of A (or A is top)

def _d1_phase(d1, marks, d2, pi, a, env, h, target) -> HDerivation:
    rule = d1.rule
    marks = list(marks)

    if rule == "id":
        # some marked component is exactly A => A
        return _adjust(d2, target)
    if rule in ("bot-l", "top-r"):
        raise CutEliminationError(f"unreachable {rule} on the left premise")

    if rule == "ew":
        c = _added_comp(d1)
        i = _pick_entry(marks, c, prefer_zero=True)
        comp, lam = marks[i]
        prem_marks = marks[:i] + marks[i + 1:]
        r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
        return _adjust(r, target)
    if rule == "ec":
        c = _contracted_comp(d1)
        i = _pick_entry(marks, c)
        comp, lam = marks[i]
        prem_marks = marks + [(comp, lam)]
        r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
        return _adjust(r, target)

    if rule in ("wl", "cl", "wr", "imp-r", "and-l1", "and-l2", "or-r1", "or-r2"):
        c, p = _single_instance(d1.conclusion, d1.premises[0].conclusion)
        i = _pick_entry(marks, c)
        comp, lam = marks[i]
        if rule == "wl":
            (b,) = (ms(c.left) - ms(p.left)).keys()
            if b == a and lam > _count_in(p, a):
                prem_marks = marks[:i] + [(p, lam - 1)] + marks[i + 1:]
                r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
                filled = _fill(p, lam - 1, a, pi.left)
                r, _ = _wl_chain(r, filled, list(pi.left))
                return _adjust(r, target)
            prem_marks = marks[:i] + [(p, lam)] + marks[i + 1:]
            r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
            filled = _fill(p, lam, a, pi.left)
            r, _ = _wl_chain(r, filled, [b])
            return _adjust(r, target)
        if rule == "cl":
            (b,) = (ms(p.left) - ms(c.left)).keys()
            if b == a and lam == _count_in(c, a) and lam >= 1:
                prem_marks = marks[:i] + [(p, lam + 1)] + marks[i + 1:]
                r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
                filled = _fill(p, lam + 1, a, pi.left)
                r, _ = _cl_chain(r, filled, list(pi.left))
                return _adjust(r, target)
            prem_marks = marks[:i] + [(p, lam)] + marks[i + 1:]
            r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
            filled = _fill(p, lam, a, pi.left)
            r, _ = _cl_chain(r, filled, [b])
            return _adjust(r, target)
        if rule in ("and-l1", "and-l2"):
            removed = ms(c.left) - ms(p.left)
            (f,) = removed.keys()
            if f == a and lam == _count_in(c, a):
                return _principal_case(rule, d1, marks, i, d2, pi, a, env, target)
        prem_marks = marks[:i] + [(p, lam)] + marks[i + 1:]
        r = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
        return _reapply_single_d1(rule, r, c, p, lam, a, pi, target)

    if rule in ("imp-l", "and-r", "or-l"):
        insts = list(_two_premise_instance(
            rule, d1.conclusion, d1.premises[0].conclusion,
            d1.premises[1].conclusion))
        if not insts:
            raise CutEliminationError(f"malformed {rule} node")
        c, q1, q2, order = insts[0]
        principal = _two_principal_formula(rule, c, q1)
        i = _pick_entry(marks, c)
        comp, lam = marks[i]
        if rule in ("imp-l", "or-l") and principal == a \
                and lam == _count_in(c, a):
            return _principal_case(rule, d1, marks, i, d2, pi, a, env,
                                   target, inst=(c, q1, q2, order))
        # marked copies live in the shared antecedent of both premises
        prems = [d1.premises[order[0]], d1.premises[order[1]]]
        m1 = marks[:i] + [(q1, lam)] + marks[i + 1:]
        m2 = marks[:i] + [(q2, lam)] + marks[i + 1:]
        r1 = _claim(prems[0], tuple(m1), d2, pi, a, env)
        r2 = _claim(prems[1], tuple(m2), d2, pi, a, env)
        return node(rule, target, r1, r2)

    if rule == "com":
        return _d1_com(d1, marks, d2, pi, a, env, target)
    if rule == "box":
        return _principal_box(d1, marks, d2, pi, a, env, target)
    raise CutEliminationError(f"unexpected rule {rule!r} on the left premise")


def _reapply_single_d1(rule, r, c, p, lam, a, pi, target) -> HDerivation:
    """Reapply a one-premise d1 rule on the filled component."""
    filled_p = _fill(p, lam, a, pi.left)
    filled_c = _fill(c, lam, a, pi.left)
    cur = ms(r.conclusion)
    out = node(rule, cur - Counter([filled_p]) + Counter([filled_c]), r)
    return _adjust(out, target)


def _d1_com(d1, marks, d2, pi, a, env, target) -> HDerivation:
    insts = list(_com_instances(d1.conclusion, d1.premises[0].conclusion,
                                d1.premises[1].conclusion))
    if not insts:
        raise CutEliminationError("malformed com node")
    c1, c2, q1, q2, order, g1, pi1, g2, pi2 = insts[0]
    prems = [d1.premises[order[0]], d1.premises[order[1]]]
    marks = list(marks)
    i1 = _pick_entry(marks, c1)
    e1_lam = marks[i1][1]
    rest = marks[:i1] + marks[i1 + 1:]
    i2 = _pick_entry(rest, c2)
    e2_lam = rest[i2][1]
    ctx_marks = rest[:i2] + rest[i2 + 1:]
    # split the marked copies of c1 between the two communicated parts
    a11 = min(e1_lam, sum(1 for f in g1.elements() if f == a))
    a12 = e1_lam - a11
    if a12 > sum(1 for f in g2.elements() if f == a):
        raise CutEliminationError("com mark split failed")
    b11 = min(e2_lam, sum(1 for f in pi1.elements() if f == a))
    b12 = e2_lam - b11
    if b12 > sum(1 for f in pi2.elements() if f == a):
        raise CutEliminationError("com mark split failed")
    m1 = ctx_marks + [(q1, a11 + b11)]
    m2 = ctx_marks + [(q2, a12 + b12)]
    r1 = _claim(prems[0], tuple(m1), d2, pi, a, env)
    r2 = _claim(prems[1], tuple(m2), d2, pi, a, env)
    fq1 = _fill(q1, a11 + b11, a, pi.left)
    fq2 = _fill(q2, a12 + b12, a, pi.left)

    def fill_part(part: Counter, k: int) -> Counter:
        out = ms_sub(part, Counter({a: k}) if k else Counter())
        for f, n in _scale(ms(pi.left), k).items():
            out[f] += n
        return +out

    split1 = (fill_part(g1, a11), fill_part(pi1, b11))
    split2 = (fill_part(g2, a12), fill_part(pi2, b12))
    out, prod1, prod2 = _com_node(r1, r2, fq1, split1, fq2, split2)
    return _adjust(out, target)


# ---------------------------------------------------------------------------
# principal cases

def _principal_case(rule, d1, marks, i, d2, pi, a, env, target,
                    inst=None) -> HDerivation:
    """Both sides principal on the cut formula: reduce to strictly smaller
    cut formulas through the matching premises."""
    marks = list(marks)
    comp, lam = marks[i]
    if isinstance(a, And):
        if d2.rule != "and-r":
            raise CutEliminationError("principal shape mismatch")
        sub = a.left if d1.rule == "and-l1" else a.right
        dx = _premise_with(d2, hseq(pi.left, sub))
        px = hseq(pi.left, sub)
        c, p = _single_instance(d1.conclusion, d1.premises[0].conclusion)
        prem_marks = marks[:i] + [(p, lam - 1)] + marks[i + 1:]
        e1 = _claim(d1.premises[0], tuple(prem_marks), d2, pi, a, env)
        filled = _fill(p, lam - 1, a, pi.left)
        inner_marks = _zero_marks(e1.conclusion, {filled: (filled, 1)})
        r = _claim(e1, inner_marks, dx, px, sub, env)
        return _adjust(r, target)
    if isinstance(a, Or):
        if d2.rule not in ("or-r1", "or-r2"):
            raise CutEliminationError("principal shape mismatch")
        c, q1, q2, order = inst
        prems = [d1.premises[order[0]], d1.premises[order[1]]]
        use_left = d2.rule == "or-r1"
        dsub = prems[0] if use_left else prems[1]
        qsub = q1 if use_left else q2
        sub = a.left if use_left else a.right
        px = hseq(pi.left, sub)
        _require_comp(d2.premises[0], px)
        prem_marks = marks[:i] + [(qsub, lam - 1)] + marks[i + 1:]
        e1 = _claim(dsub, tuple(prem_marks), d2, pi, a, env)
        filled = _fill(qsub, lam - 1, a, pi.left)
        inner_marks = _zero_marks(e1.conclusion, {filled: (filled, 1)})
        r = _claim(e1, inner_marks, d2.premises[0], px, sub, env)
        return _adjust(r, target)
    if isinstance(a, Imp):
        return _principal_imp(d1, marks, i, d2, pi, a, env, target, inst)
    raise CutEliminationError("principal case on unexpected formula shape")


def _premise_with(d: HDerivation, comp: HSeq) -> HDerivation:
    for p in d.premises:
        if ms(p.conclusion)[comp] >= 1:
            return p
    raise CutEliminationError("premise component of pi not found")


def _require_comp(d: HDerivation, comp: HSeq) -> None:
    if ms(d.conclusion)[comp] < 1:
        raise CutEliminationError("premise component of pi not found")


def _zero_marks(concl: Hypersequent, special: dict) -> Marks:
    """Marks with zero everywhere except the given components (value -> (comp,
    lam)); one occurrence of each special component gets its mark."""
    out = []
    used = Counter()
    for comp in concl:
        if comp in special and used[comp] < 1:
            out.append(special[comp])
            used[comp] += 1
        else:
            out.append((comp, 0))
    return tuple(out)


def _principal_imp(d1, marks, i, d2, pi, a, env, target, inst) -> HDerivation:
    if d2.rule != "imp-r":
        raise CutEliminationError("principal shape mismatch")
    comp, lam = marks[i]
    c, q_ant, q_suc, order = inst
    prems = [d1.premises[order[0]], d1.premises[order[1]]]
    d2p = d2.premises[0]
    p2 = _comp_of(d2p, pi, a, side="imp")
    marks_ant = marks[:i] + [(q_ant, lam - 1)] + marks[i + 1:]
    marks_suc = marks[:i] + [(q_suc, lam - 1)] + marks[i + 1:]
    e_ant = _claim(prems[0], tuple(marks_ant), d2, pi, a, env)
    e_suc = _claim(prems[1], tuple(marks_suc), d2, pi, a, env)
    u_ant = _fill(q_ant, lam - 1, a, pi.left)
    u_suc = _fill(q_suc, lam - 1, a, pi.left)
    # cut X: antecedent result against the imp-r premise
    d2p_marks = _zero_marks(d2p.conclusion, {p2: (p2, 1)})
    e_mid = _claim(d2p, d2p_marks, e_ant, u_ant, a.left, env)
    w = hseq(list(ms_sub(ms(p2.left), Counter([a.left])).elements())
             + list(u_ant.left), a.right)
    e_mid = _adjust(e_mid, (ms(e_ant.conclusion) - Counter([u_ant]))
                    + Counter([w]))
    # cut Y: succedent result against the combined component
    suc_marks = _zero_marks(e_suc.conclusion, {u_suc: (u_suc, 1)})
    r = _claim(e_suc, suc_marks, e_mid, w, a.right, env)
    # contract the duplicated base of the target component
    filled_final = _fill(u_suc, 1, a.right, w.left)
    want = _fill(comp, lam, a, pi.left)
    surplus = ms_sub(ms(filled_final.left), ms(want.left))
    r, _ = _cl_chain(r, filled_final, surplus.elements())
    return _adjust(r, target)


def _principal_box(d1, marks, d2, pi, a, env, target) -> HDerivation:
    if d2.rule != "box" or not isinstance(a, Box):
        raise CutEliminationError("box/box shape mismatch")
    x = a.body
    # d2: (Sigma =>) | (Pi' => x) below box; pi is the boxed-right component
    p2 = d2.premises[0]
    p2_right = [cc for cc in p2.conclusion if cc.right == x]
    if not p2_right:
        raise CutEliminationError("box premise lost its succedent")
    pi2 = p2_right[0]
    # d1: premise comps unbox the conclusion comps, marks carry over
    p1 = d1.premises[0]
    prem_marks = []
    used = Counter()
    prem_comps = list(p1.conclusion)
    for comp, lam in marks:
        match = None
        for cand in prem_comps:
            want_right = comp.right.body if isinstance(comp.right, Box) else None
            if cand.right != want_right:
                continue
            if [Box(f) for f in sorted(cand.left, key=formula_key)] == list(comp.left):
                if used[cand] < Counter(prem_comps)[cand]:
                    match = cand
                    break
        if match is None:
            raise CutEliminationError("box premise components out of sync")
        used[match] += 1
        prem_marks.append((match, lam))
    inner = _claim(p1, tuple(prem_marks), p2, pi2, x, env)
    n = sum(1 for cc in inner.conclusion if cc.right is None)
    out = derive_box_n(inner, n)
    return _adjust(out, target)


# ---------------------------------------------------------------------------
# driver

def eliminate_cuts(d: HDerivation, modal: bool = True) -> HDerivation:
    """Rebuild the derivation without (cut) nodes, preserving the conclusion.

    The input must pass the checker; the output passes it again and derives
    the identical end hypersequent.
    """
    where = check_derivation_located(d, modal)
    if where is not None:
        raise ValueError(f"input derivation fails the checker at path {where}")
    d = expand_macros(d)
    env = _Env()
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100_000))
    try:
        out = _eliminate(d, env)
    finally:
        sys.setrecursionlimit(old)
    if out.conclusion != d.conclusion:
        raise CutEliminationError("cut elimination changed the conclusion")
    if out.has_cut():
        raise CutEliminationError("cut elimination left a cut behind")
    return out


def _eliminate(d: HDerivation, env: _Env) -> HDerivation:
    premises = tuple(_eliminate(p, env) for p in d.premises)
    if d.rule != "cut":
        return node(d.rule, d.conclusion, *premises)
    e1, e2 = premises
    for c, q1, q2, order in _cut_instances(d.conclusion, e1.conclusion,
                                           e2.conclusion):
        left = (e1, e2)[order[0]]
        right = (e1, e2)[order[1]]
        a = q2.right
        marks = _zero_marks(left.conclusion, {q1: (q1, 1)})
        r = _claim(left, marks, right, q2, a, env)
        return _adjust(r, ms(d.conclusion))
    raise CutEliminationError("cut node does not match the cut schema")


def _cut_instances(concl, p1, p2):
    c_ms = ms(concl)
    for c in sorted(set(concl), key=hseq_key):
        G = c_ms - Counter([c])
        for order in ((0, 1), (1, 0)):
            a_ms = ms((p1, p2)[order[0]])
            b_ms = ms((p1, p2)[order[1]])
            if not (ms_leq(G, a_ms) and ms_leq(G, b_ms)):
                continue
            d1, d2 = a_ms - G, b_ms - G
            if sum(d1.values()) != 1 or sum(d2.values()) != 1:
                continue
            (q1,), (q2,) = d1.keys(), d2.keys()
            if q2.right is None or q1.right != c.right:
                continue
            if ms(q1.left)[q2.right] < 1:
                continue
            if ms_sub(ms(q1.left), Counter([q2.right])) + ms(q2.left) == ms(c.left):
                yield c, q1, q2, order
