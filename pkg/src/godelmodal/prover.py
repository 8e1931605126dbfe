"""Decision procedures for Godel logic and the box/diamond modal fragments.

Backward proof search: invertible decomposition to quasi-atomic sequents,
structural saturation, then a propositional check or a modal leaf test whose
premises recurse at strictly smaller modal rank.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Union

from .atomic import (
    CS_RELATIONS,
    ChainCertificate,
    atomic_valid,
    closure_step,
    com_premises,
    is_saturated,
    open_com_instance,
    refuting_valuation,
    verify_certificate,
)
from .formula import (
    BOT, TOP, And, Bot, Formula, Imp, Logic, Or, Top,
    complexity, modal_degree, render_formula, subformulas, is_modal,
)
from .relations import (
    ModalPart,
    ModalShapeError,
    Relation,
    RelKind,
    Sequent,
    abstract_modals,
    le,
    lt,
    modal_part,
    quasi_atomic,
    render_sequent,
    sequent_fragment_ok,
    sorted_relations,
)


class FragmentError(ValueError):
    pass


class SearchLimitExceeded(RuntimeError):
    """A configured resource limit was hit; the search was abandoned, which is
    a distinct outcome from Invalid."""


@dataclass(frozen=True)
class ProverConfig:
    leaf_mode: str = "gfp"  # "gfp" | "exhaustive" | "both"
    max_saturation_branches: int = 200_000
    max_depth: int = 64


DEFAULT_CONFIG = ProverConfig()


@dataclass
class ProverStats:
    leaf_tests: int = 0
    leaf_disagreements: int = 0
    saturation_branches: int = 0
    decide_calls: int = 0


# ---------------------------------------------------------------------------
# the termination measure of the modal recursion

def modal_rank(f: Formula) -> int:
    """Maximal complexity of a modal subformula (the operator included);
    0 for modality-free formulas.  Strictly decreases from a modal leaf to
    its premises, unlike the body-only modal_degree."""
    ranks = [1 + complexity(g.body) for g in subformulas(f) if is_modal(g)]
    return max(ranks, default=0)


def sequent_rank(s: Sequent) -> int:
    return max((max(modal_rank(r.lhs), modal_rank(r.rhs)) for r in s), default=0)


# ---------------------------------------------------------------------------
# trace nodes

@dataclass(frozen=True)
class DecomposeNode:
    sequent: Sequent
    rule: str
    principal: Relation
    children: tuple["TraceNode", ...]


@dataclass(frozen=True)
class SatStepNode:
    sequent: Sequent
    rule: str  # cs | wl | wr
    child: "TraceNode"


@dataclass(frozen=True)
class ComBranchNode:
    sequent: Sequent
    first: Relation
    second: Relation
    children: tuple["TraceNode", "TraceNode"]


@dataclass(frozen=True)
class PropLeafNode:
    sequent: Sequent
    certificate: ChainCertificate


@dataclass(frozen=True)
class ModalEntry:
    index: int  # the target k (box) or principal j (diamond) inside J
    premise: Sequent
    child: "TraceNode"


@dataclass(frozen=True)
class BoxStepNode:
    sequent: Sequent
    j_set: tuple[int, ...]
    entries: tuple[ModalEntry, ...]


@dataclass(frozen=True)
class DiaStepNode:
    sequent: Sequent
    j_set: tuple[int, ...]
    entries: tuple[ModalEntry, ...]


TraceNode = Union[DecomposeNode, SatStepNode, ComBranchNode, PropLeafNode,
                  BoxStepNode, DiaStepNode]
ProofTrace = TraceNode


@dataclass(frozen=True)
class Diagnostic:
    """A concrete failing saturated leaf with a propositional counter-assignment
    of its modal abstraction."""

    leaf: Sequent
    assignment: dict[str, Fraction]
    abstraction: dict[str, str]  # fresh variable -> abstracted modal formula


@dataclass(frozen=True)
class Verdict:
    valid: bool
    trace: Optional[ProofTrace] = None
    diagnostic: Optional[Diagnostic] = None


# ---------------------------------------------------------------------------
# invertible decomposition

_COMPOUND = (And, Or, Imp)


def _decompose_principal(s: Sequent) -> Optional[Relation]:
    for r in sorted_relations(s):
        if isinstance(r.lhs, _COMPOUND) or isinstance(r.rhs, _COMPOUND):
            return r
    return None


def decompose_step(s: Sequent, r: Relation) -> tuple[str, tuple[Sequent, ...]]:
    """Apply the logical rule for the principal relation backward."""
    rest = s - {r}
    if isinstance(r.lhs, _COMPOUND):
        a, kind, c = r.lhs, r.kind, r.rhs
        if isinstance(a, And):
            return "and-left", (rest | {Relation(a.left, kind, c),
                                        Relation(a.right, kind, c)},)
        if isinstance(a, Or):
            return "or-left", (rest | {Relation(a.left, kind, c)},
                               rest | {Relation(a.right, kind, c)})
        if kind is RelKind.LT:
            return "imp-left-lt", (rest | {lt(a.right, a.left)},
                                   rest | {lt(a.right, c)})
        return "imp-left-le", (rest | {le(TOP, c), lt(a.right, a.left)},
                               rest | {le(a.right, c)})
    b, kind, c = r.rhs, r.kind, r.lhs
    if isinstance(b, And):
        return "and-right", (rest | {Relation(c, kind, b.left)},
                             rest | {Relation(c, kind, b.right)})
    if isinstance(b, Or):
        return "or-right", (rest | {Relation(c, kind, b.left),
                                    Relation(c, kind, b.right)},)
    if kind is RelKind.LT:
        return "imp-right-lt", (rest | {le(b.left, b.right), lt(c, b.right)},
                                rest | {lt(c, TOP)})
    return "imp-right-le", (rest | {le(b.left, b.right), le(c, b.right)},)


def decompose(s: Sequent) -> frozenset:
    """Exhaustive backward application of the logical rules; the input is
    valid iff every returned quasi-atomic sequent is."""
    out: set[Sequent] = set()
    stack = [s]
    while stack:
        cur = stack.pop()
        r = _decompose_principal(cur)
        if r is None:
            out.add(cur)
        else:
            stack.extend(decompose_step(cur, r)[1])
    return frozenset(out)


# ---------------------------------------------------------------------------
# propositional check with evidence

def prop_cert(s: Sequent) -> Optional[ChainCertificate]:
    abstracted, _ = abstract_modals(s)
    return atomic_valid(abstracted)


def prop_valid(s: Sequent) -> bool:
    return prop_cert(s) is not None


def prop_refutation(s: Sequent) -> dict:
    abstracted, _ = abstract_modals(s)
    refutation = refuting_valuation(abstracted)
    if refutation is None:
        raise AssertionError("refutation requested for a valid sequent")
    return refutation


# ---------------------------------------------------------------------------
# modal leaf tests

def box_premise(m: ModalPart, j_set: tuple[int, ...], k: int) -> Sequent:
    rels = {le(m.box_box[i][0], m.box_box[k][1]) for i in j_set}
    rels |= {le(c, BOT) for c in m.box_bot}
    return frozenset(rels)


def dia_premise(m: ModalPart, j_set: tuple[int, ...], j: int) -> Sequent:
    rels = {le(m.dia_dia[j][0], m.dia_dia[k][1]) for k in j_set}
    rels |= {lt(BOT, c) for c in m.dia_low}
    rels |= {le(TOP, d) for d in m.dia_high}
    return frozenset(rels)


def _leaf_search(npairs: int,
                 premise_of: Callable[[tuple[int, ...], int], Sequent],
                 recurse: Callable[[Sequent], bool],
                 mode: str,
                 stats: Optional[ProverStats]) -> Optional[tuple[int, ...]]:
    """Find a nonempty J such that every index in J has a valid premise.

    The default search prunes from the full index set (premises weaken as J
    grows, so any good J survives pruning); exhaustive subset enumeration is
    kept as a differential check.
    """
    if npairs == 0:
        return None

    def gfp() -> Optional[tuple[int, ...]]:
        j_set = tuple(range(npairs))
        while j_set:
            bad = tuple(k for k in j_set if not recurse(premise_of(j_set, k)))
            if not bad:
                return j_set
            j_set = tuple(k for k in j_set if k not in bad)
        return None

    def exhaustive() -> Optional[tuple[int, ...]]:
        for size in range(npairs, 0, -1):
            for j_set in combinations(range(npairs), size):
                if all(recurse(premise_of(j_set, k)) for k in j_set):
                    return j_set
        return None

    if stats is not None:
        stats.leaf_tests += 1
    if mode == "gfp":
        return gfp()
    if mode == "exhaustive":
        return exhaustive()
    if mode == "both":
        a, b = gfp(), exhaustive()
        if (a is None) != (b is None):
            if stats is not None:
                stats.leaf_disagreements += 1
            raise AssertionError("gfp and exhaustive leaf searches disagree")
        return a
    raise ValueError(f"unknown leaf mode {mode!r}")


def leaf_valid_box(m: ModalPart, recurse: Callable[[Sequent], bool],
                   mode: str = "gfp",
                   stats: Optional[ProverStats] = None) -> Optional[tuple[int, ...]]:
    """J-subset witness that the box modal part is valid, or None."""
    return _leaf_search(len(m.box_box), lambda js, k: box_premise(m, js, k),
                        recurse, mode, stats)


def leaf_valid_dia(m: ModalPart, logic: Logic, recurse: Callable[[Sequent], bool],
                   mode: str = "gfp",
                   stats: Optional[ProverStats] = None) -> Optional[tuple[int, ...]]:
    if logic is Logic.GKF_DIA and m.dia_high:
        raise ValueError("fuzzy diamond modal parts must have top <= <>D dropped")
    return _leaf_search(len(m.dia_dia), lambda js, j: dia_premise(m, js, j),
                        recurse, mode, stats)


# ---------------------------------------------------------------------------
# the decision procedure

class _Invalid(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


def decide(logic: Logic, s: Sequent,
           config: ProverConfig = DEFAULT_CONFIG,
           stats: Optional[ProverStats] = None) -> Verdict:
    """Valid with a replayable trace, or Invalid with a failing-leaf diagnostic."""
    if not sequent_fragment_ok(logic, s):
        raise FragmentError(
            f"sequent {render_sequent(s)} lies outside the {logic.value} fragment")
    memo: dict[Sequent, tuple[bool, object]] = {}
    branch_budget = [0]

    def go(seq: Sequent, depth: int) -> TraceNode:
        """Returns a trace if valid, raises _Invalid otherwise."""
        if depth > config.max_depth:
            raise SearchLimitExceeded(f"modal recursion depth {depth}")
        cached = memo.get(seq)
        if cached is not None:
            ok, payload = cached
            if ok:
                return payload
            raise _Invalid(payload)
        if stats is not None:
            stats.decide_calls += 1
        try:
            trace = _go(seq, depth)
        except _Invalid as exc:
            memo[seq] = (False, exc.diagnostic)
            raise
        memo[seq] = (True, trace)
        return trace

    def _go(seq: Sequent, depth: int) -> TraceNode:
        principal = _decompose_principal(seq)
        if principal is not None:
            rule, premises = decompose_step(seq, principal)
            children = tuple(go(p, depth) for p in premises)
            return DecomposeNode(seq, rule, principal, children)
        cert = prop_cert(seq)
        if cert is not None:
            return PropLeafNode(seq, cert)
        step = closure_step(seq)
        if step is not None:
            rule, nxt = step
            return SatStepNode(seq, rule, go(nxt, depth))
        inst = open_com_instance(seq)
        if inst is not None:
            branch_budget[0] += 1
            if stats is not None:
                stats.saturation_branches += 1
            if branch_budget[0] > config.max_saturation_branches:
                raise SearchLimitExceeded(
                    f"saturation branches exceeded {config.max_saturation_branches}")
            first, second = inst
            left, right = com_premises(seq, first, second)
            return ComBranchNode(seq, first, second,
                                 (go(left, depth), go(right, depth)))
        return modal_leaf(seq, depth)

    def modal_leaf(seq: Sequent, depth: int) -> TraceNode:
        def fail() -> _Invalid:
            _, mapping = abstract_modals(seq)
            named = {v.name: render_formula(f) for f, v in mapping.items()}
            assignment = {render_formula(a): val
                          for a, val in prop_refutation(seq).items()}
            return _Invalid(Diagnostic(seq, assignment, named))

        if logic is Logic.G:
            raise fail()
        mp = modal_part(seq, logic)
        rank = sequent_rank(seq)

        def recurse(premise: Sequent) -> bool:
            if sequent_rank(premise) >= rank:
                raise AssertionError("modal rank did not decrease")
            try:
                go(premise, depth + 1)
                return True
            except _Invalid:
                return False

        if logic is Logic.GK_BOX:
            j_set = leaf_valid_box(mp, recurse, config.leaf_mode, stats)
            premise_of = lambda k: box_premise(mp, j_set, k)
            node_type = BoxStepNode
        else:
            j_set = leaf_valid_dia(mp, logic, recurse, config.leaf_mode, stats)
            premise_of = lambda j: dia_premise(mp, j_set, j)
            node_type = DiaStepNode
        if j_set is None:
            raise fail()
        entries = tuple(ModalEntry(k, premise_of(k), go(premise_of(k), depth + 1))
                        for k in j_set)
        return node_type(seq, j_set, entries)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 30_000))
    try:
        trace = go(s, 0)
        return Verdict(True, trace=trace)
    except _Invalid as exc:
        return Verdict(False, diagnostic=exc.diagnostic)
    finally:
        sys.setrecursionlimit(old_limit)


def decide_formula(logic: Logic, f: Formula,
                   config: ProverConfig = DEFAULT_CONFIG,
                   stats: Optional[ProverStats] = None) -> Verdict:
    if not logic.admits(f):
        raise FragmentError(
            f"formula {render_formula(f)} lies outside the {logic.value} fragment")
    return decide(logic, frozenset({le(TOP, f)}), config, stats)


# ---------------------------------------------------------------------------
# trace replay

def check_trace(logic: Logic, s: Sequent, trace: TraceNode) -> bool:
    """Replay a Valid trace: every step must be a real rule instance and every
    modal step must re-derive its premises at strictly smaller modal rank."""
    try:
        return _check_node(logic, s, trace)
    except (ModalShapeError, ValueError, KeyError, IndexError):
        return False


def _check_node(logic: Logic, s: Sequent, node: TraceNode) -> bool:
    if node.sequent != s:
        return False
    if isinstance(node, DecomposeNode):
        if node.principal not in s:
            return False
        if not isinstance(node.principal.lhs, _COMPOUND) and \
                not isinstance(node.principal.rhs, _COMPOUND):
            return False
        rule, premises = decompose_step(s, node.principal)
        if rule != node.rule or len(premises) != len(node.children):
            return False
        return all(_check_node(logic, p, child)
                   for p, child in zip(premises, node.children))
    if isinstance(node, SatStepNode):
        if node.rule == "cs":
            nxt = s | frozenset(CS_RELATIONS)
            if nxt == s:
                return False
        elif node.rule in ("wl", "wr"):
            child_seq = node.child.sequent
            added = child_seq - s
            if len(added) != 1 or child_seq != s | added:
                return False
            (rel,) = added
            if rel.kind is not RelKind.LE:
                return False
            if node.rule == "wl":
                if not isinstance(rel.lhs, Top):
                    return False
                if not any(r.kind is RelKind.LE and r.rhs == rel.rhs for r in s):
                    return False
            else:
                if not isinstance(rel.rhs, Bot):
                    return False
                if not any(r.kind is RelKind.LE and r.lhs == rel.lhs for r in s):
                    return False
            nxt = child_seq
        else:
            return False
        return _check_node(logic, nxt, node.child)
    if isinstance(node, ComBranchNode):
        r1, r2 = node.first, node.second
        if r1 not in s or r2 not in s or r1 == r2:
            return False
        left_add = le(r1.lhs, r2.rhs)
        right_add = Relation(r2.lhs, r1.kind, r1.rhs)
        if left_add in s or right_add in s:
            return False
        left, right = s | {left_add}, s | {right_add}
        return (_check_node(logic, left, node.children[0])
                and _check_node(logic, right, node.children[1]))
    if isinstance(node, PropLeafNode):
        abstracted, _ = abstract_modals(s)
        return verify_certificate(abstracted, node.certificate)
    if isinstance(node, (BoxStepNode, DiaStepNode)):
        if logic is Logic.G:
            return False
        if isinstance(node, BoxStepNode) != (logic is Logic.GK_BOX):
            return False
        if not quasi_atomic(s) or not is_saturated(s):
            return False
        mp = modal_part(s, logic)
        pairs = mp.box_box if isinstance(node, BoxStepNode) else mp.dia_dia
        j_set = node.j_set
        if not j_set or len(set(j_set)) != len(j_set):
            return False
        if any(not 0 <= k < len(pairs) for k in j_set):
            return False
        if tuple(sorted(j_set)) != tuple(sorted(e.index for e in node.entries)):
            return False
        rank = sequent_rank(s)
        for entry in node.entries:
            premise = (box_premise(mp, j_set, entry.index)
                       if isinstance(node, BoxStepNode)
                       else dia_premise(mp, j_set, entry.index))
            if premise != entry.premise:
                return False
            if sequent_rank(premise) >= rank:
                return False
            if not _check_node(logic, premise, entry.child):
                return False
        return True
    return False


# ---------------------------------------------------------------------------
# trace serialization (for --trace output and the proof-file tooling)

def trace_to_json(node: TraceNode) -> dict:
    if isinstance(node, DecomposeNode):
        return {"step": "decompose", "sequent": render_sequent(node.sequent),
                "rule": node.rule, "principal": node.principal.render(),
                "children": [trace_to_json(c) for c in node.children]}
    if isinstance(node, SatStepNode):
        return {"step": "saturate", "sequent": render_sequent(node.sequent),
                "rule": node.rule, "children": [trace_to_json(node.child)]}
    if isinstance(node, ComBranchNode):
        return {"step": "com", "sequent": render_sequent(node.sequent),
                "first": node.first.render(), "second": node.second.render(),
                "children": [trace_to_json(c) for c in node.children]}
    if isinstance(node, PropLeafNode):
        return {"step": "prop-leaf", "sequent": render_sequent(node.sequent),
                "condition": node.certificate.condition,
                "chain": [r.render() for r in node.certificate.chain]}
    kind = "box" if isinstance(node, BoxStepNode) else "dia"
    return {"step": f"{kind}-leaf", "sequent": render_sequent(node.sequent),
            "j_set": list(node.j_set),
            "entries": [{"index": e.index, "premise": render_sequent(e.premise),
                         "child": trace_to_json(e.child)}
                        for e in node.entries]}


def diagnostic_to_json(diag: Diagnostic) -> dict:
    return {"leaf": render_sequent(diag.leaf),
            "assignment": {k: f"{v.numerator}/{v.denominator}"
                           for k, v in sorted(diag.assignment.items())},
            "abstraction": dict(sorted(diag.abstraction.items()))}
