"""Validity of atomic sequents of relations, and structural saturation.

An atomic sequent is valid exactly when its relation graph contains a chain
witnessing one of five conditions (a <=-cycle, a chain from bot or into top
carrying a <=, or a chain between constants whose fixed values settle it).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .formula import BOT, TOP, Bot, Formula, Top, Var, formula_key, is_atom
from .relations import (
    Relation,
    RelKind,
    Sequent,
    le,
    lt,
    quasi_atomic,
    render_sequent,
    rel_key,
    sorted_relations,
)


@dataclass(frozen=True)
class ConstantTable:
    """Interpreted constants: named rationals in [0,1]; top and bot are built in."""

    entries: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for name, value in self.entries.items():
            if not 0 <= value <= 1:
                raise ValueError(f"constant {name} = {value} outside [0,1]")

    def value_of(self, atom: Formula) -> Optional[Fraction]:
        """The fixed value of an atom, or None for a free variable."""
        if isinstance(atom, Bot):
            return Fraction(0)
        if isinstance(atom, Top):
            return Fraction(1)
        if isinstance(atom, Var):
            return self.entries.get(atom.name)
        raise ValueError(f"not an atom: {atom}")


EMPTY_CONSTANTS = ConstantTable()


@dataclass(frozen=True)
class ChainCertificate:
    """A chain a_1 <| a_2 <| ... <| a_{n+1} in theسequent witnessing validity."""

    chain: tuple[Relation, ...]
    condition: int  # 1..5, the clause of the atomic-validity criterion

    def atoms(self) -> list[Formula]:
        out = [self.chain[0].lhs]
        out.extend(r.rhs for r in self.chain)
        return out


class NotAtomicError(ValueError):
    pass


def _edges(s: Sequent) -> dict[Formula, list[Relation]]:
    out: dict[Formula, list[Relation]] = {}
    for r in sorted_relations(s):
        out.setdefault(r.lhs, []).append(r)
    return out


def _search(edges, starts: Iterable[Formula],
            accept: Callable[[Formula, bool], bool]) -> Optional[tuple[Relation, ...]]:
    """BFS over (atom, seen-a-<=-edge) states; returns the first accepted chain."""
    queue: deque[tuple[Formula, bool, tuple[Relation, ...]]] = deque()
    seen: set[tuple] = set()
    for a in starts:
        for r in edges.get(a, []):
            state = (formula_key(r.rhs), r.kind is RelKind.LE)
            chain = (r,)
            if accept(r.rhs, r.kind is RelKind.LE):
                return chain
            if state not in seen:
                seen.add(state)
                queue.append((r.rhs, r.kind is RelKind.LE, chain))
    while queue:
        node, has_le, chain = queue.popleft()
        for r in edges.get(node, []):
            le_now = has_le or r.kind is RelKind.LE
            if accept(r.rhs, le_now):
                return chain + (r,)
            state = (formula_key(r.rhs), le_now)
            if state not in seen:
                seen.add(state)
                queue.append((r.rhs, le_now, chain + (r,)))
    return None


def atomic_valid(s: Sequent, consts: ConstantTable = EMPTY_CONSTANTS
                 ) -> Optional[ChainCertificate]:
    """A witnessing chain if the atomic sequent is valid, else None."""
    for r in s:
        if not (is_atom(r.lhs) and is_atom(r.rhs)):
            raise NotAtomicError(f"non-atomic relation {r.render()}")
    edges = _edges(s)
    atoms = sorted({a for r in s for a in (r.lhs, r.rhs)}, key=formula_key)

    # (1) cycle containing a <=
    for a in atoms:
        akey = formula_key(a)
        chain = _search(edges, [a], lambda n, has_le: has_le and formula_key(n) == akey)
        if chain is not None:
            return ChainCertificate(chain, 1)
    # (2) chain from bot containing a <=
    if BOT in edges:
        chain = _search(edges, [BOT], lambda n, has_le: has_le)
        if chain is not None:
            return ChainCertificate(chain, 2)
    # (3) chain into top containing a <=
    chain = _search(edges, atoms, lambda n, has_le: has_le and isinstance(n, Top))
    if chain is not None:
        return ChainCertificate(chain, 3)
    # (4)/(5) chains between value-fixed atoms
    pinned = [(a, consts.value_of(a)) for a in atoms]
    pinned = [(a, v) for a, v in pinned if v is not None]
    for a, va in pinned:
        targets = {formula_key(b): vb for b, vb in pinned}
        chain = _search(
            edges, [a],
            lambda n, has_le: formula_key(n) in targets and va < targets[formula_key(n)],
        )
        if chain is not None:
            return ChainCertificate(chain, 4)
        chain = _search(
            edges, [a],
            lambda n, has_le: has_le
            and formula_key(n) in targets and va == targets[formula_key(n)],
        )
        if chain is not None:
            return ChainCertificate(chain, 5)
    return None


def verify_certificate(s: Sequent, cert: ChainCertificate,
                       consts: ConstantTable = EMPTY_CONSTANTS) -> bool:
    """Replay a chain certificate against the sequent it claims to witness."""
    if not cert.chain:
        return False
    if any(r not in s for r in cert.chain):
        return False
    for prev, nxt in zip(cert.chain, cert.chain[1:]):
        if prev.rhs != nxt.lhs:
            return False
    first, last = cert.chain[0].lhs, cert.chain[-1].rhs
    has_le = any(r.kind is RelKind.LE for r in cert.chain)
    if cert.condition == 1:
        return first == last and has_le
    if cert.condition == 2:
        return isinstance(first, Bot) and has_le
    if cert.condition == 3:
        return isinstance(last, Top) and has_le
    va, vb = consts.value_of(first), consts.value_of(last)
    if va is None or vb is None:
        return False
    if cert.condition == 4:
        return va < vb
    if cert.condition == 5:
        return va == vb and has_le
    return False


# ---------------------------------------------------------------------------
# counter-valuations for invalid atomic sequents

def refuting_valuation(s: Sequent, consts: ConstantTable = EMPTY_CONSTANTS
                       ) -> Optional[dict[Formula, Fraction]]:
    """A valuation under which no relation of s holds, or None if s is valid.

    A relation A <= B fails iff v(A) > v(B), and A < B fails iff v(A) >= v(B);
    the failure constraints form an order graph solved by SCC condensation.
    """
    atoms = sorted({a for r in s for a in (r.lhs, r.rhs)}, key=formula_key)
    if not atoms:
        return {}
    index = {formula_key(a): i for i, a in enumerate(atoms)}
    # edge u -> v with strict flag means v(u) >= v(v) (strict: >)
    adj: list[list[tuple[int, bool]]] = [[] for _ in atoms]
    for r in sorted_relations(s):
        adj[index[formula_key(r.lhs)]].append(
            (index[formula_key(r.rhs)], r.kind is RelKind.LE))

    comp = _tarjan_scc(adj)
    ncomp = max(comp) + 1
    # strict edge inside a component forces v > v: infeasible
    for u, edges in enumerate(adj):
        for v, strict in edges:
            if comp[u] == comp[v] and strict:
                return None
    pinned: list[Optional[Fraction]] = [None] * ncomp
    for i, a in enumerate(atoms):
        value = consts.value_of(a)
        if value is None:
            continue
        if pinned[comp[i]] is not None and pinned[comp[i]] != value:
            return None
        pinned[comp[i]] = value

    cadj: list[set[tuple[int, bool]]] = [set() for _ in range(ncomp)]
    for u, edges in enumerate(adj):
        for v, strict in edges:
            if comp[u] != comp[v]:
                cadj[comp[u]].add((comp[v], strict))

    order = _topo_order(cadj)
    # lower bounds as (base value, strict-step count), processed sinks first
    lb: list[tuple[Fraction, int]] = [(Fraction(0), 0)] * ncomp
    for c in reversed(order):
        best = (Fraction(0), 0)
        for d, strict in cadj[c]:
            base, k = (pinned[d], 0) if pinned[d] is not None else lb[d]
            cand = (base, k + (1 if strict else 0))
            if cand > best:
                best = cand
        lb[c] = best
    for c in range(ncomp):
        base, k = lb[c]
        if pinned[c] is not None:
            if (pinned[c], 0) < (base, k):
                return None
        elif base >= 1 and k > 0:
            return None

    values = sorted({Fraction(0), Fraction(1), *(v for v in pinned if v is not None)})
    min_gap = min((b - a for a, b in zip(values, values[1:])), default=Fraction(1))
    max_k = max(k for _, k in lb)
    eps = min_gap / (max_k + 2)
    out: dict[Formula, Fraction] = {}
    for i, a in enumerate(atoms):
        c = comp[i]
        if pinned[c] is not None:
            out[a] = pinned[c]
        else:
            base, k = lb[c]
            out[a] = min(base + k * eps, Fraction(1))
    for r in s:
        va, vb = out[r.lhs], out[r.rhs]
        holds = va <= vb if r.kind is RelKind.LE else va < vb
        if holds:
            raise AssertionError(
                f"refutation construction failed on {r.render()}: {va} vs {vb}")
    return out


def _tarjan_scc(adj: list[list[tuple[int, bool]]]) -> list[int]:
    n = len(adj)
    comp = [-1] * n
    low = [0] * n
    num = [-1] * n
    stack: list[int] = []
    on_stack = [False] * n
    counter = [0]
    ncomp = [0]

    def dfs(root: int):
        work = [(root, 0)]
        while work:
            u, ei = work[-1]
            if ei == 0:
                num[u] = low[u] = counter[0]
                counter[0] += 1
                stack.append(u)
                on_stack[u] = True
            if ei < len(adj[u]):
                work[-1] = (u, ei + 1)
                v = adj[u][ei][0]
                if num[v] == -1:
                    work.append((v, 0))
                elif on_stack[v]:
                    low[u] = min(low[u], num[v])
            else:
                work.pop()
                if low[u] == num[u]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp[0]
                        if w == u:
                            break
                    ncomp[0] += 1
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[u])

    for u in range(n):
        if num[u] == -1:
            dfs(u)
    return comp


def _topo_order(cadj: list[set[tuple[int, bool]]]) -> list[int]:
    n = len(cadj)
    indeg = [0] * n
    for edges in cadj:
        for v, _ in edges:
            indeg[v] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v, _ in cadj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order


# ---------------------------------------------------------------------------
# saturation

CS_RELATIONS = (le(TOP, BOT), lt(BOT, BOT))


def closure_step(s: Sequent) -> Optional[tuple[str, Sequent]]:
    """The first applicable (cs)/(wl)/(wr) instance adding something new."""
    if any(r not in s for r in CS_RELATIONS):
        return "cs", s | frozenset(CS_RELATIONS)
    for r in sorted_relations(s):
        if r.kind is RelKind.LE:
            added = le(TOP, r.rhs)
            if added not in s:
                return "wl", s | {added}
    for r in sorted_relations(s):
        if r.kind is RelKind.LE:
            added = le(r.lhs, BOT)
            if added not in s:
                return "wr", s | {added}
    return None


def open_com_instance(s: Sequent) -> Optional[tuple[Relation, Relation]]:
    """The first (com) instance whose premises both add a new relation."""
    rels = sorted_relations(s)
    for r1 in rels:
        for r2 in rels:
            if r1 == r2:
                continue
            left_add = le(r1.lhs, r2.rhs)
            right_add = Relation(r2.lhs, r1.kind, r1.rhs)
            if left_add not in s and right_add not in s:
                return r1, r2
    return None


def com_premises(s: Sequent, r1: Relation, r2: Relation) -> tuple[Sequent, Sequent]:
    return s | {le(r1.lhs, r2.rhs)}, s | {Relation(r2.lhs, r1.kind, r1.rhs)}


def is_saturated(s: Sequent) -> bool:
    return closure_step(s) is None and open_com_instance(s) is None


def saturate(s: Sequent,
             prune: Optional[Callable[[Sequent], bool]] = None,
             max_branches: Optional[int] = None) -> frozenset:
    """All saturated sequents reachable by backward (cs)/(wl)/(wr)/(com).

    The input is valid (in any of the logics) iff every returned sequent is.
    `prune` may declare a branch settled (its descendants need not be
    explored); pruned sequents are not reported.
    """
    if not quasi_atomic(s):
        raise QuasiAtomicSaturationError(render_sequent(s))
    out: set[Sequent] = set()
    seen: set[Sequent] = set()
    budget = [0]
    stack = [s]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        if prune is not None and prune(cur):
            continue
        step = closure_step(cur)
        if step is not None:
            stack.append(step[1])
            continue
        inst = open_com_instance(cur)
        if inst is None:
            out.add(cur)
            continue
        budget[0] += 1
        if max_branches is not None and budget[0] > max_branches:
            raise SaturationBudgetError(budget[0])
        stack.extend(com_premises(cur, *inst))
    return frozenset(out)


class QuasiAtomicSaturationError(ValueError):
    pass


class SaturationBudgetError(RuntimeError):
    pass
