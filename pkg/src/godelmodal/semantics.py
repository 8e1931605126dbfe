"""Exact Kripke semantics for Godel modal logic over finite models.

Truth values are rationals in [0,1]; box evaluates by the infimum of
residuated accessibility, diamond by the supremum of min with accessibility.
Floating point never touches a truth value.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .formula import (
    And, Bot, Box, Dia, Formula, Imp, Logic, Or, Top, Var,
    render_formula, subformulas, variables_of,
)
from .relations import RelKind, Sequent, sorted_relations


class UnboundVariableError(KeyError):
    pass


class ModelError(ValueError):
    pass


def residuum(a: Fraction, b: Fraction) -> Fraction:
    return b if a > b else Fraction(1)


@dataclass(frozen=True)
class KripkeModel:
    world_count: int
    kind: str  # "crisp" | "fuzzy"
    access: tuple[tuple[Fraction, ...], ...]
    valuation: dict[str, tuple[Fraction, ...]]

    def __post_init__(self):
        if self.world_count < 1:
            raise ModelError("a model needs at least one world")
        if self.kind not in ("crisp", "fuzzy"):
            raise ModelError(f"unknown frame kind {self.kind!r}")
        if len(self.access) != self.world_count or any(
                len(row) != self.world_count for row in self.access):
            raise ModelError("access matrix shape mismatch")
        for row in self.access:
            for value in row:
                if not 0 <= value <= 1:
                    raise ModelError(f"accessibility value {value} outside [0,1]")
                if self.kind == "crisp" and value not in (0, 1):
                    raise ModelError("crisp models admit only 0/1 accessibility")
        for name, column in self.valuation.items():
            if len(column) != self.world_count:
                raise ModelError(f"valuation for {name} has wrong length")
            for value in column:
                if not 0 <= value <= 1:
                    raise ModelError(f"valuation value {value} outside [0,1]")


def eval_formula(m: KripkeModel, f: Formula, x: int) -> Fraction:
    if not 0 <= x < m.world_count:
        raise ModelError(f"world {x} out of range")
    return _eval(m, f, x, {})


def _eval(m: KripkeModel, f: Formula, x: int, memo: dict) -> Fraction:
    key = (id(f), x)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if isinstance(f, Var):
        try:
            value = m.valuation[f.name][x]
        except KeyError:
            raise UnboundVariableError(f.name) from None
    elif isinstance(f, Bot):
        value = Fraction(0)
    elif isinstance(f, Top):
        value = Fraction(1)
    elif isinstance(f, And):
        value = min(_eval(m, f.left, x, memo), _eval(m, f.right, x, memo))
    elif isinstance(f, Or):
        value = max(_eval(m, f.left, x, memo), _eval(m, f.right, x, memo))
    elif isinstance(f, Imp):
        value = residuum(_eval(m, f.left, x, memo), _eval(m, f.right, x, memo))
    elif isinstance(f, Box):
        value = min(
            (residuum(m.access[x][y], _eval(m, f.body, y, memo))
             for y in range(m.world_count)),
            default=Fraction(1),
        )
        value = min(value, Fraction(1))
    else:  # Dia
        value = max(
            (min(_eval(m, f.body, y, memo), m.access[x][y])
             for y in range(m.world_count)),
            default=Fraction(0),
        )
        value = max(value, Fraction(0))
    memo[key] = value
    return value


def sequent_holds_at(m: KripkeModel, s: Sequent, x: int) -> bool:
    memo: dict = {}
    for r in s:
        va = _eval(m, r.lhs, x, memo)
        vb = _eval(m, r.rhs, x, memo)
        if va <= vb if r.kind is RelKind.LE else va < vb:
            return True
    return False


# ---------------------------------------------------------------------------
# propositional grid oracle

def _eval_prop(f: Formula, env: dict[str, Fraction]) -> Fraction:
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise UnboundVariableError(f.name) from None
    if isinstance(f, Bot):
        return Fraction(0)
    if isinstance(f, Top):
        return Fraction(1)
    if isinstance(f, And):
        return min(_eval_prop(f.left, env), _eval_prop(f.right, env))
    if isinstance(f, Or):
        return max(_eval_prop(f.left, env), _eval_prop(f.right, env))
    if isinstance(f, Imp):
        return residuum(_eval_prop(f.left, env), _eval_prop(f.right, env))
    raise ValueError(f"not propositional: {render_formula(f)}")


def prop_grid_oracle(s: Sequent) -> bool:
    """Exhaustive (n+2)-point grid check; complete for propositional sequents
    because only the order of values matters in Godel logic."""
    names = sorted({v for r in s for v in variables_of(r.lhs) | variables_of(r.rhs)})
    n = len(names)
    grid = [Fraction(i, n + 1) for i in range(n + 2)]
    for values in itertools.product(grid, repeat=n):
        env = dict(zip(names, values))
        if not _sequent_holds_prop(s, env):
            return False
    return True


def prop_grid_refutation(s: Sequent) -> Optional[dict[str, Fraction]]:
    names = sorted({v for r in s for v in variables_of(r.lhs) | variables_of(r.rhs)})
    n = len(names)
    grid = [Fraction(i, n + 1) for i in range(n + 2)]
    for values in itertools.product(grid, repeat=n):
        env = dict(zip(names, values))
        if not _sequent_holds_prop(s, env):
            return env
    return None


def _sequent_holds_prop(s: Sequent, env: dict[str, Fraction]) -> bool:
    for r in s:
        va, vb = _eval_prop(r.lhs, env), _eval_prop(r.rhs, env)
        if va <= vb if r.kind is RelKind.LE else va < vb:
            return True
    return False


# ---------------------------------------------------------------------------
# bounded countermodel search

def frame_kind_for(logic: Logic) -> str:
    return "crisp" if logic.crisp_frames else "fuzzy"


class SearchBudgetExhausted(RuntimeError):
    """Random-mode sampling ran out of samples without a verdict either way."""


def countermodel_search(
    logic: Logic,
    s: Sequent,
    max_worlds: int,
    grid_denominator: int,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = 10000,
) -> Optional[tuple[KripkeModel, int]]:
    """Search grid-valued models of the logic's frame class for a world where
    no relation of s holds.  Absence of a witness is not a validity proof.

    Exhaustive mode sweeps all models up to the bounds (worlds increasing,
    then accessibility, then valuations, lexicographically) and returns the
    least witness; random mode samples with the given seed.
    """
    kind = frame_kind_for(logic)
    if mode == "exhaustive":
        return _search_exhaustive(kind, s, max_worlds, grid_denominator)
    if mode == "random":
        return _search_random(kind, s, max_worlds, grid_denominator, seed, samples)
    raise ValueError(f"unknown search mode {mode!r}")


def _search_random(kind, s, max_worlds, k, seed, samples):
    rng = random.Random(seed)
    names = sorted({v for r in s for v in variables_of(r.lhs) | variables_of(r.rhs)})
    grid = [Fraction(i, k) for i in range(k + 1)]
    for _ in range(samples):
        w = rng.randint(1, max_worlds)
        if kind == "crisp":
            access = tuple(tuple(Fraction(rng.randint(0, 1)) for _ in range(w))
                           for _ in range(w))
        else:
            access = tuple(tuple(rng.choice(grid) for _ in range(w)) for _ in range(w))
        valuation = {n: tuple(rng.choice(grid) for _ in range(w)) for n in names}
        m = KripkeModel(w, kind, access, valuation)
        for x in range(w):
            if not sequent_holds_at(m, s, x):
                return m, x
    return None


def _search_exhaustive(kind, s, max_worlds, k):
    names = sorted({v for r in s for v in variables_of(r.lhs) | variables_of(r.rhs)})
    for w in range(1, max_worlds + 1):
        found = _sweep_worlds(kind, s, names, w, k)
        if found is not None:
            return found
    return None


def _sweep_worlds(kind, s, names, w, k):
    """Vectorized sweep of one world count: one numpy batch per access matrix,
    valuations enumerated jointly on an integer grid scaled by k."""
    access_levels = [0, k] if kind == "crisp" else list(range(k + 1))
    nvars = len(names)
    nval = (k + 1) ** (nvars * w)
    chunk = 1 << 20
    rels = sorted_relations(s)
    subs = _collect_subformulas(rels)
    for access_digits in itertools.product(access_levels, repeat=w * w):
        R = [[access_digits[x * w + y] for y in range(w)] for x in range(w)]
        for start in range(0, nval, chunk):
            stop = min(start + chunk, nval)
            idx = np.arange(start, stop, dtype=np.int64)
            columns = {}
            digit = 0
            for vi, name in enumerate(names):
                for x in range(w):
                    columns[(name, x)] = ((idx // ((k + 1) ** digit)) % (k + 1)).astype(np.int16)
                    digit += 1
            cache: dict = {}

            def ev(f: Formula, x: int):
                key = (id(f), x)
                if key in cache:
                    return cache[key]
                if isinstance(f, Var):
                    value = columns[(f.name, x)]
                elif isinstance(f, Bot):
                    value = np.full(idx.shape, 0, dtype=np.int16)
                elif isinstance(f, Top):
                    value = np.full(idx.shape, k, dtype=np.int16)
                elif isinstance(f, And):
                    value = np.minimum(ev(f.left, x), ev(f.right, x))
                elif isinstance(f, Or):
                    value = np.maximum(ev(f.left, x), ev(f.right, x))
                elif isinstance(f, Imp):
                    a, b = ev(f.left, x), ev(f.right, x)
                    value = np.where(a <= b, np.int16(k), b)
                elif isinstance(f, Box):
                    value = np.full(idx.shape, k, dtype=np.int16)
                    for y in range(w):
                        body = ev(f.body, y)
                        ry = R[x][y]
                        value = np.minimum(value, np.where(ry <= body, np.int16(k), body))
                else:
                    value = np.full(idx.shape, 0, dtype=np.int16)
                    for y in range(w):
                        body = ev(f.body, y)
                        ry = R[x][y]
                        value = np.maximum(value, np.minimum(body, np.int16(ry)))
                cache[key] = value
                return value

            for x in range(w):
                fail = np.ones(idx.shape, dtype=bool)
                for r in rels:
                    va, vb = ev(r.lhs, x), ev(r.rhs, x)
                    holds = va <= vb if r.kind is RelKind.LE else va < vb
                    fail &= ~holds
                    if not fail.any():
                        break
                if fail.any():
                    i = int(np.argmax(fail))
                    model = _decode_model(kind, names, w, k, R, start + i)
                    if sequent_holds_at(model, s, x):
                        raise AssertionError("countermodel self-check failed")
                    return model, x
    return None


def _collect_subformulas(rels) -> list[Formula]:
    seen = []
    for r in rels:
        for side in (r.lhs, r.rhs):
            seen.extend(subformulas(side))
    return seen


def _decode_model(kind, names, w, k, R, val_index) -> KripkeModel:
    access = tuple(tuple(Fraction(R[x][y], k) for y in range(w)) for x in range(w))
    valuation = {}
    digit = 0
    for name in names:
        column = []
        for _ in range(w):
            column.append(Fraction((val_index // ((k + 1) ** digit)) % (k + 1), k))
            digit += 1
        valuation[name] = tuple(column)
    return KripkeModel(w, kind, access, valuation)


# ---------------------------------------------------------------------------
# the two semantic invariance transforms

@dataclass(frozen=True)
class PiecewiseLinear:
    """A strictly increasing piecewise-linear bijection of [0,1] given by
    rational breakpoints (0,0), ..., (1,1)."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("breakpoints must run from (0,0) to (1,1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("breakpoints must be strictly increasing")

    def __call__(self, v: Fraction) -> Fraction:
        if not 0 <= v <= 1:
            raise ValueError(f"{v} outside [0,1]")
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if v <= x1:
                return y0 + (v - x0) * (y1 - y0) / (x1 - x0)
        raise AssertionError("unreachable")


IDENTITY_AUTOMORPHISM = PiecewiseLinear(((Fraction(0), Fraction(0)),
                                         (Fraction(1), Fraction(1))))


def automorphism_transform(m: KripkeModel, h: PiecewiseLinear) -> KripkeModel:
    """Apply an order-automorphism to accessibility and valuation; the value
    of every formula at every world then maps through h."""
    access = tuple(tuple(h(v) for v in row) for row in m.access)
    valuation = {name: tuple(h(v) for v in col) for name, col in m.valuation.items()}
    kind = m.kind  # h fixes 0 and 1, so crisp models stay crisp
    return KripkeModel(m.world_count, kind, access, valuation)


def lambda_shift(m: KripkeModel, lam: Fraction) -> KripkeModel:
    """Shift every variable value v to lam ->G v on a crisp model; every
    formula value then equals lam ->G its original value."""
    if m.kind != "crisp":
        raise ModelError("the threshold shift is stated for crisp models only")
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0,1]")
    valuation = {name: tuple(residuum(lam, v) for v in col)
                 for name, col in m.valuation.items()}
    return KripkeModel(m.world_count, m.kind, m.access, valuation)


# ---------------------------------------------------------------------------
# model files

def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": m.world_count,
        "kind": m.kind,
        "access": [[[v.numerator, v.denominator] for v in row] for row in m.access],
        "valuation": {
            name: [[v.numerator, v.denominator] for v in col]
            for name, col in sorted(m.valuation.items())
        },
    }


def model_from_json(data: dict) -> KripkeModel:
    try:
        worlds = int(data["worlds"])
        kind = data["kind"]
        access = tuple(
            tuple(Fraction(num, den) for num, den in row) for row in data["access"])
        valuation = {
            name: tuple(Fraction(num, den) for num, den in col)
            for name, col in data["valuation"].items()
        }
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ModelError(f"malformed model file: {exc}") from exc
    return KripkeModel(worlds, kind, access, valuation)


def load_model(path: str) -> KripkeModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))
