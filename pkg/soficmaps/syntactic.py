"""
Context classes and the syntactic semigroup of a sofic shift.

Two words have equal context exactly when they induce the same transformation
of the minimal automaton of ℒ(X) completed with a sink state; the semigroup is
the closure of the symbol transformations under composition. The sink-constant
transformation is the zero class of inadmissible words.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property
from typing import Optional, Sequence

import numpy as np

from .core.errors import (
    InadmissibleWordError,
    InternalInvariantError,
    NotInLambdaError,
    NotSynchronizingError,
)
from .core.words import Word, format_word
from .presentation import LabeledPresentation
from .shift import SoficShift

logger = logging.getLogger(__name__)

Transformation = tuple[int, ...]


@dataclass(frozen=True)
class ClassId:
    id: int
    representative: Optional[Word]
    is_zero: bool = False

    def __str__(self) -> str:
        if self.is_zero:
            return "[0]~"
        return f"[{format_word(self.representative or ())}]"


@dataclass(frozen=True)
class Lambda:
    """Return-length set Λ(δ): exact below q, r-periodic above q."""

    r: int
    q: int
    exceptional: frozenset[int]
    window: frozenset[int]

    def contains(self, length: int) -> bool:
        if length <= 0:
            return False
        if length <= self.q:
            return length in self.exceptional
        return self.q + 1 + (length - self.q - 1) % self.r in self.window

    @property
    def residues(self) -> frozenset[int]:
        return frozenset(x % self.r for x in self.window)

    def first(self, n: int) -> list[int]:
        out, length = [], 1
        while len(out) < n:
            if self.contains(length):
                out.append(length)
            length += 1
        return out


@dataclass(frozen=True)
class ShannonGraphData:
    edges: dict[tuple[int, str], int]
    cyclic: tuple[int, ...]
    lambdas: dict[int, Lambda]

    @property
    def V_circ(self) -> int:
        return len(self.cyclic)

    def r(self, delta: int) -> int:
        return self.lambdas[delta].r

    def q(self, delta: int) -> int:
        return self.lambdas[delta].q


class SyntacticSemigroup:
    """The finite semigroup 𝒱(X) with an adjoined zero."""

    def __init__(
        self,
        alphabet: tuple[str, ...],
        transformations: list[Transformation],
        representatives: list[Optional[Word]],
        zero: int,
        generators: dict[str, Transformation],
    ):
        self.alphabet = alphabet
        self.transformations = transformations
        self.representatives = representatives
        self.zero = zero
        self._index = {t: i for i, t in enumerate(transformations)}
        n = len(transformations)
        self.mult = np.zeros((n, n), dtype=np.int64)
        for i, ti in enumerate(transformations):
            for j, tj in enumerate(transformations):
                self.mult[i, j] = self._index[tuple(tj[x] for x in ti)]
        self.gen_map = {a: self._index[t] for a, t in generators.items()}

    @property
    def elements(self) -> list[ClassId]:
        return [self.class_id(i) for i in range(len(self.transformations))]

    @property
    def V(self) -> int:
        return len(self.transformations) - 1

    @property
    def admissible_ids(self) -> list[int]:
        return [i for i in range(len(self.transformations)) if i != self.zero]

    def class_id(self, i: int) -> ClassId:
        return ClassId(i, self.representatives[i], i == self.zero)

    def mul(self, *ids: int) -> int:
        out = ids[0]
        for j in ids[1:]:
            out = int(self.mult[out, j])
        return out

    def word_class(self, w: Sequence[str]) -> int:
        """Class index of a non-empty word (zero for inadmissible words)."""
        if not w:
            raise InadmissibleWordError("the empty word has no context class in 𝒱(X)")
        cur = self.gen_map[w[0]]
        for s in w[1:]:
            cur = int(self.mult[cur, self.gen_map[s]])
        return cur

    def power(self, i: int, n: int) -> int:
        out = i
        for _ in range(n - 1):
            out = int(self.mult[out, i])
        return out

    def power_cycle(self, i: int) -> tuple[int, int]:
        """(first, period) of the sequence i, i², ...: powers repeat from ``first``."""
        seen: dict[int, int] = {}
        cur, n = i, 1
        while cur not in seen:
            seen[cur] = n
            cur = int(self.mult[cur, i])
            n += 1
        return seen[cur], n - seen[cur]

    def powers(self, i: int) -> list[int]:
        """All distinct powers of i."""
        first, period = self.power_cycle(i)
        return [self.power(i, n) for n in range(1, first + period)]

    def is_synchronizing_id(self, i: int) -> bool:
        if i == self.zero:
            return False
        sink = len(self.transformations[i]) - 1
        return len({x for x in self.transformations[i] if x != sink}) == 1

    @cached_property
    def shannon(self) -> ShannonGraphData:
        return _shannon_graph(self)

    def to_json_dict(self) -> dict:
        sg = self.shannon
        return {
            "V": self.V,
            "elements": [
                {
                    "id": i,
                    "representative": None if rep is None else format_word(rep),
                    "is_zero": i == self.zero,
                    "synchronizing": self.is_synchronizing_id(i),
                }
                for i, rep in enumerate(self.representatives)
            ],
            "mult": self.mult.tolist(),
            "V_circ": sg.V_circ,
            "cyclic": [
                {
                    "id": d,
                    "r": sg.lambdas[d].r,
                    "q": sg.lambdas[d].q,
                    "exceptional": sorted(sg.lambdas[d].exceptional),
                    "residues": sorted(sg.lambdas[d].residues),
                }
                for d in sg.cyclic
            ],
        }


def _completed_table(shift: SoficShift) -> tuple[int, list[list[int]]]:
    """Minimal DFA of ℒ(X) with an explicit sink (last index)."""
    dfa = shift.language_automaton
    sink = dfa.n_states
    rows = [[sink if t is None else t for t in row] for row in dfa.delta]
    rows.append([sink] * len(dfa.alphabet))
    return sink, rows


@cache
def semigroup(shift: SoficShift) -> SyntacticSemigroup:
    sink, rows = _completed_table(shift)
    n_states = sink + 1
    gens = [tuple(rows[q][k] for q in range(n_states)) for k in range(len(shift.alphabet))]
    transformations: list[Transformation] = []
    reps: list[Optional[Word]] = []
    index: dict[Transformation, int] = {}
    queue: deque[int] = deque()
    for a, t in zip(shift.alphabet, gens):
        if t not in index:
            index[t] = len(transformations)
            transformations.append(t)
            reps.append((a,))
            queue.append(index[t])
    while queue:
        i = queue.popleft()
        ti = transformations[i]
        for a, g in zip(shift.alphabet, gens):
            t = tuple(g[x] for x in ti)
            if t not in index:
                index[t] = len(transformations)
                transformations.append(t)
                reps.append(reps[i] + (a,))
                queue.append(index[t])
    zero_t = tuple([sink] * n_states)
    if zero_t not in index:
        index[zero_t] = len(transformations)
        transformations.append(zero_t)
        reps.append(None)
    sg = SyntacticSemigroup(
        shift.alphabet, transformations, reps, index[zero_t], dict(zip(shift.alphabet, gens))
    )
    logger.info(f"semigroup of {shift.name}: V={sg.V}")
    return sg


def context_class(shift: SoficShift, w: Sequence[str]) -> ClassId:
    shift.check_symbols(w)
    sg = semigroup(shift)
    return sg.class_id(sg.word_class(w))


def _boolean_powers(adj: np.ndarray) -> tuple[list[np.ndarray], int]:
    """Distinct boolean powers A, A², ... and the index where the cycle starts."""
    powers: list[np.ndarray] = []
    seen: dict[bytes, int] = {}
    cur = adj.copy()
    while True:
        key = cur.tobytes()
        if key in seen:
            return powers, seen[key]
        seen[key] = len(powers)
        powers.append(cur)
        cur = (cur.astype(np.int64) @ adj.astype(np.int64)) > 0


def _shannon_graph(sg: SyntacticSemigroup) -> ShannonGraphData:
    vertices = sg.admissible_ids
    pos = {v: i for i, v in enumerate(vertices)}
    edges: dict[tuple[int, str], int] = {}
    adj = np.zeros((len(vertices), len(vertices)), dtype=bool)
    for d in vertices:
        for a in sg.alphabet:
            t = int(sg.mult[d, sg.gen_map[a]])
            if t != sg.zero:
                edges[(d, a)] = t
                adj[pos[d], pos[t]] = True
    powers, cycle_start = _boolean_powers(adj)
    period = len(powers) - cycle_start

    def member(d: int, length: int) -> bool:
        if length < 1:
            return False
        k = length - 1
        if k >= len(powers):
            k = cycle_start + (k - cycle_start) % period
        return bool(powers[k][pos[d], pos[d]])

    lambdas: dict[int, Lambda] = {}
    for d in vertices:
        lengths = [n + 1 for n in range(len(powers)) if powers[n][pos[d], pos[d]]]
        if not lengths:
            continue
        r = min(lengths)
        i0 = cycle_start + 1
        q = 0
        while True:
            top = max(q + 1, i0) + period + r
            if all(member(d, n) or not member(d, n + r) for n in range(q + 1, top + 1)):
                break
            q += 1
            if q > i0 + period + r + len(powers):
                raise InternalInvariantError(f"no preperiod found for class {d}")
        lambdas[d] = Lambda(
            r=r,
            q=q,
            exceptional=frozenset(n for n in range(1, q + 1) if member(d, n)),
            window=frozenset(n for n in range(q + 1, q + r + 1) if member(d, n)),
        )
    cyclic = tuple(sorted(lambdas))
    return ShannonGraphData(edges=edges, cyclic=cyclic, lambdas=lambdas)


def shannon_graph(sg: SyntacticSemigroup) -> ShannonGraphData:
    return sg.shannon


def is_synchronizing(shift: SoficShift, w: Sequence[str]) -> bool:
    shift.check_symbols(w)
    sg = semigroup(shift)
    i = sg.word_class(w)
    if i == sg.zero:
        raise InadmissibleWordError(f"{format_word(w)} is not admissible in {shift.name}")
    return sg.is_synchronizing_id(i)


def synchronizing_classes(shift: SoficShift) -> list[ClassId]:
    sg = semigroup(shift)
    return [sg.class_id(i) for i in sg.admissible_ids if sg.is_synchronizing_id(i)]


def _as_index(c: ClassId | int) -> int:
    return c.id if isinstance(c, ClassId) else int(c)


def gamma_expression_admissible(
    shift: SoficShift, gamma_minus: ClassId | int, w: Sequence[str], gamma_plus: ClassId | int
) -> bool:
    shift.check_symbols(w)
    sg = semigroup(shift)
    left, right = _as_index(gamma_minus), _as_index(gamma_plus)
    for g in (left, right):
        if g not in sg.admissible_ids or not sg.is_synchronizing_id(g):
            raise NotSynchronizingError(f"class {g} is not a synchronizing class")
    middle = [sg.word_class(w)] if w else []
    return sg.mul(left, *middle, right) != sg.zero


@dataclass(frozen=True)
class DerivedShift:
    presentation: LabeledPresentation
    shift: SoficShift

    @property
    def is_empty(self) -> bool:
        return self.presentation.is_empty


def derived_shift(shift: SoficShift) -> DerivedShift:
    """∂X: points of X without synchronizing factors."""
    sg = semigroup(shift)
    keep = [i for i in sg.admissible_ids if not sg.is_synchronizing_id(i)]
    pos = {v: k for k, v in enumerate(keep)}
    edges = []
    for (d, a), t in sg.shannon.edges.items():
        if d in pos and t in pos:
            edges.append((pos[d], pos[t], a))
    pres = LabeledPresentation.build(shift.alphabet, len(keep), edges).essentialize()
    logger.info(f"derived shift of {shift.name}: {pres.n_vertices} vertices")
    return DerivedShift(pres, SoficShift(pres, name=f"∂{shift.name}"))


def cycle_word(shift: SoficShift, delta: ClassId | int, length: int) -> Word:
    """w_δ(l): lexicographically least label of a closed walk of length l at δ."""
    sg = semigroup(shift)
    d = _as_index(delta)
    lam = sg.shannon.lambdas.get(d)
    if lam is None or not lam.contains(length):
        raise NotInLambdaError(f"{length} is not a return length of class {d}")
    edges = sg.shannon.edges
    back: list[set[int]] = [{d}]
    for _ in range(length - 1):
        prev = back[-1]
        back.append({s for (s, _a), t in edges.items() if t in prev})
    word: list[str] = []
    cur = d
    for remaining in range(length, 0, -1):
        for a in shift.alphabet:
            t = edges.get((cur, a))
            if t is not None and t in back[remaining - 1]:
                word.append(a)
                cur = t
                break
        else:
            raise InternalInvariantError(f"cycle search at class {d} lost its path")
    return tuple(word)
