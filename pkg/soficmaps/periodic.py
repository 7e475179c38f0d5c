"""
Periodic points, primitive words and their semigroup invariants.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache
from math import lcm
from typing import Iterable, Sequence

from .core.errors import InadmissibleWordError, NotConjugateError
from .core.words import Word, format_word, is_primitive, least_rotation, rotation_offset
from .shift import SoficShift, lex_key
from .syntactic import SyntacticSemigroup, semigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimitiveWord:
    a: Word

    @property
    def pi(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return format_word(self.a)


@dataclass(frozen=True)
class PeriodInvariants:
    R: int
    Q: int


def _periodic_class(sg: SyntacticSemigroup, i: int) -> bool:
    return sg.zero not in sg.powers(i)


def is_periodic_word(shift: SoficShift, a: Sequence[str]) -> bool:
    """a^m admissible for every m >= 1."""
    if not a:
        return False
    sg = semigroup(shift)
    return _periodic_class(sg, sg.word_class(a))


def enumerate_primitive_words(shift: SoficShift, k: int) -> list[PrimitiveWord]:
    """𝒫_X⟨k⟩ in length-lexicographic order."""
    return [PrimitiveWord(a) for a in _primitive_words(shift, k)]


@cache
def _primitive_words(shift: SoficShift, k: int) -> tuple[Word, ...]:
    sg = semigroup(shift)
    dfa = shift.language_automaton
    found: list[Word] = []
    stack: list[tuple[Word, int]] = [((), dfa.start)]
    while stack:
        w, state = stack.pop()
        if w and is_primitive(w) and _periodic_class(sg, sg.word_class(w)):
            found.append(w)
        if len(w) == k:
            continue
        for a, t in zip(dfa.alphabet, dfa.delta[state]):
            if t is not None:
                stack.append((w + (a,), t))
    key = lex_key(shift.alphabet)
    return tuple(sorted(found, key=lambda w: (len(w), key(w))))


def conjugate(a: Sequence[str], b: Sequence[str]) -> bool:
    return rotation_offset(tuple(a), tuple(b)) is not None


def overlap_u(a: Sequence[str], b: Sequence[str]) -> Word:
    """u(a, a′): the prefix of a that a′ ends with, fixed by the rotation a′ = a[j:]a[:j]."""
    j = rotation_offset(tuple(a), tuple(b))
    if j is None:
        raise NotConjugateError(f"{format_word(a)} and {format_word(b)} are not conjugate")
    return tuple(a[:j])


def orbit_representative(a: Sequence[str]) -> Word:
    return least_rotation(tuple(a))


def orbits(words: Iterable[PrimitiveWord]) -> dict[Word, list[PrimitiveWord]]:
    """Conjugacy orbits keyed by least rotation."""
    out: dict[Word, list[PrimitiveWord]] = {}
    for p in words:
        out.setdefault(orbit_representative(p.a), []).append(p)
    return out


def period_invariants(shift: SoficShift, a: PrimitiveWord | Sequence[str]) -> PeriodInvariants:
    word = a.a if isinstance(a, PrimitiveWord) else tuple(a)
    sg = semigroup(shift)
    e = sg.word_class(word)
    if e == sg.zero:
        raise InadmissibleWordError(f"{format_word(word)} is not admissible in {shift.name}")
    return class_period_invariants(sg, e)


def class_period_invariants(sg: SyntacticSemigroup, e: int) -> PeriodInvariants:
    first, period = sg.power_cycle(e)
    q = 1
    while sg.power(e, q * period) != sg.power(e, (q + 1) * period):
        q += 1
    return PeriodInvariants(R=period, Q=q)


@dataclass(frozen=True)
class _FixSequence:
    values: tuple[bool, ...]
    cycle_start: int

    def __call__(self, n: int) -> bool:
        k = n - 1
        if k >= len(self.values):
            period = len(self.values) - self.cycle_start
            k = self.cycle_start + (k - self.cycle_start) % period
        return self.values[k]

    @property
    def period(self) -> int:
        return len(self.values) - self.cycle_start


@cache
def _fix_sequence(shift: SoficShift) -> _FixSequence:
    """Whether X has a point of period n, as an eventually periodic sequence in n."""
    sg = semigroup(shift)
    gens = set(sg.gen_map.values()) - {sg.zero}
    safe = {i for i in sg.admissible_ids if _periodic_class(sg, i)}
    layers: list[frozenset[int]] = []
    seen: dict[frozenset[int], int] = {}
    cur = frozenset(gens)
    while cur not in seen:
        seen[cur] = len(layers)
        layers.append(cur)
        cur = frozenset(sg.mul(s, g) for s in cur for g in gens) - {sg.zero}
    values = tuple(bool(layer & safe) for layer in layers)
    return _FixSequence(values, seen[cur])


def has_point_of_period(shift: SoficShift, n: int) -> bool:
    return _fix_sequence(shift)(n)


def least_periods(shift: SoficShift, bound: int) -> list[int]:
    return sorted({p.pi for p in enumerate_primitive_words(shift, bound)})


def period_obstruction(x: SoficShift, xbar: SoficShift) -> int | None:
    """Smallest n such that X has a point of period n and X̄ has none.

    Both predicates are eventually periodic in n, so a finite range decides
    it. The returned n is always a least period of X.
    """
    fx, fy = _fix_sequence(x), _fix_sequence(xbar)
    horizon = max(len(fx.values), len(fy.values)) + lcm(fx.period, fy.period)
    for n in range(1, horizon + 1):
        if fx(n) and not fy(n):
            logger.info(f"no point of period {n} in {xbar.name} for {x.name}")
            return n
    return None


def periodic_point_condition(x: SoficShift, xbar: SoficShift) -> bool:
    """Every least period of X has a divisor that is a least period of X̄."""
    return period_obstruction(x, xbar) is None


def periodic_point_report(shift: SoficShift, k: int) -> list[dict]:
    """Orbits of 𝒫_X⟨k⟩ with representative, π, R and Q."""
    key = lex_key(shift.alphabet)
    grouped = sorted(
        orbits(enumerate_primitive_words(shift, k)).items(),
        key=lambda item: (len(item[0]), key(item[0])),
    )
    report = []
    for rep, members in grouped:
        inv = period_invariants(shift, rep)
        report.append(
            {
                "representative": format_word(rep),
                "pi": len(rep),
                "R": inv.R,
                "Q": inv.Q,
                "orbit": [format_word(p.a) for p in members],
            }
        )
    return report


def max_period_R(shift: SoficShift, bound: int) -> int | None:
    """max R(a) over 𝒫_X⟨bound⟩, or None when that set is empty.

    Proper powers never raise the maximum, so it is taken over the classes of
    all periodic words of length <= bound, layer by layer.
    """
    sg = semigroup(shift)
    gens = set(sg.gen_map.values()) - {sg.zero}
    best: int | None = None
    seen: set[frozenset[int]] = set()
    cur = frozenset(gens)
    for _ in range(bound):
        if cur in seen:
            break
        seen.add(cur)
        for e in cur:
            if _periodic_class(sg, e):
                r = class_period_invariants(sg, e).R
                best = r if best is None else max(best, r)
        cur = frozenset(sg.mul(s, g) for s in cur for g in gens) - {sg.zero}
    return best
