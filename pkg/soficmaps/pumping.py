"""
Context- and length-preserving normalization of long admissible words.

A word b longer than k(V+2) repeats the context class of one of its prefixes
of length divisible by k; the repeated block can be pumped. When some cyclic
class δ recurs far enough beyond the pumped prefix, ψ_{k,δ} pumps r_δ more
blocks and shortens the stretch between the first and last δ-prefix to a
cycle word of matching length. ψ_k repeats this until no window remains.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .core.errors import InadmissibleWordError, InternalInvariantError, PreconditionError
from .core.words import Word, format_word
from .shift import SoficShift
from .syntactic import ClassId, SyntacticSemigroup, cycle_word, semigroup

logger = logging.getLogger(__name__)

__all__ = [
    "DeltaWindow",
    "PumpIndices",
    "cycle_word",
    "escape_bound_holds",
    "h_circ",
    "in_Bk",
    "in_Bk_delta",
    "psi_k",
    "psi_k_delta",
    "psi_trace",
    "pump_indices",
]


@dataclass(frozen=True)
class PumpIndices:
    I: int
    I_prime: int
    m: int

    def pumped_length(self, k: int) -> int:
        return k * (self.I + self.m * (self.I_prime - self.I))


@dataclass(frozen=True)
class DeltaWindow:
    J: int
    J_prime: int
    delta: int


def _prefix_classes(sg: SyntacticSemigroup, b: Word) -> list[int]:
    """Entry j is the class of b[:j]; entry 0 is unused."""
    out = [-1]
    cur = None
    for s in b:
        g = sg.gen_map[s]
        cur = g if cur is None else int(sg.mult[cur, g])
        out.append(cur)
    return out


def _admissible(shift: SoficShift, b: Sequence[str]) -> tuple[SyntacticSemigroup, Word]:
    shift.check_symbols(b)
    word = tuple(b)
    sg = semigroup(shift)
    if not word or sg.word_class(word) == sg.zero:
        raise InadmissibleWordError(f"{format_word(word)} is not admissible in {shift.name}")
    return sg, word


def in_Bk(shift: SoficShift, b: Sequence[str], k: int) -> bool:
    sg, word = _admissible(shift, b)
    return len(word) > k * (sg.V + 2)


def _pump(sg: SyntacticSemigroup, word: Word, k: int, prefixes: list[int]) -> PumpIndices:
    """I is the least index > 1 whose prefix class recurs at some I' <= V + 2, so
    I' <= V + 2 holds by construction; m counts the repeats of the block after kI."""
    n = len(word)
    for i in range(2, sg.V + 2):
        if k * (i + 1) > n:
            break
        for j in range(i + 1, sg.V + 3):
            if k * j > n:
                break
            if prefixes[k * i] == prefixes[k * j]:
                head, block = word[: k * i], word[k * i : k * j]
                m = 1
                while head + block * (m + 1) == word[: len(head) + len(block) * (m + 1)]:
                    m += 1
                return PumpIndices(i, j, m)
    raise InternalInvariantError(f"no prefix repeat found in a word of length {n}")


def pump_indices(shift: SoficShift, b: Sequence[str], k: int) -> PumpIndices:
    sg, word = _admissible(shift, b)
    if len(word) <= k * (sg.V + 2):
        raise PreconditionError(f"word of length {len(word)} is not in B_{k}")
    return _pump(sg, word, k, _prefix_classes(sg, word))


def _window(
    sg: SyntacticSemigroup, word: Word, k: int, delta: int, pump: PumpIndices, prefixes: list[int]
) -> Optional[DeltaWindow]:
    lam = sg.shannon.lambdas[delta]
    start = pump.pumped_length(k)
    hits = [j for j in range(start + 1, len(word)) if prefixes[j] == delta]
    if not hits:
        return None
    J, J_prime = hits[0], hits[-1]
    if J_prime - J > lam.q + k * lam.r * (pump.I_prime - pump.I):
        return DeltaWindow(J, J_prime, delta)
    return None


def in_Bk_delta(
    shift: SoficShift, b: Sequence[str], k: int, delta: ClassId | int
) -> Optional[DeltaWindow]:
    sg, word = _admissible(shift, b)
    d = delta.id if isinstance(delta, ClassId) else int(delta)
    if d not in sg.shannon.lambdas:
        raise PreconditionError(f"class {d} is not cyclic")
    if len(word) <= k * (sg.V + 2):
        return None
    prefixes = _prefix_classes(sg, word)
    return _window(sg, word, k, d, _pump(sg, word, k, prefixes), prefixes)


def h_circ(shift: SoficShift, k: int = 1) -> int:
    """H∘(X,k) = V − V∘ + Σ_{δ∈𝒱∘} (q_δ + k·V∘·r_δ)."""
    sg = semigroup(shift)
    data = sg.shannon
    total = sg.V - data.V_circ
    for d in data.cyclic:
        total += data.q(d) + k * data.V_circ * data.r(d)
    return total


def _apply(
    shift: SoficShift, word: Word, k: int, pump: PumpIndices, window: DeltaWindow
) -> Word:
    sg = semigroup(shift)
    lam = sg.shannon.lambdas[window.delta]
    head = word[: k * pump.I]
    block = word[k * pump.I : k * pump.I_prime]
    start = pump.pumped_length(k)
    fill = window.J_prime - window.J - k * lam.r * (pump.I_prime - pump.I)
    return (
        head
        + block * (pump.m + lam.r)
        + word[start : window.J]
        + cycle_word(shift, window.delta, fill)
        + word[window.J_prime :]
    )


def psi_k_delta(shift: SoficShift, b: Sequence[str], k: int, delta: ClassId | int) -> Word:
    sg, word = _admissible(shift, b)
    d = delta.id if isinstance(delta, ClassId) else int(delta)
    if len(word) <= k * (sg.V + 2):
        raise PreconditionError(f"word of length {len(word)} is not in B_{k}")
    prefixes = _prefix_classes(sg, word)
    pump = _pump(sg, word, k, prefixes)
    window = _window(sg, word, k, d, pump, prefixes) if d in sg.shannon.lambdas else None
    if window is None:
        raise PreconditionError(f"word is not in B_{k},{d}")
    return _apply(shift, word, k, pump, window)


def psi_trace(shift: SoficShift, b: Sequence[str], k: int) -> tuple[Word, list[dict]]:
    """ψ_k(b) and the per-iteration record of applied replacements."""
    sg, word = _admissible(shift, b)
    if len(word) <= k * (sg.V + 2):
        raise PreconditionError(f"word of length {len(word)} is not in B_{k}")
    cyclic = sg.shannon.cyclic
    guard = max(1, len(cyclic)) * len(word) * (sg.V + 2)
    steps: list[dict] = []
    while True:
        prefixes = _prefix_classes(sg, word)
        pump = _pump(sg, word, k, prefixes)
        chosen = None
        for d in cyclic:
            window = _window(sg, word, k, d, pump, prefixes)
            if window is not None:
                chosen = window
                break
        if chosen is None:
            return word, steps
        if len(steps) >= guard:
            raise InternalInvariantError(f"psi_{k} exceeded its iteration guard of {guard}")
        new = _apply(shift, word, k, pump, chosen)
        steps.append(
            {
                "delta": chosen.delta,
                "I": pump.I,
                "I_prime": pump.I_prime,
                "m": pump.m,
                "J": chosen.J,
                "J_prime": chosen.J_prime,
                "before": format_word(word),
                "after": format_word(new),
            }
        )
        logger.debug(
            f"psi_{k} step {len(steps)}: delta={chosen.delta} J={chosen.J}..{chosen.J_prime}"
        )
        word = new


def psi_k(shift: SoficShift, b: Sequence[str], k: int) -> Word:
    return psi_trace(shift, b, k)[0]


def escape_bound_holds(shift: SoficShift, b: Sequence[str], k: int) -> bool:
    """ℓ(b) − k(I + m(I′−I)) ≤ H∘(X,k).

    The pumped prefix k(I + m(I′−I)) is what gets subtracted: with a minus sign
    the bound fails for ψ-fixed words such as 0^5 on the full 2-shift.
    """
    sg, word = _admissible(shift, b)
    pump = _pump(sg, word, k, _prefix_classes(sg, word))
    return len(word) - pump.pumped_length(k) <= h_circ(shift, k)
