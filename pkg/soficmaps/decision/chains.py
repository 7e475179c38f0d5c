"""
Chains of asymptotic triples and the residues their images may take.

A chain glues triples end to end: inside a block the right period word of
each triple is conjugate to the left period word of the next one, and a
block ends on a word conjugate to the left period word opening the next
block. Periods are written with stabilized exponents Q(a)R(a) + R_k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from ..asymptotic import AsymptoticTriple
from ..core.errors import PreconditionError
from ..core.words import EMPTY, Word, format_word, least_rotation
from ..periodic import PeriodInvariants, overlap_u
from .constants import DecisionConstants

logger = logging.getLogger(__name__)

Invariants = Callable[[Word], PeriodInvariants]


@dataclass(frozen=True)
class Segment:
    a_minus: Word
    c: Word
    a_plus: Word
    R: int = 0

    @classmethod
    def of(cls, triple: AsymptoticTriple, R: int = 0) -> "Segment":
        return cls(triple.a_minus, triple.c, triple.a_plus, R)

    @property
    def triple(self) -> AsymptoticTriple:
        return AsymptoticTriple(self.a_minus, self.c, self.a_plus)

    def to_json_dict(self) -> dict:
        return {
            "a_minus": format_word(self.a_minus),
            "c": format_word(self.c),
            "a_plus": format_word(self.a_plus),
            "R": self.R,
        }


Block = tuple[Segment, ...]


@dataclass(frozen=True)
class ChainTuple:
    blocks: tuple[Block, ...]

    @property
    def N(self) -> int:
        return len(self.blocks) - 1

    def to_json_dict(self) -> dict:
        return {"N": self.N, "blocks": [[s.to_json_dict() for s in b] for b in self.blocks]}


def _by_orbit(triples: Sequence[AsymptoticTriple]) -> dict[Word, list[AsymptoticTriple]]:
    out: dict[Word, list[AsymptoticTriple]] = {}
    for t in triples:
        out.setdefault(least_rotation(t.a_minus), []).append(t)
    return out


class ChainBuilder:
    """Enumerates blocks and chains over a split of the triple set."""

    def __init__(
        self,
        domain: Sequence[AsymptoticTriple],
        excluded: Sequence[AsymptoticTriple],
        invariants: Invariants,
        k_cap: int,
    ):
        self.domain = list(domain)
        self._domain_by_orbit = _by_orbit(domain)
        self._excluded_by_orbit = _by_orbit(excluded)
        self.invariants = invariants
        self.k_cap = k_cap

    def _opening(self, orbit: Optional[Word]) -> list[AsymptoticTriple]:
        if orbit is None:
            return self.domain
        return self._domain_by_orbit.get(orbit, [])

    def extend(self, block: Block) -> Iterator[Block]:
        """``block`` and its continuations by up to k_cap excluded segments."""
        yield block
        if len(block) > self.k_cap:
            return
        orbit = least_rotation(block[-1].a_plus)
        for t in self._excluded_by_orbit.get(orbit, []):
            for r in range(self.invariants(t.a_plus).R):
                yield from self.extend(block + (Segment.of(t, r),))

    def blocks(self, orbit: Optional[Word]) -> Iterator[Block]:
        for t in self._opening(orbit):
            for r in range(self.invariants(t.a_plus).R):
                yield from self.extend((Segment.of(t, r),))

    def chains(self, n_cap: int) -> Iterator[ChainTuple]:
        """Chains with 1 <= N <= n_cap; the closing block is a single segment."""
        for n_total in range(1, n_cap + 1):
            yield from self._chains(n_total, None, ())

    def _chains(
        self, n_total: int, orbit: Optional[Word], acc: tuple[Block, ...]
    ) -> Iterator[ChainTuple]:
        if len(acc) == n_total:
            for t in self._opening(orbit):
                yield ChainTuple(acc + ((Segment.of(t),),))
            return
        for block in self.blocks(orbit):
            yield from self._chains(n_total, least_rotation(block[-1].a_plus), acc + (block,))


def block_word(
    block: Block, next_a_minus: Word, next_c: Word, invariants: Invariants
) -> Word:
    """∏_k a_{+,k}^{Q R + R_k} u(a_{+,k}, a_{-,k+1}) c^{(k+1)}."""
    out: Word = EMPTY
    for k, seg in enumerate(block):
        if k + 1 < len(block):
            a_next, c_next = block[k + 1].a_minus, block[k + 1].c
        else:
            a_next, c_next = next_a_minus, next_c
        inv = invariants(seg.a_plus)
        out += seg.a_plus * (inv.Q * inv.R + seg.R) + overlap_u(seg.a_plus, a_next) + c_next
    return out


@dataclass(frozen=True)
class PlusTerm:
    """One period run a_{+,k}^{QR + R_k} u_k of a block."""

    length: int
    Q: int
    R: int
    R_k: int
    overlap: int


def plus_terms(
    block: Block, next_a_minus: Word, invariants: Invariants
) -> list[PlusTerm]:
    out = []
    for k, seg in enumerate(block):
        a_next = block[k + 1].a_minus if k + 1 < len(block) else next_a_minus
        inv = invariants(seg.a_plus)
        u = overlap_u(seg.a_plus, a_next)
        out.append(PlusTerm(len(seg.a_plus), inv.Q, inv.R, seg.R, len(u)))
    return out


def in_remainder_range(l: int, s: int, consts: DecisionConstants) -> bool:
    return abs(l) <= 2 * consts.H and abs(s) < 2 * consts.T


def remainder_set(
    l: int,
    s: int,
    terms: Sequence[PlusTerm],
    target_length: int,
    target_R: int,
    consts: DecisionConstants,
    target_overlap: int = 0,
) -> frozenset[int]:
    """Residues mod R(ā_+) of the integer part of the target period count.

    The count is (s + l - ℓ(ū) + 2(H+T)ℓ(ā_+)R(ā_+) + Σ_k [ℓ(a_{+,k})(Q R + R_k +
    R̄_k R) + ℓ(u_k)]) / ℓ(ā_+) with each free R̄_k in [0, ℓ(ā_+)R(ā_+)).
    The ℓ(ū) term keeps the count exact when the target overlap is all of ā_+.
    Defined only for |l| <= 2H and |s| < 2T.
    """
    if abs(l) > 2 * consts.H:
        raise PreconditionError(f"|l| = {abs(l)} exceeds 2H = {2 * consts.H}")
    if abs(s) >= 2 * consts.T:
        raise PreconditionError(f"|s| = {abs(s)} is not below 2T = {2 * consts.T}")
    for term in terms:
        if not 0 <= term.R_k < term.R:
            raise PreconditionError(f"R_k = {term.R_k} outside [0, {term.R})")
    span = target_length * target_R
    base = s + l - target_overlap + 2 * (consts.H + consts.T) * span
    for term in terms:
        base += term.length * (term.Q * term.R + term.R_k) + term.overlap
    values = {base % span}
    for term in terms:
        step = term.length * term.R
        values = {(v + step * j) % span for v in values for j in range(span)}
    return frozenset((v // target_length) % target_R for v in values)
