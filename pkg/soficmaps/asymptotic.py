"""
Asymptotic triples and the eventually periodic points they describe.

A point that is left-asymptotic to p^(a_-) and right-asymptotic to p^(a_+)
is a shift of the canonical point z with z[-len(c), 0) = c, the a_+ period
starting at coordinate 0 and the a_- period ending at coordinate -len(c).
The triple is pinned down by requiring that the middle word cannot be
absorbed into either tail.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core.errors import InadmissibleWordError, PeriodicPointError
from .core.words import EMPTY, Word, format_word, is_primitive, primitive_root
from .periodic import class_period_invariants, enumerate_primitive_words
from .pumping import in_Bk, in_Bk_delta, psi_k
from .shift import SoficShift, admissible_blocks
from .syntactic import semigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AsymptoticTriple:
    a_minus: Word
    c: Word
    a_plus: Word

    def to_json_dict(self) -> dict:
        return {
            "a_minus": format_word(self.a_minus),
            "c": format_word(self.c),
            "a_plus": format_word(self.a_plus),
        }

    def __str__(self) -> str:
        middle = format_word(self.c) or "ε"
        return f"({format_word(self.a_minus)}, {middle}, {format_word(self.a_plus)})"


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """The point x with x_i = z_{i-offset}, z laid out from (left, middle, right)."""

    left: Word
    middle: Word
    right: Word
    offset: int = 0

    def __post_init__(self) -> None:
        if not self.left or not self.right:
            raise ValueError("both tails of an eventually periodic point need a period word")

    def symbol_at(self, i: int) -> str:
        j = i - self.offset
        if j >= 0:
            return self.right[j % len(self.right)]
        n = len(self.middle)
        if j >= -n:
            return self.middle[j + n]
        return self.left[(j + n) % len(self.left)]

    def window(self, lo: int, hi: int) -> Word:
        return tuple(self.symbol_at(i) for i in range(lo, hi))

    @property
    def left_start(self) -> int:
        """First coordinate not covered by the left tail."""
        return self.offset - len(self.middle)


def is_triple(
    shift: SoficShift, a_minus: Sequence[str], c: Sequence[str], a_plus: Sequence[str]
) -> bool:
    a_m, mid, a_p = tuple(a_minus), tuple(c), tuple(a_plus)
    if not (is_primitive(a_m) and is_primitive(a_p)):
        return False
    if not mid and a_m[-1] == a_p[-1]:
        return False
    if mid and (mid[-1] == a_p[-1] or mid[0] == a_m[0]):
        return False
    shift.check_symbols(a_m + mid + a_p)
    sg = semigroup(shift)
    parts = []
    for a in (a_m, a_p):
        e = sg.word_class(a)
        if e == sg.zero:
            return False
        inv = class_period_invariants(sg, e)
        parts.append(sg.power(e, inv.Q * inv.R))
    middle = [sg.word_class(mid)] if mid else []
    return sg.mul(parts[0], *middle, parts[1]) != sg.zero


def realize(t: int, triple: AsymptoticTriple) -> EventuallyPeriodicPoint:
    """S^{-t} z for the triple."""
    return EventuallyPeriodicPoint(triple.a_minus, triple.c, triple.a_plus, t)


def _canonical_split(x: EventuallyPeriodicPoint) -> tuple[int, int]:
    """(k_minus, k_plus): x follows its left tail below k_minus, its right tail from k_plus."""
    left, right = primitive_root(x.left), primitive_root(x.right)
    span = len(left) + len(right)

    def right_tail(i: int) -> str:
        return right[(i - x.offset) % len(right)]

    def left_tail(i: int) -> str:
        return left[(i - x.left_start) % len(left)]

    k_plus = x.offset
    floor = x.left_start - span
    while x.symbol_at(k_plus - 1) == right_tail(k_plus - 1):
        k_plus -= 1
        if k_plus < floor:
            raise PeriodicPointError("point is periodic")
    k_minus = x.left_start
    ceiling = x.offset + span
    while x.symbol_at(k_minus) == left_tail(k_minus):
        k_minus += 1
        if k_minus > ceiling:
            raise PeriodicPointError("point is periodic")
    return k_minus, k_plus


def decompose(shift: SoficShift, x: EventuallyPeriodicPoint) -> tuple[int, AsymptoticTriple]:
    """The unique (t, triple) with x = S^{-t} z of the triple."""
    shift.check_symbols(x.left + x.middle + x.right)
    k_minus, k_plus = _canonical_split(x)
    pl, pr = len(primitive_root(x.left)), len(primitive_root(x.right))
    cut = min(k_minus, k_plus)
    c = x.window(k_minus, k_plus) if k_minus < k_plus else EMPTY
    triple = AsymptoticTriple(x.window(cut - pl, cut), c, x.window(k_plus, k_plus + pr))
    if not is_triple(shift, triple.a_minus, triple.c, triple.a_plus):
        raise InadmissibleWordError(f"point with triple {triple} is not in {shift.name}")
    return k_plus, triple


def _psi_escapes(shift: SoficShift, a_minus: Word, c: Word, fixed_point: bool) -> bool:
    sg = semigroup(shift)
    k = len(a_minus)
    b = a_minus * (sg.V + 2) + c
    if not in_Bk(shift, b, k):
        return True
    image = psi_k(shift, b, k)
    if fixed_point and image != b:
        return False
    return all(in_Bk_delta(shift, image, k, d) is None for d in sg.shannon.cyclic)


def _middles(shift: SoficShift, cap: int) -> Iterator[Word]:
    yield EMPTY
    for n in range(1, cap + 1):
        yield from admissible_blocks(shift, n)


def enumerate_A_circ(
    shift: SoficShift, H: int, c_cap: int, *, require_fixed_point: bool = False
) -> list[AsymptoticTriple]:
    """Triples with periods of length <= H, middle words of length <= c_cap, and a
    middle word that ψ leaves outside every cycle window."""
    if H < 1:
        raise ValueError("H must be >= 1")
    tails = [p.a for p in enumerate_primitive_words(shift, H)]
    middles = list(_middles(shift, c_cap))
    escaped: dict[tuple[Word, Word], bool] = {}
    out = []
    for a_m in tails:
        for c in middles:
            for a_p in tails:
                if not is_triple(shift, a_m, c, a_p):
                    continue
                key = (a_m, c)
                if key not in escaped:
                    escaped[key] = _psi_escapes(shift, a_m, c, require_fixed_point)
                if escaped[key]:
                    out.append(AsymptoticTriple(a_m, c, a_p))
    logger.info(f"A_circ[{H}] of {shift.name} with |c| <= {c_cap}: {len(out)} triples")
    return out

