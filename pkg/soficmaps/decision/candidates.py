"""
Candidate maps on periodic points and the accompanying triple tables.

A map on periodic points is stored per conjugacy orbit: the least rotation
of each source word is sent to the η-word of its image point. The image of
any rotation follows by rotating the target the same amount.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from ..asymptotic import AsymptoticTriple, is_triple
from ..core.errors import PreconditionError
from ..core.words import Word, format_word, is_primitive, least_rotation, rotate
from ..periodic import enumerate_primitive_words, is_periodic_word, orbits, period_invariants
from ..shift import SoficShift
from .constants import DecisionConstants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodicMapCandidate:
    orbit_map: tuple[tuple[Word, Word], ...]

    @cached_property
    def lookup(self) -> dict[Word, Word]:
        return dict(self.orbit_map)

    def image(self, a: Sequence[str]) -> Word:
        """η-word of the image of p^(a)."""
        word = tuple(a)
        rep = least_rotation(word)
        target = self.lookup.get(rep)
        if target is None:
            raise PreconditionError(f"{format_word(word)} is outside the periodic map's domain")
        j = next(j for j in range(len(rep)) if rotate(rep, j) == word)
        return rotate(target, j)

    def shifted_image(self, a: Sequence[str], m: int) -> Word:
        """η-word of the image of S^m p^(a)."""
        return rotate(self.image(a), m)

    def to_json_dict(self) -> dict:
        return {format_word(s): format_word(t) for s, t in self.orbit_map}


def orbit_reps(shift: SoficShift, h: int) -> list[Word]:
    return list(orbits(enumerate_primitive_words(shift, h)))


def validate_periodic_map(
    phi: PeriodicMapCandidate, x: SoficShift, xbar: SoficShift, h: int
) -> list[str]:
    problems = []
    reps = set(orbit_reps(x, h))
    if set(phi.lookup) != reps:
        problems.append("domain differs from the periodic orbits of the source")
    for rep, target in phi.orbit_map:
        if not is_primitive(target):
            problems.append(f"image {format_word(target)} of {format_word(rep)} is not primitive")
        elif len(rep) % len(target):
            problems.append(f"period {len(target)} does not divide {len(rep)}")
        elif not is_periodic_word(xbar, target):
            problems.append(f"{format_word(target)} is not periodic in {xbar.name}")
    return problems


def enumerate_periodic_maps(
    x: SoficShift, xbar: SoficShift, h: int
) -> Iterator[PeriodicMapCandidate]:
    """All orbit-wise maps in order of total target period, then option index."""
    reps = orbit_reps(x, h)
    targets = [p.a for p in enumerate_primitive_words(xbar, h)]
    options = [[t for t in targets if len(rep) % len(t) == 0] for rep in reps]
    if any(not opts for opts in options):
        return
    start = tuple(0 for _ in reps)

    def weight(idx: tuple[int, ...]) -> int:
        return sum(len(options[i][j]) for i, j in enumerate(idx))

    heap = [(weight(start), start)]
    seen = {start}
    while heap:
        _, idx = heapq.heappop(heap)
        yield PeriodicMapCandidate(
            tuple((rep, options[i][j]) for i, (rep, j) in enumerate(zip(reps, idx)))
        )
        for i in range(len(idx)):
            if idx[i] + 1 < len(options[i]):
                nxt = idx[:i] + (idx[i] + 1,) + idx[i + 1 :]
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (weight(nxt), nxt))


def is_collapsed(phi: PeriodicMapCandidate, triple: AsymptoticTriple) -> bool:
    """φ∘(S^{ℓ(c)} p^(a_-)) = φ∘(p^(a_+))."""
    return phi.shifted_image(triple.a_minus, len(triple.c)) == phi.image(triple.a_plus)


@dataclass(frozen=True)
class AccompanyingMap:
    table: tuple[tuple[AsymptoticTriple, AsymptoticTriple, int], ...]
    excluded: tuple[AsymptoticTriple, ...] = ()

    @cached_property
    def lookup(self) -> dict[AsymptoticTriple, tuple[AsymptoticTriple, int]]:
        return {src: (dst, t) for src, dst, t in self.table}

    @property
    def domain(self) -> list[AsymptoticTriple]:
        return [src for src, _, _ in self.table]

    def __call__(self, triple: AsymptoticTriple) -> tuple[AsymptoticTriple, int]:
        return self.lookup[triple]

    def to_json_dict(self) -> dict:
        return {
            "table": [
                {"source": s.to_json_dict(), "target": d.to_json_dict(), "t": t}
                for s, d, t in self.table
            ],
            "excluded": [s.to_json_dict() for s in self.excluded],
        }


def reduce_phase(t_raw: int, len_minus: int, len_plus: int, modulus: int, v_circ: int) -> int:
    """Bring an image offset into [-modulus, modulus] by the sign rules of the
    necessity construction; ``modulus`` is R(ā_-)R(ā_+)."""
    if t_raw == 0:
        return 0
    rem = abs(t_raw) % modulus
    sign = 1 if t_raw > 0 else -1
    both_short = len_minus <= v_circ and len_plus <= v_circ
    both_long = len_minus >= v_circ and len_plus >= v_circ
    if both_short or both_long:
        return sign * rem
    if t_raw < 0 and len_minus > v_circ >= len_plus:
        return sign * rem
    if t_raw > 0 and len_minus <= v_circ < len_plus:
        return sign * rem
    return -sign * (modulus - rem)


def validate_accompanying(
    phi: PeriodicMapCandidate,
    psi: AccompanyingMap,
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source_triples: Sequence[AsymptoticTriple],
    target_triples: Optional[Sequence[AsymptoticTriple]] = None,
) -> list[str]:
    """Every way in which (φ∘, Ψ) breaks the accompanying-map conditions.

    Endpoint words are compared up to conjugacy.
    """
    problems = []
    source = set(source_triples)
    domain = set(psi.domain)
    for triple in domain - source:
        problems.append(f"{triple} is in the domain but not among the source triples")
    for triple in sorted(source - domain, key=str):
        if not is_collapsed(phi, triple):
            problems.append(f"{triple} is excluded but its ends map to different points")
    targets = set(target_triples) if target_triples is not None else None
    for src, dst, t in psi.table:
        if max(len(dst.a_minus), len(dst.a_plus)) > consts.H:
            problems.append(f"{src} -> {dst}: period longer than H")
        if not is_triple(xbar, dst.a_minus, dst.c, dst.a_plus):
            problems.append(f"{src} -> {dst}: not a triple of {xbar.name}")
        elif targets is not None and dst not in targets:
            problems.append(f"{src} -> {dst}: outside the target triple set")
        if abs(t) > consts.T:
            problems.append(f"{src} -> {dst}: |t| = {abs(t)} exceeds T = {consts.T}")
        if len(src.a_minus) <= consts.V_circ and t < -consts.T_circ:
            problems.append(f"{src} -> {dst}: t = {t} below -T_circ")
        if len(src.a_plus) <= consts.V_circ and t > consts.T_circ:
            problems.append(f"{src} -> {dst}: t = {t} above T_circ")
        if least_rotation(dst.a_plus) != least_rotation(phi.image(src.a_plus)):
            problems.append(f"{src} -> {dst}: right end is not the image orbit")
        if least_rotation(dst.a_minus) != least_rotation(phi.image(src.a_minus)):
            problems.append(f"{src} -> {dst}: left end is not the image orbit")
    return problems


def _psi_options(
    phi: PeriodicMapCandidate,
    triple: AsymptoticTriple,
    targets: Sequence[AsymptoticTriple],
    consts: DecisionConstants,
) -> list[tuple[AsymptoticTriple, int]]:
    out = []
    offsets = sorted(range(-consts.T, consts.T + 1), key=lambda t: (abs(t), t))
    for t in offsets:
        if len(triple.a_minus) <= consts.V_circ and t < -consts.T_circ:
            continue
        if len(triple.a_plus) <= consts.V_circ and t > consts.T_circ:
            continue
        right = phi.shifted_image(triple.a_plus, t)
        for dst in targets:
            if dst.a_plus != right:
                continue
            m = t + len(triple.c) - len(dst.c)
            if dst.a_minus == phi.shifted_image(triple.a_minus, m):
                out.append((dst, t))
    return out


def enumerate_accompanying(
    phi: PeriodicMapCandidate,
    consts: DecisionConstants,
    source_triples: Sequence[AsymptoticTriple],
    target_triples: Sequence[AsymptoticTriple],
) -> Iterator[AccompanyingMap]:
    """Tables on the non-collapsed triples meeting the endpoint equations exactly."""
    domain = [tr for tr in source_triples if not is_collapsed(phi, tr)]
    excluded = tuple(tr for tr in source_triples if is_collapsed(phi, tr))
    options = [_psi_options(phi, tr, target_triples, consts) for tr in domain]
    if any(not opts for opts in options):
        logger.debug("a domain triple has no admissible image; no accompanying map")
        return
    for choice in itertools.product(*options):
        yield AccompanyingMap(
            tuple((src, dst, t) for src, (dst, t) in zip(domain, choice)), excluded
        )


def image_period_R(xbar: SoficShift, phi: PeriodicMapCandidate) -> int:
    """ρ̄: the largest R over the images of the source periodic words."""
    return max((period_invariants(xbar, t).R for _, t in phi.orbit_map), default=1)
