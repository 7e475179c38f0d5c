"""
Sofic shifts, their canonical covers and sliding block codes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .automata import (
    DFA,
    contains,
    determinize,
    follower_classes,
    is_finite_shift,
    language_dfa,
    minimize,
    words_of_length,
)
from .core.errors import BlockMapError, NotTransitiveError, UnknownSymbolError
from .core.words import Word
from .presentation import LabeledPresentation

logger = logging.getLogger(__name__)

_PERRON_TOL = 1e-12
_PERRON_MAX_ITER = 200_000


def _quotient(pres: LabeledPresentation, block: Sequence[int]) -> LabeledPresentation:
    """Merge vertices with equal block index; blocks renumbered by first vertex."""
    order: dict[int, int] = {}
    for v in range(pres.n_vertices):
        order.setdefault(block[v], len(order))
    edges = {(order[block[s]], order[block[d]], a) for s, d, a in pres.edges}
    return LabeledPresentation.build(pres.alphabet, len(order), edges)


def _transition_rows(pres: LabeledPresentation) -> list[tuple[Optional[int], ...]]:
    rows = []
    for v in range(pres.n_vertices):
        moves = dict(pres.out_edges[v])
        rows.append(tuple(moves.get(a) for a in pres.alphabet))
    return rows


def follower_separate(pres: LabeledPresentation) -> LabeledPresentation:
    """Merge follower-equivalent vertices of a right-resolving presentation."""
    return _quotient(pres, follower_classes(_transition_rows(pres)))


def perron_root(matrix: np.ndarray) -> float:
    """Perron eigenvalue of a non-negative irreducible matrix.

    Power iteration on ``A + I`` (primitive whenever ``A`` is irreducible),
    stopped when the Collatz-Wielandt bounds meet.
    """
    n = matrix.shape[0]
    if n == 0:
        return 0.0
    shifted = matrix + np.eye(n)
    x = np.ones(n)
    for _ in range(_PERRON_MAX_ITER):
        y = shifted @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo < _PERRON_TOL * max(1.0, hi):
            return 0.5 * (lo + hi) - 1.0
        x = y / np.linalg.norm(y)
    logger.warning("power iteration did not converge; falling back to eigvals")
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


class SoficShift:
    """A sofic shift given by an essential labeled presentation."""

    def __init__(self, presentation: LabeledPresentation, name: Optional[str] = None):
        self.presentation = presentation.essentialize()
        self.name = name or "X"

    def __repr__(self) -> str:
        return (
            f"SoficShift({self.name!r}, |Σ|={len(self.alphabet)}, "
            f"vertices={self.presentation.n_vertices})"
        )

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.presentation.alphabet

    @property
    def is_empty(self) -> bool:
        return self.presentation.is_empty

    @cached_property
    def deterministic_cover(self) -> LabeledPresentation:
        return determinize(self.presentation)

    @cached_property
    def language_automaton(self) -> DFA:
        """Minimal partial DFA of ℒ(X)."""
        return minimize(language_dfa(self.presentation))

    @cached_property
    def _fischer(self) -> Optional[LabeledPresentation]:
        if self.is_empty:
            return None
        merged = follower_separate(self.deterministic_cover)
        for comp in merged.graph.terminal_components():
            part = merged.induced(comp)
            if part.n_vertices == 0 or not part.is_essential():
                continue
            if contains(part, self.presentation):
                return follower_separate(part)
        return None

    @property
    def transitive(self) -> bool:
        return self._fischer is not None

    @property
    def fischer_cover(self) -> LabeledPresentation:
        if self._fischer is None:
            raise NotTransitiveError(f"{self.name} is not topologically transitive")
        return self._fischer

    @cached_property
    def period(self) -> int:
        return self.fischer_cover.graph.period()

    @property
    def aperiodic(self) -> bool:
        return self.period == 1

    @cached_property
    def is_finite(self) -> bool:
        return is_finite_shift(self.presentation)

    def check_symbols(self, w: Iterable[str]) -> None:
        known = set(self.alphabet)
        for s in w:
            if s not in known:
                raise UnknownSymbolError(f"symbol {s!r} is not in the alphabet of {self.name}")


def is_admissible(shift: SoficShift, w: Sequence[str]) -> bool:
    shift.check_symbols(w)
    return shift.language_automaton.accepts(w)


def fischer_cover(shift: SoficShift) -> LabeledPresentation:
    return shift.fischer_cover


def is_transitive(p: LabeledPresentation | SoficShift) -> bool:
    shift = p if isinstance(p, SoficShift) else SoficShift(p)
    return shift.transitive


def is_aperiodic(shift: SoficShift) -> bool:
    return shift.aperiodic


def entropy(shift: SoficShift) -> float:
    """Topological entropy in nats."""
    cover = shift.fischer_cover
    order = list(range(cover.n_vertices))
    lam = perron_root(cover.graph.adjacency(order))
    return math.log(lam) if lam > 0 else float("-inf")


def lex_key(alphabet: Sequence[str]) -> Callable[[Word], tuple[int, ...]]:
    index = {s: i for i, s in enumerate(alphabet)}
    return lambda w: tuple(index[s] for s in w)


def admissible_blocks(shift: SoficShift, n: int) -> list[Word]:
    """X_[0,n) in lexicographic order of the declared alphabet."""
    return sorted(words_of_length(shift.presentation, n), key=lex_key(shift.alphabet))


@dataclass(frozen=True)
class BlockMap:
    """Sliding block code with coding window [-L, L]."""

    L: int
    table: tuple[tuple[Word, str], ...]

    @classmethod
    def from_mapping(cls, L: int, mapping: Mapping[Word, str]) -> "BlockMap":
        return cls(L, tuple(sorted((tuple(k), v) for k, v in mapping.items())))

    @classmethod
    def from_function(
        cls, shift: SoficShift, L: int, rule: Callable[[Word], str]
    ) -> "BlockMap":
        return cls.from_mapping(L, {b: rule(b) for b in admissible_blocks(shift, 2 * L + 1)})

    @cached_property
    def lookup(self) -> dict[Word, str]:
        return dict(self.table)

    @property
    def window(self) -> int:
        return 2 * self.L + 1

    def __call__(self, block: Sequence[str]) -> str:
        try:
            return self.lookup[tuple(block)]
        except KeyError:
            raise BlockMapError(f"block {tuple(block)!r} is not in the table") from None

    def image_alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.lookup.values())))

    def apply_to_word(self, w: Sequence[str]) -> Word:
        """Image of a word of length >= 2L+1 (loses L symbols on each side)."""
        n = self.window
        return tuple(self(w[i : i + n]) for i in range(len(w) - n + 1))

    def apply_periodic(self, a: Sequence[str]) -> Word:
        """One period of φ(a^∞) starting at coordinate 0."""
        ell = len(a)
        reps = (self.window // ell) + 2
        ext = tuple(a) * (2 * reps + 1)
        base = reps * ell - self.L
        return tuple(self(ext[base + i : base + i + self.window]) for i in range(ell))

    def to_json_dict(self) -> dict:
        return {"L": self.L, "table": [{"block": list(b), "image": s} for b, s in self.table]}


def widen(code: BlockMap, shift: SoficShift) -> BlockMap:
    """Recode ``code`` to window L+1 on the admissible blocks of ``shift``."""
    return BlockMap.from_function(shift, code.L + 1, lambda b: code(b[1:-1]))


def check_total(code: BlockMap, shift: SoficShift) -> None:
    missing = [b for b in admissible_blocks(shift, code.window) if b not in code.lookup]
    if missing:
        raise BlockMapError(
            f"table is not total: {len(missing)} admissible blocks missing, e.g. {missing[0]!r}"
        )


def higher_block_image(code: BlockMap, shift: SoficShift) -> LabeledPresentation:
    """Relabeled (2L+1)-block presentation of X through the table."""
    cover = shift.deterministic_cover
    rows = [dict(cover.out_edges[v]) for v in range(cover.n_vertices)]
    span = 2 * code.L

    def walk(v: int, w: Sequence[str]) -> Optional[int]:
        for s in w:
            nxt = rows[v].get(s)
            if nxt is None:
                return None
            v = nxt
        return v

    vertices: dict[tuple[int, Word], int] = {}
    frontier: list[tuple[int, Word]] = [(v, ()) for v in range(cover.n_vertices)]
    for _ in range(span):
        frontier = [(v, u + (a,)) for v, u in frontier for a in rows[walk(v, u)]]
    for key in frontier:
        vertices.setdefault(key, len(vertices))
    edges = []
    alphabet = set()
    for (v, u), idx in vertices.items():
        end = walk(v, u)
        for a in rows[end]:
            block = u + (a,)
            label = code(block)
            alphabet.add(label)
            target = (rows[v][block[0]], block[1:]) if span else (rows[v][a], ())
            edges.append((idx, vertices[target], label))
    image_alphabet = tuple(sorted(alphabet | set(code.image_alphabet())))
    return LabeledPresentation.build(image_alphabet, len(vertices), edges)


def apply_block_map(
    code: BlockMap, shift: SoficShift, alphabet: Optional[Sequence[str]] = None
) -> SoficShift:
    """The image shift φ(X), presented by a right-resolving cover."""
    check_total(code, shift)
    relabeled = higher_block_image(code, shift)
    if alphabet is not None:
        extra = set(relabeled.alphabet) - set(alphabet)
        if extra:
            raise BlockMapError(f"image symbols {sorted(extra)} are outside the target alphabet")
        relabeled = relabeled.with_alphabet(alphabet)
    image = SoficShift(determinize(relabeled.essentialize()), name=f"φ({shift.name})")
    logger.debug(f"image of {shift.name} at window {code.L}: {image!r}")
    return image
