"""
Exhaustive search over sliding block codes of a fixed window.

Tables are filled block by block in lexicographic order. A partial table is
abandoned as soon as a fully assigned periodic orbit maps outside the
periodic points of X̄ or a fully assigned short word maps to a word outside
ℒ(X̄). Every complete table that survives is checked exactly on its image
shift.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .asymptotic import AsymptoticTriple, EventuallyPeriodicPoint, decompose, realize
from .automata import contains, same_language
from .core.config import AppConfig
from .core.errors import PeriodicPointError, PreconditionError, WindowTooLargeError
from .core.words import primitive_root, rotate
from .decision.candidates import (
    AccompanyingMap,
    PeriodicMapCandidate,
    orbit_reps,
    reduce_phase,
)
from .decision.constants import DecisionConstants
from .periodic import enumerate_primitive_words, is_periodic_word, period_invariants
from .pumping import in_Bk, psi_k
from .scheduler import WorkerPool
from .shift import BlockMap, SoficShift, admissible_blocks, apply_block_map
from .syntactic import semigroup

logger = logging.getLogger(__name__)

WANTS = ("any", "infinite_image", "surjective", "meets_nonderived")


@dataclass
class OracleResult:
    window: int
    want: str
    found: list[BlockMap] = field(default_factory=list)
    exhausted: bool = True
    nodes: int = 0

    def to_json_dict(self) -> dict:
        return {
            "window": self.window,
            "want": self.want,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "found": [code.to_json_dict() for code in self.found],
        }


def image_meets_nonderived(image: SoficShift, xbar: SoficShift) -> bool:
    """Some word of the image is synchronizing for X̄."""
    sg = semigroup(xbar)
    dfa = image.language_automaton
    seen: set[tuple[int, Optional[int]]] = {(dfa.start, None)}
    stack: list[tuple[int, Optional[int]]] = [(dfa.start, None)]
    while stack:
        state, cls = stack.pop()
        for a, t in zip(dfa.alphabet, dfa.delta[state]):
            if t is None or a not in sg.gen_map:
                continue
            g = sg.gen_map[a]
            nxt = g if cls is None else sg.mul(cls, g)
            if nxt == sg.zero:
                continue
            if sg.is_synchronizing_id(nxt):
                return True
            if (t, nxt) not in seen:
                seen.add((t, nxt))
                stack.append((t, nxt))
    return False


@dataclass(frozen=True)
class _Constraint:
    periodic: bool
    order: tuple[int, ...]  # block indices along the word


class _TableSearch:
    def __init__(self, x: SoficShift, xbar: SoficShift, L: int, want: str):
        self.x, self.xbar, self.L, self.want = x, xbar, L, want
        self.width = 2 * L + 1
        self.blocks = admissible_blocks(x, self.width)
        self.index = {b: i for i, b in enumerate(self.blocks)}
        self.targets = xbar.alphabet
        self.triggers: list[list[_Constraint]] = [[] for _ in self.blocks]
        self._add_periodic_constraints()
        self._add_word_constraints()

    def _add(self, periodic: bool, order: list[int]) -> None:
        self.triggers[max(order)].append(_Constraint(periodic, tuple(order)))

    def _add_periodic_constraints(self) -> None:
        for p in enumerate_primitive_words(self.x, self.width + 1):
            ext = p.a * (self.width // p.pi + 2)
            self._add(True, [self.index[ext[i : i + self.width]] for i in range(p.pi)])

    def _add_word_constraints(self) -> None:
        for extra in range(3):
            for w in admissible_blocks(self.x, self.width + extra):
                self._add(False, [self.index[w[i : i + self.width]] for i in range(extra + 1)])

    def _passes(self, c: _Constraint, values: list[str]) -> bool:
        image = tuple(values[b] for b in c.order)
        if c.periodic:
            return is_periodic_word(self.xbar, image)
        return self.xbar.language_automaton.accepts(image)

    def code(self, values: Sequence[str]) -> BlockMap:
        return BlockMap.from_mapping(self.L, dict(zip(self.blocks, values)))

    def accept(self, code: BlockMap) -> bool:
        image = apply_block_map(code, self.x, alphabet=self.xbar.alphabet)
        if not contains(self.xbar.presentation, image.presentation):
            return False
        if self.want == "infinite_image":
            return not image.is_finite
        if self.want == "surjective":
            return same_language(image.presentation, self.xbar.presentation)
        if self.want == "meets_nonderived":
            return image_meets_nonderived(image, self.xbar)
        return True

    def run(
        self, first: str, budget: int, limit: Optional[int], deadline: Optional[float] = None
    ) -> OracleResult:
        """Depth-first search over tables whose first block maps to ``first``."""
        result = OracleResult(self.L, self.want)
        values: list[str] = [""] * len(self.blocks)
        n = len(self.blocks)

        def ok(i: int) -> bool:
            return all(self._passes(c, values) for c in self.triggers[i])

        def dfs(i: int) -> bool:
            if i == n:
                code = self.code(values)
                if self.accept(code):
                    result.found.append(code)
                    logger.debug(f"window {self.L}: accepted table #{len(result.found)}")
                    if limit is not None and len(result.found) >= limit:
                        return False
                return True
            for s in self.targets:
                if result.nodes >= budget or (
                    deadline is not None and time.monotonic() > deadline
                ):
                    result.exhausted = False
                    return False
                result.nodes += 1
                values[i] = s
                if ok(i) and not dfs(i + 1):
                    return False
            return True

        values[0] = first
        result.nodes = 1
        if ok(0) and not dfs(1):
            result.exhausted = False
        return result


def search_homomorphisms(
    x: SoficShift,
    xbar: SoficShift,
    L: int,
    want: str = "any",
    config: Optional[AppConfig] = None,
    *,
    limit: Optional[int] = None,
) -> OracleResult:
    """Block codes of window [-L, L] from X into X̄ with the wanted property."""
    config = config or AppConfig.from_env()
    if want not in WANTS:
        raise ValueError(f"unknown property {want!r}; expected one of {WANTS}")
    if L < 0:
        raise ValueError("window must be >= 0")
    if L > config.oracle_max_window:
        raise WindowTooLargeError(
            f"window {L} exceeds the configured maximum {config.oracle_max_window}"
        )
    search = _TableSearch(x, xbar, L, want)
    firsts = list(xbar.alphabet)
    share = max(1, config.oracle_node_budget // len(firsts))
    deadline = config.deadline()
    pool = WorkerPool(
        {"table": lambda s: search.run(s, share, limit, deadline)}, n_workers=config.threads
    )
    stop = None if limit is None else (lambda r: len(r.found) >= limit)
    parts = pool.map("table", firsts, stop_when=stop)
    merged = OracleResult(L, want)
    for part in parts:
        if part is None:
            merged.exhausted = False
            continue
        merged.found.extend(part.found)
        merged.nodes += part.nodes
        merged.exhausted = merged.exhausted and part.exhausted
    if limit is not None and len(merged.found) >= limit:
        merged.found = merged.found[:limit]
    logger.info(
        f"oracle {x.name} -> {xbar.name} at window {L} ({want}): "
        f"{len(merged.found)} found, {merged.nodes} nodes, exhausted={merged.exhausted}"
    )
    return merged


def image_point(code: BlockMap, triple: AsymptoticTriple) -> EventuallyPeriodicPoint:
    """φ(z) for the canonical point z of ``triple``."""
    L = code.L
    z = realize(0, triple)
    middle = code.apply_to_word(z.window(-len(triple.c) - 2 * L, 2 * L))
    left = rotate(code.apply_periodic(triple.a_minus), -L)
    right = rotate(code.apply_periodic(triple.a_plus), L)
    return EventuallyPeriodicPoint(left, middle, right, L)


def induced_pair(
    code: BlockMap,
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source_triples: Sequence[AsymptoticTriple],
) -> tuple[PeriodicMapCandidate, AccompanyingMap]:
    """The periodic map and accompanying table a homomorphism restricts to."""
    image = apply_block_map(code, x, alphabet=xbar.alphabet)
    if not contains(xbar.presentation, image.presentation):
        raise PreconditionError(f"block map does not send {x.name} into {xbar.name}")
    if image.is_finite:
        raise PreconditionError("block map has a finite image")
    phi = PeriodicMapCandidate(
        tuple(
            (rep, primitive_root(code.apply_periodic(rep)))
            for rep in orbit_reps(x, consts.h_used)
        )
    )
    v_bar = semigroup(xbar).V
    table: list[tuple[AsymptoticTriple, AsymptoticTriple, int]] = []
    excluded: list[AsymptoticTriple] = []
    for triple in source_triples:
        try:
            t_raw, found = decompose(xbar, image_point(code, triple))
        except PeriodicPointError:
            excluded.append(triple)
            continue
        k = len(found.a_minus)
        middle = found.a_minus * (v_bar + 2) + found.c
        if in_Bk(xbar, middle, k):
            middle = psi_k(xbar, middle, k)
        t_norm, dst = decompose(
            xbar, EventuallyPeriodicPoint(found.a_minus, middle, found.a_plus, 0)
        )
        modulus = (
            period_invariants(xbar, dst.a_minus).R * period_invariants(xbar, dst.a_plus).R
        )
        t = reduce_phase(
            t_raw + t_norm, len(dst.a_minus), len(dst.a_plus), modulus, consts.V_circ
        )
        table.append((triple, dst, t))
    logger.info(f"induced pair: {len(table)} triples in the domain, {len(excluded)} collapsed")
    return phi, AccompanyingMap(tuple(table), tuple(excluded))
