"""
Exact language operations on labeled presentations.

The language of a presentation is the set of labels of finite paths. It is
recognized by the subset automaton started from the full vertex set, with
every non-empty subset accepting and the empty subset as the implicit dead
state. Containment, equality and finiteness are decided exactly on these
automata.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx

from .core.words import Word
from .presentation import LabeledPresentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DFA:
    """Partial deterministic automaton; ``None`` transitions reject."""

    alphabet: tuple[str, ...]
    start: int
    delta: tuple[tuple[Optional[int], ...], ...]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol: str) -> Optional[int]:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            return None

    def step(self, state: Optional[int], symbol: str) -> Optional[int]:
        if state is None:
            return None
        i = self.symbol_index(symbol)
        return None if i is None else self.delta[state][i]

    def run(self, word: Sequence[str], state: Optional[int] = None) -> Optional[int]:
        cur: Optional[int] = self.start if state is None else state
        for s in word:
            cur = self.step(cur, s)
            if cur is None:
                return None
        return cur

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(word) is not None


def subset_states(
    pres: LabeledPresentation, start: Optional[Iterable[int]] = None
) -> tuple[list[frozenset[int]], list[dict[str, frozenset[int]]]]:
    """Reachable non-empty subsets from ``start`` (default: every vertex)."""
    first = frozenset(range(pres.n_vertices) if start is None else start)
    states = [first]
    index = {first: 0}
    moves: list[dict[str, frozenset[int]]] = []
    queue = deque([first])
    while queue:
        cur = queue.popleft()
        row: dict[str, frozenset[int]] = {}
        for symbol in pres.alphabet:
            nxt = frozenset(d for v in cur for a, d in pres.out_edges[v] if a == symbol)
            if not nxt:
                continue
            row[symbol] = nxt
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
                queue.append(nxt)
        moves.append(row)
    return states, moves


def language_dfa(pres: LabeledPresentation) -> DFA:
    """Subset automaton of the path-label language of ``pres``."""
    states, moves = subset_states(pres)
    index = {s: i for i, s in enumerate(states)}
    delta = tuple(
        tuple(index[row[a]] if a in row else None for a in pres.alphabet) for row in moves
    )
    return DFA(pres.alphabet, 0, delta)


def determinize(pres: LabeledPresentation) -> LabeledPresentation:
    """Right-resolving essential presentation of the same language."""
    states, moves = subset_states(pres)
    index = {s: i for i, s in enumerate(states)}
    edges = [
        (i, index[nxt], a) for i, row in enumerate(moves) for a, nxt in row.items()
    ]
    cover = LabeledPresentation.build(pres.alphabet, len(states), edges).essentialize()
    logger.debug(f"determinize: {pres.n_vertices} vertices -> {cover.n_vertices} subsets")
    return cover


def follower_classes(dfa_like: Sequence[Sequence[Optional[int]]]) -> list[int]:
    """Moore refinement: block index per state, states equal iff same followers.

    The dead state is implicit and distinct from every listed state.
    """
    n = len(dfa_like)
    block = [0] * n
    while True:
        signatures: dict[tuple, int] = {}
        new_block = []
        for s in range(n):
            sig = (block[s],) + tuple(
                -1 if t is None else block[t] for t in dfa_like[s]
            )
            new_block.append(signatures.setdefault(sig, len(signatures)))
        if len(signatures) == len(set(block)):
            return new_block
        block = new_block


def minimize(dfa: DFA) -> DFA:
    """Minimal partial DFA of the same language (all states accepting)."""
    block = follower_classes(dfa.delta)
    # renumber blocks in BFS order from the start for stable output
    order: dict[int, int] = {block[dfa.start]: 0}
    rep: dict[int, int] = {block[dfa.start]: dfa.start}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        for t in dfa.delta[s]:
            if t is not None and block[t] not in order:
                order[block[t]] = len(order)
                rep[block[t]] = t
                queue.append(t)
    delta = []
    for b, _ in sorted(order.items(), key=lambda kv: kv[1]):
        s = rep[b]
        delta.append(tuple(None if t is None else order[block[t]] for t in dfa.delta[s]))
    return DFA(dfa.alphabet, 0, tuple(delta))


def separating_word(big: DFA, small: DFA) -> Optional[Word]:
    """A word accepted by ``small`` and rejected by ``big``, or None.

    Symbols of ``small`` missing from ``big``'s alphabet are rejected by ``big``.
    """
    start = (small.start, big.start)
    parent: dict[tuple, tuple] = {start: None}  # type: ignore[dict-item]
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        s_small, s_big = pair
        for i, symbol in enumerate(small.alphabet):
            t_small = small.delta[s_small][i]
            if t_small is None:
                continue
            t_big = big.step(s_big, symbol)
            nxt = (t_small, t_big)
            if nxt in parent:
                continue
            parent[nxt] = (pair, symbol)
            if t_big is None:
                word: list[str] = []
                cur = nxt
                while parent[cur] is not None:
                    prev, sym = parent[cur]
                    word.append(sym)
                    cur = prev
                return tuple(reversed(word))
            queue.append(nxt)
    return None


def contains(big: LabeledPresentation, small: LabeledPresentation) -> bool:
    """ℒ(small) ⊆ ℒ(big), decided exactly."""
    return separating_word(language_dfa(big), language_dfa(small)) is None


def same_language(p: LabeledPresentation, q: LabeledPresentation) -> bool:
    return contains(p, q) and contains(q, p)


def words_of_length(pres: LabeledPresentation, n: int) -> set[Word]:
    """All labels of paths of length ``n``."""
    dfa = language_dfa(pres)
    layer: list[tuple[Word, int]] = [((), dfa.start)]
    for _ in range(n):
        layer = [
            (w + (a,), t)
            for w, s in layer
            for a, t in zip(dfa.alphabet, dfa.delta[s])
            if t is not None
        ]
    return {w for w, _ in layer}


def has_bounded_growth(dfa: DFA) -> bool:
    """True iff the number of accepted words of length n stays bounded.

    Distinct paths from the start of a DFA carry distinct labels, so growth is
    bounded iff no reachable component holds two cycles and no two cyclic
    components are joined by a path.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(dfa.n_states))
    multi_edges: dict[tuple[int, int], int] = {}
    for s, row in enumerate(dfa.delta):
        for t in row:
            if t is not None:
                g.add_edge(s, t)
                multi_edges[(s, t)] = multi_edges.get((s, t), 0) + 1
    cond = nx.condensation(g)
    cyclic: set[int] = set()
    for c in cond.nodes:
        members = cond.nodes[c]["members"]
        internal = sum(
            cnt for (s, t), cnt in multi_edges.items() if s in members and t in members
        )
        if internal > len(members):
            return False
        if internal == len(members) and internal > 0:
            cyclic.add(c)
    for c in cyclic:
        if any(d in cyclic and d != c for d in nx.descendants(cond, c)):
            return False
    return True


def is_finite_shift(pres: LabeledPresentation) -> bool:
    return has_bounded_growth(minimize(language_dfa(pres)))
