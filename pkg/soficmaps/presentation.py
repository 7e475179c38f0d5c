"""Labeled-graph presentations of sofic shifts and their JSON file format."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from .core.data_structures import LabeledGraph
from .core.errors import EmptyLanguageError, PresentationError, UnknownSymbolError

logger = logging.getLogger(__name__)

Edge = tuple[int, int, str]


@dataclass(frozen=True)
class LabeledPresentation:
    """A finite labeled graph. Vertices are ``0..n_vertices-1``."""

    alphabet: tuple[str, ...]
    n_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PresentationError("alphabet symbols must be distinct")
        symbols = set(self.alphabet)
        for src, dst, label in self.edges:
            if not (0 <= src < self.n_vertices and 0 <= dst < self.n_vertices):
                raise PresentationError(f"edge {src}->{dst} has an invalid endpoint")
            if label not in symbols:
                raise UnknownSymbolError(f"edge label {label!r} is not in the alphabet")

    @classmethod
    def build(
        cls, alphabet: Iterable[str], n_vertices: int, edges: Iterable[Edge]
    ) -> "LabeledPresentation":
        return cls(tuple(alphabet), n_vertices, tuple(sorted(set(edges))))

    @cached_property
    def out_edges(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        table: list[list[tuple[str, int]]] = [[] for _ in range(self.n_vertices)]
        for src, dst, label in self.edges:
            table[src].append((label, dst))
        return tuple(tuple(row) for row in table)

    @cached_property
    def graph(self) -> LabeledGraph:
        return LabeledGraph(range(self.n_vertices), self.edges)

    @property
    def is_empty(self) -> bool:
        return self.n_vertices == 0

    def is_right_resolving(self) -> bool:
        seen: set[tuple[int, str]] = set()
        for src, _, label in self.edges:
            if (src, label) in seen:
                return False
            seen.add((src, label))
        return True

    def is_essential(self) -> bool:
        return len(self.graph.essential_core()) == self.n_vertices

    def induced(self, keep: Iterable[int]) -> "LabeledPresentation":
        """Subgraph on ``keep``, renumbered in ascending order."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[s], index[d], a) for s, d, a in self.edges if s in index and d in index
        ]
        return LabeledPresentation.build(self.alphabet, len(order), edges)

    def essentialize(self) -> "LabeledPresentation":
        """Iteratively drop vertices without incoming or outgoing edges."""
        core = self.graph.essential_core()
        if len(core) == self.n_vertices:
            return self
        logger.debug(f"essentialize: dropping {self.n_vertices - len(core)} vertices")
        return self.induced(core)

    def with_alphabet(self, alphabet: Iterable[str]) -> "LabeledPresentation":
        return LabeledPresentation(tuple(alphabet), self.n_vertices, self.edges)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "alphabet": list(self.alphabet),
            "vertices": self.n_vertices,
            "edges": [{"from": s, "to": d, "label": a} for s, d, a in self.edges],
        }


def presentation_from_dict(data: Mapping[str, Any]) -> LabeledPresentation:
    """Validate a decoded presentation object and essentialize it."""
    if not isinstance(data, Mapping):
        raise PresentationError("presentation must be a JSON object")
    try:
        alphabet = data["alphabet"]
        n_vertices = data["vertices"]
        raw_edges = data["edges"]
    except KeyError as e:
        raise PresentationError(f"missing field {e.args[0]!r}") from e
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise PresentationError("alphabet must be a list of strings")
    if not alphabet:
        raise PresentationError("alphabet must not be empty")
    if not isinstance(n_vertices, int) or isinstance(n_vertices, bool) or n_vertices < 0:
        raise PresentationError("vertices must be a non-negative integer")
    if not isinstance(raw_edges, list):
        raise PresentationError("edges must be a list")
    edges: list[Edge] = []
    for item in raw_edges:
        if not isinstance(item, Mapping):
            raise PresentationError("each edge must be an object")
        try:
            src, dst, label = item["from"], item["to"], item["label"]
        except KeyError as e:
            raise PresentationError(f"edge missing field {e.args[0]!r}") from e
        if not isinstance(src, int) or not isinstance(dst, int) or not isinstance(label, str):
            raise PresentationError(f"malformed edge {dict(item)!r}")
        edges.append((src, dst, label))
    raw = LabeledPresentation.build(alphabet, n_vertices, edges)
    pres = raw.essentialize()
    if pres.is_empty:
        raise EmptyLanguageError("presentation has an empty language")
    return pres


def parse_presentation(text: str) -> LabeledPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON: {e}") from e
    return presentation_from_dict(data)


def load_presentation(path: str) -> LabeledPresentation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise PresentationError(f"cannot read {path}: {e}") from e
    logger.info(f"Loaded presentation from {path}")
    return parse_presentation(text)
