"""
Core data structures for soficmaps.

LabeledGraph wraps a networkx MultiDiGraph whose edges carry a ``label``
attribute. Presentations and the covers built from them expose their graph
structure through it.
"""

from __future__ import annotations

import logging
from math import gcd
from typing import Any, Dict, Hashable, Iterable, List, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)


class LabeledGraph:
    """A labeled multigraph wrapper around NetworkX."""

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable[Tuple] = ()):
        self.graph = nx.MultiDiGraph()
        for v in vertices:
            self.add_vertex(v)
        for src, dst, label in edges:
            self.add_edge(src, dst, label)

    def add_vertex(self, vertex: Hashable, **attrs):
        """Adds a vertex with the given attributes."""
        self.graph.add_node(vertex, **attrs)

    def add_edge(self, source: Hashable, target: Hashable, label: Any, **attrs):
        """Adds a labeled edge; parallel edges with distinct labels are kept."""
        self.graph.add_edge(source, target, label=label, **attrs)

    def is_strongly_connected(self) -> bool:
        return self.graph.number_of_nodes() > 0 and nx.is_strongly_connected(self.graph)

    def essential_core(self) -> set:
        """Vertices lying on a bi-infinite path."""
        g = nx.DiGraph(self.graph)
        changed = True
        while changed:
            changed = False
            dead = [v for v in g.nodes if g.out_degree(v) == 0 or g.in_degree(v) == 0]
            if dead:
                g.remove_nodes_from(dead)
                changed = True
        return set(g.nodes)

    def terminal_components(self) -> List[set]:
        """Strongly connected components with no edge leaving them."""
        cond = nx.condensation(nx.DiGraph(self.graph))
        members = cond.graph["mapping"]
        comps: Dict[int, set] = {}
        for v, c in members.items():
            comps.setdefault(c, set()).add(v)
        return [comps[c] for c in sorted(cond.nodes) if cond.out_degree(c) == 0]

    def period(self) -> int:
        """gcd of cycle lengths of a strongly connected graph."""
        if not self.is_strongly_connected():
            raise ValueError("period is defined for strongly connected graphs only")
        root = next(iter(self.graph.nodes))
        level = {root: 0}
        for u, v in nx.bfs_edges(self.graph, root):
            level[v] = level[u] + 1
        g = 0
        for u, v in self.graph.edges():
            g = gcd(g, level[u] + 1 - level[v])
        return abs(g)

    def adjacency(self, order: List[Hashable]) -> np.ndarray:
        """Edge-count matrix in the given vertex order."""
        index = {v: i for i, v in enumerate(order)}
        mat = np.zeros((len(order), len(order)), dtype=np.float64)
        for u, v in self.graph.edges():
            mat[index[u], index[v]] += 1.0
        return mat
