"""Markov trees (join trees) over the hyperedges of a hypertree."""

from dataclasses import dataclass, field

from .errors import DomainError
from .hypergraph import ConstructionSequence, Hypergraph, edge_key, fmt_edge


@dataclass(frozen=True)
class MarkovTree:
    """A graph whose vertices are hyperedges.

    Vertices are addressed by position in ``vertices``; ``edges`` holds
    index pairs ``(i, j)`` with ``i < j``. Nothing is validated here, so a
    malformed tree can be built and handed to :func:`verify_markov_property`.
    """

    vertices: tuple
    edges: frozenset
    _nbrs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(frozenset(v) for v in self.vertices))
        norm = frozenset((min(i, j), max(i, j)) for i, j in self.edges)
        object.__setattr__(self, "edges", norm)
        nbrs = [[] for _ in self.vertices]
        for i, j in norm:
            nbrs[i].append(j)
            nbrs[j].append(i)
        # neighbours in canonical order of their hyperedges
        key = lambda k: edge_key(self.vertices[k])
        object.__setattr__(self, "_nbrs", tuple(tuple(sorted(n, key=key)) for n in nbrs))

    def neighbors(self, i: int) -> tuple:
        return self._nbrs[i]

    def separator(self, i: int, j: int) -> frozenset:
        return self.vertices[i] & self.vertices[j]

    @property
    def separators(self) -> dict:
        return {e: self.separator(*e) for e in sorted(self.edges)}

    def index(self, h) -> int:
        return self.vertices.index(frozenset(h))

    def leaves(self) -> list:
        return [i for i in range(len(self.vertices)) if len(self._nbrs[i]) == 1]

    def is_tree(self) -> bool:
        n = len(self.vertices)
        if n == 0 or len(self.edges) != n - 1:
            return False
        if len(set(self.vertices)) != n:
            return False
        if any(not (0 <= i < n and 0 <= j < n) or i == j for i, j in self.edges):
            return False
        seen = {0}
        stack = [0]
        while stack:
            for k in self._nbrs[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == n

    def delete_leaf(self, leaf: int) -> "MarkovTree":
        if len(self._nbrs[leaf]) != 1:
            raise DomainError(f"vertex {fmt_edge(self.vertices[leaf])} is not a leaf")
        remap = {old: new for new, old in enumerate(
            k for k in range(len(self.vertices)) if k != leaf)}
        return MarkovTree(
            tuple(v for k, v in enumerate(self.vertices) if k != leaf),
            frozenset((remap[i], remap[j]) for i, j in self.edges if leaf not in (i, j)),
        )

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": [list(edge_key(v)) for v in self.vertices],
            "edges": [[i, j] for i, j in sorted(self.edges)],
            "separators": [sorted(self.separator(i, j)) for i, j in sorted(self.edges)],
        }


def from_construction_sequence(seq: ConstructionSequence) -> MarkovTree:
    """Join each step's hyperedge to its recorded branch."""
    bad = seq.first_invalid_step()
    if bad is not None:
        h, b = seq.steps[bad] if seq.steps else (frozenset(), None)
        raise DomainError(
            f"construction sequence fails at step {bad}: {fmt_edge(h)} with branch "
            f"{fmt_edge(b) if b is not None else None}")
    vertices = seq.hyperedges
    pos = {h: k for k, h in enumerate(vertices)}
    edges = frozenset((pos[b], k) for k, (h, b) in enumerate(seq.steps) if b is not None)
    tree = MarkovTree(vertices, edges)
    assert verify_markov_property(tree)
    return tree


def verify_markov_property(T: MarkovTree) -> bool:
    """Check the tree shape, non-empty separators and running intersection.

    Running intersection is checked per variable: the vertices holding it
    must induce a connected subtree.
    """
    if not T.is_tree():
        return False
    if any(not T.separator(i, j) for i, j in T.edges):
        return False
    variables = frozenset().union(*T.vertices)
    for x in variables:
        holders = {k for k, v in enumerate(T.vertices) if x in v}
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            for k in T.neighbors(stack.pop()):
                if k in holders and k not in seen:
                    seen.add(k)
                    stack.append(k)
        if seen != holders:
            return False
    return True
