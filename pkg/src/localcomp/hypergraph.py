"""Hypergraphs, twigs, hypertree recognition and hypertree covers.

Hyperedges are frozensets of variable names. Every "pick any" is resolved by
canonical order: a hyperedge sorts by the tuple of its sorted names, so runs
are reproducible.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import DomainError

Hyperedge = frozenset


def edge_key(h) -> tuple:
    return tuple(sorted(h))


def sort_edges(edges) -> tuple:
    return tuple(sorted(edges, key=edge_key))


def fmt_edge(h) -> str:
    return "{" + ",".join(edge_key(h)) + "}"


class Hypergraph:
    """A non-empty set of non-empty hyperedges.

    Duplicates collapse (it is a set). Iteration follows canonical order.
    """

    __slots__ = ("_edges", "_set", "_universe")

    def __init__(self, edges: Iterable[Iterable[str]]):
        hs = set()
        for e in edges:
            h = frozenset(e)
            if not h:
                raise DomainError("hyperedges must be non-empty")
            hs.add(h)
        if not hs:
            raise DomainError("a hypergraph needs at least one hyperedge")
        self._set = frozenset(hs)
        self._edges = sort_edges(hs)
        self._universe = frozenset().union(*hs)

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def universe(self) -> frozenset:
        return self._universe

    def __iter__(self):
        return iter(self._edges)

    def __len__(self):
        return len(self._edges)

    def __contains__(self, h):
        return frozenset(h) in self._set

    def __eq__(self, other):
        return isinstance(other, Hypergraph) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return "Hypergraph([" + ", ".join(fmt_edge(h) for h in self._edges) + "])"

    def without(self, t) -> "Hypergraph":
        t = frozenset(t)
        return Hypergraph(h for h in self._edges if h != t)

    def components(self) -> list:
        """Connected components, each a Hypergraph, in canonical order."""
        seen = set()
        comps = []
        for start in self._edges:
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            while frontier:
                h = frontier.pop()
                for g in self._edges:
                    if g not in comp and g & h:
                        comp.add(g)
                        frontier.append(g)
            seen |= comp
            comps.append(Hypergraph(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


@dataclass(frozen=True)
class ConstructionSequence:
    """Build-order list of ``(hyperedge, branch)`` steps.

    The first step has branch ``None``; each later step's hyperedge is a twig
    of the hypergraph formed by the steps so far, with the recorded branch.
    """

    steps: tuple

    @property
    def hyperedges(self) -> tuple:
        return tuple(h for h, _ in self.steps)

    @property
    def root(self):
        return self.steps[0][0]

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.hyperedges)

    def first_invalid_step(self) -> Optional[int]:
        """Index of the first step that fails re-verification, or None."""
        if not self.steps or self.steps[0][1] is not None:
            return 0
        seen = [self.steps[0][0]]
        for k in range(1, len(self.steps)):
            h, b = self.steps[k]
            if h in seen or b not in seen:
                return k
            prefix = Hypergraph(seen + [h])
            if b not in is_twig(prefix, h):
                return k
            seen.append(h)
        return None

    def is_valid(self) -> bool:
        return self.first_invalid_step() is None

    def __repr__(self):
        parts = [fmt_edge(self.steps[0][0])] if self.steps else []
        parts += [f"{fmt_edge(h)}<-{fmt_edge(b)}" for h, b in self.steps[1:]]
        return "ConstructionSequence(" + "; ".join(parts) + ")"


def is_twig(H: Hypergraph, t) -> tuple:
    """Branches for ``t`` in ``H``; an empty tuple means ``t`` is not a twig.

    A branch b is another hyperedge meeting ``t`` that contains every vertex
    of ``t`` shared with some other hyperedge.
    """
    t = frozenset(t)
    if t not in H:
        raise DomainError(f"{fmt_edge(t)} is not a hyperedge of {H!r}")
    others = [h for h in H if h != t]
    shared = t & frozenset().union(*others) if others else frozenset()
    return tuple(b for b in others if b & t and shared <= b)


def construction_sequence(H: Hypergraph, root=None) -> Optional[ConstructionSequence]:
    """Construction sequence for ``H`` via repeated twig deletion.

    Returns None if ``H`` is not a hypertree. With ``root`` the sequence
    starts at that hyperedge; it is never deleted, and it is the preferred
    branch whenever it qualifies. Otherwise twig and branch are the first
    candidates in canonical order.
    """
    if root is not None:
        root = frozenset(root)
        if root not in H:
            raise DomainError(f"root {fmt_edge(root)} is not a hyperedge of {H!r}")
    current = H
    removed = []
    while len(current) > 1:
        for t in current:
            if t == root:
                continue
            branches = is_twig(current, t)
            if branches:
                b = root if root in branches else branches[0]
                removed.append((t, b))
                current = current.without(t)
                break
        else:
            return None
    (last,) = current.edges
    return ConstructionSequence(((last, None),) + tuple(reversed(removed)))


def is_hypertree(H: Hypergraph) -> bool:
    return construction_sequence(H) is not None


def covers(Hstar: Hypergraph, H: Hypergraph) -> bool:
    """True iff every hyperedge of ``H`` fits inside some hyperedge of ``Hstar``."""
    return all(any(h <= g for g in Hstar) for h in H)


def _unreachable_pair(H: Hypergraph):
    comps = H.components()
    return comps[0].edges[0], comps[1].edges[0]


def elimination_order(H: Hypergraph) -> list:
    """Greedy one-step look-ahead elimination.

    Each round eliminates the variable whose neighbourhood (union of the
    hyperedges still containing it) is smallest, breaking ties by the number
    of variable pairs that would be newly joined, then by name. Returns a
    list of ``(variable, emitted_hyperedge)``.
    """
    work = set(H.edges)
    remaining = set(H.universe)
    order = []
    while remaining:
        best = None
        for v in sorted(remaining):
            touching = [e for e in work if v in e]
            union = frozenset().union(*touching)
            fill = sum(1 for a, b in combinations(sorted(union), 2)
                       if not any(a in e and b in e for e in work))
            key = (len(union), fill, v)
            if best is None or key < best[0]:
                best = (key, v, union, touching)
        _, v, union, touching = best
        order.append((v, union))
        work.difference_update(touching)
        rest = union - {v}
        if rest:
            work.add(rest)
        remaining.discard(v)
    return order


def hypertree_cover(H: Hypergraph):
    """Hypertree cover of a connected hypergraph plus a construction sequence.

    Emitted elimination neighbourhoods form the cover; those contained in
    another are dropped.
    """
    if not H.is_connected():
        a, b = _unreachable_pair(H)
        raise DomainError(
            f"hypergraph is disconnected: {fmt_edge(a)} cannot reach {fmt_edge(b)}")
    emitted = {u for _, u in elimination_order(H)}
    kept = [u for u in emitted if not any(u < w for w in emitted)]
    cover = Hypergraph(kept)
    seq = construction_sequence(cover)
    # elimination neighbourhoods of a connected hypergraph always form a hypertree
    assert seq is not None and covers(cover, H)
    return cover, seq
