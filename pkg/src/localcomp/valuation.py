"""The valuation-algebra interface, factorizations and cover assignment.

Concrete algebras subclass :class:`Valuation` and implement the four
primitive hooks. The module-level :func:`combine`, :func:`marginalize` and
:func:`combine_all` add the argument checks shared by every algebra.
"""

from abc import ABC, abstractmethod
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .frames import canonical, check_frames, merge_frames
from .hypergraph import ConstructionSequence, Hypergraph, covers, edge_key, fmt_edge


class Valuation(ABC):
    """A value attached to a finite set of variables.

    ``domain`` is the canonical (sorted) tuple of variable names and
    ``frames`` maps each of them to its tuple of labels.
    """

    domain: tuple
    frames: dict

    @property
    def variables(self) -> frozenset:
        return frozenset(self.domain)

    @abstractmethod
    def _combine(self, other): ...

    @abstractmethod
    def _marginalize(self, onto: tuple): ...

    @classmethod
    @abstractmethod
    def identity(cls, domain: Iterable[str], frames: Mapping[str, tuple]):
        """Neutral element for combination on ``domain``."""

    @abstractmethod
    def isclose(self, other, tol: float = 1e-9) -> bool: ...

    def combine(self, other):
        return combine(self, other)

    def marginalize(self, onto):
        return marginalize(self, onto)

    __mul__ = combine


def combine(G: Valuation, H: Valuation) -> Valuation:
    if type(G) is not type(H):
        raise DomainError(
            f"cannot combine {type(G).__name__} with {type(H).__name__}")
    merge_frames(G.frames, H.frames)
    return G._combine(H)


def marginalize(G: Valuation, onto: Iterable[str]) -> Valuation:
    onto = canonical(onto)
    if not onto:
        raise DomainError("marginalization to the empty set is not defined")
    if not set(onto) <= set(G.domain):
        raise DomainError(f"{list(onto)} is not a subset of the domain {list(G.domain)}")
    if onto == G.domain:
        return G
    return G._marginalize(onto)


def combine_all(vs: Sequence[Valuation]) -> Valuation:
    """Left fold of :func:`combine`, in the order given."""
    vs = list(vs)
    if not vs:
        raise DomainError("combine_all needs at least one valuation")
    acc = vs[0]
    for v in vs[1:]:
        acc = combine(acc, v)
    return acc


class Factorization:
    """Valuations attached to the hyperedges of a hypergraph.

    ``factors`` maps hyperedge -> list of valuations whose domains lie inside
    it. Hyperedges may carry no factor; the algebra identity stands in for
    them during propagation. ``frames`` may add labels for variables that no
    factor mentions.
    """

    def __init__(self, hypergraph: Hypergraph, factors: Mapping, frames=None):
        self.hypergraph = hypergraph
        table = {h: [] for h in hypergraph}
        kinds = set()
        merged = check_frames(frames or {})
        for h, vs in factors.items():
            h = frozenset(h)
            if h not in hypergraph:
                raise DomainError(f"{fmt_edge(h)} is not a hyperedge of the factorization")
            for v in vs:
                if not v.variables <= h:
                    raise DomainError(
                        f"factor on {list(v.domain)} does not fit in {fmt_edge(h)}")
                kinds.add(type(v))
                merged = merge_frames(merged, v.frames)
                table[h].append(v)
        if not any(table.values()):
            raise DomainError("a factorization needs at least one factor")
        if len(kinds) > 1:
            raise DomainError("all factors must come from one algebra")
        missing = hypergraph.universe - set(merged)
        if missing:
            raise DomainError(f"no frame known for {sorted(missing)}")
        self.factors = {h: tuple(table[h]) for h in hypergraph}
        self.frames = merged
        self.algebra = kinds.pop()

    @classmethod
    def from_factors(cls, factors: Sequence[Valuation], frames=None) -> "Factorization":
        """Factorization on the hypergraph of the factors' own domains."""
        hg = Hypergraph(f.variables for f in factors)
        table = {}
        for f in factors:
            table.setdefault(f.variables, []).append(f)
        return cls(hg, table, frames)

    def all_factors(self) -> list:
        return [v for h in self.hypergraph for v in self.factors[h]]

    def local(self, h) -> Valuation:
        """Combination of the factors on ``h``, extended to all of ``h``."""
        h = frozenset(h)
        vs = self.factors[h]
        if not vs:
            return self.algebra.identity(h, self.frames)
        acc = combine_all(vs)
        if acc.variables != h:
            acc = combine(acc, self.algebra.identity(h, self.frames))
        return acc

    def __repr__(self):
        counts = ", ".join(f"{fmt_edge(h)}:{len(self.factors[h])}" for h in self.hypergraph)
        return f"Factorization({self.algebra.__name__}; {counts})"


def assign_to_cover(F: Factorization, cover) -> Factorization:
    """Move every factor to the first cover hyperedge that contains it.

    ``cover`` is a Hypergraph or the ``(Hypergraph, ConstructionSequence)``
    pair returned by :func:`~localcomp.hypergraph.hypertree_cover`.
    """
    if isinstance(cover, tuple):
        cover = cover[0]
    if isinstance(cover, ConstructionSequence):
        cover = cover.hypergraph()
    if not covers(cover, F.hypergraph):
        raise DomainError(f"{cover!r} does not cover {F.hypergraph!r}")
    table = {h: [] for h in cover}
    for v in F.all_factors():
        dest = next(h for h in cover if v.variables <= h)
        table[dest].append(v)
    return Factorization(cover, table, F.frames)


__all__ = [
    "Valuation", "Factorization", "combine", "marginalize", "combine_all",
    "assign_to_cover", "edge_key",
]
