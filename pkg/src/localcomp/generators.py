"""Random hypergraphs, hypertrees and valuations for tests and demos.

All functions take a ``numpy.random.Generator`` so runs are reproducible.
"""

import numpy as np

from .belief import MassFunction
from .frames import canonical, shape_of
from .hypergraph import Hypergraph
from .markov_tree import MarkovTree
from .potential import Potential
from .valuation import Factorization

NAMES = tuple("ABCDEFGHIJKLMNOP")


def random_frames(rng, n_vars, max_frame=3, min_frame=1):
    sizes = rng.integers(min_frame, max_frame + 1, size=n_vars)
    return {NAMES[i]: tuple(f"{NAMES[i].lower()}{k}" for k in range(s))
            for i, s in enumerate(sizes)}


def random_hypertree(rng, max_edges=6, max_vars=8, max_new=2):
    """Grow a hypertree by attaching twigs, recording each random parent.

    Returns ``(hyperedges, parents)`` in build order, where ``parents[k]``
    is the index of the branch chosen for edge ``k`` (``None`` for the first).
    """
    pool = list(NAMES[:max_vars])
    n_first = int(rng.integers(1, min(3, max_vars) + 1))
    edges = [frozenset(pool[:n_first])]
    used = n_first
    parents = [None]
    target = int(rng.integers(1, max_edges + 1))
    attempts = 0
    while len(edges) < target and attempts < 50:
        attempts += 1
        p = int(rng.integers(len(edges)))
        base = sorted(edges[p])
        k = int(rng.integers(1, len(base) + 1))
        keep = frozenset(rng.choice(base, size=k, replace=False).tolist())
        n_new = int(rng.integers(0, max_new + 1))
        n_new = min(n_new, max_vars - used)
        new = frozenset(pool[used:used + n_new])
        h = keep | new
        if h in edges:
            continue
        used += n_new
        edges.append(h)
        parents.append(p)
    return edges, parents


def random_markov_tree(rng, **kw) -> MarkovTree:
    """Markov tree whose edges follow the random attachment of a grown hypertree."""
    edges, parents = random_hypertree(rng, **kw)
    return MarkovTree(tuple(edges),
                      frozenset((p, k) for k, p in enumerate(parents) if p is not None))


def random_hypergraph(rng, max_edges=5, max_vars=5, max_size=None):
    n_vars = int(rng.integers(1, max_vars + 1))
    n_edges = int(rng.integers(1, max_edges + 1))
    max_size = max_size or n_vars
    out = set()
    for _ in range(n_edges):
        k = int(rng.integers(1, min(max_size, n_vars) + 1))
        out.add(frozenset(rng.choice(NAMES[:n_vars], size=k, replace=False).tolist()))
    return Hypergraph(out)


def random_connected_hypergraph(rng, max_edges=10, max_vars=8, max_size=3):
    while True:
        H = random_hypergraph(rng, max_edges, max_vars, max_size)
        if H.is_connected():
            return H


def random_potential(rng, domain, frames, low=0.1, high=2.0) -> Potential:
    domain = canonical(domain)
    return Potential(domain, frames, rng.uniform(low, high, size=shape_of(domain, frames)))


def random_mass(rng, domain, frames, max_focal=4) -> MassFunction:
    domain = canonical(domain)
    size = int(np.prod(shape_of(domain, frames)))
    k = int(rng.integers(1, max_focal + 1))
    masses = {}
    for w in rng.dirichlet(np.ones(k)):
        mask = rng.random(size) < 0.5
        if not mask.any():
            mask[rng.integers(size)] = True
        bits = sum(1 << int(i) for i in np.flatnonzero(mask))
        masses[bits] = masses.get(bits, 0.0) + float(w)
    return MassFunction(domain, frames, masses)


def random_valuation(rng, algebra, domain, frames, **kw):
    if algebra == "potential":
        return random_potential(rng, domain, frames, **kw)
    if algebra == "belief":
        return random_mass(rng, domain, frames, **kw)
    raise ValueError(f"unknown algebra {algebra!r}")


def random_factorization(rng, algebra, max_edges=6, max_vars=8, max_frame=3) -> Factorization:
    """One random factor per hyperedge of a random hypertree."""
    edges, _ = random_hypertree(rng, max_edges=max_edges, max_vars=max_vars)
    universe = frozenset().union(*edges)
    frames = random_frames(rng, len(NAMES), max_frame)
    frames = {v: frames[v] for v in universe}
    factors = {h: [random_valuation(rng, algebra, h, frames)] for h in edges}
    return Factorization(Hypergraph(edges), factors, frames)
