"""Reusable checks of the four valuation-algebra axioms.

Each ``check_*`` returns True when the identity holds within ``tol`` for the
given operands. :func:`run_axiom_suite` drives them over random instances of
any algebra that :mod:`localcomp.generators` can sample.
"""

from itertools import permutations

from .errors import UndefinedCombination
from .frames import merge_frames
from .generators import NAMES, random_frames, random_valuation
from .valuation import combine, marginalize


def check_identity(G, tol=1e-9):
    return marginalize(G, G.domain).isclose(G, tol)


def check_consonance(G, h1, h2, tol=1e-9):
    """``G`` to ``h1`` directly equals going through ``h2`` (h1 <= h2 <= dom G)."""
    return marginalize(marginalize(G, h2), h1).isclose(marginalize(G, h1), tol)


def check_commutativity(G, H, tol=1e-9):
    return combine(G, H).isclose(combine(H, G), tol)


def check_associativity(G, H, K, tol=1e-9):
    """Every bracketing of every ordering of three operands agrees."""
    ref = combine(combine(G, H), K)
    for a, b, c in permutations((G, H, K)):
        if not combine(combine(a, b), c).isclose(ref, tol):
            return False
        if not combine(a, combine(b, c)).isclose(ref, tol):
            return False
    return True


def check_distributivity(G, H, tol=1e-9):
    """(G x H) to dom G equals G x (H to dom G & dom H); domains must meet."""
    shared = set(G.domain) & set(H.domain)
    lhs = marginalize(combine(G, H), G.domain)
    rhs = combine(G, marginalize(H, shared))
    return lhs.isclose(rhs, tol)


def _random_domain(rng, n_vars, max_size):
    k = int(rng.integers(1, max_size + 1))
    return tuple(rng.choice(NAMES[:n_vars], size=k, replace=False).tolist())


def _subsets_chain(rng, domain):
    dom = list(domain)
    k2 = int(rng.integers(1, len(dom) + 1))
    h2 = rng.choice(dom, size=k2, replace=False).tolist()
    k1 = int(rng.integers(1, k2 + 1))
    h1 = rng.choice(h2, size=k1, replace=False).tolist()
    return h1, h2


def run_axiom_suite(rng, algebra, n=200, max_vars=4, max_frame=3, tol=1e-9, **kw):
    """Check A0-A3 on ``n`` random instances per axiom.

    Instances whose combination is undefined (total conflict) are redrawn.
    Returns ``{axiom: (passed, checked)}``.
    """
    counts = {name: [0, 0] for name in ("A0", "A1", "A2-comm", "A2-assoc", "A3")}

    def draw(frames, n_vars, size=None):
        size = size or n_vars
        return random_valuation(rng, algebra, _random_domain(rng, n_vars, size), frames, **kw)

    def record(name, ok):
        counts[name][0] += bool(ok)
        counts[name][1] += 1

    done = 0
    while done < n:
        n_vars = int(rng.integers(1, max_vars + 1))
        frames = random_frames(rng, n_vars, max_frame)
        G, H, K = draw(frames, n_vars), draw(frames, n_vars), draw(frames, n_vars)
        merge_frames(G.frames, H.frames)
        try:
            combine(combine(G, H), K)
            for a, b, c in permutations((G, H, K)):
                combine(combine(a, b), c)
                combine(a, combine(b, c))
            meets = bool(set(G.domain) & set(H.domain))
            if meets:
                combine(G, marginalize(H, set(G.domain) & set(H.domain)))
        except UndefinedCombination:
            continue
        if not meets:
            continue
        record("A0", check_identity(G, tol))
        h1, h2 = _subsets_chain(rng, G.domain)
        record("A1", check_consonance(G, h1, h2, tol))
        record("A2-comm", check_commutativity(G, H, tol))
        record("A2-assoc", check_associativity(G, H, K, tol))
        record("A3", check_distributivity(G, H, tol))
        done += 1
    return {k: tuple(v) for k, v in counts.items()}
