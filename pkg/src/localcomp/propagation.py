"""Marginals of a factorization: brute force, twig deletion, message passing."""

from collections import deque
from dataclasses import dataclass, field

from .errors import DomainError, UndefinedCombination
from .hypergraph import ConstructionSequence, construction_sequence, fmt_edge, is_twig
from .markov_tree import MarkovTree
from .valuation import Factorization, combine, combine_all, marginalize


def brute_force_marginal(F: Factorization, target):
    """Combine every factor, then marginalize. Exponential; for checking only."""
    target = frozenset(target)
    joint = combine_all(F.all_factors())
    if not target or not target <= joint.variables:
        raise DomainError(
            f"target {sorted(target)} is not a non-empty subset of {list(joint.domain)}")
    return marginalize(joint, target)


def delete_twig(F: Factorization, t, b) -> Factorization:
    """Remove twig ``t``, folding its factors into branch ``b``.

    The branch's factor list gains the twig's local valuation marginalized
    to ``t & b``; the result factorizes the marginal on the remaining
    variables.
    """
    t, b = frozenset(t), frozenset(b)
    if b not in is_twig(F.hypergraph, t):
        raise DomainError(f"{fmt_edge(b)} is not a branch for {fmt_edge(t)}")
    msg = marginalize(F.local(t), t & b)
    rest = F.hypergraph.without(t)
    table = {h: list(F.factors[h]) for h in rest}
    table[b] = [F.local(b), msg]
    return Factorization(rest, table, F.frames)


def collect_marginal(F: Factorization, target, seq: ConstructionSequence = None):
    """Marginal on hyperedge ``target`` by deleting twigs back to front.

    ``seq`` must be a construction sequence of ``F.hypergraph`` starting at
    ``target``; one is computed when omitted.
    """
    target = frozenset(target)
    if target not in F.hypergraph:
        raise DomainError(f"{fmt_edge(target)} is not a hyperedge of the factorization")
    if seq is None:
        seq = construction_sequence(F.hypergraph, target)
        if seq is None:
            raise DomainError(f"{F.hypergraph!r} is not a hypertree")
    bad = seq.first_invalid_step()
    if bad is not None:
        raise DomainError(f"construction sequence fails at step {bad}")
    if seq.root != target or seq.hypergraph() != F.hypergraph:
        raise DomainError("construction sequence does not start at the target "
                          "or does not match the factorization")
    work = {h: F.local(h) for h in F.hypergraph}
    for t, b in reversed(seq.steps[1:]):
        work[b] = combine(work[b], marginalize(work.pop(t), t & b))
    return work[target]


@dataclass
class PropagationResult:
    """Output of :func:`propagate`.

    ``marginals`` maps each vertex hyperedge to its marginal; ``messages``
    maps ``(i, j)`` vertex-index pairs to the message sent from i to j;
    ``trace`` lists rule firings in order.
    """

    tree: MarkovTree
    marginals: dict
    messages: dict
    trace: list = field(default_factory=list)


def _check_tree(F, T):
    if set(T.vertices) != set(F.hypergraph) or len(T.vertices) != len(F.hypergraph):
        raise DomainError("Markov tree vertices must equal the factorization's hyperedges")
    if not T.is_tree():
        raise DomainError("Markov tree is not a tree")


def propagate(F: Factorization, T: MarkovTree, schedule: str = "fifo") -> PropagationResult:
    """Two-rule message passing on ``T``.

    Rule 1 sends i -> j once i has heard from every other neighbour; Rule 2
    records i's marginal once it has heard from all of them. Ready firings
    sit in a work queue; ``schedule`` picks ``"fifo"`` (oldest first) or
    ``"lifo"`` (newest first). Both give bitwise identical results because
    every combination uses a fixed operand order: the local valuation, then
    incoming messages by neighbour in canonical order.
    """
    if schedule not in ("fifo", "lifo"):
        raise ValueError(f"unknown schedule {schedule!r}")
    _check_tree(F, T)
    n = len(T.vertices)
    local = []
    for i, h in enumerate(T.vertices):
        try:
            local.append(F.local(h))
        except UndefinedCombination as exc:
            raise UndefinedCombination(exc.args[0],
                                       where=f"factors on vertex {fmt_edge(h)}") from exc
    messages = {}
    marginals = {}
    trace = []
    queued = set()
    queue = deque()

    def enqueue(item):
        if item not in queued:
            queued.add(item)
            queue.append(item)

    def absorb(i, skip=None):
        acc = local[i]
        for k in T.neighbors(i):
            if k != skip:
                acc = combine(acc, messages[(k, i)])
        return acc

    def ready(i, skip=None):
        return all((k, i) in messages for k in T.neighbors(i) if k != skip)

    def wake(i):
        for j in T.neighbors(i):
            if (i, j) not in messages and ready(i, skip=j):
                enqueue((1, i, j))
        if i not in marginals and ready(i):
            enqueue((2, i, None))

    for i in range(n):
        wake(i)

    while queue:
        rule, i, j = queue.popleft() if schedule == "fifo" else queue.pop()
        if rule == 1:
            sep = T.separator(i, j)
            try:
                msg = marginalize(absorb(i, skip=j), sep)
            except UndefinedCombination as exc:
                where = f"edge {fmt_edge(T.vertices[i])} -> {fmt_edge(T.vertices[j])}"
                raise UndefinedCombination(exc.args[0], where=where) from exc
            assert (i, j) not in messages
            messages[(i, j)] = msg
            trace.append({"rule": 1, "from": i, "to": j, "domain": sorted(sep)})
            wake(j)
        else:
            try:
                marginals[T.vertices[i]] = absorb(i)
            except UndefinedCombination as exc:
                where = f"vertex {fmt_edge(T.vertices[i])}"
                raise UndefinedCombination(exc.args[0], where=where) from exc
            trace.append({"rule": 2, "vertex": i, "domain": sorted(T.vertices[i])})

    assert len(messages) == 2 * len(T.edges) and len(marginals) == n
    return PropagationResult(T, marginals, messages, trace)


def propagate_all(F: Factorization, T: MarkovTree, schedule: str = "fifo") -> dict:
    """Marginal of the factorized valuation on every vertex of ``T``."""
    return propagate(F, T, schedule).marginals
