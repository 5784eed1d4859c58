import numpy as np
import pytest

from localcomp import (DomainError, Factorization, Hypergraph, MarkovTree, MassFunction,
                       Potential, UndefinedCombination, brute_force_marginal, collect_marginal,
                       construction_sequence, delete_twig, from_construction_sequence,
                       is_twig, normalize, propagate, propagate_all)
from localcomp.generators import (random_factorization, random_frames, random_hypergraph,
                                  random_valuation)
from oracles import dict_combine, dict_marginal, dict_potential


def E(s):
    return frozenset(s)


def tree_for(F, root=None):
    return from_construction_sequence(construction_sequence(F.hypergraph, root))


@pytest.fixture
def example(xy_frames):
    G = Potential(["X"], xy_frames, [2, 3])
    H = Potential.from_values(["X", "Y"], xy_frames, [1, 0, 2, 4])
    return Factorization.from_factors([G, H])


def test_brute_force_examples(example):
    assert brute_force_marginal(example, {"X"}).values.tolist() == [2, 18]
    assert brute_force_marginal(example, {"Y"}).values.tolist() == [8, 12]
    single = Factorization.from_factors([example.factors[E("X")][0]])
    assert brute_force_marginal(single, {"X"}) == single.all_factors()[0]
    with pytest.raises(DomainError):
        brute_force_marginal(example, {"Q"})


def test_collect_marginal_one_step(rng):
    fr = random_frames(rng, 3)
    P1 = random_valuation(rng, "potential", "AB", fr)
    P2 = random_valuation(rng, "potential", "BC", fr)
    F = Factorization.from_factors([P1, P2])
    got = collect_marginal(F, "AB")
    assert got == P1 * P2.marginalize("B")


def test_collect_marginal_single_edge(example):
    F = Factorization(Hypergraph(["XY"]), {"XY": example.all_factors()})
    assert collect_marginal(F, "XY").values.tolist() == [2, 0, 6, 12]


def test_collect_marginal_errors(example):
    with pytest.raises(DomainError):
        collect_marginal(example, "Q")
    seq = construction_sequence(example.hypergraph, "X")
    with pytest.raises(DomainError):
        collect_marginal(example, "XY", seq)


def test_collect_marginal_random(rng):
    for algebra in ("potential", "belief"):
        done = 0
        while done < 30:
            F = random_factorization(rng, algebra, max_edges=4)
            try:
                for h in F.hypergraph:
                    assert collect_marginal(F, h).isclose(brute_force_marginal(F, h))
            except UndefinedCombination:
                continue
            done += 1


def test_single_vertex_tree(example):
    F = Factorization(Hypergraph(["XY"]), {"XY": example.all_factors()})
    res = propagate(F, tree_for(F))
    assert res.messages == {}
    assert res.marginals[E("XY")] == F.local("XY")
    assert res.trace == [{"rule": 2, "vertex": 0, "domain": ["X", "Y"]}]


def test_chain_of_three(rng):
    fr = random_frames(rng, 4)
    fs = [random_valuation(rng, "potential", d, fr) for d in ("AB", "BC", "CD")]
    F = Factorization.from_factors(fs)
    res = propagate(F, tree_for(F))
    assert len(res.messages) == 4
    for h, v in res.marginals.items():
        assert v.isclose(brute_force_marginal(F, h))


def test_star_firing_order(rng):
    fr = random_frames(rng, 4, min_frame=2)
    fs = [random_valuation(rng, "potential", d, fr) for d in ("AB", "AC", "AD", "A")]
    F = Factorization.from_factors(fs)
    T = from_construction_sequence(construction_sequence(F.hypergraph, "A"))
    centre = T.index("A")
    res = propagate(F, T)
    assert len(res.messages) == 6
    ones = [k for k, ev in enumerate(res.trace) if ev["rule"] == 1]
    inbound = {ev["from"]: k for k, ev in enumerate(res.trace) if ev["rule"] == 1 and ev["to"] == centre}
    for k, ev in enumerate(res.trace):
        if ev["rule"] == 1 and ev["from"] == centre:
            others = [inbound[leaf] for leaf in inbound if leaf != ev["to"]]
            assert all(o < k for o in others)
    first = res.trace[0]
    assert first["rule"] == 1 and len(T.neighbors(first["from"])) == 1
    assert len(ones) == 6


def test_schedules_agree_bitwise(rng):
    for algebra in ("potential", "belief"):
        done = 0
        while done < 25:
            F = random_factorization(rng, algebra)
            T = tree_for(F)
            try:
                a = propagate(F, T, "fifo")
            except UndefinedCombination:
                continue
            b = propagate(F, T, "lifo")
            assert a.trace and a.messages.keys() == b.messages.keys()
            for key in a.messages:
                assert a.messages[key] == b.messages[key]
            for h in a.marginals:
                assert a.marginals[h] == b.marginals[h]
            done += 1


def test_collect_equals_propagate(rng):
    done = 0
    while done < 40:
        F = random_factorization(rng, "belief" if done % 2 else "potential")
        try:
            marg = propagate_all(F, tree_for(F))
            for h in F.hypergraph:
                assert collect_marginal(F, h).isclose(marg[h])
        except UndefinedCombination:
            continue
        done += 1


def test_twig_deletion_identity(rng):
    done = 0
    while done < 100:
        H = random_hypergraph(rng, max_edges=5, max_vars=5)
        pairs = [(t, b) for t in H if len(H) > 1 for b in is_twig(H, t)]
        if not pairs:
            continue
        t, b = pairs[rng.integers(len(pairs))]
        fr = random_frames(rng, 5)
        fr = {v: fr[v] for v in H.universe}
        algebra = "belief" if done % 2 else "potential"
        F = Factorization(H, {h: [random_valuation(rng, algebra, h, fr)] for h in H})
        try:
            reduced = delete_twig(F, t, b)
            rest = H.without(t).universe
            ref = brute_force_marginal(F, rest)
            got = brute_force_marginal(reduced, rest)
        except UndefinedCombination:
            continue
        assert got.isclose(ref)
        done += 1


def test_delete_twig_rejects_non_branch(rng):
    fr = random_frames(rng, 4)
    F = Factorization.from_factors([random_valuation(rng, "potential", d, fr)
                                    for d in ("AB", "BC", "CD")])
    with pytest.raises(DomainError):
        delete_twig(F, "BC", "AB")


def test_normalized_marginals_are_probabilities(rng):
    # joint P(A) P(B|A) P(C|B) written as a factorization
    fr = {"A": ("a0", "a1"), "B": ("b0", "b1", "b2"), "C": ("c0", "c1")}
    pa = rng.dirichlet(np.ones(2))
    pb = rng.dirichlet(np.ones(3), size=2)
    pc = rng.dirichlet(np.ones(2), size=3)
    F = Factorization.from_factors([
        Potential("A", fr, pa),
        Potential("AB", fr, pb),
        Potential("BC", fr, pc),
    ])
    joint = pa[:, None, None] * pb[:, :, None] * pc[None, :, :]
    marg = propagate_all(F, tree_for(F))
    assert np.allclose(normalize(marg[E("AB")]).table, joint.sum(axis=2), rtol=1e-12)
    assert np.allclose(normalize(marg[E("BC")]).table, joint.sum(axis=0), rtol=1e-12)
    # unnormalized tables already sum to one here
    assert marg[E("BC")].total() == pytest.approx(1.0)


def test_brute_force_matches_dict_oracle(rng):
    fr = random_frames(rng, 3, min_frame=2)
    fs = [random_valuation(rng, "potential", d, fr) for d in ("AB", "BC")]
    dom, joint = dict_combine(dict_potential(("A", "B"), fr, fs[0].values), ("A", "B"),
                              dict_potential(("B", "C"), fr, fs[1].values), ("B", "C"), fr)
    _, ref = dict_marginal(joint, dom, "C")
    got = brute_force_marginal(Factorization.from_factors(fs), "C")
    assert np.allclose(got.values, list(ref.values()), rtol=1e-12)


def test_undefined_combination_reports_location():
    fr = {"X": ("a", "b"), "Y": ("c", "d")}
    F = Factorization.from_factors([
        Potential("X", fr, [1, 0]),
        Potential("XY", fr, [0, 0, 1, 1]),
    ])
    with pytest.raises(UndefinedCombination) as info:
        propagate(F, tree_for(F))
    assert "{X" in str(info.value)


def test_conflicting_belief_model():
    fr = {"A": ("a", "b")}
    F = Factorization(Hypergraph(["A"]), {"A": [
        MassFunction("A", fr, {1: 1.0}), MassFunction("A", fr, {2: 1.0})]})
    with pytest.raises(UndefinedCombination, match="vertex"):
        propagate(F, tree_for(F))


def test_tree_must_match_factorization(example):
    T = MarkovTree((E("XY"),), frozenset())
    with pytest.raises(DomainError):
        propagate(example, T)
    with pytest.raises(ValueError):
        propagate(example, tree_for(example), schedule="random")
