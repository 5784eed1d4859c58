# coding: utf-8

# # Belief functions and Dempster's rule
#
# A mass function puts weight on *sets* of configurations. Combining two
# pieces of evidence intersects their focal sets and renormalizes away the
# conflict.

# In[1]:

from localcomp import (Factorization, MassFunction, belief_from_mass, construction_sequence,
                       from_construction_sequence, propagate)


# Two witnesses about A. One says "a" with weight 0.6, the other says "b" with weight 0.5.

# In[2]:

ab = {"A": ("a", "b")}
m1 = MassFunction.from_focal("A", ab, [([["a"]], 0.6), ([["a"], ["b"]], 0.4)])
m2 = MassFunction.from_focal("A", ab, [([["b"]], 0.5), ([["a"], ["b"]], 0.5)])
m = m1 * m2
for fs in m.focal_sets():
    print(fs.configurations(m.frames), round(m.mass(fs), 6))


# The conflict (0.3) is spread out: 3/7, 2/7 and 2/7.

# In[3]:

print("Bel({a}) =", belief_from_mass(m, [("a",)]))


# ## Evidence on a small network
#
# A rule linking A and B ("if a then b", held with weight 0.8) plus the
# combined evidence on A. Propagation gives a belief about B without ever
# building the joint frame by hand.

# In[4]:

frames = {"A": ("a", "b"), "B": ("b1", "b2")}
rule = MassFunction.from_focal(
    ["A", "B"], frames,
    [([["a", "b1"], ["b", "b1"], ["b", "b2"]], 0.8),
     ([["a", "b1"], ["a", "b2"], ["b", "b1"], ["b", "b2"]], 0.2)])
evidence = MassFunction.from_focal("A", frames, [([["a"]], 3 / 7), ([["b"]], 2 / 7),
                                                 ([["a"], ["b"]], 2 / 7)])
F = Factorization.from_factors([rule, evidence], frames)
T = from_construction_sequence(construction_sequence(F.hypergraph))
marg = propagate(F, T).marginals

mB = marg[frozenset("AB")].marginalize("B")
for fs in mB.focal_sets():
    print(fs.configurations(frames), round(mB.mass(fs), 6))
print("Bel(B = b1) =", round(belief_from_mass(mB, [("b1",)]), 6))
