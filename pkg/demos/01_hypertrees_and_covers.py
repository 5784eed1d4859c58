# coding: utf-8

# # Hypertrees, twigs and covers
#
# A hypergraph is just a set of hyperedges, each a set of variable names.
# Local computation needs the hyperedges to form a *hypertree*: we must be
# able to peel them off one at a time, each time removing a twig.

# In[1]:

from localcomp import Hypergraph, construction_sequence, hypertree_cover, is_twig
from localcomp.markov_tree import from_construction_sequence


# A star around {Y,Z}. Every outer edge shares its only common variables with the centre.

# In[2]:

H = Hypergraph([{"X", "Y"}, {"Y", "Z"}, {"W", "Y"}, {"Z", "V"}])
print(H)
for t in H:
    print(sorted(t), "branches:", [sorted(b) for b in is_twig(H, t)])


# Twig deletion in canonical order gives a construction sequence, built root first.

# In[3]:

seq = construction_sequence(H, root={"Y", "Z"})
print(seq)


# The sequence turns directly into a Markov tree (a join tree). Separators are
# the shared variables along each tree edge.

# In[4]:

T = from_construction_sequence(seq)
for (i, j), sep in T.separators.items():
    print(sorted(T.vertices[i]), "--", sorted(T.vertices[j]), "separator", sorted(sep))


# A triangle is the smallest hypergraph that is *not* a hypertree.

# In[5]:

triangle = Hypergraph(["XY", "YZ", "ZX"])
print("hypertree?", construction_sequence(triangle) is not None)


# Greedy elimination enlarges it to a hypertree cover. Here the cover is one big edge.

# In[6]:

cover, seq = hypertree_cover(triangle)
print(cover, seq)


# A longer cycle shows the cover staying small: every cover edge has three variables.

# In[7]:

ring = Hypergraph(["AB", "BC", "CD", "DE", "EA"])
cover, _ = hypertree_cover(ring)
print(cover, "largest edge:", max(len(h) for h in cover))
