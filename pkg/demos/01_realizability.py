"""
Deciding realizability
======================

A finite family of sets is realizable when its atom graph is connected and
stays connected for every subfamily.  The graph joins two atoms when their
signatures differ in one set.
"""

from boolimg import build_graph, components, is_realizable, is_realizable_exhaustive
from boolimg.catalog import gen_abc, gen_chain3, gen_example5

# %%
# Three nested sets: a chain.  Every atom is one step from the next.
sp, chain = gen_chain3()
print(chain.names, [sp.point_ids[i] for i in range(sp.n_points)])
print("chain realizable:", is_realizable(chain).realizable)

# %%
# Three sets meeting pairwise in one shared point.  The vertex holding all
# three has no neighbour, so the graph falls apart.
_, abc = gen_abc()
g = build_graph(abc)
for comp in components(g):
    print("component:", [g.vertices[i].label(abc) for i in comp])
print("abc:", is_realizable(abc).to_dict())

# %%
# Five coordinates on the vectors whose number of zeros is not three.
# Removing the middle layer cuts the graph into a piece of 6 and one of 16.
_, ex5 = gen_example5()
g = build_graph(ex5)
print(len(g.vertices), "vertices,", len(g.edges), "edges,", [len(c) for c in components(g)])

# %%
# The fast check looks at the whole family only; the exhaustive one walks
# every subfamily.  They agree.
for fam in (chain, abc, ex5):
    assert is_realizable(fam).realizable == is_realizable_exhaustive(fam).realizable
print("fast and exhaustive checks agree")
