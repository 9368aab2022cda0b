"""
Generated spaces
================

Families of weight-two vectors, tree spaces and spaces of adequate
families, each checked for realizability.
"""

from boolimg import is_realizable
from boolimg.catalog import AdequateSpec, full_binary_tree, gen_adequate_space, gen_sigma, gen_sigma2_family, gen_tree_space
from boolimg.family import CubeSpace

# %%
# All vectors of weight at most two over four coordinates.
sp, _ = gen_sigma(2, 4)
fam = gen_sigma2_family(sp)
print(len(sp.point_ids), "points,", len(fam), "sets, realizable:", is_realizable(fam).realizable)

# %%
# Dropping the origin can break it: two unit vectors alone give two
# complementary singletons.
lone = CubeSpace.from_vectors(["10", "01"])
print("without origin:", is_realizable(gen_sigma2_family(lone, check=False)).realizable)

# %%
# Initial segments and full branches of a binary tree of depth two.
tree = full_binary_tree(2)
sp, fam = gen_tree_space(tree)
print(sp.point_ids)
print("tree family realizable:", is_realizable(fam).realizable)

# %%
# The sets of size at most two over three labels.
spec = AdequateSpec(("1", "2", "3"), maximal=(frozenset("12"), frozenset("13"), frozenset("23")))
sp, fam = gen_adequate_space(spec)
print(len(sp.point_ids), "points:", sp.bits)
