"""
Trees, independence and convex hulls
====================================

Clopens of a tree space that each depend on few nodes cannot contain long
independent sequences; nodes of a partitioned tree split into antichains;
and points of the convex hull of an adequate space round to members of
the family.
"""

import random

from boolimg.catalog import (
    AdequateSpec,
    antichain_decomposition,
    check_hull_claim,
    coordinate_clopens,
    full_binary_tree,
    gen_tree_space,
    independence_threshold,
    lemma52_check,
    random_tree,
)

# %%
tree = full_binary_tree(3)
sp, _ = gen_tree_space(tree)
for k in (1, 2, 3):
    print(f"k={k}: no independent selection of size {independence_threshold(k)}")
print(lemma52_check(tree, sp, coordinate_clopens(sp), 1))

# %%
rng = random.Random(0)
t = random_tree(rng, 12)
pieces = [t.nodes[::2], t.nodes[1::2]]
for (piece, level), nodes in antichain_decomposition(t, pieces):
    print(f"piece {piece} level {level}: {nodes}")

# %%
# A 2-adequate family: a four-cycle of pairs.
spec = AdequateSpec(
    tuple("1234"), n=2,
    small=tuple(frozenset(s) for s in ["", "1", "2", "3", "4", "12", "23", "34", "14"]),
)
print(check_hull_claim(spec, 2, 2000, seed=1).to_dict()["verdict"])
