"""
Witness complexes
=================

A realizable coordinate family comes with a concrete connected space: the
points of the family joined by segments along single coordinate moves.
Each set becomes a pair (closed part, open part) on that complex, and the
map from sets to pairs preserves every Boolean relation.
"""

from boolimg.witness import build_witness, canonical_pseudoclopens, verify_isomorphism, witness_components
from boolimg.catalog import gen_l2
from boolimg.witness import literal_pseudoclopens, var, poly_pseudoclopen

sp, fam = gen_l2()
w = build_witness(sp, fam)

# %%
# Three points 00, 01, 11 and two segments between them.
for s in w.segments:
    print(sp.point_ids[s.lo], "--", sp.point_ids[s.hi], "along", sp.coord_labels[s.coord])
print("components:", len(witness_components(w)))

# %%
# Cells are the points followed by segment interiors.  The closed part of
# a set is where its coordinate equals one, the open part where it is
# positive.
for name, pc in zip(fam.names, canonical_pseudoclopens(w)):
    show = lambda mask: [w.cell_label(c) for c in range(w.n_cells) if mask >> c & 1]
    print(name, "closed:", show(pc.closed), "open:", show(pc.open))

# %%
# Polynomials in the pairs: the difference of the first and second set has
# an empty open part, matching the empty difference of the sets.
p1, p2 = canonical_pseudoclopens(w)
print("open part of E1 - E2:", poly_pseudoclopen(var(0) - var(1), [p1, p2]).open)

# %%
# Full check of the isomorphism condition up to arity two.
print(verify_isomorphism(w, fam, 2).to_dict())

# %%
# Taking the closed part as the set of cells touching the set fails.
print(verify_isomorphism(w, fam, phi=literal_pseudoclopens(w)).to_dict())
